#include "pfr/certificate_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace pfr {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* mode_name(SumsetMode m) { return m == SumsetMode::exact ? "exact" : "upto"; }

SumsetMode mode_from_name(const std::string& name) {
  if (name == "exact") return SumsetMode::exact;
  if (name == "upto") return SumsetMode::upto;
  throw CertificateParseError("mode must be \"exact\" or \"upto\"");
}

ordered_json terms_json(const Functional& g) {
  ordered_json arr = ordered_json::array();
  for (const auto& [idx, coeff] : g.terms()) {
    arr.push_back(ordered_json::array({idx, coeff}));
  }
  return arr;
}

ordered_json map_json(const LinearMap& map) {
  ordered_json arr = ordered_json::array();
  for (const Functional& g : map.basis_images()) arr.push_back(terms_json(g));
  return arr;
}

ordered_json rows_json(const std::vector<std::vector<Residue>>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json r = ordered_json::array();
    for (Residue v : row) r.push_back(v);
    arr.push_back(std::move(r));
  }
  return arr;
}

ordered_json pairs_json(const Decomposition& dec) {
  ordered_json arr = ordered_json::array();
  for (const auto& [a, b] : dec) {
    arr.push_back(ordered_json::array({a.index(), b.index()}));
  }
  return arr;
}

const ordered_json& require(const ordered_json& j, const char* key) {
  if (!j.is_object()) throw CertificateParseError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw CertificateParseError(std::string("missing field: ") + key);
  return *it;
}

std::uint64_t as_u64(const ordered_json& j, const char* what) {
  if (!j.is_number_unsigned()) {
    throw CertificateParseError(std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

std::uint32_t as_u32(const ordered_json& j, const char* what) {
  const std::uint64_t v = as_u64(j, what);
  if (v > UINT32_MAX) throw CertificateParseError(std::string(what) + " is out of range");
  return static_cast<std::uint32_t>(v);
}

std::string as_string(const ordered_json& j, const char* what) {
  if (!j.is_string()) throw CertificateParseError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

ProblemParams parse_params(std::uint32_t p, std::uint32_t n, std::uint32_t t) {
  try {
    return ProblemParams(p, n, t);
  } catch (const CapError&) {
    throw;  // cap violations keep their own failure class
  } catch (const std::exception& e) {
    throw CertificateParseError(e.what());
  }
}

Point parse_point(const ordered_json& j, const ProblemParams& params, const char* what) {
  const std::uint64_t idx = as_u64(j, what);
  if (idx >= params.point_count) {
    throw CertificateParseError(std::string(what) + " index is out of range");
  }
  return Point::from_index(idx, params);
}

Functional parse_terms(const ordered_json& j, const ProblemParams& params) {
  if (!j.is_array()) throw CertificateParseError("functional terms must be an array");
  std::vector<std::pair<std::uint64_t, Residue>> terms;
  terms.reserve(j.size());
  for (const auto& entry : j) {
    if (!entry.is_array() || entry.size() != 2) {
      throw CertificateParseError("a functional term must be a [point_index, coeff] pair");
    }
    const std::uint64_t idx = as_u64(entry.at(0), "term point_index");
    const std::uint64_t coeff = as_u64(entry.at(1), "term coeff");
    if (idx >= params.point_count) throw CertificateParseError("term point_index out of range");
    if (coeff >= params.p) throw CertificateParseError("term coeff out of range");
    terms.emplace_back(idx, static_cast<Residue>(coeff));
  }
  return Functional(params, std::move(terms));
}

LinearMap parse_map(const ordered_json& j, const ProblemParams& params) {
  if (!j.is_array()) throw CertificateParseError("map must be an array of basis images");
  std::vector<Functional> images;
  images.reserve(j.size());
  for (const auto& image : j) images.push_back(parse_terms(image, params));
  try {
    return LinearMap(params, std::move(images));
  } catch (const std::exception& e) {
    throw CertificateParseError(e.what());
  }
}

Decomposition parse_pairs(const ordered_json& j, const ProblemParams& params) {
  if (!j.is_array()) throw CertificateParseError("a decomposition must be an array of pairs");
  Decomposition dec;
  dec.reserve(j.size());
  for (const auto& entry : j) {
    if (!entry.is_array() || entry.size() != 2) {
      throw CertificateParseError("a decomposition entry must be an [a_index, b_index] pair");
    }
    dec.emplace_back(parse_point(entry.at(0), params, "decomposition a_index"),
                     parse_point(entry.at(1), params, "decomposition b_index"));
  }
  return dec;
}

std::vector<std::vector<Residue>> parse_rows(const ordered_json& j, const ProblemParams& params,
                                             const char* what) {
  if (!j.is_array()) throw CertificateParseError(std::string(what) + " must be an array of rows");
  std::vector<std::vector<Residue>> rows;
  rows.reserve(j.size());
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != params.n) {
      throw CertificateParseError(std::string(what) + " row must have n entries");
    }
    std::vector<Residue> out;
    out.reserve(params.n);
    for (const auto& v : row) {
      const std::uint64_t r = as_u64(v, "basis row entry");
      if (r >= params.p) throw CertificateParseError("basis row entry out of range");
      out.push_back(static_cast<Residue>(r));
    }
    rows.push_back(std::move(out));
  }
  return rows;
}

}  // namespace

std::string certificate_to_json(const Certificate& cert) {
  ordered_json j;
  j["p"] = cert.params.p;
  j["n"] = cert.params.n;
  j["t"] = cert.params.t;
  j["mode"] = mode_name(cert.mode);
  j["map"] = map_json(cert.map);
  if (const auto* unc = std::get_if<UncoveredPoint>(&cert.record)) {
    j["variant"] = "uncovered";
    j["x"] = unc->x.index();
  } else if (const auto* w = std::get_if<WitnessRecord>(&cert.record)) {
    j["variant"] = "witness";
    j["x"] = w->x.index();
    j["y"] = w->y.index();
    ordered_json decs;
    const Point z = w->x + w->y;
    decs[std::to_string(w->x.index())] = pairs_json(w->dec_x);
    decs[std::to_string(w->y.index())] = pairs_json(w->dec_y);
    decs[std::to_string(z.index())] = pairs_json(w->dec_z);
    j["decompositions"] = std::move(decs);
    ordered_json table = ordered_json::array();
    for (std::uint64_t i = 0; i < w->witness.size(); ++i) table.push_back(w->witness.at(i));
    j["witness_table"] = std::move(table);
    ordered_json inter;
    inter["vx"] = rows_json(w->inter_x);
    inter["vy"] = rows_json(w->inter_y);
    inter["sum"] = rows_json(w->inter_sum);
    j["intersections"] = std::move(inter);
  } else {
    j["variant"] = "inconclusive";
    j["budget"] = std::get<InconclusiveRecord>(cert.record).budget;
  }
  j["validator_version"] = 1;
  return j.dump(2) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw CertificateParseError(std::string("malformed JSON: ") + e.what());
  }
  if (as_u64(require(j, "validator_version"), "validator_version") != 1) {
    throw CertificateParseError("unsupported validator_version");
  }
  const ProblemParams params = parse_params(as_u32(require(j, "p"), "p"),
                                            as_u32(require(j, "n"), "n"),
                                            as_u32(require(j, "t"), "t"));
  const SumsetMode mode = mode_from_name(as_string(require(j, "mode"), "mode"));
  LinearMap map = parse_map(require(j, "map"), params);
  const std::string variant = as_string(require(j, "variant"), "variant");

  if (variant == "uncovered") {
    Point x = parse_point(require(j, "x"), params, "x");
    return Certificate{params, mode, std::move(map), UncoveredPoint{std::move(x)}};
  }
  if (variant == "inconclusive") {
    const std::uint64_t budget = as_u64(require(j, "budget"), "budget");
    return Certificate{params, mode, std::move(map), InconclusiveRecord{budget}};
  }
  if (variant != "witness") throw CertificateParseError("unknown certificate variant");

  Point x = parse_point(require(j, "x"), params, "x");
  Point y = parse_point(require(j, "y"), params, "y");
  const Point z = x + y;
  const ordered_json& decs = require(j, "decompositions");
  if (!decs.is_object()) throw CertificateParseError("decompositions must be an object");
  const std::set<std::string> expected{std::to_string(x.index()), std::to_string(y.index()),
                                       std::to_string(z.index())};
  std::set<std::string> seen;
  for (auto it = decs.begin(); it != decs.end(); ++it) seen.insert(it.key());
  if (seen != expected) {
    throw CertificateParseError("decompositions must be keyed by exactly x, y and x+y");
  }
  Decomposition dec_x = parse_pairs(decs.at(std::to_string(x.index())), params);
  Decomposition dec_y = parse_pairs(decs.at(std::to_string(y.index())), params);
  Decomposition dec_z = parse_pairs(decs.at(std::to_string(z.index())), params);

  const ordered_json& table = require(j, "witness_table");
  if (!table.is_array() || table.size() != params.point_count) {
    throw CertificateParseError("witness_table must list one residue per point");
  }
  std::vector<Residue> values;
  values.reserve(table.size());
  for (const auto& v : table) {
    const std::uint64_t r = as_u64(v, "witness_table entry");
    if (r >= params.p) throw CertificateParseError("witness_table entry out of range");
    values.push_back(static_cast<Residue>(r));
  }
  FunctionTable witness(params, std::move(values));

  const ordered_json& inter = require(j, "intersections");
  if (!inter.is_object() || inter.size() != 3) {
    throw CertificateParseError("intersections must carry exactly vx, vy and sum");
  }
  auto ix = parse_rows(require(inter, "vx"), params, "intersections.vx");
  auto iy = parse_rows(require(inter, "vy"), params, "intersections.vy");
  auto isum = parse_rows(require(inter, "sum"), params, "intersections.sum");

  WitnessRecord record{std::move(x),     std::move(y),       std::move(dec_x),
                       std::move(dec_y), std::move(dec_z),   std::move(witness),
                       std::move(ix),    std::move(iy),      std::move(isum)};
  return Certificate{params, mode, std::move(map), std::move(record)};
}

std::string map_to_json(const LinearMap& map) {
  ordered_json j;
  j["p"] = map.params().p;
  j["n"] = map.params().n;
  j["map"] = map_json(map);
  return j.dump(2) + "\n";
}

LinearMap map_from_json(const std::string& text, std::uint32_t t) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw CertificateParseError(std::string("malformed JSON: ") + e.what());
  }
  const ProblemParams params =
      parse_params(as_u32(require(j, "p"), "p"), as_u32(require(j, "n"), "n"), t);
  return parse_map(require(j, "map"), params);
}

std::string map_search_verdict_to_json(const MapSearchVerdict& verdict,
                                       const ProblemParams& params, SumsetMode mode) {
  ordered_json j;
  j["p"] = params.p;
  j["n"] = params.n;
  j["t"] = params.t;
  j["mode"] = mode_name(mode);
  j["verdict"] = verdict.map ? "map_exists" : "no_valid_map";
  if (verdict.map) j["map"] = map_json(*verdict.map);
  j["nodes"] = verdict.nodes;
  return j.dump(2) + "\n";
}

SweepPlan sweep_plan_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw CertificateParseError(std::string("malformed JSON: ") + e.what());
  }
  SweepPlan plan;
  if (j.contains("budget")) plan.budget = as_u64(j.at("budget"), "budget");
  if (j.contains("mode")) plan.mode = mode_from_name(as_string(j.at("mode"), "mode"));
  const ordered_json& cells = require(j, "cells");
  if (!cells.is_array()) throw CertificateParseError("cells must be an array");
  for (const auto& c : cells) {
    SweepCell cell;
    cell.p = as_u32(require(c, "p"), "cell p");
    cell.n = as_u32(require(c, "n"), "cell n");
    cell.t = as_u32(require(c, "t"), "cell t");
    cell.source = as_string(require(c, "source"), "cell source");
    cell.seed = as_u64(require(c, "seed"), "cell seed");
    if (c.contains("map")) {
      const ordered_json& m = c.at("map");
      if (!m.is_array()) throw CertificateParseError("cell map must be an array of images");
      std::vector<std::vector<std::pair<std::uint64_t, std::uint32_t>>> raw;
      for (const auto& image : m) {
        if (!image.is_array()) throw CertificateParseError("cell map image must be an array");
        std::vector<std::pair<std::uint64_t, std::uint32_t>> terms;
        for (const auto& entry : image) {
          if (!entry.is_array() || entry.size() != 2) {
            throw CertificateParseError("cell map term must be a [point_index, coeff] pair");
          }
          terms.emplace_back(as_u64(entry.at(0), "cell map point_index"),
                             as_u32(entry.at(1), "cell map coeff"));
        }
        raw.push_back(std::move(terms));
      }
      cell.raw_map = std::move(raw);
    }
    plan.cells.push_back(std::move(cell));
  }
  return plan;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CertificateParseError("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace pfr
