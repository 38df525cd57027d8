// pfrlab: command-line front end for the refutation pipeline.
//
// Subcommands:
//   refute    build or load a candidate linear map and search for a refutation
//   validate  re-check a certificate file from scratch
//   sweep     run a parameter grid and emit one CSV row per cell
//
// Machine output (certificate JSON, verdict JSON, CSV) goes to --out when
// given, otherwise to stdout. Human-readable summaries go to stderr, so
// stdout stays byte-deterministic for a fixed config and seed.

#include <cstdint>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "pfr/certificate.hpp"
#include "pfr/certificate_io.hpp"
#include "pfr/construction.hpp"
#include "pfr/diagnostics.hpp"
#include "pfr/errors.hpp"
#include "pfr/field.hpp"
#include "pfr/functional.hpp"

namespace {

constexpr int kExitRefuted = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitDomainError = 2;
constexpr int kExitCapExceeded = 3;
constexpr int kExitInputError = 4;
constexpr int kExitInternalError = 5;
constexpr int kExitInconclusive = 10;
constexpr int kExitMapExists = 20;

struct RefuteOptions {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint32_t t = 0;
  std::string mode = "exact";
  std::string strategy = "exhaustive";
  std::uint64_t seed = 0;
  std::uint64_t budget = 100000;
  std::uint32_t workers = 1;
  std::string source = "random";
  std::string map_file;
  std::string out;
};

struct SweepOptions {
  std::string grid;
  std::uint32_t workers = 1;
  std::string out;
};

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    pfr::write_text_file(out_path, text);
  }
}

pfr::SumsetMode parse_mode(const std::string& name) {
  return name == "upto" ? pfr::SumsetMode::upto : pfr::SumsetMode::exact;
}

// Uniform random basis images: one independent residue per point per image.
// Intended for pipeline plumbing; such maps are essentially always refuted
// through the uncovered-point branch.
pfr::LinearMap random_map(const pfr::ProblemParams& params, std::uint64_t seed) {
  std::vector<pfr::Functional> images;
  images.reserve(params.n);
  for (std::uint32_t i = 0; i < params.n; ++i) {
    const pfr::FunctionTable table =
        pfr::FunctionTable::random(params, pfr::derive_seed(seed, i));
    std::vector<std::pair<std::uint64_t, pfr::Residue>> terms;
    for (std::uint64_t v = 0; v < params.point_count; ++v) {
      if (table.at(v) != 0) terms.emplace_back(v, table.at(v));
    }
    images.emplace_back(params, std::move(terms));
  }
  return pfr::LinearMap(params, std::move(images));
}

int run_refute(const RefuteOptions& opt) {
  const pfr::ProblemParams params(opt.p, opt.n, opt.t);
  const pfr::SumsetMode mode = parse_mode(opt.mode);

  if (opt.source == "all") {
    const pfr::MapSearchVerdict verdict = pfr::exhaustive_map_search(params, mode);
    emit(opt.out, pfr::map_search_verdict_to_json(verdict, params, mode));
    if (verdict.map) {
      std::cerr << "map exists: found after " << verdict.nodes << " nodes\n";
      return kExitMapExists;
    }
    std::cerr << "no valid map: search exhausted after " << verdict.nodes << " nodes\n";
    return kExitRefuted;
  }

  pfr::LinearMap map = [&]() {
    if (opt.source == "file") {
      const std::string text = pfr::read_text_file(opt.map_file);
      pfr::LinearMap loaded = pfr::map_from_json(text, opt.t);
      if (loaded.params().p != opt.p || loaded.params().n != opt.n) {
        throw std::invalid_argument("map file parameters do not match --p/--n");
      }
      return loaded;
    }
    return random_map(params, pfr::derive_seed(opt.seed, 1));
  }();

  const pfr::CoboundarySet S = pfr::CoboundarySet::build(params);
  const pfr::PairStrategy strategy =
      opt.strategy == "randomized"
          ? pfr::PairStrategy::randomized(pfr::derive_seed(opt.seed, 2), opt.budget, opt.workers)
          : pfr::PairStrategy::exhaustive(opt.workers);

  const pfr::Certificate cert = pfr::refute(map, S, mode, strategy);
  emit(opt.out, pfr::certificate_to_json(cert));

  if (const auto* unc = std::get_if<pfr::UncoveredPoint>(&cert.record)) {
    std::cerr << "refuted: defect not decomposable at point " << unc->x.index() << "\n";
    return kExitRefuted;
  }
  if (const auto* w = std::get_if<pfr::WitnessRecord>(&cert.record)) {
    std::cerr << "refuted: violating pair (" << w->x.index() << ", " << w->y.index()
              << ") with certified witness\n";
    return kExitRefuted;
  }
  const auto& inc = std::get<pfr::InconclusiveRecord>(cert.record);
  std::cerr << "inconclusive: no violating pair found within budget (" << inc.budget
            << " probes)\n";
  return kExitInconclusive;
}

int run_validate(const std::string& cert_path) {
  const std::string text = pfr::read_text_file(cert_path);
  const pfr::Certificate cert = pfr::certificate_from_json(text);
  const pfr::ValidationReport report = pfr::validate_certificate(cert);
  if (report.ok) {
    std::cout << "ok\n";
    return kExitRefuted;
  }
  std::cout << "failed: " << report.first_failure << "\n";
  if (!report.detail.empty()) std::cerr << report.detail << "\n";
  return kExitValidationFailed;
}

int run_sweep(const SweepOptions& opt) {
  const pfr::SweepPlan plan = pfr::sweep_plan_from_json(pfr::read_text_file(opt.grid));
  const std::vector<pfr::SweepRow> rows = pfr::sweep(plan, opt.workers);
  emit(opt.out, pfr::sweep_rows_to_csv(rows));
  std::cerr << "sweep complete: " << rows.size() << " rows\n";
  return kExitRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pfrlab: search for and validate refutation certificates for candidate\n"
      "approximate-homomorphism linear maps over prime fields."};
  app.require_subcommand(1);
  app.footer(
      "Exit codes:\n"
      "  0   refuted / certificate valid / sweep complete / no valid map\n"
      "  1   certificate validation failed (first failing check printed)\n"
      "  2   usage or domain error\n"
      "  3   size cap exceeded\n"
      "  4   file or JSON input error\n"
      "  5   internal error\n"
      "  10  inconclusive (pair search exhausted its budget)\n"
      "  20  a valid map exists (--source all)");

  RefuteOptions ropt;
  CLI::App* refute = app.add_subcommand(
      "refute", "Search for a refutation certificate for a candidate map");
  refute->add_option("--p", ropt.p, "prime modulus")->required();
  refute->add_option("--n", ropt.n, "ambient dimension")->required();
  refute->add_option("--t", ropt.t, "sumset depth")->required();
  refute->add_option("--mode", ropt.mode, "sumset reading: exact or upto")
      ->check(CLI::IsMember({"exact", "upto"}));
  refute->add_option("--strategy", ropt.strategy, "pair search: exhaustive or randomized")
      ->check(CLI::IsMember({"exhaustive", "randomized"}));
  refute->add_option("--seed", ropt.seed, "seed for all randomized behavior (default 0)");
  refute->add_option("--budget", ropt.budget,
                     "probe budget for the randomized pair search (default 100000)");
  refute->add_option("--workers", ropt.workers, "worker threads for pair search")
      ->check(CLI::PositiveNumber);
  refute->add_option("--source", ropt.source,
                     "map source: file, random (default), or all (exhaustive map search)")
      ->check(CLI::IsMember({"file", "random", "all"}));
  refute->add_option("--map-file", ropt.map_file, "map JSON file (with --source file)");
  refute->add_option("--out", ropt.out, "write the certificate/verdict JSON here");

  std::string cert_path;
  CLI::App* validate =
      app.add_subcommand("validate", "Re-check a certificate file from scratch");
  validate->add_option("certificate", cert_path, "certificate JSON file")->required();

  SweepOptions sopt;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter grid, one CSV row per cell");
  sweep->add_option("--grid", sopt.grid, "grid JSON file")->required();
  sweep->add_option("--workers", sopt.workers, "worker threads for pair search")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--out", sopt.out, "write the CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitDomainError;
  }

  try {
    if (refute->parsed()) {
      if (ropt.source == "file" && ropt.map_file.empty()) {
        throw std::invalid_argument("--source file requires --map-file");
      }
      if (!ropt.map_file.empty() && ropt.source == "random") ropt.source = "file";
      return run_refute(ropt);
    }
    if (validate->parsed()) return run_validate(cert_path);
    return run_sweep(sopt);
  } catch (const pfr::CapError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const pfr::CertificateParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
}
