#include "pfr/certificate.hpp"

#include <functional>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace pfr {

namespace {

ValidationReport fail(std::string check, std::string detail) {
  ValidationReport r;
  r.ok = false;
  r.first_failure = std::move(check);
  r.detail = std::move(detail);
  return r;
}

bool matches(const Point& pt, const ProblemParams& params) {
  return pt.modulus() == params.p && pt.dimension() == params.n;
}

Subspace rebuild_span(const ProblemParams& params, const Point& anchor,
                      const Decomposition& dec) {
  std::vector<Point> generators{anchor};
  for (const auto& [a, b] : dec) {
    generators.push_back(a);
    generators.push_back(b);
  }
  return Subspace::span(params, generators);
}

}  // namespace

Certificate refute(const LinearMap& L, const CoboundarySet& S, SumsetMode mode,
                   const PairStrategy& strategy) {
  const ProblemParams& params = L.params();
  if (S.params().p != params.p || S.params().n != params.n) {
    throw std::invalid_argument("refute: coboundary set does not match the map's params");
  }
  auto family = family_from_map(L, params.t, S, mode);
  if (auto* uncovered = std::get_if<UncoveredPoint>(&family)) {
    return Certificate{params, mode, L, *uncovered};
  }
  const SubspaceFamily& F = std::get<SubspaceFamily>(family);
  const PairSearchResult res = find_violating_pair(F, strategy);
  if (!res.pair) {
    return Certificate{params, mode, L, InconclusiveRecord{res.probes}};
  }
  const Point& x = res.pair->first;
  const Point& y = res.pair->second;
  const Point z = x + y;
  const Subspace ix = F.at(x).intersect(F.at(z));
  const Subspace iy = F.at(y).intersect(F.at(z));
  WitnessRecord record{x,
                       y,
                       *F.provenance(x.index()),
                       *F.provenance(y.index()),
                       *F.provenance(z.index()),
                       build_witness(x, y, F),
                       ix.basis(),
                       iy.basis(),
                       ix.sum(iy).basis()};
  return Certificate{params, mode, L, std::move(record)};
}

ValidationReport validate_certificate(const Certificate& cert) {
  const ProblemParams& params = cert.params;

  // params: re-derive the parameter record and demand an exact match.
  try {
    if (!(ProblemParams(params.p, params.n, params.t) == params)) {
      return fail("params", "parameter record is internally inconsistent");
    }
  } catch (const std::exception& e) {
    return fail("params", e.what());
  }

  // map_shape: the candidate map must be shaped by the same parameters.
  if (!(cert.map.params() == params)) {
    return fail("map_shape", "candidate map disagrees with the certificate parameters");
  }
  for (const Functional& g : cert.map.basis_images()) {
    if (g.modulus() != params.p || g.dimension() != params.n) {
      return fail("map_shape", "basis image does not match the certificate parameters");
    }
  }

  if (const auto* inc = std::get_if<InconclusiveRecord>(&cert.record)) {
    (void)inc;  // budget is unconstrained; nothing further to re-check
    return {};
  }

  if (const auto* unc = std::get_if<UncoveredPoint>(&cert.record)) {
    if (!matches(unc->x, params)) {
      return fail("variant_fields", "uncovered point does not match the parameters");
    }
    // uncovered_absence: independently rebuild S and re-attempt the
    // decomposition; the certificate stands only if it still fails.
    const CoboundarySet S = CoboundarySet::build(params);
    if (sumset_decompose(cert.map.defect(unc->x), params.t, S, cert.mode)) {
      return fail("uncovered_absence", "the defect at x decomposes after all");
    }
    return {};
  }

  const WitnessRecord& w = std::get<WitnessRecord>(cert.record);

  // variant_fields: points in range and the pair non-degenerate.
  if (!matches(w.x, params) || !matches(w.y, params)) {
    return fail("variant_fields", "pair points do not match the parameters");
  }
  const Point z = w.x + w.y;
  if (w.x.is_zero() || w.y.is_zero() || z.is_zero()) {
    return fail("variant_fields", "degenerate pair: x, y, and x+y must all be nonzero");
  }
  for (const Decomposition* dec : {&w.dec_x, &w.dec_y, &w.dec_z}) {
    for (const auto& [a, b] : *dec) {
      if (!matches(a, params) || !matches(b, params)) {
        return fail("variant_fields", "decomposition point does not match the parameters");
      }
    }
  }

  // decomposition_length: exactly t summands (at most t in upto mode).
  for (const Decomposition* dec : {&w.dec_x, &w.dec_y, &w.dec_z}) {
    const bool ok = (cert.mode == SumsetMode::exact) ? dec->size() == params.t
                                                     : dec->size() <= params.t;
    if (!ok) {
      return fail("decomposition_length",
                  "decomposition length disagrees with the declared t");
    }
  }

  // Rebuild the three subspaces from nothing but the recorded points.
  const Subspace Vx = rebuild_span(params, w.x, w.dec_x);
  const Subspace Vy = rebuild_span(params, w.y, w.dec_y);
  const Subspace Vz = rebuild_span(params, z, w.dec_z);

  const std::uint32_t dim_cap = 2 * params.t + 1;
  if (Vx.dimension() > dim_cap || Vy.dimension() > dim_cap || Vz.dimension() > dim_cap) {
    return fail("family_dimension", "a rebuilt subspace exceeds dimension 2t+1");
  }

  if (!Vx.contains(w.x) || !Vy.contains(w.y) || !Vz.contains(z)) {
    return fail("family_membership", "a rebuilt subspace misses its own point");
  }

  // intersections_match: fresh recomputation against the recorded rows.
  const Subspace ix = Vx.intersect(Vz);
  const Subspace iy = Vy.intersect(Vz);
  const Subspace isum = ix.sum(iy);
  if (w.inter_x != ix.basis() || w.inter_y != iy.basis() || w.inter_sum != isum.basis()) {
    return fail("intersections_match",
                "recorded intersection bases differ from fresh recomputation");
  }

  // violating_condition: judged on the fresh intersections only.
  if (isum.contains(z)) {
    return fail("violating_condition", "x+y lies inside the recomputed intersection sum");
  }

  // witness_shape
  if (w.witness.modulus() != params.p || w.witness.dimension() != params.n ||
      w.witness.size() != params.point_count) {
    return fail("witness_shape", "witness table does not match the parameters");
  }

  // witness_values
  if (w.witness.eval(w.x) != 0 || w.witness.eval(w.y) != 0 || w.witness.eval(z) != 1) {
    return fail("witness_values", "witness table misses f(x)=0, f(y)=0, f(x+y)=1");
  }

  // witness_linearity on all three rebuilt subspaces
  if (!is_linear_on(w.witness, Vx) || !is_linear_on(w.witness, Vy) ||
      !is_linear_on(w.witness, Vz)) {
    return fail("witness_linearity", "witness is not linear on a rebuilt subspace");
  }

  // decomposition_resum: each recorded decomposition must re-sum to the
  // defect of its point under the certificate's own map — the check that
  // binds the geometry to the candidate map.
  const Point* anchors[3] = {&w.x, &w.y, &z};
  const Decomposition* decs[3] = {&w.dec_x, &w.dec_y, &w.dec_z};
  for (int i = 0; i < 3; ++i) {
    if (!(decomposition_sum(*decs[i], params) == cert.map.defect(*anchors[i]))) {
      return fail("decomposition_resum",
                  "a decomposition does not re-sum to the defect of its point");
    }
  }

  // contradiction_clash: the witness side evaluates to 1 while the same
  // functional is identically zero by linearity of the map — the 1-versus-0
  // clash the certificate exists to exhibit.
  const std::uint32_t p = params.p;
  const Residue applied = static_cast<Residue>(
      sub_mod(sub_mod(apply(cert.map.image_of(z), w.witness),
                      apply(cert.map.image_of(w.x), w.witness), p),
              apply(cert.map.image_of(w.y), w.witness), p));
  const Functional combined = combine(
      combine(cert.map.image_of(z), cert.map.image_of(w.x), static_cast<Residue>(p - 1)),
      cert.map.image_of(w.y), static_cast<Residue>(p - 1));
  if (applied != 1 || !combined.is_zero()) {
    return fail("contradiction_clash", "the 1-versus-0 clash failed to materialize");
  }
  return {};
}

namespace {

// Candidate image with code c: coefficient of e_v is digit index(v) of c in
// little-endian base p.
Functional decode_image(std::uint64_t code, const ProblemParams& params) {
  std::vector<std::pair<std::uint64_t,  Residue>> terms;
  std::uint64_t rest = code;
  for (std::uint64_t idx = 0; idx < params.point_count && rest != 0; ++idx) {
    const Residue d = static_cast<Residue>(rest % params.p);
    rest /= params.p;
    if (d != 0) terms.emplace_back(idx, d);
  }
  return Functional(params, std::move(terms));
}

}  // namespace

MapSearchVerdict exhaustive_map_search(const ProblemParams& params, SumsetMode mode) {
  const std::uint64_t per_image = pow_sat(params.p, params.point_count);
  const std::uint64_t total = pow_sat(per_image, params.n);
  if (total > (1ull << 26)) {
    throw CapError("exhaustive_map_search: p^(p^n · n) candidate maps exceed the 2^26 cap");
  }
  const CoboundarySet S = CoboundarySet::build(params);

  // Membership table for the t-fold sumset, built by breadth-first rounds.
  std::unordered_set<Functional, FunctionalHash> members;
  std::vector<Functional> level{Functional(params)};
  if (mode == SumsetMode::upto || params.t == 0) {
    members.insert(level.front());
  }
  for (std::uint32_t s = 1; s <= params.t; ++s) {
    std::unordered_set<Functional, FunctionalHash> seen;
    std::vector<Functional> next;
    for (const Functional& f : level) {
      for (std::size_t i = 0; i < S.size(); ++i) {
        Functional g = combine(f, S.element(i), 1);
        if (seen.insert(g).second) next.push_back(std::move(g));
      }
    }
    level = std::move(next);
    if (mode == SumsetMode::upto) {
      for (const Functional& f : level) members.insert(f);
    }
  }
  if (mode == SumsetMode::exact && params.t > 0) {
    members.clear();
    for (const Functional& f : level) members.insert(f);
  }

  MapSearchVerdict verdict;

  // Every linear map sends 0 to the zero functional, so the defect at the
  // origin is e_0 regardless of the images; prune the whole search if e_0
  // is not in the sumset.
  const Functional e0 = evaluation(Point::zero(params), params);
  if (members.find(e0) == members.end()) return verdict;

  // Points grouped by top nonzero coordinate: once images 0..k are fixed,
  // every group-k point's defect is determined and must be a member.
  std::vector<std::vector<std::uint64_t>> groups(params.n);
  for (std::uint64_t xi = 1; xi < params.point_count; ++xi) {
    const Point x = Point::from_index(xi, params);
    std::uint32_t top = 0;
    for (std::uint32_t i = 0; i < params.n; ++i) {
      if (x.coords()[i] != 0) top = i;
    }
    groups[top].push_back(xi);
  }

  std::vector<Functional> images;
  images.reserve(params.n);
  const Residue minus_one = static_cast<Residue>(params.p - 1);
  std::function<bool(std::uint32_t)> dfs = [&](std::uint32_t k) -> bool {
    if (k == params.n) return true;
    for (std::uint64_t code = 0; code < per_image; ++code) {
      ++verdict.nodes;
      images.push_back(decode_image(code, params));
      bool feasible = true;
      for (const std::uint64_t xi : groups[k]) {
        const Point x = Point::from_index(xi, params);
        Functional image(params);
        for (std::uint32_t i = 0; i <= k; ++i) {
          const Residue c = x.coords()[i];
          if (c != 0) image = combine(image, images[i], c);
        }
        const Functional defect = combine(evaluation(x, params), image, minus_one);
        if (members.find(defect) == members.end()) {
          feasible = false;
          break;
        }
      }
      if (feasible && dfs(k + 1)) return true;
      images.pop_back();
    }
    return false;
  };

  if (dfs(0)) {
    verdict.map = LinearMap(params, std::move(images));
  }
  return verdict;
}

}  // namespace pfr
