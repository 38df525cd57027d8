#include "pfr/construction.hpp"

#include <atomic>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace pfr {

namespace {

// Multiply-shift map from a full-width word to [0, m); used for counter-based
// probing so that probe j is a pure function of (seed, j).
inline std::uint64_t map_to_range(std::uint64_t r, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * m) >> 64);
}

// Exact uniform draw from [0, m) by rejection on the generator's raw output.
std::uint64_t draw_index(std::mt19937_64& rng, std::uint64_t m) {
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % m + 1) % m;
  std::uint64_t r = rng();
  while (r > limit) r = rng();
  return r % m;
}

void atomic_min(std::atomic<std::uint64_t>& target, std::uint64_t value) {
  std::uint64_t cur = target.load(std::memory_order_relaxed);
  while (value < cur &&
         !target.compare_exchange_weak(cur, value, std::memory_order_relaxed)) {
  }
}

}  // namespace

LinearMap::LinearMap(const ProblemParams& params, std::vector<Functional> basis_images)
    : params_(params), basis_images_(std::move(basis_images)) {
  if (basis_images_.size() != params_.n) {
    throw std::invalid_argument("LinearMap: expected one basis image per dimension");
  }
  for (const Functional& g : basis_images_) {
    if (g.modulus() != params_.p || g.dimension() != params_.n) {
      throw std::invalid_argument("LinearMap: basis image does not match params");
    }
  }
}

LinearMap LinearMap::zero(const ProblemParams& params) {
  return LinearMap(params, std::vector<Functional>(params.n, Functional(params)));
}

Functional LinearMap::image_of(const Point& x) const {
  if (x.modulus() != params_.p || x.dimension() != params_.n) {
    throw std::invalid_argument("LinearMap::image_of: point does not match params");
  }
  Functional acc(params_);
  for (std::uint32_t i = 0; i < params_.n; ++i) {
    const Residue c = x.coords()[i];
    if (c != 0) acc = combine(acc, basis_images_[i], c);
  }
  return acc;
}

Functional LinearMap::defect(const Point& x) const {
  return combine(evaluation(x, params_), image_of(x), static_cast<Residue>(params_.p - 1));
}

std::optional<Decomposition> defect_decomposition(const LinearMap& L, const Point& x,
                                                  std::uint32_t t, const CoboundarySet& S,
                                                  SumsetMode mode) {
  if (S.params().p != L.params().p || S.params().n != L.params().n) {
    throw std::invalid_argument("defect_decomposition: set and map disagree on params");
  }
  return sumset_decompose(L.defect(x), t, S, mode);
}

SubspaceFamily::SubspaceFamily(const ProblemParams& params, std::vector<Subspace> spaces,
                               std::vector<std::optional<Decomposition>> provenance)
    : params_(params), spaces_(std::move(spaces)), provenance_(std::move(provenance)) {
  if (spaces_.size() != params_.point_count) {
    throw std::invalid_argument("SubspaceFamily: expected one subspace per point");
  }
  if (provenance_.size() != spaces_.size()) {
    throw std::invalid_argument("SubspaceFamily: provenance length mismatch");
  }
  const std::uint32_t dim_cap = 2 * params_.t + 1;
  for (std::uint64_t i = 0; i < spaces_.size(); ++i) {
    const Subspace& V = spaces_[i];
    if (V.modulus() != params_.p || V.ambient_dimension() != params_.n) {
      throw std::invalid_argument("SubspaceFamily: subspace does not match params");
    }
    if (V.dimension() > dim_cap) {
      throw std::invalid_argument("SubspaceFamily: subspace dimension exceeds 2t+1");
    }
    if (!V.contains(Point::from_index(i, params_))) {
      throw std::invalid_argument("SubspaceFamily: subspace misses its own point");
    }
  }
}

const Subspace& SubspaceFamily::at(const Point& x) const {
  if (x.modulus() != params_.p || x.dimension() != params_.n) {
    throw std::invalid_argument("SubspaceFamily::at: point does not match params");
  }
  return spaces_[x.index()];
}

std::variant<SubspaceFamily, UncoveredPoint> family_from_map(const LinearMap& L, std::uint32_t t,
                                                             const CoboundarySet& S,
                                                             SumsetMode mode) {
  const ProblemParams& params = L.params();
  std::vector<Subspace> spaces;
  std::vector<std::optional<Decomposition>> provenance;
  spaces.reserve(params.point_count);
  provenance.reserve(params.point_count);
  for (std::uint64_t xi = 0; xi < params.point_count; ++xi) {
    const Point x = Point::from_index(xi, params);
    auto dec = defect_decomposition(L, x, t, S, mode);
    if (!dec) return UncoveredPoint{x};
    std::vector<Point> generators{x};
    for (const auto& [a, b] : *dec) {
      generators.push_back(a);
      generators.push_back(b);
    }
    spaces.push_back(Subspace::span(params, generators));
    provenance.push_back(std::move(dec));
  }
  return SubspaceFamily(params, std::move(spaces), std::move(provenance));
}

SubspaceFamily random_subspace_family(const ProblemParams& params, std::uint64_t seed) {
  std::vector<Subspace> spaces;
  spaces.reserve(params.point_count);
  for (std::uint64_t xi = 0; xi < params.point_count; ++xi) {
    std::mt19937_64 rng(derive_seed(seed, xi));
    std::vector<Point> generators{Point::from_index(xi, params)};
    for (std::uint32_t k = 0; k < 2 * params.t; ++k) {
      generators.push_back(Point::from_index(draw_index(rng, params.point_count), params));
    }
    spaces.push_back(Subspace::span(params, generators));
  }
  std::vector<std::optional<Decomposition>> provenance(params.point_count);
  return SubspaceFamily(params, std::move(spaces), std::move(provenance));
}

SubspaceFamily spanning_family(const ProblemParams& params) {
  std::vector<Subspace> spaces;
  spaces.reserve(params.point_count);
  for (std::uint64_t xi = 0; xi < params.point_count; ++xi) {
    spaces.push_back(Subspace::span(params, {Point::from_index(xi, params)}));
  }
  std::vector<std::optional<Decomposition>> provenance(params.point_count);
  return SubspaceFamily(params, std::move(spaces), std::move(provenance));
}

SubspaceFamily full_family(const ProblemParams& params) {
  if (params.n > 2 * params.t + 1) {
    throw std::invalid_argument("full_family: the full space violates dim ≤ 2t+1 when n > 2t+1");
  }
  std::vector<Subspace> spaces(params.point_count, Subspace::full(params));
  std::vector<std::optional<Decomposition>> provenance(params.point_count);
  return SubspaceFamily(params, std::move(spaces), std::move(provenance));
}

bool property3_check(const SubspaceFamily& F, const LinearMap& L, const Point& x,
                     const FunctionTable& f) {
  if (!F.provenance(x.index())) {
    throw std::invalid_argument("property3_check: family has no provenance at x");
  }
  if (apply(L.defect(x), f) == 0) return true;
  return !is_linear_on(f, F.at(x));
}

bool pair_is_violating(const SubspaceFamily& F, const Point& x, const Point& y) {
  const Point z = x + y;
  if (x.is_zero() || y.is_zero() || z.is_zero()) return false;
  const Subspace& Vz = F.at(z);
  const Subspace joint = F.at(x).intersect(Vz).sum(F.at(y).intersect(Vz));
  return !joint.contains(z);
}

PairStrategy PairStrategy::exhaustive(std::uint32_t workers) {
  PairStrategy s;
  s.kind = Kind::exhaustive;
  s.workers = workers;
  return s;
}

PairStrategy PairStrategy::randomized(std::uint64_t seed, std::uint64_t budget,
                                      std::uint32_t workers) {
  PairStrategy s;
  s.kind = Kind::randomized;
  s.seed = seed;
  s.budget = budget;
  s.workers = workers;
  return s;
}

namespace {

constexpr std::uint64_t kNotFound = UINT64_MAX;

// Least packed key x·q + y over violating pairs, scanned in ascending order
// with strided worker partitioning; identical for every worker count.
std::uint64_t exhaustive_scan(const SubspaceFamily& F, std::uint32_t workers) {
  const std::uint64_t q = F.size();
  std::atomic<std::uint64_t> best{kNotFound};
  auto scan_stride = [&](std::uint64_t first, std::uint64_t stride) {
    const ProblemParams& params = F.params();
    for (std::uint64_t xi = first; xi < q; xi += stride) {
      if (xi == 0) continue;
      if (xi * q >= best.load(std::memory_order_relaxed)) break;
      const Point x = Point::from_index(xi, params);
      for (std::uint64_t yi = 1; yi < q; ++yi) {
        const std::uint64_t key = xi * q + yi;
        if (key >= best.load(std::memory_order_relaxed)) break;
        const Point y = Point::from_index(yi, params);
        if (pair_is_violating(F, x, y)) {
          atomic_min(best, key);
          break;
        }
      }
    }
  };
  if (workers <= 1) {
    scan_stride(1, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint32_t w = 0; w < workers; ++w) {
      pool.emplace_back(scan_stride, 1 + w, workers);
    }
    for (auto& th : pool) th.join();
  }
  return best.load();
}

// Least successful tick over counter-based probes; tick j is a pure function
// of (seed, j), so the outcome is independent of worker count.
std::uint64_t randomized_scan(const SubspaceFamily& F, std::uint64_t seed, std::uint64_t budget,
                              std::uint32_t workers, Point* out_x, Point* out_y) {
  const std::uint64_t q = F.size();
  const ProblemParams& params = F.params();
  std::atomic<std::uint64_t> best{kNotFound};
  auto probe_at = [&](std::uint64_t j, Point& x, Point& y) {
    x = Point::from_index(1 + map_to_range(splitmix64(seed ^ (2 * j)), q - 1), params);
    y = Point::from_index(1 + map_to_range(splitmix64(seed ^ (2 * j + 1)), q - 1), params);
    return pair_is_violating(F, x, y);
  };
  auto scan_stride = [&](std::uint64_t first, std::uint64_t stride) {
    Point x = Point::zero(params);
    Point y = Point::zero(params);
    for (std::uint64_t j = first; j < budget; j += stride) {
      if (j >= best.load(std::memory_order_relaxed)) break;
      if (probe_at(j, x, y)) {
        atomic_min(best, j);
        break;
      }
    }
  };
  if (q < 2) return kNotFound;
  if (workers <= 1) {
    scan_stride(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint32_t w = 0; w < workers; ++w) {
      pool.emplace_back(scan_stride, w, workers);
    }
    for (auto& th : pool) th.join();
  }
  const std::uint64_t hit = best.load();
  if (hit != kNotFound) {
    Point x = Point::zero(params);
    Point y = Point::zero(params);
    probe_at(hit, x, y);
    *out_x = x;
    *out_y = y;
  }
  return hit;
}

}  // namespace

PairSearchResult find_violating_pair(const SubspaceFamily& F, const PairStrategy& strategy) {
  const std::uint64_t q = F.size();
  const ProblemParams& params = F.params();
  PairSearchResult result;
  if (strategy.kind == PairStrategy::Kind::exhaustive) {
    const std::uint64_t key = exhaustive_scan(F, strategy.workers);
    if (key == kNotFound) {
      // Each nonzero x admits q-2 candidate partners (y = 0 and y = -x are
      // skipped), so the definitive-absence probe count is (q-1)(q-2).
      result.probes = (q >= 2) ? (q - 1) * (q - 2) : 0;
      return result;
    }
    const std::uint64_t xi = key / q;
    const std::uint64_t yi = key % q;
    const Point x = Point::from_index(xi, params);
    const Point y = Point::from_index(yi, params);
    const std::uint64_t neg_index = x.negated().index();
    result.pair = std::make_pair(x, y);
    result.probes = (xi - 1) * (q - 2) + yi - (neg_index <= yi ? 1 : 0);
    return result;
  }
  Point x = Point::zero(params);
  Point y = Point::zero(params);
  const std::uint64_t hit =
      randomized_scan(F, strategy.seed, strategy.budget, strategy.workers, &x, &y);
  if (hit == kNotFound) {
    result.probes = strategy.budget;
    return result;
  }
  result.pair = std::make_pair(x, y);
  result.probes = hit + 1;
  return result;
}

FunctionTable build_witness(const Point& x, const Point& y, const SubspaceFamily& F) {
  const ProblemParams& params = F.params();
  const Point z = x + y;
  const Subspace& Vx = F.at(x);
  const Subspace& Vy = F.at(y);
  const Subspace& Vz = F.at(z);
  const Subspace joint = Vx.intersect(Vz).sum(Vy.intersect(Vz));
  const std::vector<Residue> values = linear_extension(Vz, joint, z);

  FunctionTable f = FunctionTable::zeros(params);
  const std::vector<Point> carrier = Vz.elements();
  for (std::size_t i = 0; i < carrier.size(); ++i) {
    f.set(carrier[i].index(), values[i]);
  }

  if (f.eval(x) != 0 || f.eval(y) != 0 || f.eval(z) != 1 || !is_linear_on(f, Vx) ||
      !is_linear_on(f, Vy) || !is_linear_on(f, Vz)) {
    throw std::logic_error("build_witness: posted guarantees failed re-checking");
  }
  return f;
}

}  // namespace pfr
