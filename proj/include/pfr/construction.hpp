#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "pfr/errors.hpp"
#include "pfr/field.hpp"
#include "pfr/functional.hpp"
#include "pfr/subspace.hpp"

namespace pfr {

/// A linear map φ̃ into the span of the evaluation functionals, determined by
/// the images of the n standard basis vectors.  Additivity and φ̃(0) = 0 hold
/// identically by construction.
class LinearMap {
 public:
  LinearMap(const ProblemParams& params, std::vector<Functional> basis_images);

  /// The map sending everything to the zero functional.
  static LinearMap zero(const ProblemParams& params);

  const std::vector<Functional>& basis_images() const { return basis_images_; }
  const ProblemParams& params() const { return params_; }

  /// Σ x_i · basis_images[i].
  Functional image_of(const Point& x) const;

  /// The defect e_x − φ̃(x) of the evaluation construction against this map.
  Functional defect(const Point& x) const;

  bool operator==(const LinearMap& other) const = default;

 private:
  ProblemParams params_;
  std::vector<Functional> basis_images_;
};

/// Pairs realizing the defect of x as a sum of coboundaries, or absent.
std::optional<Decomposition> defect_decomposition(const LinearMap& L, const Point& x,
                                                  std::uint32_t t, const CoboundarySet& S,
                                                  SumsetMode mode);

/// One subspace V_x per point x of F_p^n, indexed by point index, with
/// optional per-point provenance (the decomposition pairs that generated
/// V_x).  Construction enforces dim V_x ≤ 2t+1 and x ∈ V_x for every x.
class SubspaceFamily {
 public:
  SubspaceFamily(const ProblemParams& params, std::vector<Subspace> spaces,
                 std::vector<std::optional<Decomposition>> provenance);

  const ProblemParams& params() const { return params_; }
  std::uint64_t size() const { return spaces_.size(); }
  const Subspace& at(const Point& x) const;
  const Subspace& at_index(std::uint64_t index) const { return spaces_.at(index); }
  const std::optional<Decomposition>& provenance(std::uint64_t index) const {
    return provenance_.at(index);
  }

 private:
  ProblemParams params_;
  std::vector<Subspace> spaces_;
  std::vector<std::optional<Decomposition>> provenance_;
};

/// A point whose defect admits no decomposition — by itself this refutes the
/// claim that the defects of the candidate map lie in the t-fold sumset.
struct UncoveredPoint {
  Point x;
};

/// Builds V_x = span(x, a_1, b_1, …, a_t, b_t) from each point's defect
/// decomposition; returns the least uncovered point if some defect has none.
std::variant<SubspaceFamily, UncoveredPoint> family_from_map(const LinearMap& L, std::uint32_t t,
                                                             const CoboundarySet& S,
                                                             SumsetMode mode);

/// V_x = span(x, 2t seeded-random points): the generic family shape used for
/// statistical checks.  No provenance.
SubspaceFamily random_subspace_family(const ProblemParams& params, std::uint64_t seed);

/// V_x = span(x).  No provenance.
SubspaceFamily spanning_family(const ProblemParams& params);

/// V_x = F_p^n for every x; requires n ≤ 2t+1 to respect the dimension
/// invariant.  No provenance.
SubspaceFamily full_family(const ProblemParams& params);

/// True iff the nonlinearity implication holds for this x and f: a nonzero
/// defect pairing forces f to be nonlinear on V_x.  Requires provenance.
bool property3_check(const SubspaceFamily& F, const LinearMap& L, const Point& x,
                     const FunctionTable& f);

/// True iff x+y lies outside (V_x ∩ V_{x+y}) + (V_y ∩ V_{x+y}).  Degenerate
/// inputs (x = 0, y = 0, or x+y = 0) are never violating: if x+y = 0 the sum
/// contains 0, and if x = 0 then x+y = y lies in V_y ∩ V_{x+y}.
bool pair_is_violating(const SubspaceFamily& F, const Point& x, const Point& y);

/// Search plan for find_violating_pair.
struct PairStrategy {
  enum class Kind { exhaustive, randomized };

  Kind kind = Kind::exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  std::uint32_t workers = 1;

  static PairStrategy exhaustive(std::uint32_t workers = 1);
  static PairStrategy randomized(std::uint64_t seed, std::uint64_t budget,
                                 std::uint32_t workers = 1);
};

struct PairSearchResult {
  std::optional<std::pair<Point, Point>> pair;
  /// Canonical probe count: schedule-independent rank of the hit in the
  /// search order (exhaustive) or the number of ticks consumed (randomized).
  std::uint64_t probes = 0;
};

/// Finds a violating pair.  Exhaustive: the lexicographically least
/// (index(x), index(y)) over non-degenerate pairs, or a definitive absence.
/// Randomized: seeded counter-based probing within the budget.  Results are
/// identical for every worker count.
PairSearchResult find_violating_pair(const SubspaceFamily& F, const PairStrategy& strategy);

/// The witness table for a violating pair: zero on V_x and V_y, the canonical
/// linear extension on V_{x+y} with value 1 at x+y, zero elsewhere.  All
/// posted guarantees (the three values and linearity on the three subspaces)
/// are re-checked before returning.  Propagates NoExtensionError when the
/// pair is not violating.
FunctionTable build_witness(const Point& x, const Point& y, const SubspaceFamily& F);

}  // namespace pfr
