#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pfr/errors.hpp"
#include "pfr/field.hpp"
#include "pfr/subspace.hpp"

namespace pfr {

/// A finitely supported formal combination Σ c_v·e_v of evaluation
/// functionals, where e_v sends a table f to f(v).  Only this span is ever
/// materialized; the ambient dual space is astronomically large.
///
/// Terms are kept sorted by point index with no zero coefficients, so
/// equality is representation equality.
class Functional {
 public:
  /// The zero functional.
  explicit Functional(const ProblemParams& params);

  /// Construction from raw terms (sorted, deduplicated and zero-stripped here).
  Functional(const ProblemParams& params, std::vector<std::pair<std::uint64_t, Residue>> raw_terms);

  const std::vector<std::pair<std::uint64_t, Residue>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }
  std::uint32_t modulus() const { return p_; }
  std::uint32_t dimension() const { return n_; }
  std::uint64_t point_count() const { return point_count_; }

  bool operator==(const Functional& other) const = default;

 private:
  // Trusted fast path for already-normalized term lists.
  Functional(std::uint32_t p, std::uint32_t n, std::uint64_t point_count,
             std::vector<std::pair<std::uint64_t, Residue>> sorted_terms);

  friend Functional evaluation(const Point& v, const ProblemParams& params);
  friend Functional combine(const Functional& g, const Functional& h, Residue lambda);

  std::vector<std::pair<std::uint64_t, Residue>> terms_;
  std::uint32_t p_ = 2;
  std::uint32_t n_ = 1;
  std::uint64_t point_count_ = 2;
};

struct FunctionalHash {
  std::size_t operator()(const Functional& g) const;
};

/// The evaluation functional e_v (coefficient 1 at v).
Functional evaluation(const Point& v, const ProblemParams& params);

/// The coboundary e_{a+b} − e_a − e_b with coefficients merged when points
/// coincide.  Never the zero functional.
Functional coboundary(const Point& a, const Point& b, const ProblemParams& params);

/// Σ c_v·f(v) mod p.
Residue apply(const Functional& g, const FunctionTable& f);

/// g + λ·h with zero-coefficient terms dropped.
Functional combine(const Functional& g, const Functional& h, Residue lambda);

/// The set S of all distinct coboundaries over F_p^n, each with its first
/// witness pair in ascending (index(a), index(b)) scan order.  That scan
/// order is also the canonical order of the elements.
class CoboundarySet {
 public:
  /// Enumerates all p^{2n} pairs; throws CapError when p^{2n} exceeds the
  /// dense-table cap.
  static CoboundarySet build(const ProblemParams& params);

  std::size_t size() const { return elements_.size(); }
  const Functional& element(std::size_t i) const { return elements_.at(i); }
  const std::pair<Point, Point>& witness(std::size_t i) const { return witnesses_.at(i); }
  std::optional<std::size_t> index_of(const Functional& g) const;
  const ProblemParams& params() const { return params_; }

 private:
  explicit CoboundarySet(const ProblemParams& params);

  ProblemParams params_;
  std::vector<Functional> elements_;
  std::vector<std::pair<Point, Point>> witnesses_;
  std::unordered_map<Functional, std::size_t, FunctionalHash> lookup_;
};

/// An ordered list of point pairs whose coboundaries sum to a target.
using Decomposition = std::vector<std::pair<Point, Point>>;

/// Membership mode for the t-fold sumset: `exact` uses exactly t summands;
/// `upto` accepts any count 0 ≤ s ≤ t, where the empty sum is the zero
/// functional.
enum class SumsetMode { exact, upto };

/// Σ coboundary(a_i, b_i) over the pairs.
Functional decomposition_sum(const Decomposition& pairs, const ProblemParams& params);

/// Decides g ∈ tS and, on success, returns the witnessing pairs.
///
/// Deterministic: the lexicographically least decomposition under the
/// canonical element order of S (and, in upto mode, the least summand count
/// first).  Every returned decomposition is re-summed against g before being
/// handed out.
std::optional<Decomposition> sumset_decompose(const Functional& g, std::uint32_t t,
                                              const CoboundarySet& S, SumsetMode mode);

/// True iff f(u+w) = f(u) + f(w) for all u, w in V.  Decided through the
/// basis: f is linear on V exactly when f agrees with the linear extension of
/// its basis values.  Throws CapError when p^dim exceeds the dense-table cap.
bool is_linear_on(const FunctionTable& f, const Subspace& V);

}  // namespace pfr
