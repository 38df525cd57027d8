#pragma once

#include <cstdint>
#include <vector>

#include "pfr/errors.hpp"
#include "pfr/field.hpp"

namespace pfr {

/// A linear subspace of F_p^n held as a canonical reduced row-echelon basis.
///
/// Canonical form: pivot columns strictly increasing, every pivot entry 1,
/// each pivot the only nonzero entry in its column.  Two Subspace values are
/// equal exactly when their representations are identical, so operator== is
/// genuine subspace equality.
class Subspace {
 public:
  /// Smallest subspace containing all of `points` (empty input gives the
  /// zero subspace).  Every point must match `params`.
  static Subspace span(const ProblemParams& params, const std::vector<Point>& points);

  /// The zero subspace {0}.
  static Subspace zero(const ProblemParams& params);

  /// The full space F_p^n.
  static Subspace full(const ProblemParams& params);

  std::uint32_t dimension() const { return static_cast<std::uint32_t>(basis_.size()); }
  std::uint32_t ambient_dimension() const { return n_; }
  std::uint32_t modulus() const { return p_; }

  /// Membership test by reduction against the echelon basis.
  bool contains(const Point& v) const;

  /// All p^dim elements, each exactly once, ordered lexicographically by the
  /// coefficient vector over the basis rows (first row's coefficient most
  /// significant).  Throws CapError if p^dim exceeds the dense-table cap.
  std::vector<Point> elements() const;

  /// Subspace sum A + B (span of the union of the bases).
  Subspace sum(const Subspace& other) const;

  /// Intersection A ∩ B via Zassenhaus block reduction.
  Subspace intersect(const Subspace& other) const;

  /// Canonical basis rows (RREF order); empty for the zero subspace.
  const std::vector<std::vector<Residue>>& basis() const { return basis_; }

  bool operator==(const Subspace& other) const = default;

 private:
  Subspace(std::vector<std::vector<Residue>> basis, std::uint32_t p, std::uint32_t n);

  std::vector<std::vector<Residue>> basis_;
  std::uint32_t p_ = 2;
  std::uint32_t n_ = 1;
};

/// Values of a linear functional ℓ : V → F_p with ℓ|_Z = 0 and ℓ(z) = 1,
/// aligned with Subspace::elements() order on V.
///
/// Preconditions: Z ⊆ V and z ∈ V (violations throw std::invalid_argument).
/// Throws NoExtensionError when z ∈ Z — no such functional can exist.  The
/// extension choice is deterministic: Z's basis is completed inside V by
/// canonical pivots and ℓ is set to 0 on every completion vector.
std::vector<Residue> linear_extension(const Subspace& V, const Subspace& Z, const Point& z);

}  // namespace pfr
