#include "pfr/subspace.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace pfr {

namespace {

// In-place reduced row-echelon form over F_p; zero rows are dropped, so the
// result is the canonical basis of the row space (pivots strictly increasing,
// pivot entries 1, pivots isolated in their columns).
void rref(std::vector<std::vector<Residue>>& rows, std::uint32_t p) {
  if (rows.empty()) return;
  const std::size_t cols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const std::uint32_t inv = inv_mod(rows[rank][col], p);
    for (std::size_t c = col; c < cols; ++c) {
      rows[rank][c] = static_cast<Residue>(mul_mod(rows[rank][c], inv, p));
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const std::uint32_t factor = rows[r][col];
      for (std::size_t c = col; c < cols; ++c) {
        rows[r][c] = static_cast<Residue>(
            sub_mod(rows[r][c], mul_mod(factor, rows[rank][c], p), p));
      }
    }
    ++rank;
  }
  rows.resize(rank);
}

// Reduces v against RREF basis rows; returns the residual.
std::vector<Residue> reduce_against(const std::vector<std::vector<Residue>>& basis,
                                    std::vector<Residue> v, std::uint32_t p) {
  for (const auto& row : basis) {
    std::size_t pivot = 0;
    while (pivot < row.size() && row[pivot] == 0) ++pivot;
    if (pivot == row.size()) continue;
    const std::uint32_t factor = v[pivot];
    if (factor == 0) continue;
    for (std::size_t c = pivot; c < row.size(); ++c) {
      v[c] = static_cast<Residue>(sub_mod(v[c], mul_mod(factor, row[c], p), p));
    }
  }
  return v;
}

bool all_zero(const std::vector<Residue>& v) {
  for (Residue r : v) {
    if (r != 0) return false;
  }
  return true;
}

}  // namespace

Subspace::Subspace(std::vector<std::vector<Residue>> basis, std::uint32_t p, std::uint32_t n)
    : basis_(std::move(basis)), p_(p), n_(n) {}

Subspace Subspace::span(const ProblemParams& params, const std::vector<Point>& points) {
  std::vector<std::vector<Residue>> rows;
  rows.reserve(points.size());
  for (const Point& pt : points) {
    if (pt.modulus() != params.p || pt.dimension() != params.n) {
      throw std::invalid_argument("Subspace::span: point does not match params");
    }
    rows.push_back(pt.coords());
  }
  rref(rows, params.p);
  return Subspace(std::move(rows), params.p, params.n);
}

Subspace Subspace::zero(const ProblemParams& params) {
  return Subspace({}, params.p, params.n);
}

Subspace Subspace::full(const ProblemParams& params) {
  std::vector<std::vector<Residue>> rows(params.n, std::vector<Residue>(params.n, 0));
  for (std::uint32_t i = 0; i < params.n; ++i) rows[i][i] = 1;
  return Subspace(std::move(rows), params.p, params.n);
}

bool Subspace::contains(const Point& v) const {
  if (v.modulus() != p_ || v.dimension() != n_) {
    throw std::invalid_argument("Subspace::contains: point does not match subspace");
  }
  return all_zero(reduce_against(basis_, v.coords(), p_));
}

std::vector<Point> Subspace::elements() const {
  const std::uint32_t d = dimension();
  const std::uint64_t count = pow_sat(p_, d);
  if (count > ProblemParams::kTableCap) {
    throw CapError("Subspace::elements: p^dim exceeds the dense-table cap");
  }
  std::vector<Point> out;
  out.reserve(count);
  for (std::uint64_t m = 0; m < count; ++m) {
    std::vector<Residue> coords(n_, 0);
    std::uint64_t rest = m;
    // Coefficient of basis row i is digit (d-1-i), so row 0 is most
    // significant and the order is lexicographic in coefficient vectors.
    for (std::uint32_t i = d; i-- > 0;) {
      const std::uint32_t c = static_cast<std::uint32_t>(rest % p_);
      rest /= p_;
      if (c == 0) continue;
      for (std::uint32_t j = 0; j < n_; ++j) {
        coords[j] = static_cast<Residue>(add_mod(coords[j], mul_mod(c, basis_[i][j], p_), p_));
      }
    }
    out.emplace_back(std::move(coords), p_);
  }
  return out;
}

Subspace Subspace::sum(const Subspace& other) const {
  if (p_ != other.p_ || n_ != other.n_) {
    throw std::invalid_argument("Subspace::sum: mismatched subspaces");
  }
  std::vector<std::vector<Residue>> rows = basis_;
  rows.insert(rows.end(), other.basis_.begin(), other.basis_.end());
  rref(rows, p_);
  return Subspace(std::move(rows), p_, n_);
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (p_ != other.p_ || n_ != other.n_) {
    throw std::invalid_argument("Subspace::intersect: mismatched subspaces");
  }
  // Zassenhaus block reduction: echelonize rows [u|u] for u in A and [v|0]
  // for v in B; rows whose left half vanishes carry a basis of A ∩ B in the
  // right half.
  std::vector<std::vector<Residue>> block;
  block.reserve(basis_.size() + other.basis_.size());
  for (const auto& u : basis_) {
    std::vector<Residue> row(2 * n_, 0);
    for (std::uint32_t j = 0; j < n_; ++j) {
      row[j] = u[j];
      row[n_ + j] = u[j];
    }
    block.push_back(std::move(row));
  }
  for (const auto& v : other.basis_) {
    std::vector<Residue> row(2 * n_, 0);
    for (std::uint32_t j = 0; j < n_; ++j) row[j] = v[j];
    block.push_back(std::move(row));
  }
  rref(block, p_);
  std::vector<std::vector<Residue>> inter;
  for (const auto& row : block) {
    bool left_zero = true;
    for (std::uint32_t j = 0; j < n_; ++j) {
      if (row[j] != 0) {
        left_zero = false;
        break;
      }
    }
    if (!left_zero) continue;
    inter.emplace_back(row.begin() + n_, row.end());
  }
  rref(inter, p_);
  return Subspace(std::move(inter), p_, n_);
}

std::vector<Residue> linear_extension(const Subspace& V, const Subspace& Z, const Point& z) {
  const std::uint32_t p = V.modulus();
  const std::uint32_t n = V.ambient_dimension();
  if (Z.modulus() != p || Z.ambient_dimension() != n || z.modulus() != p || z.dimension() != n) {
    throw std::invalid_argument("linear_extension: mismatched parameters");
  }
  for (const auto& row : Z.basis()) {
    if (!all_zero(reduce_against(V.basis(), row, p))) {
      throw std::invalid_argument("linear_extension: Z is not contained in V");
    }
  }
  if (!V.contains(z)) {
    throw std::invalid_argument("linear_extension: z is not in V");
  }
  if (Z.contains(z)) {
    throw NoExtensionError("linear_extension: z lies in Z, so no functional vanishing on Z can map it to 1");
  }

  // Adapted basis of V: Z's rows, then z, then canonical completion by V's
  // own echelon rows.  ℓ is 1 on z and 0 on every other adapted row.
  std::vector<std::vector<Residue>> adapted = Z.basis();
  adapted.push_back(z.coords());
  std::vector<std::vector<Residue>> echelon = adapted;
  rref(echelon, p);
  for (const auto& row : V.basis()) {
    if (echelon.size() == V.dimension()) break;
    if (all_zero(reduce_against(echelon, row, p))) continue;
    adapted.push_back(row);
    echelon.push_back(row);
    rref(echelon, p);
  }

  // Solve A·w = u for a representing vector w, where A stacks the adapted
  // rows and u is the indicator of z's position; then ℓ(v) = <w, v>.
  const std::size_t r = adapted.size();
  const std::size_t zpos = Z.basis().size();
  std::vector<std::vector<Residue>> aug(r, std::vector<Residue>(n + 1, 0));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) aug[i][j] = adapted[i][j];
    aug[i][n] = (i == zpos) ? 1 : 0;
  }
  rref(aug, p);
  std::vector<Residue> w(n, 0);
  for (const auto& row : aug) {
    std::size_t pivot = 0;
    while (pivot < n && row[pivot] == 0) ++pivot;
    if (pivot == n) {
      throw std::logic_error("linear_extension: inconsistent system for independent rows");
    }
    w[pivot] = row[n];
  }

  std::vector<Point> pts = V.elements();
  std::vector<Residue> values;
  values.reserve(pts.size());
  for (const Point& pt : pts) {
    std::uint32_t acc = 0;
    const auto& coords = pt.coords();
    for (std::uint32_t j = 0; j < n; ++j) {
      acc = add_mod(acc, mul_mod(w[j], coords[j], p), p);
    }
    values.push_back(static_cast<Residue>(acc));
  }
  return values;
}

}  // namespace pfr
