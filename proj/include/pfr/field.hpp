#pragma once

#include <cstdint>
#include <vector>

#include "pfr/errors.hpp"

namespace pfr {

/// Residue mod p. p is capped well below 2^15 so products fit in 32 bits.
using Residue = std::uint16_t;

bool is_prime(std::uint32_t m);

/// p^e with saturation at UINT64_MAX (bounds such as p^{n+2t+1} can leave
/// the representable range for large t; comparisons against a saturated
/// bound stay sound because the true value is at least as large).
std::uint64_t pow_sat(std::uint64_t base, std::uint64_t exp);

inline std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint32_t s = a + b;
  return s >= p ? s - p : s;
}

inline std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : a + p - b;
}

inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}

/// Multiplicative inverse mod prime p (extended Euclid). Requires a != 0 mod p.
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);

/// Global parameter block: prime modulus p, ambient dimension n, sumset
/// fold count t. Construction validates primality and the dense-table cap
/// p^n <= 2^24; everything downstream can then index tables with p^n slots.
struct ProblemParams {
  static constexpr std::uint64_t kTableCap = std::uint64_t{1} << 24;
  static constexpr std::uint32_t kModulusCap = 1u << 14;

  std::uint32_t p = 2;
  std::uint32_t n = 1;
  std::uint32_t t = 0;
  std::uint64_t point_count = 2;  // p^n

  ProblemParams(std::uint32_t p_, std::uint32_t n_, std::uint32_t t_);

  bool operator==(const ProblemParams&) const = default;
};

/// A vector in F_p^n. Coordinates are little-endian digits of the canonical
/// index: index = sum_i coords[i] * p^i. The index is the key used by every
/// dense table and serialized artifact, so the convention is frozen here.
class Point {
 public:
  Point(std::vector<Residue> coords, std::uint32_t p);

  static Point from_index(std::uint64_t index, const ProblemParams& params);
  static Point zero(const ProblemParams& params);
  static Point unit(std::uint32_t axis, const ProblemParams& params);

  std::uint64_t index() const { return index_; }
  const std::vector<Residue>& coords() const { return coords_; }
  std::uint32_t modulus() const { return p_; }
  std::uint32_t dimension() const { return static_cast<std::uint32_t>(coords_.size()); }
  bool is_zero() const { return index_ == 0; }

  Point operator+(const Point& other) const;
  /// Scalar multiple lambda * this, lambda in [0, p).
  Point scaled(Residue lambda) const;
  Point negated() const;

  bool operator==(const Point&) const = default;

 private:
  std::vector<Residue> coords_;
  std::uint64_t index_ = 0;
  std::uint32_t p_ = 2;
};

/// Dense table of a function f: F_p^n -> F_p, indexed by point index.
class FunctionTable {
 public:
  FunctionTable(const ProblemParams& params, std::vector<Residue> values);

  static FunctionTable zeros(const ProblemParams& params);
  /// Deterministic seeded table: mt19937_64 stream with rejection sampling,
  /// so the same seed yields the same table on every platform.
  static FunctionTable random(const ProblemParams& params, std::uint64_t seed);

  Residue eval(const Point& x) const;
  Residue at(std::uint64_t index) const;
  void set(std::uint64_t index, Residue value);

  std::uint64_t size() const { return values_.size(); }
  std::uint32_t modulus() const { return p_; }
  std::uint32_t dimension() const { return n_; }
  const std::vector<Residue>& values() const { return values_; }

  bool operator==(const FunctionTable&) const = default;

 private:
  std::vector<Residue> values_;
  std::uint32_t p_;
  std::uint32_t n_;
};

/// SplitMix64 step; used to derive independent seed streams from one seed.
std::uint64_t splitmix64(std::uint64_t x);

/// Derived stream seed: deterministic function of (seed, stream id).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed + 0x9e3779b97f4a7c15ull * (stream + 1));
}

}  // namespace pfr
