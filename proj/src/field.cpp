#include "pfr/field.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace pfr {

bool is_prime(std::uint32_t m) {
  if (m < 2) return false;
  for (std::uint32_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) return false;
  }
  return true;
}

std::uint64_t pow_sat(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  a %= p;
  if (a == 0) throw std::invalid_argument("inv_mod: zero has no inverse");
  std::int64_t r0 = p, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    std::int64_t s2 = s0 - q * s1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
  }
  std::int64_t inv = s0 % static_cast<std::int64_t>(p);
  if (inv < 0) inv += p;
  return static_cast<std::uint32_t>(inv);
}

ProblemParams::ProblemParams(std::uint32_t p_, std::uint32_t n_, std::uint32_t t_)
    : p(p_), n(n_), t(t_) {
  if (!is_prime(p)) throw std::invalid_argument("ProblemParams: p must be prime");
  if (p >= kModulusCap) throw CapError("ProblemParams: p exceeds the modulus cap 2^14");
  if (n < 1) throw std::invalid_argument("ProblemParams: n must be at least 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q *= p;
    if (q > kTableCap) {
      throw CapError("ProblemParams: p^n exceeds the dense-table cap 2^24");
    }
  }
  point_count = q;
}

Point::Point(std::vector<Residue> coords, std::uint32_t p)
    : coords_(std::move(coords)), p_(p) {
  if (coords_.empty()) throw std::invalid_argument("Point: empty coordinate vector");
  std::uint64_t idx = 0;
  for (std::size_t i = coords_.size(); i-- > 0;) {
    if (coords_[i] >= p_) throw std::invalid_argument("Point: coordinate out of range");
    idx = idx * p_ + coords_[i];
  }
  index_ = idx;
}

Point Point::from_index(std::uint64_t index, const ProblemParams& params) {
  if (index >= params.point_count) {
    throw std::invalid_argument("Point::from_index: index out of range");
  }
  std::vector<Residue> coords(params.n);
  for (std::uint32_t i = 0; i < params.n; ++i) {
    coords[i] = static_cast<Residue>(index % params.p);
    index /= params.p;
  }
  return Point(std::move(coords), params.p);
}

Point Point::zero(const ProblemParams& params) {
  return Point(std::vector<Residue>(params.n, 0), params.p);
}

Point Point::unit(std::uint32_t axis, const ProblemParams& params) {
  if (axis >= params.n) throw std::invalid_argument("Point::unit: axis out of range");
  std::vector<Residue> coords(params.n, 0);
  coords[axis] = 1;
  return Point(std::move(coords), params.p);
}

Point Point::operator+(const Point& other) const {
  if (p_ != other.p_ || coords_.size() != other.coords_.size()) {
    throw std::invalid_argument("Point: mismatched parameters in addition");
  }
  std::vector<Residue> out(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    out[i] = static_cast<Residue>(add_mod(coords_[i], other.coords_[i], p_));
  }
  return Point(std::move(out), p_);
}

Point Point::scaled(Residue lambda) const {
  if (lambda >= p_) throw std::invalid_argument("Point::scaled: scalar out of range");
  std::vector<Residue> out(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    out[i] = static_cast<Residue>(mul_mod(coords_[i], lambda, p_));
  }
  return Point(std::move(out), p_);
}

Point Point::negated() const {
  std::vector<Residue> out(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    out[i] = static_cast<Residue>(sub_mod(0, coords_[i], p_));
  }
  return Point(std::move(out), p_);
}

FunctionTable::FunctionTable(const ProblemParams& params, std::vector<Residue> values)
    : values_(std::move(values)), p_(params.p), n_(params.n) {
  if (values_.size() != params.point_count) {
    throw std::invalid_argument("FunctionTable: wrong number of entries");
  }
  for (Residue v : values_) {
    if (v >= p_) throw std::invalid_argument("FunctionTable: entry out of range");
  }
}

FunctionTable FunctionTable::zeros(const ProblemParams& params) {
  return FunctionTable(params, std::vector<Residue>(params.point_count, 0));
}

namespace {

// Unbiased residue draw. mt19937_64 output is fully specified by the
// standard, so seeded tables are reproducible across implementations.
Residue draw_residue(std::mt19937_64& rng, std::uint32_t p) {
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % p + 1) % p;
  std::uint64_t r = rng();
  while (r > limit) r = rng();
  return static_cast<Residue>(r % p);
}

}  // namespace

FunctionTable FunctionTable::random(const ProblemParams& params, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Residue> values(params.point_count);
  for (auto& v : values) v = draw_residue(rng, params.p);
  return FunctionTable(params, std::move(values));
}

Residue FunctionTable::eval(const Point& x) const {
  if (x.modulus() != p_ || x.dimension() != n_) {
    throw std::invalid_argument("FunctionTable::eval: mismatched parameters");
  }
  return values_[x.index()];
}

Residue FunctionTable::at(std::uint64_t index) const {
  if (index >= values_.size()) throw std::invalid_argument("FunctionTable::at: index out of range");
  return values_[index];
}

void FunctionTable::set(std::uint64_t index, Residue value) {
  if (index >= values_.size()) throw std::invalid_argument("FunctionTable::set: index out of range");
  if (value >= p_) throw std::invalid_argument("FunctionTable::set: value out of range");
  values_[index] = value;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace pfr
