#include "pfr/functional.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pfr {

Functional::Functional(const ProblemParams& params)
    : p_(params.p), n_(params.n), point_count_(params.point_count) {}

Functional::Functional(const ProblemParams& params,
                       std::vector<std::pair<std::uint64_t, Residue>> raw_terms)
    : p_(params.p), n_(params.n), point_count_(params.point_count) {
  std::sort(raw_terms.begin(), raw_terms.end());
  for (const auto& [index, coeff] : raw_terms) {
    if (index >= point_count_) throw std::invalid_argument("Functional: term index out of range");
    if (coeff >= p_) throw std::invalid_argument("Functional: term coefficient out of range");
    const Residue c = coeff;
    if (c == 0) continue;
    if (!terms_.empty() && terms_.back().first == index) {
      const Residue merged = static_cast<Residue>(add_mod(terms_.back().second, c, p_));
      if (merged == 0) {
        terms_.pop_back();
      } else {
        terms_.back().second = merged;
      }
    } else {
      terms_.emplace_back(index, c);
    }
  }
}

Functional::Functional(std::uint32_t p, std::uint32_t n, std::uint64_t point_count,
                       std::vector<std::pair<std::uint64_t, Residue>> sorted_terms)
    : terms_(std::move(sorted_terms)), p_(p), n_(n), point_count_(point_count) {}

std::size_t FunctionalHash::operator()(const Functional& g) const {
  std::uint64_t h = splitmix64(0x5eed0000ull ^ g.modulus());
  h = splitmix64(h ^ g.dimension());
  for (const auto& [index, coeff] : g.terms()) {
    h = splitmix64(h ^ index);
    h = splitmix64(h ^ coeff);
  }
  return static_cast<std::size_t>(h);
}

Functional evaluation(const Point& v, const ProblemParams& params) {
  if (v.modulus() != params.p || v.dimension() != params.n) {
    throw std::invalid_argument("evaluation: point does not match params");
  }
  return Functional(params.p, params.n, params.point_count, {{v.index(), Residue{1}}});
}

Functional coboundary(const Point& a, const Point& b, const ProblemParams& params) {
  if (a.modulus() != params.p || a.dimension() != params.n || b.modulus() != params.p ||
      b.dimension() != params.n) {
    throw std::invalid_argument("coboundary: points do not match params");
  }
  const Residue minus_one = static_cast<Residue>(params.p - 1);
  Functional out(params, {{(a + b).index(), Residue{1}},
                          {a.index(), minus_one},
                          {b.index(), minus_one}});
  if (out.is_zero()) {
    throw std::logic_error("coboundary: evaluation terms cancelled to zero");
  }
  return out;
}

Residue apply(const Functional& g, const FunctionTable& f) {
  if (g.modulus() != f.modulus() || g.dimension() != f.dimension()) {
    throw std::invalid_argument("apply: functional and table disagree on parameters");
  }
  std::uint32_t acc = 0;
  for (const auto& [index, coeff] : g.terms()) {
    acc = add_mod(acc, mul_mod(coeff, f.at(index), g.modulus()), g.modulus());
  }
  return static_cast<Residue>(acc);
}

Functional combine(const Functional& g, const Functional& h, Residue lambda) {
  if (g.modulus() != h.modulus() || g.dimension() != h.dimension()) {
    throw std::invalid_argument("combine: mismatched functionals");
  }
  const std::uint32_t p = g.modulus();
  if (lambda >= p) throw std::invalid_argument("combine: scalar out of range");
  std::vector<std::pair<std::uint64_t, Residue>> out;
  out.reserve(g.terms().size() + h.terms().size());
  std::size_t i = 0, j = 0;
  const auto& gt = g.terms();
  const auto& ht = h.terms();
  while (i < gt.size() || j < ht.size()) {
    if (j == ht.size() || (i < gt.size() && gt[i].first < ht[j].first)) {
      out.push_back(gt[i++]);
    } else if (i == gt.size() || ht[j].first < gt[i].first) {
      const Residue c = static_cast<Residue>(mul_mod(lambda, ht[j].second, p));
      if (c != 0) out.emplace_back(ht[j].first, c);
      ++j;
    } else {
      const Residue c = static_cast<Residue>(
          add_mod(gt[i].second, mul_mod(lambda, ht[j].second, p), p));
      if (c != 0) out.emplace_back(gt[i].first, c);
      ++i;
      ++j;
    }
  }
  return Functional(p, g.dimension(), g.point_count(), std::move(out));
}

CoboundarySet::CoboundarySet(const ProblemParams& params) : params_(params) {}

CoboundarySet CoboundarySet::build(const ProblemParams& params) {
  const std::uint64_t q = params.point_count;
  if (q * q > ProblemParams::kTableCap) {
    throw CapError("CoboundarySet::build: p^(2n) pair enumeration exceeds the dense-table cap");
  }
  CoboundarySet out(params);
  for (std::uint64_t ai = 0; ai < q; ++ai) {
    const Point a = Point::from_index(ai, params);
    for (std::uint64_t bi = 0; bi < q; ++bi) {
      const Point b = Point::from_index(bi, params);
      Functional g = coboundary(a, b, params);
      if (out.lookup_.find(g) != out.lookup_.end()) continue;
      out.lookup_.emplace(g, out.elements_.size());
      out.elements_.push_back(std::move(g));
      out.witnesses_.emplace_back(a, b);
    }
  }
  return out;
}

std::optional<std::size_t> CoboundarySet::index_of(const Functional& g) const {
  auto it = lookup_.find(g);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Functional decomposition_sum(const Decomposition& pairs, const ProblemParams& params) {
  Functional acc(params);
  for (const auto& [a, b] : pairs) {
    acc = combine(acc, coboundary(a, b, params), 1);
  }
  return acc;
}

namespace {

// Depth-first search for exactly `slots` summands with non-decreasing element
// indices starting at `start`; the first hit is the lexicographically least
// decomposition.  The last slot is resolved by hash lookup, which doubles as
// meet-in-the-middle for two summands.
bool search_exact(const Functional& residual, std::size_t start, std::uint32_t slots,
                  const CoboundarySet& S, std::vector<std::size_t>& chosen) {
  if (slots == 0) return residual.is_zero();
  // Each coboundary touches at most three points, so a residual with larger
  // support than the remaining summands can cover is unreachable.
  if (residual.support_size() > 3ull * slots) return false;
  if (slots == 1) {
    const auto idx = S.index_of(residual);
    if (idx && *idx >= start) {
      chosen.push_back(*idx);
      return true;
    }
    return false;
  }
  const Residue minus_one = static_cast<Residue>(S.params().p - 1);
  for (std::size_t i = start; i < S.size(); ++i) {
    chosen.push_back(i);
    if (search_exact(combine(residual, S.element(i), minus_one), i, slots - 1, S, chosen)) {
      return true;
    }
    chosen.pop_back();
  }
  return false;
}

std::optional<Decomposition> decompose_exact(const Functional& g, std::uint32_t s,
                                             const CoboundarySet& S) {
  std::vector<std::size_t> chosen;
  chosen.reserve(s);
  if (!search_exact(g, 0, s, S, chosen)) return std::nullopt;
  Decomposition pairs;
  pairs.reserve(chosen.size());
  for (std::size_t i : chosen) pairs.push_back(S.witness(i));
  if (!(decomposition_sum(pairs, S.params()) == g)) {
    throw std::logic_error("sumset_decompose: decomposition failed re-summation");
  }
  return pairs;
}

}  // namespace

std::optional<Decomposition> sumset_decompose(const Functional& g, std::uint32_t t,
                                              const CoboundarySet& S, SumsetMode mode) {
  if (g.modulus() != S.params().p || g.dimension() != S.params().n) {
    throw std::invalid_argument("sumset_decompose: functional does not match the set's params");
  }
  if (mode == SumsetMode::exact) return decompose_exact(g, t, S);
  for (std::uint32_t s = 0; s <= t; ++s) {
    if (auto found = decompose_exact(g, s, S)) return found;
  }
  return std::nullopt;
}

bool is_linear_on(const FunctionTable& f, const Subspace& V) {
  if (f.modulus() != V.modulus() || f.dimension() != V.ambient_dimension()) {
    throw std::invalid_argument("is_linear_on: table does not match subspace");
  }
  const std::uint32_t p = V.modulus();
  const std::uint32_t d = V.dimension();
  std::vector<Residue> basis_values;
  basis_values.reserve(d);
  for (const auto& row : V.basis()) {
    basis_values.push_back(f.eval(Point(row, p)));
  }
  const std::vector<Point> pts = V.elements();
  for (std::uint64_t m = 0; m < pts.size(); ++m) {
    std::uint32_t expected = 0;
    std::uint64_t rest = m;
    for (std::uint32_t i = d; i-- > 0;) {
      const std::uint32_t c = static_cast<std::uint32_t>(rest % p);
      rest /= p;
      expected = add_mod(expected, mul_mod(c, basis_values[i], p), p);
    }
    if (f.eval(pts[m]) != expected) return false;
  }
  return true;
}

}  // namespace pfr
