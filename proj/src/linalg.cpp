#include "weil/linalg.hpp"

#include <algorithm>

#include "weil/errors.hpp"

namespace weil {

namespace {

using IntRow = std::vector<std::pair<std::size_t, Integer>>;

/// alpha * x + beta * y, dropping zeros.
IntRow combine(const Integer& alpha, const IntRow& x, const Integer& beta, const IntRow& y) {
  IntRow out;
  out.reserve(x.size() + y.size());
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() || j != y.end()) {
    if (j == y.end() || (i != x.end() && i->first < j->first)) {
      out.emplace_back(i->first, alpha * i->second);
      ++i;
    } else if (i == x.end() || j->first < i->first) {
      out.emplace_back(j->first, beta * j->second);
      ++j;
    } else {
      Integer v = alpha * i->second + beta * j->second;
      if (v != 0) out.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

void divide_by_content(IntRow& row, IntRow& combination) {
  Integer g = 0;
  for (const auto& [_, v] : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  for (const auto& [_, v] : combination) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (g == 0 || g == 1) return;
  for (auto& [_, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  for (auto& [_, v] : combination) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

SparseVector to_rational(const IntRow& row) {
  SparseVector out;
  out.reserve(row.size());
  for (const auto& [i, v] : row) out.emplace_back(i, Rational(v));
  return out;
}

}  // namespace

bool FractionFreeEchelon::insert(const SparseVector& row) {
  const std::size_t index = inserted_++;

  Integer lcm = 1;
  for (const auto& [_, v] : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.denominator().get_mpz_t());
  IntRow w;
  w.reserve(row.size());
  for (const auto& [i, v] : row) {
    if (v.is_zero()) continue;
    w.emplace_back(i, v.numerator() * (lcm / v.denominator()));
  }
  IntRow combination;
  if (track_) combination.emplace_back(index, lcm);

  while (!w.empty()) {
    const auto it = pivots_.find(w.front().first);
    if (it == pivots_.end()) break;
    const Integer& a = it->second.row.front().second;
    const Integer& b = w.front().second;
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    const Integer alpha = a / g;
    const Integer beta = -(b / g);
    w = combine(alpha, w, beta, it->second.row);
    if (track_) combination = combine(alpha, combination, beta, it->second.combination);
    divide_by_content(w, combination);
  }

  if (w.empty()) {
    if (track_) relations_.push_back(to_rational(combination));
    return false;
  }
  const std::size_t lead = w.front().first;
  pivots_.emplace(lead, Stored{std::move(w), std::move(combination)});
  return true;
}

std::size_t rank(std::span<const SparseVector> rows) {
  FractionFreeEchelon e;
  for (const auto& r : rows) e.insert(r);
  return e.rank();
}

std::vector<SparseVector> rref(std::span<const SparseVector> rows) {
  std::map<std::size_t, SparseVector> pivots;

  auto axpy = [](const SparseVector& x, const Rational& s, const SparseVector& y) {
    // x + s * y
    SparseVector out;
    auto i = x.begin();
    auto j = y.begin();
    while (i != x.end() || j != y.end()) {
      if (j == y.end() || (i != x.end() && i->first < j->first)) {
        out.push_back(*i++);
      } else if (i == x.end() || j->first < i->first) {
        out.emplace_back(j->first, s * j->second);
        ++j;
      } else {
        Rational v = i->second + s * j->second;
        if (!v.is_zero()) out.emplace_back(i->first, std::move(v));
        ++i;
        ++j;
      }
    }
    return out;
  };
  auto entry = [](const SparseVector& v, std::size_t col) -> const Rational* {
    auto it = std::lower_bound(v.begin(), v.end(), col, [](const auto& p, std::size_t c) { return p.first < c; });
    return (it != v.end() && it->first == col) ? &it->second : nullptr;
  };

  for (const auto& input : rows) {
    SparseVector v;
    for (const auto& p : input)
      if (!p.second.is_zero()) v.push_back(p);
    for (const auto& [col, prow] : pivots)
      if (const Rational* c = entry(v, col)) v = axpy(v, -*c, prow);
    if (v.empty()) continue;
    const Rational lead = v.front().second;
    for (auto& [_, x] : v) x /= lead;
    const std::size_t col = v.front().first;
    for (auto& [_, prow] : pivots)
      if (const Rational* c = entry(prow, col)) prow = axpy(prow, -*c, v);
    pivots.emplace(col, std::move(v));
  }

  std::vector<SparseVector> out;
  out.reserve(pivots.size());
  for (auto& [_, v] : pivots) out.push_back(std::move(v));
  return out;
}

std::vector<SparseVector> left_kernel(std::span<const SparseVector> rows) {
  FractionFreeEchelon e(true);
  for (const auto& r : rows) e.insert(r);
  return rref(e.relations());
}

std::vector<SparseVector> to_sparse_rows(const std::vector<std::vector<Rational>>& dense) {
  std::vector<SparseVector> out;
  out.reserve(dense.size());
  for (const auto& r : dense) {
    SparseVector v;
    for (std::size_t j = 0; j < r.size(); ++j)
      if (!r[j].is_zero()) v.emplace_back(j, r[j]);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace weil
