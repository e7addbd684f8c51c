#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "weil/algebra.hpp"

namespace weil::testing {

/// Random homogeneous-or-mixed element: up to `terms` monomials with small integer coefficients.
inline Element random_element(const GenSetPtr& gens, std::mt19937_64& rng, int terms = 3, int max_exp = 2) {
  Element x = Element::zero(gens);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int t = 0; t < terms; ++t) {
    Monomial m = gens->unit();
    for (std::size_t i = 0; i < gens->exterior().size(); ++i)
      if (rng() % 2) m.exterior |= std::uint64_t{1} << i;
    for (auto& e : m.exponents) e = static_cast<int>(rng() % static_cast<unsigned>(max_exp + 1));
    const int c = coef(rng);
    if (c != 0 && gens->admits(m)) x.add_term(m, c);
  }
  return x;
}

/// Random homogeneous element of degree n (zero if the degree is empty).
inline Element random_homogeneous(const GenSetPtr& gens, int n, std::mt19937_64& rng, int terms = 3) {
  const auto basis = basis_of_degree(*gens, n);
  Element x = Element::zero(gens);
  if (basis.empty()) return x;
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int t = 0; t < terms; ++t) x.add_term(basis[rng() % basis.size()], coef(rng));
  return x;
}

inline int sign_of_degree(int deg) { return deg % 2 == 0 ? 1 : -1; }

}  // namespace weil::testing
