#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "support.hpp"
#include "weil/errors.hpp"
#include "weil/foliation.hpp"
#include "weil/linalg.hpp"

using namespace weil;
using weil::testing::random_element;

namespace {

// Parity of the permutation sorting a sequence, by counting inversions.
int inversion_sign(const std::vector<std::size_t>& seq) {
  int inversions = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j) inversions += seq[i] > seq[j] ? 1 : 0;
  return inversions % 2 == 0 ? 1 : -1;
}

// Every monomial of `gens` that survives truncation, by brute force over bounded exponents.
std::vector<Monomial> brute_force_monomials(const GeneratorSet& gens, int max_exponent) {
  std::vector<Monomial> out;
  const std::size_t ne = gens.exterior().size();
  const std::size_t np = gens.polynomial().size();
  std::vector<int> e(np, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == np) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ne); ++mask) {
        Monomial m{mask, e};
        if (gens.admits(m)) out.push_back(m);
      }
      return;
    }
    for (int k = 0; k <= max_exponent; ++k) {
      e[i] = k;
      rec(i + 1);
    }
    e[i] = 0;
  };
  rec(0);
  return out;
}

// Canonical comparison spelled out independently: exterior index list, then exponents.
bool canonical_less(const Monomial& a, const Monomial& b) {
  const auto ia = a.exterior_indices();
  const auto ib = b.exterior_indices();
  if (ia != ib) return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
  return a.exponents < b.exponents;
}

std::size_t count_poly_monomials(const std::vector<int>& degrees, int bound) {
  std::function<std::size_t(std::size_t, int)> rec = [&](std::size_t i, int left) -> std::size_t {
    if (i == degrees.size()) return 1;
    std::size_t n = 0;
    for (int used = 0; used <= left; used += degrees[i]) n += rec(i + 1, left - used);
    return n;
  };
  return rec(0, bound);
}

}  // namespace

TEST_CASE("rational is canonical and exact") {
  const Rational a(Integer(6), Integer(-4));
  CHECK(a.numerator() == -3);
  CHECK(a.denominator() == 2);
  CHECK(a.to_fraction_string() == "-3/2");
  CHECK(Rational(4).to_fraction_string() == "4/1");
  CHECK(Rational(4).to_string() == "4");
  CHECK(Rational::parse("10/-4") == Rational(Integer(-5), Integer(2)));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK(Rational(1) / Rational(3) + Rational(1) / Rational(6) == Rational(Integer(1), Integer(2)));
  CHECK(factorial(5) == Rational(120));
}

TEST_CASE("generator set contract") {
  CHECK_THROWS_AS(make_generator_set({{"x", 2}}, {}), UsageError);
  CHECK_THROWS_AS(make_generator_set({}, {{"c", 3}}), UsageError);
  CHECK_THROWS_AS(make_generator_set({{"x", 1}}, {{"x", 2}}), UsageError);
  const auto g = make_generator_set({{"y", 1}}, {{"c", 2}}, 2);
  CHECK(g->total_dimension() == 4u);
  CHECK(g->top_degree() == 3);
  CHECK_FALSE(make_generator_set({}, {{"c", 2}})->total_dimension().has_value());
}

TEST_CASE("product signs and truncation") {
  const WqPresentation w1 = build_wq(1, true);
  const WqPresentation w2 = build_wq(2, true);
  CHECK((w2.y(1) * w2.y(2)).to_string() == "y1 y2");
  CHECK(w2.y(2) * w2.y(1) == -(w2.y(1) * w2.y(2)));
  CHECK((w1.c(1) * w1.c(1)).is_zero());
  CHECK((w1.y(1) * w1.y(1)).is_zero());
  CHECK(((w1.y(1) + w1.c(1)) * w1.y(1)) == w1.c(1) * w1.y(1));
  CHECK(w2.y(1) * Element::unit(w2.gens()) == w2.y(1));
  for (int q = 1; q <= 5; ++q) {
    const WqPresentation w = build_wq(q, true);
    CHECK(w.c(1) * power(w.c(1), static_cast<unsigned>(q - 1)) == power(w.c(1), static_cast<unsigned>(q)));
    CHECK_FALSE(power(w.c(1), static_cast<unsigned>(q)).is_zero());
    CHECK((w.c(1) * power(w.c(1), static_cast<unsigned>(q))).is_zero());
  }
}

TEST_CASE("Koszul sign matches inversion parity") {
  const WqPresentation w = build_wq(5, true);
  const GeneratorSet& g = *w.gens();
  const auto all = brute_force_monomials(g, 2);
  std::size_t checked = 0;
  for (std::size_t i = 0; i < all.size(); i += 7) {
    for (std::size_t j = 0; j < all.size(); j += 11) {
      const Monomial& a = all[i];
      const Monomial& b = all[j];
      const auto r = mono_mul(a, b, g);
      std::vector<int> e(a.exponents.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = a.exponents[k] + b.exponents[k];
      const Monomial target{a.exterior | b.exterior, e};
      if ((a.exterior & b.exterior) != 0 || !g.admits(target)) {
        CHECK_FALSE(r.has_value());
        continue;
      }
      REQUIRE(r.has_value());
      CHECK(r->monomial == target);
      auto seq = a.exterior_indices();
      const auto tail = b.exterior_indices();
      seq.insert(seq.end(), tail.begin(), tail.end());
      CHECK(r->sign == inversion_sign(seq));
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("basis_of_degree agrees with brute force") {
  for (int q = 1; q <= 3; ++q) {
    for (bool framed : {true, false}) {
      const WqPresentation w = build_wq(q, framed);
      const GeneratorSet& g = *w.gens();
      const auto all = brute_force_monomials(g, q);
      const int top = *g.top_degree();
      std::size_t total = 0;
      for (int n = 0; n <= top + 1; ++n) {
        std::vector<Monomial> expected;
        for (const auto& m : all)
          if (g.degree(m) == n) expected.push_back(m);
        std::sort(expected.begin(), expected.end(), canonical_less);
        CHECK(basis_of_degree(g, n) == expected);
        total += expected.size();
      }
      CHECK(total == all.size());
    }
  }
}

TEST_CASE("basis sizes follow the product formula") {
  for (int q = 1; q <= 6; ++q) {
    for (bool framed : {true, false}) {
      const WqPresentation w = build_wq(q, framed);
      const GeneratorSet& g = *w.gens();
      std::vector<int> degrees;
      for (const auto& c : g.polynomial()) degrees.push_back(c.degree);
      const std::size_t expected = (std::size_t{1} << g.exterior().size()) * count_poly_monomials(degrees, 2 * q);
      std::size_t sum = 0;
      for (int n = 0; n <= *g.top_degree(); ++n) sum += basis_of_degree(g, n).size();
      CHECK(sum == expected);
      CHECK(g.total_dimension() == expected);
    }
  }
  CHECK(build_wq(3, true).gens()->total_dimension() == 56u);
  CHECK(build_wq(3, true).gens()->top_degree() == 15);
}

TEST_CASE("W2 degree 7 basis is frozen") {
  const WqPresentation w = build_wq(2, true);
  std::vector<std::string> names;
  for (const auto& m : basis_of_degree(*w.gens(), 7)) names.push_back(w.gens()->format(m));
  CHECK(names == std::vector<std::string>{"y2 c2", "y2 c1^2"});
}

TEST_CASE("randomized algebra laws") {
  std::mt19937_64 rng(20261017);
  for (int q = 1; q <= 6; ++q) {
    const WqPresentation w = build_wq(q, true);
    const auto& g = w.gens();
    for (int t = 0; t < 200; ++t) {
      const Element a = random_element(g, rng);
      const Element b = random_element(g, rng);
      const Element c = random_element(g, rng);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a + b) * c == a * c + b * c);
    }
    // Graded commutativity on homogeneous pieces.
    for (int t = 0; t < 100; ++t) {
      const int n1 = static_cast<int>(rng() % 12);
      const int n2 = static_cast<int>(rng() % 12);
      const Element a = weil::testing::random_homogeneous(g, n1, rng);
      const Element b = weil::testing::random_homogeneous(g, n2, rng);
      CHECK(a * b == Rational(weil::testing::sign_of_degree(n1 * n2)) * (b * a));
    }
  }
}

TEST_CASE("elements stay canonical") {
  const WqPresentation w = build_wq(2, true);
  Element x = w.y(1) + w.c(1);
  x -= w.c(1);
  CHECK(x == w.y(1));
  CHECK(x.terms().size() == 1);
  CHECK((w.y(1) - w.y(1)).is_zero());
  CHECK((w.y(1) - w.y(1)).terms().empty());
  CHECK((w.y(1) * Rational(0)).is_zero());
  CHECK_FALSE((w.y(1) + w.c(1)).is_homogeneous());
  CHECK((w.y(1) + w.c(1)).homogeneous_components().size() == 2);
  const WqPresentation other = build_wq(3, true);
  CHECK_THROWS_AS(w.y(1) + other.y(1), UsageError);
}

TEST_CASE("linear algebra over Q") {
  const auto rows = to_sparse_rows({{1, 2, 3}, {2, 4, 6}, {0, 1, Rational(Integer(1), Integer(2))}});
  CHECK(rank(rows) == 2);
  const auto r = rref(rows);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == SparseVector{{0, 1}, {2, 2}});
  CHECK(r[1] == SparseVector{{1, 1}, {2, Rational(Integer(1), Integer(2))}});
  const auto k = left_kernel(rows);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == SparseVector{{0, 1}, {1, Rational(Integer(-1), Integer(2))}});
  // Hilbert matrices are nonsingular.
  for (int n = 1; n <= 6; ++n) {
    std::vector<std::vector<Rational>> h(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) h[i][j] = Rational(Integer(1), Integer(i + j + 1));
    CHECK(rank(to_sparse_rows(h)) == static_cast<std::size_t>(n));
  }
}

TEST_CASE("left kernel vectors annihilate the rows") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 30; ++t) {
    const int m = 2 + static_cast<int>(rng() % 6);
    const int n = 1 + static_cast<int>(rng() % 5);
    std::vector<std::vector<Rational>> dense(m, std::vector<Rational>(n));
    for (auto& row : dense)
      for (auto& x : row) x = static_cast<int>(rng() % 5) - 2;
    const auto rows = to_sparse_rows(dense);
    const auto kernel = left_kernel(rows);
    CHECK(kernel.size() + rank(rows) == static_cast<std::size_t>(m));
    for (const auto& c : kernel) {
      std::vector<Rational> sum(n);
      for (const auto& [i, ci] : c)
        for (int j = 0; j < n; ++j) sum[j] += ci * dense[i][j];
      for (const auto& s : sum) CHECK(s.is_zero());
    }
  }
}
