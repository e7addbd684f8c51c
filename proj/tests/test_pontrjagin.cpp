#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "weil/errors.hpp"
#include "weil/pontrjagin.hpp"

using namespace weil;

namespace {

Rational to_q(long n) { return Rational(n); }

long fact(int n) { return n <= 1 ? 1 : n * fact(n - 1); }

// <p_1^{n_1} p_2^{n_2} ..., (CP2)^m> for m = sum j n_j: each p_j is the j-th elementary
// symmetric polynomial in the a_i^2, so the pairing counts ordered assignments of the
// m factors to the p_j slots: m! / prod (j!)^{n_j}.
Rational slot_count(const std::vector<int>& n) {
  int m = 0;
  long denom = 1;
  for (std::size_t j = 0; j < n.size(); ++j) {
    m += static_cast<int>(j + 1) * n[j];
    for (int t = 0; t < n[j]; ++t) denom *= fact(static_cast<int>(j + 1));
  }
  return to_q(fact(m)) / to_q(denom);
}

ModelRing cp2_power(int k) { return product(std::vector<ModelRing>(static_cast<std::size_t>(k), cp2())); }

std::vector<BundleMap> canonical_factors(const ModelRing& ring) {
  std::vector<BundleMap> out;
  if (ring.kind() != ModelRing::Kind::Product) return {canonical_cp2(ring)};
  for (const auto& f : ring.factors()) out.push_back(canonical_cp2(f));
  return out;
}

}  // namespace

TEST_CASE("model rings") {
  const ModelRing c = cp2();
  const Element a = c.generator("a");
  CHECK_FALSE((a * a).is_zero());
  CHECK((a * a * a).is_zero());
  CHECK(c.fundamental_degree() == 4);
  CHECK(evaluate_on_cycle(a * a, c) == 1);

  const ModelRing s = sphere(8);
  CHECK((s.generator("s") * s.generator("s")).is_zero());
  CHECK(s.fundamental_degree() == 8);
  CHECK_THROWS_AS(sphere(3), UsageError);

  const ModelRing p = product({cp2(), sphere(8), cp2()});
  CHECK(p.name() == "CP2 x S8 x CP2");
  CHECK(p.factor_count() == 3);
  CHECK(p.fundamental_degree() == 16);
  const Element a1 = p.generator("a1");
  const Element a3 = p.generator("a3");
  const Element s2 = p.generator("s2");
  CHECK(evaluate_on_cycle(a1 * a1 * s2 * a3 * a3, p) == 1);
  CHECK((a1 * a1 * a1).is_zero());
  CHECK(p.embed(1, s.generator("s")) == s2);
  CHECK(product({p, cp2()}).factor_count() == 4);
  CHECK_THROWS_AS(evaluate_on_cycle(a1, x_space(6)), UsageError);
}

TEST_CASE("X(q) truncation") {
  for (int q = 2; q <= 10; ++q) {
    const ModelRing x = x_space(q);
    const auto& g = *x.gens();
    for (int n = 0; n <= 3 * q; ++n)
      CHECK((n <= q + 2 || basis_of_degree(g, n).empty()));
    const BundleMap t = tautological_x(x);
    CHECK(t.rank == q);
    CHECK(t.euler.has_value() == (q % 2 == 0));
    if (q % 2 == 0 && q + 2 >= 2 * q) CHECK(t.p(q / 2, x.gens()) == *t.euler * *t.euler);
  }
  CHECK_THROWS_AS(x_space(1), UsageError);
  const ModelRing x6 = x_space(6);
  REQUIRE(x6.gens()->polynomial().size() == 3);
  CHECK(x6.gens()->polynomial()[2].name == "e");
  CHECK(x_space(4).gens()->polynomial().size() == 2);  // p1, e; p2 = e^2
}

TEST_CASE("V(q) enumeration") {
  auto names = [](int q) {
    std::vector<std::string> out;
    for (const auto& m : enumerate_V(q)) out.push_back(m.to_string());
    return out;
  };
  CHECK(names(2) == std::vector<std::string>{"p1"});
  CHECK(names(4) == std::vector<std::string>{"p1", "p1^2"});
  CHECK(names(6) == std::vector<std::string>{"p1", "p1^2", "p2", "p1^3"});
  CHECK_THROWS_AS(enumerate_V(1), UsageError);
  for (int q = 2; q <= 14; ++q) {
    // Brute-force count of n with sum (4i-2) n_i <= q.
    std::size_t expected = 0;
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (4 * i - 2 > left) {
        ++expected;
        return;
      }
      for (int k = 0; k * (4 * i - 2) <= left; ++k) rec(i + 1, left - k * (4 * i - 2));
    };
    rec(1, q);
    const auto v = enumerate_V(q);
    CHECK(v.size() == expected - 1);
    for (const auto& m : v) {
      CHECK(m.weight() <= q);
      CHECK(m.degree() == m.weight() + 2 * m.size());
      CHECK(m.degree() <= 2 * q);
    }
  }
}

TEST_CASE("Whitney pull-backs") {
  const ModelRing r = cp2_power(2);
  const auto f = canonical_factors(r);
  const Element a1 = r.generator("a1");
  const Element a2 = r.generator("a2");
  CHECK(whitney_pullback({{1}}, r, f) == a1 * a1 + a2 * a2);
  CHECK(whitney_pullback({{0, 1}}, r, f) == a1 * a1 * a2 * a2);
  CHECK(evaluate_on_cycle(Rational(2) * a1 * a1 * a2 * a2, r) == 2);
  CHECK(evaluate_on_cycle(whitney_pullback({{0, 1}}, r, f), r) == 1);
  const BundleMap sum = whitney_sum(r, f);
  REQUIRE(sum.euler.has_value());
  CHECK(*sum.euler == a1 * a2);
  CHECK(sum.rank == 4);

  const ModelRing s = sphere(8);
  const BundleMap g = sphere_generator(s, 6);
  CHECK(whitney_pullback({{1}}, g, s.gens()).is_zero());
  CHECK(whitney_pullback({{0, 1}}, g, s.gens()) == s.generator("s"));
  CHECK_THROWS_AS(sphere_generator(sphere(6), 4), UsageError);
}

TEST_CASE("pairing agrees with the slot-count formula") {
  for (int m = 1; m <= 5; ++m) {
    const ModelRing r = cp2_power(m);
    const auto f = canonical_factors(r);
    std::vector<int> n;
    std::function<void(int, int)> rec = [&](int j, int left) {
      if (left == 0) {
        CHECK(evaluate_on_cycle(whitney_pullback({n}, r, f), r) == slot_count(n));
        return;
      }
      if (j > left) return;
      for (int k = 0; k * j <= left; ++k) {
        n.push_back(k);
        rec(j + 1, left - k * j);
        n.pop_back();
      }
    };
    rec(1, m);
  }
}

TEST_CASE("Whitney naturality") {
  std::mt19937_64 rng(11);
  const ModelRing r = product({cp2(), cp2(), cp2(), sphere(8), sphere(12)});
  std::vector<BundleMap> f;
  for (std::size_t i = 0; i < 3; ++i) f.push_back(canonical_cp2(r.factors()[i]));
  f.push_back(sphere_generator(r.factors()[3], 6));
  f.push_back(sphere_generator(r.factors()[4], 10));
  for (int t = 0; t < 60; ++t) {
    PontrjaginMonomial a{{static_cast<int>(rng() % 3), static_cast<int>(rng() % 2), static_cast<int>(rng() % 2)}};
    PontrjaginMonomial b{{static_cast<int>(rng() % 3), static_cast<int>(rng() % 2), 0}};
    PontrjaginMonomial ab{{a.n[0] + b.n[0], a.n[1] + b.n[1], a.n[2] + b.n[2]}};
    for (auto* m : {&a, &b, &ab})
      while (!m->n.empty() && m->n.back() == 0) m->n.pop_back();
    CHECK(whitney_pullback(ab, r, f) == whitney_pullback(a, r, f) * whitney_pullback(b, r, f));
  }
}

TEST_CASE("independence certificate") {
  const auto r6 = independence_certificate(6);
  CHECK(r6.pass);
  bool found = false;
  for (const auto& b : r6.blocks) {
    if (b.degree != 8) continue;
    found = true;
    CHECK(b.classes == std::vector<std::string>{"p1^2", "p2"});
    CHECK(b.cycles == std::vector<std::string>{"CP2 x CP2", "S8"});
    CHECK(b.pairing == std::vector<std::vector<Rational>>{{2, 0}, {1, 1}});
    CHECK(b.rank == 2);
  }
  CHECK(found);
  const auto r4 = independence_certificate(4);
  REQUIRE(r4.blocks.size() == 2);
  for (const auto& b : r4.blocks) {
    CHECK(b.pairing.size() == 1);
    CHECK_FALSE(b.pairing[0][0].is_zero());
  }
  const auto r2 = independence_certificate(2);
  REQUIRE(r2.blocks.size() == 1);
  CHECK(r2.blocks[0].pairing == std::vector<std::vector<Rational>>{{1}});
  for (int q = 2; q <= 10; ++q) CHECK(independence_certificate(q).pass);
}

TEST_CASE("test cycles") {
  const TestCycle t = test_cycle({{2, 0, 1}});
  CHECK(t.name == "CP2 x CP2 x S12");
  CHECK(t.ring.fundamental_degree() == 20);
  CHECK(t.bundle.rank == 2 + 2 + 10);
}

TEST_CASE("symmetric multiple") {
  for (int k = 1; k <= 5; ++k) {
    for (int l = 1; l <= k; ++l) {
      const auto s = verify_symmetric_multiple(k, l);
      CHECK(s.proportional);
      CHECK(s.ratio == Rational(1) / factorial(static_cast<unsigned>(l)));
    }
  }
  CHECK(verify_symmetric_multiple(2, 2).ratio == Rational(Integer(1), Integer(2)));
  CHECK(verify_symmetric_multiple(3, 3).ratio == Rational(Integer(1), Integer(6)));
  CHECK_THROWS_AS(verify_symmetric_multiple(2, 3), UsageError);
  CHECK_THROWS_AS(verify_symmetric_multiple(2, 0), UsageError);
}
