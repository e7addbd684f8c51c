#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"
#include "weil/catalog.hpp"
#include "weil/errors.hpp"
#include "weil/frame_models.hpp"

using namespace weil;

namespace {

ModelRing cp2_power(int k) { return product(std::vector<ModelRing>(static_cast<std::size_t>(k), cp2())); }

KoszulModel cp2_model(int k, EulerConvention euler) {
  const ModelRing base = cp2_power(k);
  std::vector<BundleMap> f;
  for (const auto& r : base.factors()) f.push_back(canonical_cp2(r));
  return build_frame_model(base, whitney_sum(base, f), 2 * k, euler);
}

KoszulModel sphere_model(int k, EulerConvention euler) {
  const ModelRing base = sphere(4 * k);
  return build_frame_model(base, sphere_generator(base, 4 * k - 2), 4 * k - 2, euler);
}

Element gen(const KoszulModel& m, const char* name) { return Element::generator(m.gens(), name); }

}  // namespace

TEST_CASE("frame model over CP2 x CP2") {
  const KoszulModel m = cp2_model(2, EulerConvention::Whitney);
  CHECK(m.u_max == 1);
  CHECK(m.has_v);
  CHECK(m.dimension() == 36);
  const Element a1 = gen(m, "a1");
  const Element a2 = gen(m, "a2");
  CHECK(m.d.apply(m.u(1)) == a1 * a1 + a2 * a2);
  CHECK(m.d.apply(m.v()) == a1 * a2);
  CHECK(check_d_squared(m.d));
  CHECK_THROWS_AS(m.u(2), IndexOutOfRange);
  // With the Whitney Euler class the candidate class is a coboundary.
  CHECK(m.d.apply(a1 * a2 * m.u(1) * m.v()) == -(a1 * a1 * a2 * a2 * m.u(1)));
  CHECK_FALSE(class_nonzero(a1 * a1 * a2 * a2 * m.u(1), m.d));

  const KoszulModel s = cp2_model(2, EulerConvention::Suppressed);
  CHECK(s.d.apply(s.v()).is_zero());
  CHECK(s.euler_image().is_zero());
  CHECK(class_nonzero(gen(s, "a1") * gen(s, "a1") * gen(s, "a2") * gen(s, "a2") * s.u(1), s.d));
}

TEST_CASE("frame model over S8") {
  const KoszulModel m = sphere_model(2, EulerConvention::Whitney);
  CHECK(m.u_max == 2);
  CHECK(m.d.apply(m.u(2)) == gen(m, "s"));
  CHECK(m.d.apply(m.u(1)).is_zero());
  CHECK(m.d.apply(m.v()).is_zero());
  CHECK(primitive_count(6) == 2);
  CHECK(primitive_count(7) == 3);
}

TEST_CASE("zero bundle gives the Kunneth dimensions") {
  for (const ModelRing& base : {cp2_power(2), product({cp2(), sphere(8)}), sphere(12)}) {
    for (int q : {3, 4, 6}) {
      const KoszulModel m = build_frame_model(base, trivial_bundle(base, q), q, EulerConvention::Whitney);
      // Poincare polynomial of base times that of the exterior fibre.
      std::map<int, long> pb;
      for (int n = 0; n <= *base.fundamental_degree(); ++n) pb[n] = static_cast<long>(basis_of_degree(*base.gens(), n).size());
      std::map<int, long> pf{{0, 1}};
      std::vector<int> odd;
      for (int i = 1; i <= primitive_count(q); ++i) odd.push_back(4 * i - 1);
      if (q % 2 == 0) odd.push_back(q - 1);
      for (int d : odd) {
        std::map<int, long> next = pf;
        for (const auto& [n, c] : pf) next[n + d] += c;
        pf = next;
      }
      std::map<int, std::size_t> expected;
      for (const auto& [i, x] : pb)
        for (const auto& [j, y] : pf)
          if (x * y != 0) expected[i + j] += static_cast<std::size_t>(x * y);
      CHECK(cohomology(m.d, std::nullopt, {false, 0}).dimensions() == expected);
    }
  }
}

TEST_CASE("characteristic map") {
  const WqPresentation w4 = build_wq(4, true);
  const KoszulModel m = cp2_model(2, EulerConvention::Suppressed);
  const CharacteristicMap delta(w4, m);
  const Element a1 = gen(m, "a1");
  const Element a2 = gen(m, "a2");
  CHECK(delta.apply(w4.c(2)) == a1 * a1 + a2 * a2);
  CHECK(delta.apply(w4.y(2)) == m.u(1));
  CHECK(delta.apply(w4.y(1)).is_zero());
  CHECK(delta.apply(w4.c(4)).is_zero());
  const Element image = delta.apply(w4.y(2) * power(w4.c(2), 2));
  CHECK(image == Rational(2) * (a1 * a1 * a2 * a2 * m.u(1)));
  CHECK(class_nonzero(image, m.d));

  const KoszulModel mw = cp2_model(2, EulerConvention::Whitney);
  const CharacteristicMap dw(w4, mw);
  CHECK(dw.apply(w4.c(4)) == gen(mw, "a1") * gen(mw, "a1") * gen(mw, "a2") * gen(mw, "a2"));
  CHECK(dw.apply(w4.y(4)) == mw.v() * gen(mw, "a1") * gen(mw, "a2"));

  const WqPresentation w6 = build_wq(6, true);
  const KoszulModel s = sphere_model(2, EulerConvention::Suppressed);
  const CharacteristicMap ds(w6, s);
  CHECK(ds.apply(w6.y(2) * power(w6.c(2), 3)).is_zero());
  CHECK(ds.apply(w6.y(4) * w6.c(4)) == s.u(2) * gen(s, "s"));
  CHECK_THROWS_AS(CharacteristicMap(w4, s), UsageError);
}

TEST_CASE("characteristic map is a chain map") {
  std::mt19937_64 rng(2024);
  struct Case {
    int q;
    KoszulModel model;
  };
  std::vector<Case> cases{{4, cp2_model(2, EulerConvention::Whitney)},
                          {4, cp2_model(2, EulerConvention::Suppressed)},
                          {6, cp2_model(3, EulerConvention::Suppressed)},
                          {6, sphere_model(2, EulerConvention::Whitney)},
                          {10, sphere_model(3, EulerConvention::Suppressed)}};
  for (const auto& c : cases) {
    const WqPresentation w = build_wq(c.q, true);
    const CharacteristicMap delta(w, c.model);
    for (int t = 0; t < 100; ++t) {
      const Element x = weil::testing::random_element(w.gens(), rng, 4, 3);
      CHECK(delta.apply(apply_d(x, w.d)) == apply_d(delta.apply(x), c.model.d));
      const Element y = weil::testing::random_element(w.gens(), rng, 2, 2);
      CHECK(delta.apply(x * y) == delta.apply(x) * delta.apply(y));
    }
  }
}

TEST_CASE("(CP2)^k certificates") {
  const auto c2 = verify_prop_2k(2);
  CHECK(c2.pass);
  CHECK(c2.q == 4);
  CHECK(c2.complex_dimension == 36);
  REQUIRE(c2.classes.size() == 1);
  CHECK(c2.classes[0].index.to_string() == "y2 c2^2");
  CHECK(c2.classes[0].image.to_string() == "2 u1 a1^2 a2^2");
  CHECK(c2.classes[0].nonzero);

  const auto c3 = verify_prop_2k(3);
  CHECK(c3.pass);
  CHECK(c3.complex_dimension == 216);
  REQUIRE(c3.classes.size() == 2);
  CHECK(c3.classes[0].index == VeyIndex{{2}, {2, 2, 2}});
  CHECK(c3.classes[1].index == VeyIndex{{2, 4}, {2, 2, 2}});
  for (const auto& b : c3.independence) CHECK(b.independent);

  const auto whitney = verify_prop_2k(2, {EulerConvention::Whitney, 1'000'000});
  CHECK_FALSE(whitney.classes[0].nonzero);

  CHECK_THROWS_AS(verify_prop_2k(1), UsageError);
  CHECK_THROWS_AS(verify_prop_2k(3, {EulerConvention::Suppressed, 100}), BudgetExceeded);
}

TEST_CASE("sphere certificates") {
  const auto c = verify_prop_4k2(2);
  CHECK(c.pass);
  CHECK(c.q == 6);
  REQUIRE(c.classes.size() == 1);
  CHECK(c.classes[0].index.to_string() == "y4 c4");
  CHECK(c.classes[0].image.to_string() == "u2 s");
  REQUIRE(c.vanishing.size() == 1);
  CHECK(c.vanishing[0].index.to_string() == "y2 c2^3");
  CHECK(c.vanishing[0].image.is_zero());
  for (const auto& x : c.classes) CHECK(x.index.I.back() <= 2 * primitive_count(c.q));
  CHECK(verify_prop_4k2(3).pass);
  CHECK_THROWS_AS(verify_prop_4k2(1), UsageError);
}

TEST_CASE("certified classes are rigid Vey indices") {
  for (const auto& cert : {verify_prop_2k(2), verify_prop_2k(3), verify_prop_4k2(2), verify_prop_4k2(3)}) {
    for (const auto& c : cert.classes) {
      CHECK(is_vey(c.index, cert.q));
      CHECK(is_rigid(c.index, cert.q));
      CHECK(c.rigid);
      CHECK(c.cocycle);
    }
  }
}

TEST_CASE("permanence") {
  const auto seed4 = permanence_family({{2}, {2, 2}}, 4, {});
  REQUIRE(seed4.classes.size() == 1);
  CHECK(seed4.classes[0].index.to_string() == "y2 c2^2");
  CHECK(seed4.classes[0].degree == 11);
  CHECK(seed4.pass);

  const auto six = permanence_family({{2}, {2, 2, 2}}, 6, {2});
  REQUIRE(six.classes.size() == 2);
  CHECK(six.classes[1].index.to_string() == "y2 y4 c2^3");
  CHECK(six.classes[1].degree == 22);
  CHECK(six.classes[1].nonzero);
  CHECK(six.classes[1].tensor_class.to_string() == "Tp2 chi");
  CHECK(six.pass);

  CHECK_THROWS_AS(permanence_family({{4}, {4}}, 6, {2}), UsageError);
  CHECK_THROWS_AS(permanence_family({{2}, {2, 2, 2}}, 6, {3}), IndexOutOfRange);
  CHECK_THROWS_AS(permanence_family({{2}, {2, 2, 2}}, 6, {2, 2}), UsageError);

  for (int q = 4; q <= 12; q += 2) {
    const int b = (q + 2) / 4;
    std::vector<int> r;
    for (int i = 2; i <= std::min(b, q / 2 - 1); ++i) r.push_back(i);
    std::vector<int> J(static_cast<std::size_t>(q / 2), 2);
    const auto fam = permanence_family({{2}, J}, q, r);
    CHECK(fam.pass);
    CHECK(fam.classes.size() == std::size_t{1} << r.size());
    for (const auto& c : fam.classes) {
      int expected = 2 * q + 3;
      for (int t : c.twists) expected += 4 * t - 1;
      CHECK(c.degree == expected);
    }
  }
}

TEST_CASE("catalog") {
  const auto c4 = catalog(4, 11);
  REQUIRE(c4.rows.size() == 1);
  CHECK(c4.rows[0].entry.index.to_string() == "y2 c2^2");
  CHECK(c4.family_index == "Z");
  CHECK(c4.independent);

  const auto c6 = catalog(6, 15);
  REQUIRE(c6.rows.size() == 2);
  CHECK(c6.family_index == "Z^2");
  CHECK(c6.witnesses.size() == 2);
  CHECK(c6.block_triangular);
  CHECK(c6.independent);
  CHECK(c6.nonzero == std::vector<std::vector<bool>>{{true, false}, {true, true}});
  CHECK(c6.rows[0].pairing == "l * <y2 c2^3, frame model over CP2 x CP2 x CP2>");

  const auto c22 = catalog(6, 22);
  REQUIRE(c22.rows.size() == 1);
  CHECK(c22.independent);

  const auto empty = catalog(6, 14);
  CHECK(empty.rows.empty());
  CHECK(empty.family_index.empty());
  CHECK_THROWS_AS(catalog(5, 11), OddCodimension);
  CHECK_THROWS_AS(catalog(6, -1), UsageError);
}
