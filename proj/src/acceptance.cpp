#include "weil/acceptance.hpp"

#include <chrono>
#include <map>
#include <random>

#include <fmt/format.h>

#include "weil/dga.hpp"
#include "weil/foliation.hpp"
#include "weil/frame_models.hpp"
#include "weil/pontrjagin.hpp"

namespace weil::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

/// Thrown inside a criterion to report the first failing check.
struct CheckFailed {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw CheckFailed{what};
}

Element product_with(const Element& a, const Element& b, const ProductFn& product) {
  Element out(a.generator_set());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      if (const auto r = product(ma, mb, a.generators())) out.add_term(r->monomial, ca * cb * Rational(r->sign));
  return out;
}

int parity_sign(int a, int b) { return (a % 2 != 0 && b % 2 != 0) ? -1 : 1; }

std::vector<Monomial> full_basis(const GeneratorSet& gens) {
  std::vector<Monomial> all;
  for (int n = 0; n <= *gens.top_degree(); ++n) {
    auto b = basis_of_degree(gens, n);
    all.insert(all.end(), b.begin(), b.end());
  }
  return all;
}

std::string show(const GeneratorSet& g, const Monomial& m) { return g.format(m); }

void check_commutes(const GeneratorSet& g, const Monomial& a, const Monomial& b, const ProductFn& product) {
  const auto ab = product(a, b, g);
  const auto ba = product(b, a, g);
  const int s = parity_sign(g.degree(a), g.degree(b));
  const bool ok = (!ab && !ba) || (ab && ba && ab->monomial == ba->monomial && ab->sign == s * ba->sign);
  require(ok, fmt::format("graded-commutativity: {} * {} vs {} * {}", show(g, a), show(g, b), show(g, b), show(g, a)));
}

void check_laws(const Differential& d, const Element& a, const Element& b, const Element& c, const ProductFn& product,
                const std::string& where) {
  const Element ab = product_with(a, b, product);
  require(product_with(ab, c, product) == product_with(a, product_with(b, c, product), product),
          fmt::format("associativity in {}: ({}) ({}) ({})", where, a.to_string(), b.to_string(), c.to_string()));
  const int da = a.degree().value_or(0);
  const Element lhs = d.apply(ab);
  const Element rhs = product_with(d.apply(a), b, product) +
                      product_with(a, d.apply(b), product) * Rational(da % 2 == 0 ? 1 : -1);
  require(lhs == rhs, fmt::format("leibniz in {}: a = {}, b = {}", where, a.to_string(), b.to_string()));
  require(d.apply(d.apply(a)).is_zero(), fmt::format("d-squared in {}: {}", where, a.to_string()));
}

std::string criterion_1(const Options& o, std::vector<std::string>& info) {
  std::size_t exhaustive = 0;
  for (int q : {1, 2}) {
    const auto w = build_wq(q, true);
    const auto& g = *w.gens();
    const auto basis = full_basis(g);
    const std::string where = fmt::format("W{}", q);
    for (const auto& a : basis)
      for (const auto& b : basis) check_commutes(g, a, b, o.product);
    for (const auto& a : basis) {
      const Element ea = Element::monomial(w.gens(), a);
      for (const auto& b : basis) {
        const Element eb = Element::monomial(w.gens(), b);
        for (const auto& c : basis) {
          check_laws(w.d, ea, eb, Element::monomial(w.gens(), c), o.product, where);
          ++exhaustive;
        }
      }
    }
  }

  std::mt19937_64 rng(o.seed);
  std::size_t random_checks = 0;
  for (int q = 3; q <= 6; ++q) {
    const auto w = build_wq(q, true);
    const auto& g = *w.gens();
    std::vector<std::vector<Monomial>> by_degree;
    for (int n = 0; n <= *g.top_degree(); ++n) by_degree.push_back(basis_of_degree(g, n));
    std::vector<int> degrees;
    for (std::size_t n = 0; n < by_degree.size(); ++n)
      if (!by_degree[n].empty()) degrees.push_back(static_cast<int>(n));

    auto pick = [&](const std::vector<Monomial>& v) -> const Monomial& {
      return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
    };
    auto random_element = [&]() {
      const int n = degrees[std::uniform_int_distribution<std::size_t>(0, degrees.size() - 1)(rng)];
      const auto& pool = by_degree[static_cast<std::size_t>(n)];
      Element x(w.gens());
      const int terms = std::uniform_int_distribution<int>(1, 3)(rng);
      for (int t = 0; t < terms; ++t) {
        const long num = std::uniform_int_distribution<long>(-9, 9)(rng);
        const long den = std::uniform_int_distribution<long>(1, 5)(rng);
        x.add_term(pick(pool), Rational(num, den));
      }
      return x;
    };

    const std::string where = fmt::format("W{}", q);
    for (int it = 0; it < 1000; ++it) {
      const Monomial& ma = pick(by_degree[static_cast<std::size_t>(degrees[it % degrees.size()])]);
      const Monomial& mb = pick(by_degree[static_cast<std::size_t>(
          degrees[std::uniform_int_distribution<std::size_t>(0, degrees.size() - 1)(rng)])]);
      check_commutes(g, ma, mb, o.product);
      const Element a = random_element();
      const Element b = random_element();
      const Element c = random_element();
      const Element ab = product_with(a, b, o.product);
      const Element ba = product_with(b, a, o.product);
      const int s = parity_sign(a.degree().value_or(0), b.degree().value_or(0));
      require(ab == ba * Rational(s), fmt::format("graded-commutativity in {}: {} and {}", where, a.to_string(),
                                                  b.to_string()));
      check_laws(w.d, a, b, c, o.product, where);
      ++random_checks;
    }
  }
  info.push_back(fmt::format("{} exhaustive triples over W1, W2; {} randomized triples over W3..W6 (1000 each)",
                             exhaustive, random_checks));
  return "graded commutativity, associativity, Leibniz and d^2 = 0 hold";
}

std::map<int, std::size_t> vey_counts(int q) {
  std::map<int, std::size_t> counts{{0, 1}};
  for (const auto& v : vey_basis(q)) ++counts[v.degree()];
  return counts;
}

std::string criterion_2(const Options&, std::vector<std::string>& info) {
  for (int q = 1; q <= 3; ++q) {
    const auto w = build_wq(q, true);
    const auto report = cohomology(w.d, std::nullopt, {false, 0});
    const auto vey = vey_counts(q);
    const auto dims = report.dimensions();
    require(vey == dims, fmt::format("vey-oracle: W{} Vey counts differ from dim H^n", q));
    std::size_t total = 0;
    for (const auto& [n, c] : dims) total += c;
    info.push_back(fmt::format("W{}: {} degrees, total Betti number {}", q, dims.size(), total));
  }
  return "per-degree Vey counts equal dim H^n(W_q) for q = 1, 2, 3";
}

std::string criterion_3(const Options&, std::vector<std::string>&) {
  const auto w1 = build_wq(1, true);
  const auto report = cohomology(w1.d);
  require(report.dimensions() == std::map<int, std::size_t>{{0, 1}, {3, 1}}, "godbillon-vey: H*(W1) dims");
  const auto& reps = report.per_degree.at(3).representatives;
  require(reps.size() == 1 && reps[0] == w1.y(1) * w1.c(1), "godbillon-vey: representative of H^3(W1)");
  for (int q : {1, 2}) {
    const auto wo = build_wq(q, false);
    const Element gv = wo.y(1) * power(wo.c(1), static_cast<unsigned>(q));
    require(class_nonzero(gv, wo.d), fmt::format("godbillon-vey: y1 c1^{} vanishes in H*(WO{})", q, q));
  }
  return "H*(W1) = {0:1, 3:1} with y1 c1; y1 c1^q nonzero in WO_1, WO_2";
}

std::string criterion_4(const Options&, std::vector<std::string>& info) {
  for (int q : {2, 4, 6, 8, 10}) {
    const auto r = independence_certificate(q);
    require(r.pass, fmt::format("pontrjagin-independence: certificate fails for q = {}", q));
    info.push_back(fmt::format("q={}: {} classes in {} blocks", q, r.classes.size(), r.blocks.size()));
    if (q == 6) {
      const DegreeBlock* block = nullptr;
      for (const auto& b : r.blocks)
        if (b.degree == 8) block = &b;
      const std::vector<std::vector<Rational>> expected{{2, 0}, {1, 1}};
      require(block && block->pairing == expected, "pontrjagin-independence: q=6 degree-8 block");
    }
  }
  return "full rank in every degree block for q = 2..10 (even); q=6 degree 8 block [[2,0],[1,1]]";
}

std::string criterion_5(const Options&, std::vector<std::string>&) {
  for (int k = 1; k <= 5; ++k)
    for (int l = 1; l <= k; ++l) {
      const auto r = verify_symmetric_multiple(k, l);
      require(r.proportional && r.ratio == Rational(1) / factorial(static_cast<unsigned>(l)),
              fmt::format("symmetric-multiple: k={}, l={} gives ratio {}", k, l, r.ratio.to_string()));
    }
  return "p_l = p_1^l / l! over (CP2)^k for k <= 5";
}

std::string criterion_6(const Options&, std::vector<std::string>& info) {
  for (int k : {2, 3}) {
    const auto cert = verify_prop_2k(k);
    require(cert.pass, fmt::format("cp2-frame-classes: certificate fails for k = {}", k));
    if (k == 2) {
      const auto& gens = cert.classes.at(0).image.generator_set();
      const Element a1 = Element::generator(gens, "a1");
      const Element a2 = Element::generator(gens, "a2");
      const Element expected = Element::generator(gens, "u1") * a1 * a1 * a2 * a2 * Rational(2);
      require(cert.classes.size() == 1 && cert.classes[0].image == expected,
              "cp2-frame-classes: k=2 image is not 2 a1^2 a2^2 u1");
    }
    info.push_back(fmt::format("k={}: {} classes, complex dimension {}", k, cert.classes.size(),
                               cert.complex_dimension));
  }
  FrameOptions whitney;
  whitney.euler = EulerConvention::Whitney;
  const auto w = verify_prop_2k(2, whitney);
  info.push_back(fmt::format("with d v = a1 a2 (Whitney Euler class) the k=2 class is {}",
                             w.classes.at(0).nonzero ? "nonzero" : "a coboundary"));
  return "Euler class suppressed; all classes nonzero and independent for k = 2, 3";
}

std::string criterion_7(const Options&, std::vector<std::string>&) {
  const auto cert = verify_prop_4k2(2);
  require(cert.pass, "sphere-frame-classes: certificate fails for k = 2");
  const auto& c = cert.classes.at(0);
  const auto& gens = c.image.generator_set();
  require(c.index == VeyIndex{{4}, {4}} && c.image == Element::generator(gens, "s") * Element::generator(gens, "u2"),
          "sphere-frame-classes: image of y4 c4 is not s u2");
  require(c.nonzero, "sphere-frame-classes: s u2 is exact");
  require(cert.vanishing.size() == 1 && cert.vanishing[0].image.is_zero(),
          "sphere-frame-classes: y2 c2^3 does not vanish");
  return "y4 c4 -> s u2 nonzero; y2 c2^3 -> 0 over S8";
}

std::string criterion_8(const Options&, std::vector<std::string>&) {
  const auto r4 = enumerate_rqs(4);
  require(r4.size() == 1 && r4[0].index == VeyIndex{{2}, {2, 2}} && r4[0].degree == 11,
          "rigid-families: q=4 list");
  const auto r6 = enumerate_rqs(6);
  const std::vector<std::pair<VeyIndex, int>> expected{
      {VeyIndex{{2}, {2, 2, 2}}, 15}, {VeyIndex{{4}, {4}}, 15}, {VeyIndex{{2, 4}, {2, 2, 2}}, 22}};
  require(r6.size() == expected.size(), "rigid-families: q=6 has the wrong number of classes");
  for (std::size_t i = 0; i < expected.size(); ++i)
    require(r6[i].index == expected[i].first && r6[i].degree == expected[i].second,
            fmt::format("rigid-families: q=6 entry {}", i));
  return "q=4: {y2 c2^2 (11)}; q=6: {y2 c2^3 (15), y4 c4 (15), y2 y4 c2^3 (22)}";
}

std::string criterion_9(const Options&, std::vector<std::string>& info) {
  std::size_t previous = 0;
  std::vector<std::string> shortfalls;
  for (int q = 4; q <= 30; q += 2) {
    std::size_t a = 0;
    for (const auto& e : enumerate_rqs(q))
      if (e.family == RigidFamily::A) ++a;
    const std::size_t expected = std::size_t{1} << ((q + 2) / 4 - 1);
    require(a == expected, fmt::format("growth-table: q={} has |A| = {}, expected {}", q, a, expected));
    require(a >= previous, fmt::format("growth-table: |A| decreases at q={}", q));
    previous = a;
    if (q >= 8 && Rational(static_cast<long>(a)) < Rational(q * q, 32))
      shortfalls.push_back(fmt::format("q={}: |A| = {} < q^2/32 = {}", q, a, Rational(q * q, 32).to_string()));
  }
  info.push_back("|A| = 2^(floor((q+2)/4) - 1) and monotone for even q in [4, 30]");
  require(shortfalls.empty(), "growth-table: lower bound q^2/32 fails: " + fmt::format("{}", fmt::join(shortfalls, "; ")));
  return "|A| = 2^(floor((q+2)/4) - 1), monotone, >= q^2/32 for q >= 8";
}

std::string criterion_10(const Options&, std::vector<std::string>&) {
  for (int q = 4; q <= 30; q += 2)
    for (const auto& e : enumerate_rqs(q))
      require(is_vey(e.index, q) && is_rigid(e.index, q),
              fmt::format("cross-module: {} is not rigid for q={}", e.index.to_string(), q));
  for (const auto& cert : {verify_prop_2k(2), verify_prop_2k(3), verify_prop_4k2(2)})
    for (const auto& c : cert.classes)
      require(c.rigid && is_vey(c.index, cert.q),
              fmt::format("cross-module: certified class {} is not a rigid Vey index", c.index.to_string()));
  return "family entries and certified classes are rigid Vey indices";
}

struct Criterion {
  int id;
  const char* name;
  double limit;
  std::string (*run)(const Options&, std::vector<std::string>&);
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "algebra-laws", 30, criterion_1},
      {2, "vey-oracle", 120, criterion_2},
      {3, "godbillon-vey", 0, criterion_3},
      {4, "pontrjagin-independence", 60, criterion_4},
      {5, "symmetric-multiple", 0, criterion_5},
      {6, "cp2-frame-classes", 120, criterion_6},
      {7, "sphere-frame-classes", 0, criterion_7},
      {8, "rigid-families", 0, criterion_8},
      {9, "growth-table", 0, criterion_9},
      {10, "cross-module", 0, criterion_10},
  };
  return all;
}

}  // namespace

bool Summary::pass() const {
  if (budget_exceeded) return false;
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

std::set<int> Summary::failing() const {
  std::set<int> out;
  for (const auto& r : results)
    if (!r.pass) out.insert(r.id);
  return out;
}

ProductFn unsigned_product() {
  return [](const Monomial& a, const Monomial& b, const GeneratorSet& g) -> std::optional<SignedMonomial> {
    auto r = mono_mul(a, b, g);
    if (r) r->sign = 1;
    return r;
  };
}

Summary run_all(const Options& options) {
  Options o = options;
  if (!o.product) o.product = mono_mul;

  Summary summary;
  const auto start = Clock::now();
  for (const auto& c : criteria()) {
    if (!o.only.empty() && !o.only.count(c.id)) continue;
    if (o.time_budget_seconds) {
      const double used = std::chrono::duration<double>(Clock::now() - start).count();
      if (used > *o.time_budget_seconds) {
        summary.budget_exceeded = true;
        summary.budget_detail = fmt::format("time budget of {}s exhausted after {:.2f}s, before criterion {} ({})",
                                            *o.time_budget_seconds, used, c.id, c.name);
        break;
      }
    }
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    r.limit_seconds = c.limit;
    const auto t0 = Clock::now();
    try {
      r.detail = c.run(o, r.info);
      r.pass = true;
    } catch (const CheckFailed& f) {
      r.detail = f.what;
    } catch (const std::exception& e) {
      r.detail = fmt::format("{}: unexpected error: {}", c.name, e.what());
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (r.pass && c.limit > 0 && r.seconds > c.limit) {
      r.pass = false;
      r.detail = fmt::format("{}: runtime {:.2f}s exceeds the {}s limit", c.name, r.seconds, c.limit);
    }
    summary.results.push_back(std::move(r));
  }
  if (!summary.budget_exceeded && o.time_budget_seconds) {
    const double used = std::chrono::duration<double>(Clock::now() - start).count();
    if (used > *o.time_budget_seconds) {
      summary.budget_exceeded = true;
      summary.budget_detail = fmt::format("time budget of {}s exceeded: {:.2f}s", *o.time_budget_seconds, used);
    }
  }
  return summary;
}

}  // namespace weil::acceptance
