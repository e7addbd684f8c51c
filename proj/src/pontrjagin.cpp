#include "weil/pontrjagin.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include <fmt/format.h>

#include "weil/errors.hpp"
#include "weil/linalg.hpp"

namespace weil {

namespace {

std::string factor_name(const std::string& base, std::size_t f) {
  const bool has_digit = std::any_of(base.begin(), base.end(), [](unsigned char ch) { return std::isdigit(ch); });
  return has_digit ? fmt::format("{}_{}", base, f + 1) : fmt::format("{}{}", base, f + 1);
}

}  // namespace

std::string ModelRing::name() const {
  switch (kind_) {
    case Kind::CP2: return "CP2";
    case Kind::Sphere: return fmt::format("S{}", parameter_);
    case Kind::X: return fmt::format("X({})", parameter_);
    case Kind::Product: break;
  }
  std::string out;
  for (const auto& f : factors_) out += (out.empty() ? "" : " x ") + f.name();
  return out;
}

std::optional<int> ModelRing::fundamental_degree() const {
  if (!top_) return std::nullopt;
  return gens_->degree(*top_);
}

Element ModelRing::embed(std::size_t f, const Element& x) const {
  if (kind_ != Kind::Product) {
    if (f != 0) throw UsageError(fmt::format("{} has a single factor", name()));
    require_same_generators(*gens_, x.generators());
    return x;
  }
  if (f >= factors_.size()) throw UsageError(fmt::format("factor {} out of range for {}", f, name()));
  require_same_generators(*factors_[f].gens(), x.generators());
  Element out(gens_);
  for (const auto& [m, c] : x.terms()) {
    Monomial big = gens_->unit();
    std::copy(m.exponents.begin(), m.exponents.end(), big.exponents.begin() + static_cast<long>(offsets_[f]));
    out.add_term(big, c);
  }
  return out;
}

ModelRing cp2() {
  ModelRing r;
  r.kind_ = ModelRing::Kind::CP2;
  r.gens_ = make_generator_set({}, {{"a", 2}}, 0, {DegreeBound{{0}, 4}});
  r.top_ = r.gens_->polynomial_generator(0, 2);
  return r;
}

ModelRing sphere(int dim) {
  if (dim <= 0 || dim % 2 != 0) throw UsageError(fmt::format("sphere model needs a positive even dimension, got {}", dim));
  ModelRing r;
  r.kind_ = ModelRing::Kind::Sphere;
  r.parameter_ = dim;
  r.gens_ = make_generator_set({}, {{"s", dim}}, 0, {DegreeBound{{0}, dim}});
  r.top_ = r.gens_->polynomial_generator(0, 1);
  return r;
}

ModelRing x_space(int q) {
  if (q < 2) throw UsageError(fmt::format("X(q) needs q >= 2, got {}", q));
  std::vector<Generator> poly;
  for (int i = 1; 4 * i <= q + 2; ++i)
    if (q % 2 == 1 || 2 * i != q) poly.push_back({fmt::format("p{}", i), 4 * i});
  if (q % 2 == 0) poly.push_back({"e", q});
  std::vector<std::size_t> all(poly.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  ModelRing r;
  r.kind_ = ModelRing::Kind::X;
  r.parameter_ = q;
  r.gens_ = make_generator_set({}, std::move(poly), 0, {DegreeBound{std::move(all), q + 2}});
  return r;
}

ModelRing product(const std::vector<ModelRing>& rings) {
  if (rings.empty()) throw UsageError("product of no rings");
  if (rings.size() == 1) return rings.front();
  std::vector<ModelRing> flat;
  for (const auto& r : rings) {
    if (r.kind() == ModelRing::Kind::Product)
      flat.insert(flat.end(), r.factors().begin(), r.factors().end());
    else
      flat.push_back(r);
  }

  ModelRing out;
  out.kind_ = ModelRing::Kind::Product;
  std::vector<Generator> poly;
  std::vector<DegreeBound> bounds;
  bool closed = true;
  for (std::size_t f = 0; f < flat.size(); ++f) {
    const auto& g = *flat[f].gens();
    out.offsets_.push_back(poly.size());
    for (const auto& b : g.bounds()) {
      DegreeBound shifted{{}, b.max_degree};
      for (std::size_t i : b.polynomial) shifted.polynomial.push_back(i + poly.size());
      bounds.push_back(std::move(shifted));
    }
    for (const auto& gen : g.polynomial()) poly.push_back({factor_name(gen.name, f), gen.degree});
    closed = closed && flat[f].top_monomial().has_value();
  }
  out.gens_ = make_generator_set({}, std::move(poly), 0, std::move(bounds));
  if (closed) {
    Monomial top = out.gens_->unit();
    for (std::size_t f = 0; f < flat.size(); ++f) {
      const Monomial t = *flat[f].top_monomial();
      std::copy(t.exponents.begin(), t.exponents.end(), top.exponents.begin() + static_cast<long>(out.offsets_[f]));
    }
    out.top_ = top;
  }
  out.factors_ = std::move(flat);
  return out;
}

Element BundleMap::p(int i, const GenSetPtr& gens) const {
  if (i == 0) return Element::unit(gens);
  if (i < 0 || static_cast<std::size_t>(i) > pontrjagin.size()) return Element::zero(gens);
  return pontrjagin[static_cast<std::size_t>(i) - 1];
}

Element BundleMap::total(const GenSetPtr& gens) const {
  Element t = Element::unit(gens);
  for (const auto& pi : pontrjagin) t += pi;
  return t;
}

BundleMap canonical_cp2(const ModelRing& ring) {
  if (ring.kind() != ModelRing::Kind::CP2) throw UsageError("canonical_cp2 needs the CP2 model, got " + ring.name());
  const Element a = ring.generator("a");
  return BundleMap{2, {a * a}, a};
}

BundleMap sphere_generator(const ModelRing& ring, int rank) {
  if (ring.kind() != ModelRing::Kind::Sphere || ring.parameter() % 4 != 0)
    throw UsageError("sphere_generator needs a sphere of dimension 4i, got " + ring.name());
  if (rank < 1) throw UsageError(fmt::format("bundle rank must be positive, got {}", rank));
  const int i = ring.parameter() / 4;
  BundleMap b{rank, std::vector<Element>(static_cast<std::size_t>(i), Element::zero(ring.gens())), std::nullopt};
  b.pontrjagin.back() = ring.generator("s");
  if (rank % 2 == 0) b.euler = Element::zero(ring.gens());
  return b;
}

BundleMap tautological_x(const ModelRing& ring) {
  if (ring.kind() != ModelRing::Kind::X) throw UsageError("tautological_x needs an X(q) model, got " + ring.name());
  const int q = ring.parameter();
  BundleMap b{q, {}, std::nullopt};
  if (q % 2 == 0) b.euler = ring.generator("e");
  for (int i = 1; 4 * i <= q + 2; ++i) {
    if (q % 2 == 0 && 2 * i == q)
      b.pontrjagin.push_back(*b.euler * *b.euler);
    else
      b.pontrjagin.push_back(ring.generator(fmt::format("p{}", i)));
  }
  return b;
}

BundleMap trivial_bundle(const ModelRing& ring, int rank) {
  if (rank < 0) throw UsageError(fmt::format("bundle rank must be nonnegative, got {}", rank));
  BundleMap b{rank, {}, std::nullopt};
  if (rank % 2 == 0) b.euler = Element::zero(ring.gens());
  return b;
}

BundleMap whitney_sum(const ModelRing& product_ring, const std::vector<BundleMap>& factors) {
  if (factors.size() != product_ring.factor_count())
    throw UsageError(fmt::format("{} bundles for {} factors", factors.size(), product_ring.factor_count()));
  const auto& gens = product_ring.gens();
  const auto& rings = product_ring.kind() == ModelRing::Kind::Product ? product_ring.factors()
                                                                      : std::vector<ModelRing>{product_ring};
  BundleMap out{0, {}, Element::unit(gens)};
  Element total = Element::unit(gens);
  for (std::size_t f = 0; f < factors.size(); ++f) {
    const auto& b = factors[f];
    out.rank += b.rank;
    total = total * product_ring.embed(f, b.total(rings[f].gens()));
    if (out.euler && b.euler)
      out.euler = *out.euler * product_ring.embed(f, *b.euler);
    else
      out.euler.reset();
  }
  for (const auto& [n, component] : total.homogeneous_components()) {
    if (n == 0) continue;
    if (n % 4 != 0) throw InvariantViolation("total Pontrjagin class has a component of degree " + std::to_string(n));
    const auto i = static_cast<std::size_t>(n / 4);
    if (out.pontrjagin.size() < i) out.pontrjagin.resize(i, Element::zero(gens));
    out.pontrjagin[i - 1] = component;
  }
  return out;
}

int PontrjaginMonomial::weight() const {
  int w = 0;
  for (std::size_t i = 0; i < n.size(); ++i) w += (4 * static_cast<int>(i + 1) - 2) * n[i];
  return w;
}

int PontrjaginMonomial::size() const {
  int s = 0;
  for (int x : n) s += x;
  return s;
}

int PontrjaginMonomial::degree() const {
  int d = 0;
  for (std::size_t i = 0; i < n.size(); ++i) d += 4 * static_cast<int>(i + 1) * n[i];
  return d;
}

std::string PontrjaginMonomial::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] == 0) continue;
    out += fmt::format("{}p{}", out.empty() ? "" : " ", i + 1);
    if (n[i] > 1) out += fmt::format("^{}", n[i]);
  }
  return out.empty() ? "1" : out;
}

std::vector<PontrjaginMonomial> enumerate_V(int q) {
  if (q < 2) throw UsageError(fmt::format("V(q) needs q >= 2, got {}", q));
  const int kmax = (q + 2) / 4;  // 4k - 2 <= q
  std::vector<PontrjaginMonomial> out;
  std::vector<int> n(static_cast<std::size_t>(kmax), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int budget) {
    if (i == n.size()) {
      std::vector<int> trimmed = n;
      while (!trimmed.empty() && trimmed.back() == 0) trimmed.pop_back();
      if (!trimmed.empty()) out.push_back({std::move(trimmed)});
      return;
    }
    const int w = 4 * static_cast<int>(i + 1) - 2;
    for (int k = 0; k * w <= budget; ++k) {
      n[i] = k;
      rec(i + 1, budget - k * w);
    }
    n[i] = 0;
  };
  rec(0, q);
  std::sort(out.begin(), out.end(), [](const PontrjaginMonomial& a, const PontrjaginMonomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.n > b.n;
  });
  for (const auto& m : out)
    if (m.degree() > 2 * q)
      throw InvariantViolation(fmt::format("{} has degree {} above 2q = {}", m.to_string(), m.degree(), 2 * q));
  return out;
}

Element whitney_pullback(const PontrjaginMonomial& m, const BundleMap& bundle, const GenSetPtr& gens) {
  Element out = Element::unit(gens);
  for (std::size_t i = 0; i < m.n.size(); ++i)
    if (m.n[i] > 0) out = out * power(bundle.p(static_cast<int>(i + 1), gens), static_cast<unsigned>(m.n[i]));
  return out;
}

Element whitney_pullback(const PontrjaginMonomial& m, const ModelRing& product_ring,
                         const std::vector<BundleMap>& factors) {
  return whitney_pullback(m, whitney_sum(product_ring, factors), product_ring.gens());
}

Rational evaluate_on_cycle(const Element& x, const ModelRing& ring) {
  const auto top = ring.top_monomial();
  if (!top) throw UsageError(ring.name() + " has no fundamental class");
  require_same_generators(*ring.gens(), x.generators());
  return x.coefficient(*top);
}

TestCycle test_cycle(const PontrjaginMonomial& m) {
  std::vector<ModelRing> rings;
  std::vector<BundleMap> bundles;
  for (std::size_t i = 0; i < m.n.size(); ++i) {
    const int idx = static_cast<int>(i + 1);
    for (int c = 0; c < m.n[i]; ++c) {
      if (idx == 1) {
        rings.push_back(cp2());
        bundles.push_back(canonical_cp2(rings.back()));
      } else {
        rings.push_back(sphere(4 * idx));
        bundles.push_back(sphere_generator(rings.back(), 4 * idx - 2));
      }
    }
  }
  if (rings.empty()) throw UsageError("test cycle of the unit monomial");
  ModelRing ring = product(rings);
  BundleMap bundle = rings.size() == 1 ? bundles.front() : whitney_sum(ring, bundles);
  return TestCycle{ring.name(), ring, std::move(bundle)};
}

IndependenceReport independence_certificate(int q) {
  IndependenceReport report;
  report.q = q;
  report.classes = enumerate_V(q);
  report.notes.push_back("sphere pull-backs normalized to g*(p_i) = s; ranks are invariant under nonzero column scaling");
  report.notes.push_back("CP2 generator normalized so that <a^2, [CP2]> = 1");

  std::vector<TestCycle> cycles;
  cycles.reserve(report.classes.size());
  for (const auto& m : report.classes) cycles.push_back(test_cycle(m));

  report.pass = true;
  for (std::size_t lo = 0; lo < report.classes.size();) {
    std::size_t hi = lo;
    const int deg = report.classes[lo].degree();
    while (hi < report.classes.size() && report.classes[hi].degree() == deg) ++hi;

    DegreeBlock block;
    block.degree = deg;
    for (std::size_t j = lo; j < hi; ++j) block.cycles.push_back(cycles[j].name);
    for (std::size_t i = lo; i < hi; ++i) {
      block.classes.push_back(report.classes[i].to_string());
      std::vector<Rational> row;
      for (std::size_t j = lo; j < hi; ++j) {
        const auto& c = cycles[j];
        row.push_back(evaluate_on_cycle(whitney_pullback(report.classes[i], c.bundle, c.ring.gens()), c.ring));
      }
      block.pairing.push_back(std::move(row));
    }
    block.rank = rank(to_sparse_rows(block.pairing));
    block.full_rank = block.rank == hi - lo;
    report.pass = report.pass && block.full_rank;
    report.blocks.push_back(std::move(block));
    lo = hi;
  }
  return report;
}

SymmetricMultiple verify_symmetric_multiple(int k, int l) {
  if (l < 1 || l > k) throw UsageError(fmt::format("need 1 <= l <= k, got k = {}, l = {}", k, l));
  std::vector<ModelRing> rings(static_cast<std::size_t>(k), cp2());
  const ModelRing ring = product(rings);
  std::vector<BundleMap> bundles;
  for (const auto& r : rings) bundles.push_back(canonical_cp2(r));
  const BundleMap xi = k == 1 ? bundles.front() : whitney_sum(ring, bundles);

  const Element pl = xi.p(l, ring.gens());
  const Element p1l = power(xi.p(1, ring.gens()), static_cast<unsigned>(l));
  if (p1l.is_zero()) throw InvariantViolation("p_1^l vanishes on (CP2)^k for l <= k");
  const auto& [m, c] = *p1l.terms().begin();
  const Rational ratio = pl.coefficient(m) / c;
  return SymmetricMultiple{ratio, pl == p1l * ratio};
}

}  // namespace weil
