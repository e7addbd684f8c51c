#include "weil/algebra.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <set>

#include <fmt/format.h>

#include "weil/errors.hpp"

namespace weil {

namespace {

std::uint64_t bits_above(int i) { return i >= 63 ? 0 : (~std::uint64_t{0} << (i + 1)); }

std::strong_ordering compare_exterior(std::uint64_t a, std::uint64_t b) {
  if (a == b) return std::strong_ordering::equal;
  const int d = std::countr_zero(a ^ b);
  // The sorted index lists agree below d; exactly one of them contains d.
  if ((a >> d) & 1U) return (b & bits_above(d)) ? std::strong_ordering::less : std::strong_ordering::greater;
  return (a & bits_above(d)) ? std::strong_ordering::greater : std::strong_ordering::less;
}

/// Parity of the permutation sorting (indices of a) ++ (indices of b).
int merge_sign(std::uint64_t a, std::uint64_t b) {
  int inversions = 0;
  for (std::uint64_t rest = b; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    inversions += std::popcount(a & bits_above(j));
  }
  return (inversions & 1) ? -1 : 1;
}

/// Enumerates admitted polynomial exponent vectors of exact degree `target`
/// (or of any degree <= `target` when `exact` is false) in lexicographic order.
void enumerate_polynomial(const GeneratorSet& gens, int target, bool exact,
                          const std::function<void(const std::vector<int>&, int)>& emit) {
  const auto poly = gens.polynomial();
  const auto& bounds = gens.bounds();
  std::vector<std::vector<std::size_t>> groups_of(poly.size());
  for (std::size_t g = 0; g < bounds.size(); ++g)
    for (std::size_t i : bounds[g].polynomial) groups_of[i].push_back(g);

  std::vector<int> exps(poly.size(), 0);
  std::vector<int> group_used(bounds.size(), 0);

  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
    if (i == poly.size()) {
      if (!exact || used == target) emit(exps, used);
      return;
    }
    const int deg = poly[i].degree;
    int room = target - used;
    if (gens.truncation() > 0) room = std::min(room, gens.truncation() - used);
    for (std::size_t g : groups_of[i]) room = std::min(room, bounds[g].max_degree - group_used[g]);
    for (int e = 0; e * deg <= room; ++e) {
      exps[i] = e;
      for (std::size_t g : groups_of[i]) group_used[g] += e * deg;
      rec(i + 1, used + e * deg);
      for (std::size_t g : groups_of[i]) group_used[g] -= e * deg;
    }
    exps[i] = 0;
  };
  rec(0, 0);
}

/// Largest admitted polynomial degree, or nullopt if some generator is unbounded.
std::optional<int> max_polynomial_degree(const GeneratorSet& gens) {
  if (gens.polynomial().empty()) return 0;
  if (gens.truncation() > 0) {
    // Every group bound can only lower this further; enumerate within T.
    int best = 0;
    enumerate_polynomial(gens, gens.truncation(), false,
                         [&](const std::vector<int>&, int d) { best = std::max(best, d); });
    return best;
  }
  int cap = 0;
  std::vector<bool> covered(gens.polynomial().size(), false);
  for (const auto& b : gens.bounds()) {
    cap += b.max_degree;
    for (std::size_t i : b.polynomial) covered[i] = true;
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end()) return std::nullopt;
  int best = 0;
  enumerate_polynomial(gens, cap, false, [&](const std::vector<int>&, int d) { best = std::max(best, d); });
  return best;
}

}  // namespace

std::vector<std::size_t> Monomial::exterior_indices() const {
  std::vector<std::size_t> out;
  for (std::uint64_t rest = exterior; rest != 0; rest &= rest - 1)
    out.push_back(static_cast<std::size_t>(std::countr_zero(rest)));
  return out;
}

int Monomial::exterior_count() const { return std::popcount(exterior); }

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = compare_exterior(a.exterior, b.exterior); c != 0) return c;
  return a.exponents <=> b.exponents;
}

GeneratorSet::GeneratorSet(std::vector<Generator> exterior, std::vector<Generator> polynomial,
                           int truncation, std::vector<DegreeBound> bounds)
    : exterior_(std::move(exterior)),
      polynomial_(std::move(polynomial)),
      truncation_(truncation),
      bounds_(std::move(bounds)) {
  if (exterior_.size() > kMaxExterior)
    throw UsageError(fmt::format("at most {} exterior generators supported", kMaxExterior));
  if (truncation_ < 0) throw UsageError("negative truncation");
  std::set<std::string> names;
  for (const auto& g : exterior_) {
    if (g.degree <= 0 || g.degree % 2 == 0)
      throw UsageError(fmt::format("exterior generator {} must have positive odd degree", g.name));
    if (!names.insert(g.name).second) throw UsageError("duplicate generator name " + g.name);
  }
  for (const auto& g : polynomial_) {
    if (g.degree <= 0 || g.degree % 2 != 0)
      throw UsageError(fmt::format("polynomial generator {} must have positive even degree", g.name));
    if (!names.insert(g.name).second) throw UsageError("duplicate generator name " + g.name);
  }
  for (const auto& b : bounds_)
    for (std::size_t i : b.polynomial)
      if (i >= polynomial_.size()) throw UsageError("degree bound refers to a missing generator");
}

std::optional<GeneratorRef> GeneratorSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < exterior_.size(); ++i)
    if (exterior_[i].name == name) return GeneratorRef{true, i};
  for (std::size_t i = 0; i < polynomial_.size(); ++i)
    if (polynomial_[i].name == name) return GeneratorRef{false, i};
  return std::nullopt;
}

Monomial GeneratorSet::exterior_generator(std::size_t i) const {
  if (i >= exterior_.size()) throw UsageError("exterior generator index out of range");
  Monomial m = unit();
  m.exterior = std::uint64_t{1} << i;
  return m;
}

Monomial GeneratorSet::polynomial_generator(std::size_t i, int exponent) const {
  if (i >= polynomial_.size()) throw UsageError("polynomial generator index out of range");
  Monomial m = unit();
  m.exponents[i] = exponent;
  return m;
}

bool GeneratorSet::fits(const Monomial& m) const {
  if (m.exponents.size() != polynomial_.size()) return false;
  if (exterior_.size() < 64 && (m.exterior >> exterior_.size()) != 0) return false;
  return std::all_of(m.exponents.begin(), m.exponents.end(), [](int e) { return e >= 0; });
}

int GeneratorSet::exterior_degree(const Monomial& m) const {
  int d = 0;
  for (std::uint64_t rest = m.exterior; rest != 0; rest &= rest - 1) d += exterior_[std::countr_zero(rest)].degree;
  return d;
}

int GeneratorSet::polynomial_degree(const Monomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < polynomial_.size(); ++i) d += m.exponents[i] * polynomial_[i].degree;
  return d;
}

int GeneratorSet::degree(const Monomial& m) const { return exterior_degree(m) + polynomial_degree(m); }

bool GeneratorSet::admits(const Monomial& m) const {
  if (truncation_ > 0 && polynomial_degree(m) > truncation_) return false;
  for (const auto& b : bounds_) {
    int d = 0;
    for (std::size_t i : b.polynomial) d += m.exponents[i] * polynomial_[i].degree;
    if (d > b.max_degree) return false;
  }
  return true;
}

std::optional<int> GeneratorSet::top_degree() const {
  const auto poly = max_polynomial_degree(*this);
  if (!poly) return std::nullopt;
  int ext = 0;
  for (const auto& g : exterior_) ext += g.degree;
  return ext + *poly;
}

std::optional<std::uint64_t> GeneratorSet::total_dimension(std::uint64_t cap) const {
  const auto top = max_polynomial_degree(*this);
  if (!top) return std::nullopt;
  std::uint64_t poly_count = 0;
  enumerate_polynomial(*this, *top, false, [&](const std::vector<int>&, int) { ++poly_count; });
  if (exterior_.size() >= 63) return cap;
  const std::uint64_t ext_count = std::uint64_t{1} << exterior_.size();
  if (poly_count > cap / ext_count) return cap;
  return std::min(cap, poly_count * ext_count);
}

std::string GeneratorSet::format(const Monomial& m) const {
  std::string out;
  auto append = [&](const std::string& piece) {
    if (!out.empty()) out += ' ';
    out += piece;
  };
  for (std::size_t i : m.exterior_indices()) append(exterior_[i].name);
  for (std::size_t i = 0; i < polynomial_.size(); ++i) {
    if (m.exponents[i] == 1) append(polynomial_[i].name);
    else if (m.exponents[i] > 1) append(fmt::format("{}^{}", polynomial_[i].name, m.exponents[i]));
  }
  return out.empty() ? "1" : out;
}

void require_same_generators(const GeneratorSet& a, const GeneratorSet& b) {
  if (&a != &b && !(a == b)) throw UsageError("operands live over different generator sets");
}

std::optional<SignedMonomial> mono_mul(const Monomial& a, const Monomial& b, const GeneratorSet& gens) {
  if (!gens.fits(a) || !gens.fits(b)) throw UsageError("monomial does not belong to this generator set");
  if ((a.exterior & b.exterior) != 0) return std::nullopt;
  SignedMonomial out;
  out.sign = merge_sign(a.exterior, b.exterior);
  out.monomial.exterior = a.exterior | b.exterior;
  out.monomial.exponents.resize(a.exponents.size());
  for (std::size_t i = 0; i < a.exponents.size(); ++i) out.monomial.exponents[i] = a.exponents[i] + b.exponents[i];
  if (!gens.admits(out.monomial)) return std::nullopt;
  return out;
}

std::vector<Monomial> basis_of_degree(const GeneratorSet& gens, int n) {
  std::vector<Monomial> out;
  if (n < 0) return out;
  const auto ext = gens.exterior();
  // Preorder DFS over increasing index sets yields lexicographic order.
  std::function<void(std::size_t, std::uint64_t, int)> rec = [&](std::size_t next, std::uint64_t mask, int deg) {
    enumerate_polynomial(gens, n - deg, true, [&](const std::vector<int>& exps, int) {
      out.push_back(Monomial{mask, exps});
    });
    for (std::size_t i = next; i < ext.size(); ++i)
      if (deg + ext[i].degree <= n) rec(i + 1, mask | (std::uint64_t{1} << i), deg + ext[i].degree);
  };
  rec(0, 0, 0);
  return out;
}

Element::Element(GenSetPtr gens) : gens_(std::move(gens)) {
  if (!gens_) throw UsageError("element needs a generator set");
}

Element Element::unit(GenSetPtr gens) {
  Element e(std::move(gens));
  e.terms_.emplace(e.gens_->unit(), Rational(1));
  return e;
}

Element Element::scalar(GenSetPtr gens, const Rational& c) {
  Element e(std::move(gens));
  if (!c.is_zero()) e.terms_.emplace(e.gens_->unit(), c);
  return e;
}

Element Element::monomial(GenSetPtr gens, const Monomial& m, const Rational& c) {
  Element e(std::move(gens));
  if (!e.gens_->fits(m)) throw UsageError("monomial does not belong to this generator set");
  if (e.gens_->admits(m)) e.add_term(m, c);
  return e;
}

Element Element::generator(GenSetPtr gens, std::string_view name) {
  const auto ref = gens->find(name);
  if (!ref) throw UsageError(fmt::format("no generator named {}", name));
  const Monomial m = ref->exterior ? gens->exterior_generator(ref->index) : gens->polynomial_generator(ref->index);
  return monomial(std::move(gens), m);
}

bool Element::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = gens_->degree(terms_.begin()->first);
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return gens_->degree(t.first) == d; });
}

std::optional<int> Element::degree() const {
  if (terms_.empty() || !is_homogeneous()) return std::nullopt;
  return gens_->degree(terms_.begin()->first);
}

std::map<int, Element> Element::homogeneous_components() const {
  std::map<int, Element> out;
  for (const auto& [m, c] : terms_) {
    auto it = out.try_emplace(gens_->degree(m), gens_).first;
    it->second.terms_.emplace(m, c);
  }
  return out;
}

Rational Element::coefficient(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Element::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Element::require_same_generators(const Element& o) const { weil::require_same_generators(*gens_, *o.gens_); }

Element& Element::operator+=(const Element& o) {
  require_same_generators(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  require_same_generators(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Element& Element::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Element operator*(const Element& a, const Element& b) { return elem_mul(a, b); }

bool operator==(const Element& a, const Element& b) {
  a.require_same_generators(b);
  return a.terms_ == b.terms_;
}

std::string Element::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c.sign() < 0;
    const Rational mag = negative ? -c : c;
    if (first) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    const std::string mono = gens_->format(m);
    if (mono == "1") out += mag.to_string();
    else if (mag == Rational(1)) out += mono;
    else out += mag.to_string() + " " + mono;
    first = false;
  }
  return out;
}

Element elem_mul(const Element& a, const Element& b) {
  require_same_generators(a.generators(), b.generators());
  Element out(a.generator_set());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      if (auto p = mono_mul(ma, mb, a.generators())) out.add_term(p->monomial, p->sign < 0 ? -(ca * cb) : ca * cb);
  return out;
}

Element power(const Element& a, unsigned n) {
  Element out = Element::unit(a.generator_set());
  for (unsigned i = 0; i < n; ++i) out = elem_mul(out, a);
  return out;
}

}  // namespace weil
