#include "weil/dga.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "parallel.hpp"
#include "weil/errors.hpp"

namespace weil {

namespace {

bool truncation_involves(const GeneratorSet& gens, std::size_t poly_index) {
  if (gens.truncation() > 0) return true;
  for (const auto& b : gens.bounds())
    if (std::find(b.polynomial.begin(), b.polynomial.end(), poly_index) != b.polynomial.end()) return true;
  return false;
}

Monomial exterior_only(const GeneratorSet& gens, std::uint64_t mask) {
  Monomial m = gens.unit();
  m.exterior = mask;
  return m;
}

/// Rows of d restricted to degree n, in coordinates of the degree n+1 basis.
std::vector<SparseVector> differential_rows(const Differential& d, const std::vector<Monomial>& source,
                                            const std::vector<Monomial>& target) {
  std::vector<SparseVector> rows;
  rows.reserve(source.size());
  for (const auto& m : source) rows.push_back(coordinates(d.apply(m), target));
  return rows;
}

}  // namespace

Differential::Differential(GenSetPtr gens, const std::vector<std::pair<std::string, Element>>& images,
                           Validation validation)
    : gens_(std::move(gens)) {
  for (std::size_t i = 0; i < gens_->exterior().size(); ++i) exterior_.emplace_back(gens_);
  for (std::size_t i = 0; i < gens_->polynomial().size(); ++i) polynomial_.emplace_back(gens_);

  for (const auto& [name, image] : images) {
    const auto ref = gens_->find(name);
    if (!ref) throw UsageError(fmt::format("differential assigns unknown generator {}", name));
    require_same_generators(*gens_, image.generators());
    const Generator& g = ref->exterior ? gens_->exterior()[ref->index] : gens_->polynomial()[ref->index];
    if (!image.is_zero() && image.degree() != g.degree + 1)
      throw DegreeMismatch(fmt::format("d({}) must be homogeneous of degree {}, got {}", name, g.degree + 1,
                                       image.to_string()));
    if (!ref->exterior && !image.is_zero() && truncation_involves(*gens_, ref->index))
      throw UsageError(fmt::format("d({}) must vanish: {} takes part in a truncation relation", name, name));
    (ref->exterior ? exterior_ : polynomial_)[ref->index] = image;
  }

  if (validation == Validation::Full && !check_d_squared(*this))
    throw UsageError("differential does not square to zero on the generators");
}

Element Differential::apply(const Monomial& m) const {
  Element out(gens_);
  if (!gens_->fits(m)) throw UsageError("monomial does not belong to this generator set");
  if (!gens_->admits(m)) return out;

  const auto ext = m.exterior_indices();
  Monomial poly_part = gens_->unit();
  poly_part.exponents = m.exponents;
  const Element poly_elem = Element::monomial(gens_, poly_part);

  std::uint64_t prefix = 0;
  for (std::size_t k = 0; k < ext.size(); ++k) {
    const std::uint64_t bit = std::uint64_t{1} << ext[k];
    const Element& dy = exterior_[ext[k]];
    if (!dy.is_zero()) {
      const std::uint64_t suffix = m.exterior & ~prefix & ~bit;
      Element term = Element::monomial(gens_, exterior_only(*gens_, prefix)) * dy *
                     Element::monomial(gens_, exterior_only(*gens_, suffix)) * poly_elem;
      if (k % 2 == 1) term *= Rational(-1);
      out += term;
    }
    prefix |= bit;
  }

  const Element ext_elem = Element::monomial(gens_, exterior_only(*gens_, m.exterior));
  for (std::size_t j = 0; j < m.exponents.size(); ++j) {
    if (m.exponents[j] == 0 || polynomial_[j].is_zero()) continue;
    Monomial rest = poly_part;
    rest.exponents[j] -= 1;
    Element term = ext_elem * Element::monomial(gens_, rest, Rational(m.exponents[j])) * polynomial_[j];
    if (ext.size() % 2 == 1) term *= Rational(-1);
    out += term;
  }
  return out;
}

Element Differential::apply(const Element& x) const {
  require_same_generators(*gens_, x.generators());
  Element out(gens_);
  for (const auto& [m, c] : x.terms()) out += apply(m) * c;
  return out;
}

Element apply_d(const Element& x, const Differential& d) { return d.apply(x); }

bool check_d_squared(const Differential& d) {
  const auto& gens = d.generators();
  for (std::size_t i = 0; i < gens.exterior().size(); ++i)
    if (!d.apply(d.exterior_image(i)).is_zero()) return false;
  for (std::size_t i = 0; i < gens.polynomial().size(); ++i)
    if (!d.apply(d.polynomial_image(i)).is_zero()) return false;
  return true;
}

SparseVector coordinates(const Element& x, const std::vector<Monomial>& basis) {
  SparseVector out;
  out.reserve(x.terms().size());
  for (const auto& [m, c] : x.terms()) {
    const auto it = std::lower_bound(basis.begin(), basis.end(), m);
    if (it == basis.end() || !(*it == m))
      throw UsageError("element has a term outside the basis of its degree: " + x.generators().format(m));
    out.emplace_back(static_cast<std::size_t>(it - basis.begin()), c);
  }
  // Element terms and the basis share the canonical order, so `out` is sorted.
  return out;
}

std::size_t CohomologyReport::dimension(int n) const {
  const auto it = per_degree.find(n);
  return it == per_degree.end() ? 0 : it->second.dimension;
}

std::map<int, std::size_t> CohomologyReport::dimensions() const {
  std::map<int, std::size_t> out;
  for (const auto& [n, h] : per_degree)
    if (h.dimension > 0) out.emplace(n, h.dimension);
  return out;
}

CohomologyReport cohomology(const Differential& d, std::optional<int> max_degree, const CohomologyOptions& options) {
  const auto& gens = d.generators();
  if (!max_degree) {
    max_degree = gens.top_degree();
    if (!max_degree) throw UsageError("infinite complex: an explicit maximum degree is required");
  }
  if (*max_degree < 0) throw UsageError("maximum degree must be nonnegative");
  const int top = *max_degree;

  // bases[n] for n in [0, top + 1]; rows[n] = d: C^n -> C^{n+1} for n in [0, top].
  std::vector<std::vector<Monomial>> bases(static_cast<std::size_t>(top) + 2);
  detail::parallel_for(bases.size(), options.threads,
                       [&](std::size_t n) { bases[n] = basis_of_degree(gens, static_cast<int>(n)); });
  std::vector<std::vector<SparseVector>> rows(static_cast<std::size_t>(top) + 1);
  std::vector<std::size_t> ranks(rows.size(), 0);
  detail::parallel_for(rows.size(), options.threads, [&](std::size_t n) {
    rows[n] = differential_rows(d, bases[n], bases[n + 1]);
    ranks[n] = rank(rows[n]);
  });

  std::vector<DegreeCohomology> slices(rows.size());
  detail::parallel_for(rows.size(), options.threads, [&](std::size_t n) {
    DegreeCohomology& h = slices[n];
    h.degree = static_cast<int>(n);
    h.chain_dimension = bases[n].size();
    h.kernel_dimension = h.chain_dimension - ranks[n];
    h.boundary_rank = n == 0 ? 0 : ranks[n - 1];
    h.dimension = h.kernel_dimension - h.boundary_rank;
    if (!options.representatives || h.dimension == 0) return;

    FractionFreeEchelon image;
    if (n > 0)
      for (const auto& r : rows[n - 1]) image.insert(r);
    for (const auto& k : left_kernel(rows[n])) {
      if (!image.insert(k)) continue;
      Element rep(d.generator_set());
      for (const auto& [idx, c] : k) rep.add_term(bases[n][idx], c);
      h.representatives.push_back(std::move(rep));
    }
    if (h.representatives.size() != h.dimension)
      throw InvariantViolation(fmt::format("degree {}: {} representatives for a {}-dimensional cohomology group", n,
                                           h.representatives.size(), h.dimension));
  });

  CohomologyReport report;
  report.max_degree = top;
  for (auto& h : slices) report.per_degree.emplace(h.degree, std::move(h));
  return report;
}

namespace {

FractionFreeEchelon coboundary_echelon(const Differential& d, int n) {
  FractionFreeEchelon image;
  if (n <= 0) return image;
  const auto target = basis_of_degree(d.generators(), n);
  for (const auto& m : basis_of_degree(d.generators(), n - 1)) image.insert(coordinates(d.apply(m), target));
  return image;
}

}  // namespace

bool class_nonzero(const Element& x, const Differential& d) {
  if (!d.apply(x).is_zero()) throw NotACocycle("class_nonzero: " + x.to_string() + " is not a cocycle");
  for (const auto& [n, component] : x.homogeneous_components()) {
    FractionFreeEchelon image = coboundary_echelon(d, n);
    if (image.insert(coordinates(component, basis_of_degree(d.generators(), n)))) return true;
  }
  return false;
}

std::vector<ClassIndependence> classes_independent(std::span<const Element> classes, const Differential& d) {
  std::map<int, ClassIndependence> by_degree;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const Element& x = classes[i];
    if (!d.apply(x).is_zero()) throw NotACocycle("classes_independent: " + x.to_string() + " is not a cocycle");
    if (!x.is_homogeneous()) throw DegreeMismatch("classes_independent: inhomogeneous class " + x.to_string());
    // Zero classes are reported in degree -1 (they carry no degree).
    const int n = x.degree().value_or(-1);
    auto& entry = by_degree[n];
    entry.degree = n;
    entry.indices.push_back(i);
  }

  std::vector<ClassIndependence> out;
  for (auto& [n, entry] : by_degree) {
    if (n < 0) {
      entry.nonzero.assign(entry.indices.size(), false);
      entry.rank = 0;
      entry.independent = false;
      out.push_back(std::move(entry));
      continue;
    }
    const auto basis = basis_of_degree(d.generators(), n);
    const FractionFreeEchelon image = coboundary_echelon(d, n);
    FractionFreeEchelon joint = image;
    bool all = true;
    for (std::size_t i : entry.indices) {
      const SparseVector v = coordinates(classes[i], basis);
      FractionFreeEchelon alone = image;
      entry.nonzero.push_back(alone.insert(v));
      all = joint.insert(v) && all;
    }
    entry.rank = joint.rank() - image.rank();
    entry.independent = all;
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace weil
