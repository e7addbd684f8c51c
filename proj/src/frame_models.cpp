#include "weil/frame_models.hpp"

#include <algorithm>
#include <functional>

#include <fmt/format.h>

#include "weil/errors.hpp"

namespace weil {

namespace {

/// Nonempty strictly increasing subsets of [first, last], lexicographic; the empty set first.
std::vector<std::vector<int>> all_subsets(int first, int last) {
  std::vector<std::vector<int>> out{{}};
  std::vector<int> prefix;
  std::function<void(int)> rec = [&](int from) {
    for (int i = from; i <= last; ++i) {
      prefix.push_back(i);
      out.push_back(prefix);
      rec(i + 1);
      prefix.pop_back();
    }
  };
  rec(first);
  return out;
}

std::uint64_t model_dimension(const ModelRing& base, int exterior_count, std::uint64_t cap) {
  const auto b = base.gens()->total_dimension(cap);
  if (!b) throw UsageError(base.name() + " is not finite");
  if (exterior_count >= 63) return cap;
  const std::uint64_t f = std::uint64_t{1} << exterior_count;
  return *b > cap / f ? cap : *b * f;
}

void require_budget(const ModelRing& base, int q, std::uint64_t max_dimension) {
  const int ext = primitive_count(q) + (q % 2 == 0 ? 1 : 0);
  const std::uint64_t dim = model_dimension(base, ext, UINT64_MAX);
  if (dim > max_dimension)
    throw BudgetExceeded(fmt::format("frame model over {} for q = {} has dimension {} > budget {}", base.name(), q,
                                     dim, max_dimension));
}

CertifiedClass certify(const VeyIndex& index, const WqPresentation& w, const CharacteristicMap& delta) {
  Element image = delta.apply(index.monomial(w));
  const bool cocycle = delta.target().d.apply(image).is_zero();
  const bool nonzero = cocycle && class_nonzero(image, delta.target().d);
  const bool rigid = is_vey(index, w.q) && is_rigid(index, w.q);
  return CertifiedClass{index, index.degree(), std::move(image), cocycle, nonzero, rigid};
}

void finish(FrameCertificate& cert, const KoszulModel& model) {
  bool ok = !cert.classes.empty();
  std::vector<Element> images;
  for (const auto& c : cert.classes) {
    ok = ok && c.cocycle && c.nonzero && c.rigid;
    images.push_back(c.image);
  }
  if (std::all_of(cert.classes.begin(), cert.classes.end(), [](const auto& c) { return c.cocycle; })) {
    cert.independence = classes_independent(images, model.d);
    for (const auto& block : cert.independence) ok = ok && block.independent;
  } else {
    ok = false;
  }
  for (const auto& v : cert.vanishing) ok = ok && v.image.is_zero();
  cert.pass = ok;
}

}  // namespace

std::string to_string(EulerConvention e) { return e == EulerConvention::Whitney ? "whitney" : "suppressed"; }

int primitive_count(int q) { return q % 2 == 1 ? (q - 1) / 2 : q / 2 - 1; }

Element KoszulModel::u(int i) const {
  if (i < 1 || i > u_max) throw IndexOutOfRange(fmt::format("u{} is not a generator (u_max = {})", i, u_max));
  return Element::generator(gens(), fmt::format("u{}", i));
}

Element KoszulModel::v() const {
  if (!has_v) throw IndexOutOfRange(fmt::format("no Euler transgression generator for odd q = {}", q));
  return Element::generator(gens(), "v");
}

Element KoszulModel::lift(const Element& base_class) const {
  require_same_generators(*base.gens(), base_class.generators());
  Element out(gens());
  for (const auto& [m, c] : base_class.terms()) out.add_term(Monomial{0, m.exponents}, c);
  return out;
}

Element KoszulModel::euler_image() const {
  if (!has_v || euler == EulerConvention::Suppressed || !bundle.euler || bundle.rank < q) return Element::zero(gens());
  return lift(*bundle.euler);
}

std::uint64_t KoszulModel::dimension() const { return gens()->total_dimension().value_or(0); }

KoszulModel build_frame_model(const ModelRing& base, const BundleMap& bundle, int q, EulerConvention euler) {
  if (q < 1) throw UsageError(fmt::format("codimension q must be >= 1, got {}", q));
  if (bundle.rank > q)
    throw DegreeMismatch(fmt::format("bundle of rank {} does not fit codimension {}", bundle.rank, q));
  const auto& bg = *base.gens();
  for (std::size_t i = 0; i < bundle.pontrjagin.size(); ++i) {
    const auto& p = bundle.pontrjagin[i];
    require_same_generators(bg, p.generators());
    if (!p.is_zero() && p.degree() != static_cast<int>(4 * (i + 1)))
      throw DegreeMismatch(fmt::format("p{} image {} is not of degree {}", i + 1, p.to_string(), 4 * (i + 1)));
  }
  if (bundle.euler && !bundle.euler->is_zero() && bundle.euler->degree() != bundle.rank)
    throw DegreeMismatch(fmt::format("Euler image {} is not of degree {}", bundle.euler->to_string(), bundle.rank));

  const int u_max = primitive_count(q);
  std::vector<Generator> ext;
  for (int i = 1; i <= u_max; ++i) ext.push_back({fmt::format("u{}", i), 4 * i - 1});
  if (q % 2 == 0) ext.push_back({"v", q - 1});
  std::vector<Generator> poly(bg.polynomial().begin(), bg.polynomial().end());
  auto gens = make_generator_set(std::move(ext), std::move(poly), 0, bg.bounds());

  KoszulModel model{q, u_max, q % 2 == 0, euler, base, bundle, Differential::zero(gens)};
  std::vector<std::pair<std::string, Element>> images;
  for (int i = 1; i <= u_max; ++i) images.emplace_back(fmt::format("u{}", i), model.lift(bundle.p(i, base.gens())));
  if (model.has_v) images.emplace_back("v", model.euler_image());
  model.d = Differential(gens, images);
  return model;
}

CharacteristicMap::CharacteristicMap(const WqPresentation& w, const KoszulModel& model) : w_(w), model_(model) {
  if (w.q != model.q) throw UsageError(fmt::format("W{} does not map to a model for q = {}", w.q, model.q));
  const auto& gens = model_.gens();
  const int q = w.q;
  const Element e = model_.euler_image();

  for (const auto& g : w.gens()->exterior()) {
    const int i = std::stoi(g.name.substr(1));
    if (i % 2 == 1)
      exterior_.push_back(Element::zero(gens));
    else if (i == q)
      exterior_.push_back(model_.v() * e);
    else
      exterior_.push_back(model_.u(i / 2));
  }
  for (const auto& g : w.gens()->polynomial()) {
    const int i = std::stoi(g.name.substr(1));
    if (i % 2 == 1)
      polynomial_.push_back(Element::zero(gens));
    else if (i == q)
      polynomial_.push_back(e * e);
    else
      polynomial_.push_back(model_.lift(model_.bundle.p(i / 2, model_.base.gens())));
  }

  for (std::size_t i = 0; i < exterior_.size(); ++i) {
    const Element dy = w.d.apply(Element::monomial(w.gens(), w.gens()->exterior_generator(i)));
    if (!(apply(dy) == model_.d.apply(exterior_[i])))
      throw InvariantViolation("characteristic map does not commute with d on " + w.gens()->exterior()[i].name);
  }

  // The truncation ideal is generated by c_J of degree in (2q, 4q].
  std::vector<Generator> cs(w.gens()->polynomial().begin(), w.gens()->polynomial().end());
  const auto free = make_generator_set({}, std::move(cs));
  for (int n = 2 * q + 2; n <= 4 * q; n += 2) {
    for (const auto& m : basis_of_degree(*free, n)) {
      Element image = Element::unit(gens);
      for (std::size_t j = 0; j < m.exponents.size() && !image.is_zero(); ++j)
        if (m.exponents[j] > 0) image = image * power(polynomial_[j], static_cast<unsigned>(m.exponents[j]));
      if (!image.is_zero())
        throw UsageError(fmt::format("characteristic map sends {} (degree {} > 2q) to {}", free->format(m), n,
                                     image.to_string()));
    }
  }
}

Element CharacteristicMap::apply(const Monomial& m) const {
  const auto& gens = model_.gens();
  if (!w_.gens()->fits(m)) throw UsageError("monomial is not over the source algebra");
  if (!w_.gens()->admits(m)) return Element::zero(gens);
  Element out = Element::unit(gens);
  for (std::size_t i : m.exterior_indices()) {
    out = out * exterior_[i];
    if (out.is_zero()) return out;
  }
  for (std::size_t j = 0; j < m.exponents.size(); ++j) {
    if (m.exponents[j] == 0) continue;
    out = out * power(polynomial_[j], static_cast<unsigned>(m.exponents[j]));
    if (out.is_zero()) return out;
  }
  return out;
}

Element CharacteristicMap::apply(const Element& x) const {
  require_same_generators(*w_.gens(), x.generators());
  Element out = Element::zero(model_.gens());
  for (const auto& [m, c] : x.terms()) out += apply(m) * c;
  return out;
}

Element apply_characteristic(const Element& x, const CharacteristicMap& delta) { return delta.apply(x); }

FrameCertificate verify_prop_2k(int k, const FrameOptions& options) {
  if (k < 2) throw UsageError(fmt::format("the (CP2)^k construction needs k >= 2, got {}", k));
  const int q = 2 * k;
  const ModelRing base = product(std::vector<ModelRing>(static_cast<std::size_t>(k), cp2()));
  require_budget(base, q, options.max_dimension);

  std::vector<BundleMap> factors;
  for (const auto& f : base.factors()) factors.push_back(canonical_cp2(f));
  const KoszulModel model = build_frame_model(base, whitney_sum(base, factors), q, options.euler);
  const WqPresentation w = build_wq(q, true);
  const CharacteristicMap delta(w, model);

  FrameCertificate cert;
  cert.label = "2k";
  cert.k = k;
  cert.q = q;
  cert.base = base.name();
  cert.euler = options.euler;
  cert.complex_dimension = model.dimension();
  const std::vector<int> c2(static_cast<std::size_t>(k), 2);
  for (const auto& rest : all_subsets(2, model.u_max)) {
    VeyIndex index{{2}, c2};
    for (int i : rest) index.I.push_back(2 * i);
    cert.classes.push_back(certify(index, w, delta));
  }
  if (options.euler == EulerConvention::Suppressed) cert.notes.push_back("Euler class suppressed: d v = 0");
  finish(cert, model);
  return cert;
}

FrameCertificate verify_prop_4k2(int k, const FrameOptions& options) {
  if (k < 2) throw UsageError(fmt::format("the sphere construction needs k >= 2 (q = 4k-2 >= 6), got {}", k));
  const int q = 4 * k - 2;
  const ModelRing base = sphere(4 * k);
  require_budget(base, q, options.max_dimension);

  const KoszulModel model = build_frame_model(base, sphere_generator(base, q), q, options.euler);
  const WqPresentation w = build_wq(q, true);
  const CharacteristicMap delta(w, model);

  FrameCertificate cert;
  cert.label = "4k2";
  cert.k = k;
  cert.q = q;
  cert.base = base.name();
  cert.euler = options.euler;
  cert.complex_dimension = model.dimension();
  for (const auto& rest : all_subsets(k + 1, model.u_max)) {
    VeyIndex index{{2 * k}, {2 * k}};
    for (int i : rest) index.I.push_back(2 * i);
    cert.classes.push_back(certify(index, w, delta));
  }
  cert.vanishing.push_back(certify(VeyIndex{{2}, std::vector<int>(static_cast<std::size_t>(2 * k - 1), 2)}, w, delta));
  cert.notes.push_back("sphere pull-back normalized to g*(p_k) = s");
  finish(cert, model);
  return cert;
}

PermanenceReport permanence_family(const VeyIndex& seed, int q, const std::vector<int>& r_list) {
  if (!is_vey(seed, q) || seed.is_unit())
    throw UsageError(seed.to_string() + fmt::format(" is not a Vey index for q = {}", q));
  const int u_max = primitive_count(q);
  for (std::size_t a = 0; a < r_list.size(); ++a) {
    const int r = r_list[a];
    if (a > 0 && r <= r_list[a - 1]) throw UsageError("twist list must be strictly increasing");
    if (seed.I.back() >= 2 * r)
      throw UsageError(fmt::format("twist y{} must exceed the last index y{} of the seed", 2 * r, seed.I.back()));
    if (2 * r > q) throw IndexOutOfRange(fmt::format("y{} is not a generator of W{}", 2 * r, q));
    if (r > u_max) throw IndexOutOfRange(fmt::format("Tp{} is not a primitive class of SO({})", r, q));
  }

  const int n = seed.degree();
  std::vector<Generator> ext;
  for (int r = 1; r <= u_max; ++r) ext.push_back({fmt::format("Tp{}", r), 4 * r - 1});
  std::vector<Generator> poly;
  std::vector<DegreeBound> bounds;
  if (n % 2 == 1) {
    ext.push_back({"chi", n});
  } else {
    poly.push_back({"chi", n});
    bounds.push_back({{0}, n});
  }
  const auto gens = make_generator_set(std::move(ext), std::move(poly), 0, std::move(bounds));
  const Differential d = Differential::zero(gens);
  const Element chi = Element::generator(gens, "chi");

  PermanenceReport report;
  report.q = q;
  report.seed = seed;
  report.r_list = r_list;
  std::vector<Element> classes;
  for (const auto& pick : all_subsets(0, static_cast<int>(r_list.size()) - 1)) {
    PermanenceClass c{seed, {}, 0, Element::zero(gens), false};
    Element x = Element::unit(gens);
    for (int a : pick) {
      const int r = r_list[static_cast<std::size_t>(a)];
      c.twists.push_back(r);
      c.index.I.push_back(2 * r);
      x = x * Element::generator(gens, fmt::format("Tp{}", r));
    }
    c.tensor_class = x * chi;
    c.degree = c.index.degree();
    if (c.tensor_class.degree() != c.degree)
      throw InvariantViolation(fmt::format("{} has degree {} but its tensor class has degree {}", c.index.to_string(),
                                           c.degree, c.tensor_class.degree().value_or(-1)));
    c.nonzero = class_nonzero(c.tensor_class, d);
    classes.push_back(c.tensor_class);
    report.classes.push_back(std::move(c));
  }
  report.independence = classes_independent(classes, d);
  report.pass = std::all_of(report.classes.begin(), report.classes.end(),
                            [&](const auto& c) { return c.nonzero && is_vey(c.index, q); }) &&
                std::all_of(report.independence.begin(), report.independence.end(),
                            [](const auto& b) { return b.independent; });
  return report;
}

}  // namespace weil
