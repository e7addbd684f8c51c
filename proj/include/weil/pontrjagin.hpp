#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weil/algebra.hpp"
#include "weil/rational.hpp"

namespace weil {

/// Finite cohomology ring of a test space. All generators are even, so the
/// graded tensor product of factors carries no signs.
class ModelRing {
 public:
  enum class Kind { CP2, Sphere, X, Product };

  Kind kind() const { return kind_; }
  /// Sphere dimension for Sphere, q for X, 0 otherwise.
  int parameter() const { return parameter_; }
  /// Factors of a product (flattened); empty for the other kinds.
  const std::vector<ModelRing>& factors() const { return factors_; }
  std::size_t factor_count() const { return kind_ == Kind::Product ? factors_.size() : 1; }

  const GenSetPtr& gens() const { return gens_; }
  Element generator(std::string_view name) const { return Element::generator(gens_, name); }
  /// "CP2", "S8", "X(6)", "CP2 x S8"
  std::string name() const;

  /// Top monomial (the fundamental class), if the ring models a closed manifold.
  std::optional<Monomial> top_monomial() const { return top_; }
  std::optional<int> fundamental_degree() const;

  /// Image of an element of factor `f` (0-based) under the projection to that factor.
  Element embed(std::size_t f, const Element& x) const;

  friend ModelRing cp2();
  friend ModelRing sphere(int dim);
  friend ModelRing x_space(int q);
  friend ModelRing product(const std::vector<ModelRing>& rings);

 private:
  ModelRing() = default;

  Kind kind_ = Kind::CP2;
  int parameter_ = 0;
  std::vector<ModelRing> factors_;
  std::vector<std::size_t> offsets_;  // first polynomial generator of each factor
  GenSetPtr gens_;
  std::optional<Monomial> top_;
};

/// Q[a]/a^3, deg a = 2.
ModelRing cp2();
/// Q[s]/s^2, deg s = dim. Throws UsageError unless dim is positive and even.
ModelRing sphere(int dim);
/// Polynomial ring of BSO(q) truncated above q+2: p_i with 4i <= q+2 (i != q/2),
/// plus e of degree q for even q. Throws UsageError for q < 2.
ModelRing x_space(int q);
/// Graded tensor product; nested products are flattened, a single ring is returned as is.
/// Factor generators are renamed a1, s2, p1_3, ... by 1-based factor position.
ModelRing product(const std::vector<ModelRing>& rings);

/// Pull-back of the universal classes along a bundle over a model ring.
struct BundleMap {
  int rank = 0;
  std::vector<Element> pontrjagin;  // p_1, p_2, ... (missing entries are zero)
  std::optional<Element> euler;     // present iff rank is even

  /// p_i, zero beyond the stored list; p_0 = 1.
  Element p(int i, const GenSetPtr& gens) const;
  Element total(const GenSetPtr& gens) const;
};

/// Canonical bundle over CP2 (rank 2): p_1 = a^2, e = a.
BundleMap canonical_cp2(const ModelRing& ring);
/// Normalized sphere bundle over S^{4i}: p_i = s, other p_j = 0, e = 0.
/// Throws UsageError unless the ring is a sphere of dimension divisible by 4.
BundleMap sphere_generator(const ModelRing& ring, int rank);
/// Identity on X(q): p_i -> p_i, e -> e, and p_{q/2} -> e^2 for even q.
BundleMap tautological_x(const ModelRing& ring);
BundleMap trivial_bundle(const ModelRing& ring, int rank);
/// Whitney sum over a product of the bundles on its factors: p = product of
/// total classes, e = product of Euler classes (absent if some rank is odd).
BundleMap whitney_sum(const ModelRing& product_ring, const std::vector<BundleMap>& factors);

/// p_1^{n_1} ... p_k^{n_k}; `n` carries no trailing zeros.
struct PontrjaginMonomial {
  std::vector<int> n;

  /// sum (4i-2) n_i
  int weight() const;
  int size() const;
  /// sum 4i n_i
  int degree() const;
  std::string to_string() const;

  friend bool operator==(const PontrjaginMonomial&, const PontrjaginMonomial&) = default;
};

/// All n with weight <= q, by degree, then n lexicographically descending
/// (p1^2 before p2). Throws UsageError for q < 2.
std::vector<PontrjaginMonomial> enumerate_V(int q);

Element whitney_pullback(const PontrjaginMonomial& m, const BundleMap& bundle, const GenSetPtr& gens);
Element whitney_pullback(const PontrjaginMonomial& m, const ModelRing& product_ring,
                         const std::vector<BundleMap>& factors);

/// Coefficient of the top monomial. Throws UsageError if the ring has no fundamental class.
Rational evaluate_on_cycle(const Element& x, const ModelRing& ring);

struct TestCycle {
  std::string name;  // "CP2 x CP2", "S8"
  ModelRing ring;
  BundleMap bundle;
};

/// (CP2)^{n_1} x prod_{i >= 2} (S^{4i})^{n_i} with the Whitney sum of the canonical
/// and normalized sphere bundles.
TestCycle test_cycle(const PontrjaginMonomial& m);

struct DegreeBlock {
  int degree = 0;
  std::vector<std::string> classes;         // rows
  std::vector<std::string> cycles;          // columns
  std::vector<std::vector<Rational>> pairing;
  std::size_t rank = 0;
  bool full_rank = false;
};

struct IndependenceReport {
  int q = 0;
  std::vector<PontrjaginMonomial> classes;
  std::vector<DegreeBlock> blocks;
  std::vector<std::string> notes;
  bool pass = false;
};

IndependenceReport independence_certificate(int q);

struct SymmetricMultiple {
  Rational ratio;         // p_l = ratio * p_1^l
  bool proportional = false;
};

/// Over (CP2)^k with the sum of canonical bundles. Throws UsageError unless 1 <= l <= k.
SymmetricMultiple verify_symmetric_multiple(int k, int l);

}  // namespace weil
