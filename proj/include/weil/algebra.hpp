#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weil/rational.hpp"

namespace weil {

struct Generator {
  std::string name;
  int degree = 0;

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Upper bound on the combined degree of a group of polynomial generators.
/// Model rings use these for relations such as a^3 = 0 in H*(CP^2) (group {a}, bound 4).
struct DegreeBound {
  std::vector<std::size_t> polynomial;
  int max_degree = 0;

  friend bool operator==(const DegreeBound&, const DegreeBound&) = default;
};

struct GeneratorRef {
  bool exterior = false;
  std::size_t index = 0;
};

/// A monomial: a set of exterior (odd) generators and an exponent vector over the
/// polynomial (even) generators of some GeneratorSet.
struct Monomial {
  std::uint64_t exterior = 0;  // bit i set <=> exterior generator i present
  std::vector<int> exponents;

  bool has_exterior(std::size_t i) const { return (exterior >> i) & 1U; }
  std::vector<std::size_t> exterior_indices() const;
  int exterior_count() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Canonical order: exterior index list lexicographic, then exponent vector lexicographic.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
};

/// Free graded-commutative algebra Λ(exterior) ⊗ ℚ[polynomial] modulo a monomial
/// truncation ideal. The generator order is the canonical order used for Koszul signs.
class GeneratorSet {
 public:
  static constexpr std::size_t kMaxExterior = 64;

  /// `truncation` bounds the degree of the whole polynomial part (0 = none);
  /// `bounds` adds per-group bounds. Throws UsageError on duplicate names or bad parity.
  GeneratorSet(std::vector<Generator> exterior, std::vector<Generator> polynomial,
               int truncation = 0, std::vector<DegreeBound> bounds = {});

  std::span<const Generator> exterior() const { return exterior_; }
  std::span<const Generator> polynomial() const { return polynomial_; }
  int truncation() const { return truncation_; }
  const std::vector<DegreeBound>& bounds() const { return bounds_; }

  std::optional<GeneratorRef> find(std::string_view name) const;

  Monomial unit() const { return Monomial{0, std::vector<int>(polynomial_.size(), 0)}; }
  Monomial exterior_generator(std::size_t i) const;
  Monomial polynomial_generator(std::size_t i, int exponent = 1) const;

  /// True iff `m` has the right shape for this set (usage check, not truncation).
  bool fits(const Monomial& m) const;
  /// True iff `m` survives the truncation ideal.
  bool admits(const Monomial& m) const;
  int degree(const Monomial& m) const;
  int exterior_degree(const Monomial& m) const;
  int polynomial_degree(const Monomial& m) const;

  /// Highest degree of a surviving monomial, or nullopt if the algebra is infinite.
  std::optional<int> top_degree() const;
  /// Total number of surviving monomials, or nullopt if infinite. Saturates at `cap`.
  std::optional<std::uint64_t> total_dimension(std::uint64_t cap = UINT64_MAX) const;

  std::string format(const Monomial& m) const;

  friend bool operator==(const GeneratorSet&, const GeneratorSet&) = default;

 private:
  std::vector<Generator> exterior_;
  std::vector<Generator> polynomial_;
  int truncation_ = 0;
  std::vector<DegreeBound> bounds_;
};

using GenSetPtr = std::shared_ptr<const GeneratorSet>;

inline GenSetPtr make_generator_set(std::vector<Generator> exterior, std::vector<Generator> polynomial,
                                    int truncation = 0, std::vector<DegreeBound> bounds = {}) {
  return std::make_shared<const GeneratorSet>(std::move(exterior), std::move(polynomial), truncation,
                                              std::move(bounds));
}

struct SignedMonomial {
  int sign = 1;
  Monomial monomial;
};

/// Graded-commutative product of monomials with the Koszul sign of the merge;
/// nullopt when the product vanishes (repeated exterior generator or truncation).
/// Throws UsageError if either monomial does not fit `gens`.
std::optional<SignedMonomial> mono_mul(const Monomial& a, const Monomial& b, const GeneratorSet& gens);

/// All surviving monomials of total degree n, in canonical order.
std::vector<Monomial> basis_of_degree(const GeneratorSet& gens, int n);

/// Sparse rational combination of monomials over a fixed generator set.
/// Canonical: terms are sorted and no coefficient is zero.
class Element {
 public:
  using Terms = std::map<Monomial, Rational>;

  explicit Element(GenSetPtr gens);

  static Element zero(GenSetPtr gens) { return Element(std::move(gens)); }
  static Element unit(GenSetPtr gens);
  static Element scalar(GenSetPtr gens, const Rational& c);
  /// Throws UsageError if `m` does not fit; yields zero if `m` is truncated away.
  static Element monomial(GenSetPtr gens, const Monomial& m, const Rational& c = 1);
  /// Throws UsageError if no generator has this name.
  static Element generator(GenSetPtr gens, std::string_view name);

  const GeneratorSet& generators() const { return *gens_; }
  const GenSetPtr& generator_set() const { return gens_; }
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_homogeneous() const;
  /// Degree of a nonzero homogeneous element; nullopt otherwise.
  std::optional<int> degree() const;
  std::map<int, Element> homogeneous_components() const;
  Rational coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Rational& c);

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Rational& c);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) { return a *= Rational(-1); }
  friend Element operator*(Element a, const Rational& c) { return a *= c; }
  friend Element operator*(const Rational& c, Element a) { return a *= c; }
  friend Element operator*(const Element& a, const Element& b);

  /// Structural equality; generator sets must agree.
  friend bool operator==(const Element& a, const Element& b);

  std::string to_string() const;

 private:
  void require_same_generators(const Element& o) const;

  GenSetPtr gens_;
  Terms terms_;
};

Element elem_mul(const Element& a, const Element& b);
Element power(const Element& a, unsigned n);

/// Throws UsageError unless the two sets are the same object or structurally equal.
void require_same_generators(const GeneratorSet& a, const GeneratorSet& b);

}  // namespace weil
