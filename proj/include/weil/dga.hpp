#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weil/algebra.hpp"
#include "weil/linalg.hpp"

namespace weil {

/// A derivation of degree +1 on a GeneratorSet, given on generators and extended
/// by the graded Leibniz rule d(ab) = (da)b + (-1)^{|a|} a(db).
///
/// Together with its GeneratorSet this is a complete algebra presentation: W_q,
/// WO_q, the Koszul models and the model rings (zero differential) are all
/// instances.
class Differential {
 public:
  enum class Validation { Full, DegreesOnly };

  /// Generators not listed map to zero. Throws DegreeMismatch if an image has the
  /// wrong degree, UsageError if d∘d != 0 on some generator (under Validation::Full)
  /// or if d is nonzero on a polynomial generator that takes part in a truncation.
  Differential(GenSetPtr gens, const std::vector<std::pair<std::string, Element>>& images,
               Validation validation = Validation::Full);

  static Differential zero(GenSetPtr gens) { return Differential(std::move(gens), {}); }

  const GeneratorSet& generators() const { return *gens_; }
  const GenSetPtr& generator_set() const { return gens_; }
  const Element& exterior_image(std::size_t i) const { return exterior_[i]; }
  const Element& polynomial_image(std::size_t i) const { return polynomial_[i]; }

  Element apply(const Element& x) const;
  Element apply(const Monomial& m) const;

 private:
  GenSetPtr gens_;
  std::vector<Element> exterior_;
  std::vector<Element> polynomial_;
};

Element apply_d(const Element& x, const Differential& d);

/// True iff d(d(g)) = 0 for every generator g.
bool check_d_squared(const Differential& d);

struct DegreeCohomology {
  int degree = 0;
  std::size_t chain_dimension = 0;
  std::size_t kernel_dimension = 0;
  std::size_t boundary_rank = 0;  // rank of d into this degree
  std::size_t dimension = 0;
  std::vector<Element> representatives;
};

struct CohomologyReport {
  int max_degree = 0;
  std::map<int, DegreeCohomology> per_degree;

  std::size_t dimension(int n) const;
  /// Nonzero dimensions only.
  std::map<int, std::size_t> dimensions() const;
};

struct CohomologyOptions {
  bool representatives = true;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Exact cohomology in degrees 0..max_degree (default: the top degree of a finite
/// complex). Representatives are reduced-echelon kernel vectors that are
/// independent modulo coboundaries, chosen greedily in echelon order.
CohomologyReport cohomology(const Differential& d, std::optional<int> max_degree = std::nullopt,
                            const CohomologyOptions& options = {});

/// True iff the cocycle x is not a coboundary. Throws NotACocycle if d(x) != 0.
bool class_nonzero(const Element& x, const Differential& d);

struct ClassIndependence {
  int degree = 0;
  std::vector<std::size_t> indices;  // positions in the input list
  std::vector<bool> nonzero;         // each class on its own
  std::size_t rank = 0;              // rank modulo coboundaries
  bool independent = false;
};

/// Groups cocycles by degree and measures their rank modulo coboundaries.
/// Every entry of `classes` must be a nonzero-or-zero homogeneous cocycle.
std::vector<ClassIndependence> classes_independent(std::span<const Element> classes, const Differential& d);

/// Coordinates of a homogeneous element in a canonical-order basis of its degree.
SparseVector coordinates(const Element& x, const std::vector<Monomial>& basis);

}  // namespace weil
