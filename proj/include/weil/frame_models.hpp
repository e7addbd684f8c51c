#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "weil/dga.hpp"
#include "weil/foliation.hpp"
#include "weil/pontrjagin.hpp"

namespace weil {

/// How the Euler class of the bundle enters an even-codimension model.
///   Whitney:    d v = e (product of the factor Euler classes), c_q -> e^2, y_q -> v e.
///   Suppressed: e is set to zero, so d v = 0, c_q -> 0, y_q -> 0.
enum class EulerConvention { Whitney, Suppressed };

std::string to_string(EulerConvention e);

/// H*(X) ⊗ Λ(u_1..u_umax [, v]) with d u_i = p_i(bundle), d v = e(bundle), d = 0 on H*(X).
struct KoszulModel {
  int q = 0;
  int u_max = 0;
  bool has_v = false;
  EulerConvention euler = EulerConvention::Whitney;
  ModelRing base;
  BundleMap bundle;
  Differential d;

  const GenSetPtr& gens() const { return d.generator_set(); }
  /// Throws IndexOutOfRange outside [1, u_max].
  Element u(int i) const;
  /// Throws IndexOutOfRange for odd q.
  Element v() const;
  /// A base class as an element of the model.
  Element lift(const Element& base_class) const;
  /// Euler class image under the model's convention (zero when suppressed).
  Element euler_image() const;
  std::uint64_t dimension() const;
};

/// (q-1)/2 for odd q, q/2 - 1 for even q.
int primitive_count(int q);

/// Throws DegreeMismatch if the bundle rank exceeds q or an image has the wrong degree.
KoszulModel build_frame_model(const ModelRing& base, const BundleMap& bundle, int q,
                              EulerConvention euler = EulerConvention::Whitney);

/// The algebra map W_q -> model: c_{2j} -> p_j, c_odd -> 0, y_{2j} -> u_j, y_odd -> 0;
/// for even q, c_q -> e^2 and y_q -> v e.
class CharacteristicMap {
 public:
  /// Throws InvariantViolation unless the map commutes with d on generators,
  /// UsageError if it does not kill the truncation ideal of W_q.
  CharacteristicMap(const WqPresentation& w, const KoszulModel& model);

  const WqPresentation& source() const { return w_; }
  const KoszulModel& target() const { return model_; }
  Element apply(const Element& x) const;
  Element apply(const Monomial& m) const;

 private:
  WqPresentation w_;
  KoszulModel model_;
  std::vector<Element> exterior_;
  std::vector<Element> polynomial_;
};

Element apply_characteristic(const Element& x, const CharacteristicMap& delta);

struct CertifiedClass {
  VeyIndex index;
  int degree = 0;
  Element image;
  bool cocycle = false;
  bool nonzero = false;
  bool rigid = false;
};

struct FrameCertificate {
  std::string label;  // "2k" or "4k2"
  int k = 0;
  int q = 0;
  std::string base;
  EulerConvention euler = EulerConvention::Suppressed;
  std::uint64_t complex_dimension = 0;
  std::vector<CertifiedClass> classes;
  std::vector<ClassIndependence> independence;
  std::vector<CertifiedClass> vanishing;  // classes whose image must be zero
  std::vector<std::string> notes;
  bool pass = false;
};

struct FrameOptions {
  EulerConvention euler = EulerConvention::Suppressed;
  std::uint64_t max_dimension = 1'000'000;
};

/// Base (CP2)^k, q = 2k, classes y_I c_2^k for I = (2 < 2i_2 < ... <= 2 u_max).
/// Throws UsageError for k < 2, BudgetExceeded if the model is too large.
FrameCertificate verify_prop_2k(int k, const FrameOptions& options = {});
/// Base S^{4k}, q = 4k-2, classes y_I c_{2k} for I = (2k < 2i_2 < ... <= 2 u_max);
/// y_2 c_2^{2k-1} must map to zero.
FrameCertificate verify_prop_4k2(int k, const FrameOptions& options = {});

struct PermanenceClass {
  VeyIndex index;
  std::vector<int> twists;  // the subset of r values
  int degree = 0;
  Element tensor_class;
  bool nonzero = false;
};

struct PermanenceReport {
  int q = 0;
  VeyIndex seed;
  std::vector<int> r_list;
  std::vector<PermanenceClass> classes;
  std::vector<ClassIndependence> independence;
  bool pass = false;
};

/// Classes Tp_{r_1} ... Tp_{r_m} ⊗ χ in Λ(Tp_1..Tp_umax) ⊗ Q[χ]/χ^2, one per subset of r_list,
/// with χ standing for the seed's nonzero evaluation.
/// Throws UsageError if the seed is not a Vey index, r_list is not strictly increasing,
/// or i_l >= 2r; IndexOutOfRange if 2r > q or r > u_max.
PermanenceReport permanence_family(const VeyIndex& seed, int q, const std::vector<int>& r_list);

}  // namespace weil
