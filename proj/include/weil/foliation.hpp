#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weil/algebra.hpp"
#include "weil/dga.hpp"

namespace weil {

/// W_q (framed) or WO_q (unframed): y_i of degree 2i-1, c_i of degree 2i,
/// polynomial part truncated above 2q, d y_i = c_i.
struct WqPresentation {
  int q = 0;
  bool framed = true;
  Differential d;

  const GenSetPtr& gens() const { return d.generator_set(); }
  /// Throws IndexOutOfRange if y_i is not a generator (i outside [1, q], or i even in WO_q).
  Element y(int i) const;
  Element c(int i) const;
};

/// Throws UsageError for q < 1.
WqPresentation build_wq(int q, bool framed);

/// Largest odd integer <= q.
int largest_odd_at_most(int q);

/// The pair (I, J) naming the monomial y_I c_J.
struct VeyIndex {
  std::vector<int> I;  // strictly increasing
  std::vector<int> J;  // nondecreasing

  int degree() const;
  bool is_unit() const { return I.empty() && J.empty(); }
  /// Well-formed over W_q: I strictly increasing in [1, q], J nondecreasing in [1, q].
  bool well_formed(int q) const;
  /// y2 y4 c2^3
  std::string to_string() const;
  Element monomial(const WqPresentation& w) const;

  friend bool operator==(const VeyIndex&, const VeyIndex&) = default;
  friend auto operator<=>(const VeyIndex&, const VeyIndex&) = default;
};

/// Membership: sum J <= q, i1 + sum J >= q+1, i1 <= j1. The unit (I, J both empty)
/// counts as a member; I empty with J nonempty does not.
bool is_vey(const VeyIndex& v, int q);
/// i1 + sum J >= q+2. Precondition: is_vey(v, q) (UsageError otherwise).
bool is_rigid(const VeyIndex& v, int q);

struct DegreeRange {
  int lo = 0;
  int hi = 0;
};

/// All non-unit Vey indices for q, I lexicographic then J lexicographic,
/// optionally restricted to degrees in [lo, hi].
std::vector<VeyIndex> vey_basis(int q, std::optional<DegreeRange> degrees = std::nullopt);

enum class RigidFamily { A, B };

struct RigidFamilyEntry {
  VeyIndex index;
  int degree = 0;
  RigidFamily family = RigidFamily::A;
};

/// Family A: y2 y_K c2^{q/2}, K = (2k_1 < ... < 2k_l), 1 < k_1, k_l <= floor((q+2)/4).
/// Family B (q = 2 mod 4 only): y_{2k} c_{2k}, k = (q+2)/4.
/// Throws OddCodimension for odd q or q < 4.
std::vector<RigidFamilyEntry> enumerate_rqs(int q);

struct RigidCountRow {
  int q = 0;
  Integer rigid_vey;                // number of rigid Vey indices
  std::size_t family_a = 0;         // |family A|, 0 for odd q or q < 4
  std::size_t family_b = 0;
  std::vector<int> degrees;         // sorted degrees of the family entries
};

/// Exact counts for q = 1..q_max. Throws UsageError for q_max < 1.
std::vector<RigidCountRow> rigid_count_table(int q_max);

}  // namespace weil
