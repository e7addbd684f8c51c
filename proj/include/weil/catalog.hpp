#pragma once

#include <string>
#include <vector>

#include "weil/foliation.hpp"
#include "weil/frame_models.hpp"

namespace weil {

struct CatalogRow {
  RigidFamilyEntry entry;
  std::size_t witness = 0;  // column in CatalogReport::witnesses
  std::string pairing;      // symbolic pairing with the l-th family member
};

/// Rigid family classes of one degree, each tied to a frame model in which it
/// is nonzero. Family A classes live in the (CP2)^{q/2} model, family B in S^{q+2}.
struct CatalogReport {
  int q = 0;
  int dim = 0;
  std::vector<CatalogRow> rows;
  std::vector<std::string> witnesses;      // model descriptions
  std::vector<std::vector<bool>> nonzero;  // rows x witnesses
  /// Each class vanishes in the witnesses of later rows' groups and the classes
  /// sharing a witness are independent there; together these give independence.
  bool block_triangular = false;
  bool independent = false;
  std::string family_index;  // "Z", "Z^2", ...; empty if no class has this degree
};

/// Throws OddCodimension for odd q or q < 4, UsageError for dim < 0,
/// BudgetExceeded if a witness model is larger than options.max_dimension.
CatalogReport catalog(int q, int dim, const FrameOptions& options = {});

}  // namespace weil
