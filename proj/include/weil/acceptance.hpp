#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "weil/algebra.hpp"

namespace weil::acceptance {

using ProductFn = std::function<std::optional<SignedMonomial>(const Monomial&, const Monomial&, const GeneratorSet&)>;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;          // failing check, or a short summary on success
  std::vector<std::string> info;
  double seconds = 0;
  double limit_seconds = 0;    // 0 = no limit
};

struct Options {
  /// Monomial product used by the algebra-law checks; replaced for fault injection.
  ProductFn product;
  std::optional<double> time_budget_seconds;
  std::uint64_t seed = 0x5eedf01a7ef0117ULL;
  std::set<int> only;  // empty = all criteria
};

struct Summary {
  std::vector<CriterionResult> results;
  bool budget_exceeded = false;
  std::string budget_detail;

  bool pass() const;
  std::set<int> failing() const;
};

/// Product with every Koszul sign dropped; used to check that the suite notices.
ProductFn unsigned_product();

Summary run_all(const Options& options = {});

}  // namespace weil::acceptance
