#include "weil/catalog.hpp"

#include <fmt/format.h>

#include "weil/errors.hpp"

namespace weil {

namespace {

struct Witness {
  std::string name;
  KoszulModel model;
};

Witness cp2_witness(int q, const FrameOptions& options) {
  const int k = q / 2;
  const ModelRing base = product(std::vector<ModelRing>(static_cast<std::size_t>(k), cp2()));
  std::vector<BundleMap> factors;
  for (const auto& f : base.factors()) factors.push_back(canonical_cp2(f));
  const std::uint64_t dim = *base.gens()->total_dimension() << (primitive_count(q) + 1);
  if (dim > options.max_dimension)
    throw BudgetExceeded(fmt::format("witness model over {} has dimension {} > budget {}", base.name(), dim,
                                     options.max_dimension));
  return {"frame model over " + base.name(), build_frame_model(base, whitney_sum(base, factors), q, options.euler)};
}

Witness sphere_witness(int q, const FrameOptions& options) {
  const ModelRing base = sphere(q + 2);
  return {"frame model over " + base.name(), build_frame_model(base, sphere_generator(base, q), q, options.euler)};
}

}  // namespace

CatalogReport catalog(int q, int dim, const FrameOptions& options) {
  const auto entries = enumerate_rqs(q);
  if (dim < 0) throw UsageError(fmt::format("manifold dimension must be nonnegative, got {}", dim));

  CatalogReport report;
  report.q = q;
  report.dim = dim;
  std::vector<Witness> witnesses;
  std::vector<RigidFamily> witness_family;
  for (const auto& e : entries) {
    if (e.degree != dim) continue;
    std::size_t col = 0;
    while (col < witness_family.size() && witness_family[col] != e.family) ++col;
    if (col == witness_family.size()) {
      witnesses.push_back(e.family == RigidFamily::A ? cp2_witness(q, options) : sphere_witness(q, options));
      witness_family.push_back(e.family);
      report.witnesses.push_back(witnesses.back().name);
    }
    report.rows.push_back({e, col, fmt::format("l * <{}, {}>", e.index.to_string(), report.witnesses[col])});
  }
  if (report.rows.empty()) {
    report.block_triangular = true;
    report.independent = true;
    return report;
  }
  report.family_index = report.rows.size() == 1 ? "Z" : fmt::format("Z^{}", report.rows.size());

  const WqPresentation w = build_wq(q, true);
  std::vector<CharacteristicMap> maps;
  for (const auto& wit : witnesses) maps.emplace_back(w, wit.model);

  std::vector<std::vector<Element>> images(report.rows.size());
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    std::vector<bool> flags;
    const Element x = report.rows[i].entry.index.monomial(w);
    for (std::size_t j = 0; j < maps.size(); ++j) {
      images[i].push_back(maps[j].apply(x));
      flags.push_back(class_nonzero(images[i].back(), witnesses[j].model.d));
    }
    report.nonzero.push_back(std::move(flags));
  }

  report.block_triangular = true;
  for (std::size_t i = 0; i < report.rows.size(); ++i)
    for (std::size_t j = report.rows[i].witness + 1; j < maps.size(); ++j)
      report.block_triangular = report.block_triangular && !report.nonzero[i][j];

  bool groups_independent = true;
  for (std::size_t j = 0; j < maps.size(); ++j) {
    std::vector<Element> group;
    for (std::size_t i = 0; i < report.rows.size(); ++i)
      if (report.rows[i].witness == j) group.push_back(images[i][j]);
    for (const auto& block : classes_independent(group, witnesses[j].model.d))
      groups_independent = groups_independent && block.independent;
  }
  report.independent = report.block_triangular && groups_independent;
  return report;
}

}  // namespace weil
