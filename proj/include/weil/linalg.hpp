#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "weil/rational.hpp"

namespace weil {

/// Sparse rational vector: (index, nonzero value) pairs sorted by index.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

/// Incremental row echelon form over ℚ, computed fraction-free.
///
/// Rows are cleared of denominators on entry and eliminated with integer
/// cross-multiplication, r <- (a/g) r - (b/g) p with g = gcd(a, b), then divided
/// by their content. Optionally tracks, for every stored row, which combination
/// of the inserted rows produced it; rows that reduce to zero then yield
/// relations among the inserted rows (a basis of the left kernel).
class FractionFreeEchelon {
 public:
  explicit FractionFreeEchelon(bool track_relations = false) : track_(track_relations) {}

  /// Returns true iff `row` is linearly independent of everything inserted before.
  bool insert(const SparseVector& row);

  std::size_t rank() const { return pivots_.size(); }
  std::size_t inserted() const { return inserted_; }
  /// Relations sum_i c_i row_i = 0, one per dependent insertion, indexed by insertion order.
  const std::vector<SparseVector>& relations() const { return relations_; }

 private:
  using IntRow = std::vector<std::pair<std::size_t, Integer>>;
  struct Stored {
    IntRow row;
    IntRow combination;
  };

  bool track_;
  std::size_t inserted_ = 0;
  std::map<std::size_t, Stored> pivots_;  // keyed by leading column
  std::vector<SparseVector> relations_;
};

std::size_t rank(std::span<const SparseVector> rows);

/// Reduced row echelon basis of the row span (pivots 1, sorted by pivot column).
std::vector<SparseVector> rref(std::span<const SparseVector> rows);

/// Basis, in reduced row echelon form, of {c : sum_i c_i rows[i] = 0}.
std::vector<SparseVector> left_kernel(std::span<const SparseVector> rows);

/// Dense matrix -> sparse rows.
std::vector<SparseVector> to_sparse_rows(const std::vector<std::vector<Rational>>& dense);

}  // namespace weil
