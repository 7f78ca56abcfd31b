#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ptwist/scalar.hpp"

namespace ptwist {

using Index = std::size_t;

/// Sparse vector: entries sorted by index, no explicit zeros.
class SparseVector {
 public:
  using Entry = std::pair<Index, Scalar>;

  SparseVector() = default;
  // Entries may be unsorted and repeated; they are sorted and summed.
  static SparseVector from_entries(std::vector<Entry> entries);
  static SparseVector unit(Index i, const Scalar& one) { return from_entries({{i, one}}); }

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  Scalar get(Index i, const Scalar& zero) const;
  // Largest index carrying a nonzero entry; vector must be nonempty.
  Index last_index() const { return entries_.back().first; }
  const Scalar& last_value() const { return entries_.back().second; }

  // this += c * other
  void add_scaled(const SparseVector& other, const Scalar& c);
  SparseVector scaled(const Scalar& c) const;
  // Append an entry with index larger than every present index.
  void push_back(Index i, Scalar v);

  bool operator==(const SparseVector& o) const { return entries_ == o.entries_; }

 private:
  std::vector<Entry> entries_;
};

/// Column-major sparse matrix over the active field.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const SparseVector& column(Index j) const { return columns_[j]; }
  void set_column(Index j, SparseVector v);
  bool is_zero() const;

  static SparseMatrix identity(std::size_t n, const Scalar& one);
  SparseVector apply(const SparseVector& x) const;
  SparseMatrix operator*(const SparseMatrix& o) const;  // this ∘ o

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVector> columns_;
};

/// Column reduction with the "lowest nonzero row" pivot rule, columns
/// processed left to right. Deterministic: the same matrix always yields
/// the same pivots, kernel basis and preimages.
class ColumnReduction {
 public:
  // Tracks column operations, enabling kernel() and solve().
  ColumnReduction(const SparseMatrix& m, const Field& field);
  // Rank-only reduction when track_kernel is false.
  ColumnReduction(const SparseMatrix& m, Scalar one, bool track_kernel);

  std::size_t rank() const { return rank_; }
  // Basis of the null space (empty unless tracking).
  const std::vector<SparseVector>& kernel() const { return kernel_; }
  // Some x with m·x = b, or nullopt. Requires tracking.
  std::optional<SparseVector> solve(const SparseVector& b) const;
  bool in_image(const SparseVector& b) const;

 private:
  Scalar one_;
  bool tracked_;
  std::size_t rank_ = 0;
  std::vector<SparseVector> reduced_;     // reduced columns with nonzero pivot
  std::vector<SparseVector> combination_; // reduced_[i] = m · combination_[i]
  std::vector<std::ptrdiff_t> pivot_of_row_;
  std::vector<SparseVector> kernel_;
};

std::size_t rank(const SparseMatrix& m);

}  // namespace ptwist
