#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ptwist/algebra.hpp"

namespace ptwist {

/// Sparse matrix with algebra entries, stored by column; each column is
/// sorted by row and carries no zero entries.
class AlgebraMatrix {
 public:
  using Entry = std::pair<Index, Element>;
  using Column = std::vector<Entry>;

  AlgebraMatrix() = default;
  AlgebraMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const Column& column(Index j) const { return columns_[j]; }
  const std::vector<Column>& columns() const { return columns_; }

  Element get(Index i, Index j) const;
  void set(Index i, Index j, Element x);
  void add(Index i, Index j, const Element& x, const Scalar& c);
  // Faster than set() when rows arrive in increasing order within a column.
  void append(Index i, Index j, Element x);

  bool is_zero() const;
  std::size_t nonzeros() const;
  // For each row, the columns holding a nonzero entry (ascending).
  std::vector<std::vector<Index>> row_support() const;

  bool operator==(const AlgebraMatrix& o) const { return rows_ == o.rows_ && columns_ == o.columns_; }

 private:
  std::size_t rows_ = 0;
  std::vector<Column> columns_;
};

struct Generator {
  std::string label;
  std::size_t idempotent = 0;
  int degree = 0;
  bool operator==(const Generator&) const = default;
};

// Sorted (idempotent, degree) pairs; equal for isomorphic minimal modules
// over an augmented algebra.
using GeneratorSignature = std::vector<std::pair<std::size_t, int>>;

/// A right semi-free dg-module ⊕ x_i A with x_i = x_i e_{c(i)} of degree s_i,
/// differential D(x_j) = Σ_i x_i δ_ij and D(x a) = D(x) a + (-1)^{|x|} x d(a).
/// The entry δ_ij lies in e_{c(i)} A e_{c(j)} in degree s_j + 1 - s_i.
/// Copies share their data.
class SemiFreeModule {
 public:
  // Checks shapes, entry degrees and idempotent compatibility (StructuralError).
  // D² = 0 and semi-freeness are checked by validate().
  SemiFreeModule(AlgebraPtr algebra, std::vector<Generator> generators, AlgebraMatrix delta);

  const AlgebraPtr& algebra() const { return data_->algebra; }
  const DgAlgebra& alg() const { return *data_->algebra; }
  std::size_t size() const { return data_->generators.size(); }
  bool is_zero() const { return size() == 0; }
  const std::vector<Generator>& generators() const { return data_->generators; }
  const Generator& generator(Index i) const { return data_->generators[i]; }
  int degree(Index i) const { return data_->generators[i].degree; }
  std::size_t idempotent(Index i) const { return data_->generators[i].idempotent; }
  const AlgebraMatrix& delta() const { return data_->delta; }
  // For each generator i, the columns j with δ_ij ≠ 0.
  const std::vector<std::vector<Index>>& delta_rows() const { return data_->rows; }

  GeneratorSignature signature() const;

  // Throws AxiomError when D² ≠ 0 (naming the entry) or when the scalar
  // part of δ is not nilpotent.
  void validate() const;
  bool is_valid() const;

  bool operator==(const SemiFreeModule& o) const;

 private:
  struct Data {
    AlgebraPtr algebra;
    std::vector<Generator> generators;
    AlgebraMatrix delta;
    std::vector<std::vector<Index>> rows;
  };
  std::shared_ptr<const Data> data_;
};

// e_c A with its generator in degree `degree`; this is P_c[-degree].
SemiFreeModule free_module(AlgebraPtr a, std::size_t c, int degree = 0, std::string label = "");
// A itself: ⊕_c e_c A.
SemiFreeModule algebra_module(AlgebraPtr a);
SemiFreeModule zero_module(AlgebraPtr a);

// M[j]: degrees decrease by j, differential multiplied by (-1)^j.
SemiFreeModule shift(const SemiFreeModule& m, int j);
SemiFreeModule direct_sum(const SemiFreeModule& m, const SemiFreeModule& n);

/// f(x_j) = Σ_i y_i f_ij with f_ij ∈ e_{c(y_i)} A e_{c(x_j)} of degree
/// s_j + degree - t_i.
class ModuleMorphism {
 public:
  ModuleMorphism(SemiFreeModule source, SemiFreeModule target, int degree, AlgebraMatrix entries);

  const SemiFreeModule& source() const { return source_; }
  const SemiFreeModule& target() const { return target_; }
  int degree() const { return degree_; }
  const AlgebraMatrix& entries() const { return entries_; }
  bool is_closed() const { return closed_; }

  // D(f)_ij = (δ^N f)_ij + (-1)^{t_i} d(f_ij) - (-1)^{|f|} (f δ^M)_ij.
  AlgebraMatrix differential() const;

 private:
  SemiFreeModule source_;
  SemiFreeModule target_;
  int degree_;
  AlgebraMatrix entries_;
  bool closed_ = false;
};

ModuleMorphism identity_morphism(const SemiFreeModule& m);
ModuleMorphism zero_morphism(const SemiFreeModule& m, const SemiFreeModule& n, int degree = 0);
// f ∘ g
ModuleMorphism compose(const ModuleMorphism& f, const ModuleMorphism& g);
// Coefficients of the idempotents in a degree-0 morphism, as a target × source matrix.
SparseMatrix scalar_part(const ModuleMorphism& f);

// Generators of N followed by those of M[1]; δ = [[δ_N, f], [0, -δ_M]].
// Requires f closed of degree 0 (PreconditionError otherwise).
SemiFreeModule cone(const ModuleMorphism& f);

}  // namespace ptwist
