#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ptwist/graded.hpp"
#include "ptwist/module.hpp"

namespace ptwist {

// The morphism with a single entry `basis` at (row, col).
struct HomBasisElement {
  Index row;    // target generator
  Index col;    // source generator
  Index basis;  // algebra basis element
};

/// Hom•(M, N): basis of elementary matrices E_ij ⊗ b, grouped by degree
/// (within a degree ordered by source generator, target generator, then
/// algebra basis order), with differential D(f) = δ_N f + (-1)^{t_i} d(f)
/// - (-1)^{|f|} f δ_M.
class HomComplex {
 public:
  // All degrees, or only the listed ones (blocks only between listed
  // neighbouring degrees).
  HomComplex(SemiFreeModule source, SemiFreeModule target);
  HomComplex(SemiFreeModule source, SemiFreeModule target, const std::vector<int>& degrees);

  const SemiFreeModule& source() const { return source_; }
  const SemiFreeModule& target() const { return target_; }
  const Complex& complex() const { return complex_; }
  const GradedMap& differential() const { return complex_.differential; }
  GradedDimVector dims() const { return complex_.space.dims; }
  std::size_t dim(int degree) const { return complex_.space.dims.at(degree); }
  const std::vector<HomBasisElement>& basis(int degree) const;
  std::vector<int> degrees() const;

  std::optional<Index> index_of(int degree, Index row, Index col, Index basis) const;
  ModuleMorphism morphism(int degree, const SparseVector& coords) const;
  SparseVector coordinates(const ModuleMorphism& f) const;
  // Coordinates of an algebra matrix interpreted as a degree-`degree` map.
  SparseVector coordinates(int degree, const AlgebraMatrix& entries) const;

 private:
  void build(const std::vector<int>& degrees);
  std::uint64_t key(Index row, Index col, int degree) const;

  SemiFreeModule source_;
  SemiFreeModule target_;
  Complex complex_;
  std::map<int, std::vector<HomBasisElement>> basis_;
  std::unordered_map<std::uint64_t, Index> offset_;  // (row, col, degree) -> first local index
  std::vector<Index> piece_position_;                // algebra basis -> position in its piece
};

// Cocycles whose classes form a basis of H^degree (needs the neighbouring
// degrees in the complex).
std::vector<SparseVector> cohomology_basis(const HomComplex& h, int degree);
// Whether a cocycle of the given degree is a coboundary.
bool is_coboundary(const HomComplex& h, int degree, const SparseVector& v);

// Graded dimension of H* Hom•(M, N).
GradedDimVector hom_dims(const SemiFreeModule& m, const SemiFreeModule& n);
std::size_t hom_total(const SemiFreeModule& m, const SemiFreeModule& n);

}  // namespace ptwist
