#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptwist/linalg.hpp"

namespace ptwist {

/// Finitely supported map degree -> dimension; zero dimensions are never stored.
class GradedDimVector {
 public:
  GradedDimVector() = default;
  GradedDimVector(std::initializer_list<std::pair<const int, std::size_t>> init);

  std::size_t at(int degree) const;
  void add(int degree, std::size_t dim);
  const std::map<int, std::size_t>& support() const { return dims_; }
  bool empty() const { return dims_.empty(); }

  std::size_t total() const;
  long long euler() const;  // Σ (-1)^d dim(d)
  // Degree d moves to d + j.
  GradedDimVector shifted(int j) const;

  bool operator==(const GradedDimVector& o) const = default;
  auto operator<=>(const GradedDimVector& o) const = default;
  std::string to_string() const;  // "{0:1, 2:1}"

 private:
  std::map<int, std::size_t> dims_;
};

struct GradedVectorSpace {
  GradedDimVector dims;
  // Optional human-readable basis labels, per degree, in basis order.
  std::map<int, std::vector<std::string>> labels;

  std::size_t dim(int degree) const { return dims.at(degree); }
};

/// A homogeneous linear map of fixed degree. blocks[d] maps the degree-d
/// piece of the source to the degree-(d + degree) piece of the target;
/// missing blocks are zero.
struct GradedMap {
  GradedVectorSpace source;
  GradedVectorSpace target;
  int degree = 0;
  std::map<int, SparseMatrix> blocks;

  // Throws StructuralError if some block disagrees with the dims.
  void validate() const;
  SparseMatrix block(int source_degree) const;
};

struct Complex {
  GradedVectorSpace space;
  GradedMap differential;  // degree 1, source = target = space
};

std::map<int, std::size_t> rank_of_graded_map(const GradedMap& f);

// Throws AxiomError naming the first degree where d∘d ≠ 0.
GradedDimVector cohomology_dims(const Complex& c);

// Preimage of b (a vector in the target's degree target_degree), or nullopt.
std::optional<SparseVector> solve_linear(const GradedMap& f, int target_degree, const SparseVector& b,
                                         const Field& field);

}  // namespace ptwist
