#include "ptwist/graded.hpp"

#include <sstream>

#include "ptwist/errors.hpp"

namespace ptwist {

GradedDimVector::GradedDimVector(std::initializer_list<std::pair<const int, std::size_t>> init) {
  for (const auto& [d, n] : init) add(d, n);
}

std::size_t GradedDimVector::at(int degree) const {
  auto it = dims_.find(degree);
  return it == dims_.end() ? 0 : it->second;
}

void GradedDimVector::add(int degree, std::size_t dim) {
  if (dim == 0) return;
  dims_[degree] += dim;
}

std::size_t GradedDimVector::total() const {
  std::size_t t = 0;
  for (const auto& [d, n] : dims_) t += n;
  return t;
}

long long GradedDimVector::euler() const {
  long long e = 0;
  for (const auto& [d, n] : dims_) e += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(n);
  return e;
}

GradedDimVector GradedDimVector::shifted(int j) const {
  GradedDimVector r;
  for (const auto& [d, n] : dims_) r.dims_[d + j] = n;
  return r;
}

std::string GradedDimVector::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [d, n] : dims_) {
    if (!first) os << ", ";
    os << d << ':' << n;
    first = false;
  }
  os << '}';
  return os.str();
}

void GradedMap::validate() const {
  for (const auto& [d, m] : blocks) {
    if (m.cols() != source.dim(d) || m.rows() != target.dim(d + degree))
      throw StructuralError("graded map block at source degree " + std::to_string(d) + " has shape " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                            std::to_string(target.dim(d + degree)) + "x" + std::to_string(source.dim(d)));
  }
}

SparseMatrix GradedMap::block(int source_degree) const {
  auto it = blocks.find(source_degree);
  if (it != blocks.end()) return it->second;
  return SparseMatrix(target.dim(source_degree + degree), source.dim(source_degree));
}

std::map<int, std::size_t> rank_of_graded_map(const GradedMap& f) {
  f.validate();
  std::map<int, std::size_t> r;
  for (const auto& [d, m] : f.blocks) {
    auto k = rank(m);
    if (k) r[d] = k;
  }
  return r;
}

GradedDimVector cohomology_dims(const Complex& c) {
  const GradedMap& d = c.differential;
  if (d.degree != 1) throw StructuralError("differential must have degree 1");
  d.validate();
  GradedDimVector h;
  std::map<int, std::size_t> ranks;
  for (const auto& [deg, m] : d.blocks) ranks[deg] = rank(m);
  for (const auto& [deg, m] : d.blocks) {
    auto next = d.blocks.find(deg + 1);
    if (next == d.blocks.end()) continue;
    if (!(next->second * m).is_zero())
      throw AxiomError("differential does not square to zero at degree " + std::to_string(deg));
  }
  for (const auto& [deg, n] : c.space.dims.support()) {
    std::size_t out = ranks.count(deg) ? ranks[deg] : 0;
    std::size_t in = ranks.count(deg - 1) ? ranks[deg - 1] : 0;
    if (out + in > n) throw InternalError("rank exceeds dimension in cohomology computation");
    h.add(deg, n - out - in);
  }
  return h;
}

std::optional<SparseVector> solve_linear(const GradedMap& f, int target_degree, const SparseVector& b,
                                         const Field& field) {
  f.validate();
  if (!b.empty() && b.last_index() >= f.target.dim(target_degree))
    throw StructuralError("target vector does not live in degree " + std::to_string(target_degree));
  if (b.empty()) return SparseVector();
  SparseMatrix m = f.block(target_degree - f.degree);
  ColumnReduction red(m, field);
  return red.solve(b);
}

}  // namespace ptwist
