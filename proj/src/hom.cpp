#include "ptwist/hom.hpp"

#include <set>

#include "ptwist/errors.hpp"

namespace ptwist {

namespace {

Scalar sign_scalar(const Field& f, long long e) { return e % 2 == 0 ? f.one() : -f.one(); }

// Degrees p = t_i + |b| - s_j realised by some pair of generators.
std::vector<int> all_degrees(const SemiFreeModule& m, const SemiFreeModule& n) {
  const DgAlgebra& a = m.alg();
  std::set<int> out;
  std::set<std::pair<std::size_t, int>> src, tgt;
  for (const auto& g : m.generators()) src.insert({g.idempotent, g.degree});
  for (const auto& g : n.generators()) tgt.insert({g.idempotent, g.degree});
  for (const auto& [cj, sj] : src)
    for (const auto& [ci, ti] : tgt) {
      const GradedDimVector dims = a.piece_dims(ci, cj);
      for (const auto& [deg, dim] : dims.support()) out.insert(ti + deg - sj);
    }
  return {out.begin(), out.end()};
}

}  // namespace

HomComplex::HomComplex(SemiFreeModule source, SemiFreeModule target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (source_.algebra() != target_.algebra()) throw StructuralError("Hom between modules over different algebras");
  build(all_degrees(source_, target_));
}

HomComplex::HomComplex(SemiFreeModule source, SemiFreeModule target, const std::vector<int>& degrees)
    : source_(std::move(source)), target_(std::move(target)) {
  if (source_.algebra() != target_.algebra()) throw StructuralError("Hom between modules over different algebras");
  build(degrees);
}

std::uint64_t HomComplex::key(Index row, Index col, int degree) const {
  const std::uint64_t pair = static_cast<std::uint64_t>(row) * source_.size() + col;
  return (pair << 20) | static_cast<std::uint32_t>(degree + (1 << 19));
}

void HomComplex::build(const std::vector<int>& degree_list) {
  const DgAlgebra& a = source_.alg();
  const Field& f = a.field();
  std::set<int> degrees(degree_list.begin(), degree_list.end());

  piece_position_.assign(a.dim(), 0);
  for (Index b = 0; b < a.dim(); ++b) {
    auto s = a.sides(b);
    if (!s) throw StructuralError("algebra basis element " + a.basis(b).label + " is not idempotent-homogeneous");
    const auto& piece = a.piece(s->first, s->second, a.degree(b));
    for (Index p = 0; p < piece.size(); ++p)
      if (piece[p] == b) piece_position_[b] = p;
  }

  GradedVectorSpace space;
  for (int p : degrees) {
    auto& list = basis_[p];
    for (Index j = 0; j < source_.size(); ++j) {
      const int sj = source_.degree(j);
      const std::size_t cj = source_.idempotent(j);
      for (Index i = 0; i < target_.size(); ++i) {
        const auto& piece = a.piece(target_.idempotent(i), cj, sj + p - target_.degree(i));
        if (piece.empty()) continue;
        offset_[key(i, j, p)] = list.size();
        for (Index b : piece) list.push_back({i, j, b});
      }
    }
    if (list.empty())
      basis_.erase(p);
    else
      space.dims.add(p, list.size());
  }

  GradedMap d{space, space, 1, {}};
  const bool has_d = !a.has_zero_differential();
  const auto& source_rows = source_.delta_rows();
  for (const auto& [p, list] : basis_) {
    if (!basis_.count(p + 1)) continue;
    SparseMatrix block(basis_.at(p + 1).size(), list.size());
    const Scalar right_sign = -sign_scalar(f, p);
    for (Index col = 0; col < list.size(); ++col) {
      const auto& [i, j, b] = list[col];
      const Element eb = a.basis_element(b);
      std::vector<SparseVector::Entry> out;
      auto emit = [&](Index row, Index c, const Element& x, const Scalar& s) {
        if (x.empty()) return;
        auto it = offset_.find(key(row, c, p + 1));
        if (it == offset_.end()) throw InternalError("Hom differential leaves the complex");
        for (const auto& [bb, coeff] : x) out.emplace_back(it->second + piece_position_[bb], coeff * s);
      };
      for (const auto& [i2, x] : target_.delta().column(i)) emit(i2, j, a.multiply(x, eb), f.one());
      if (has_d) emit(i, j, a.d(b), sign_scalar(f, target_.degree(i)));
      for (Index j2 : source_rows[j]) emit(i, j2, a.multiply(eb, source_.delta().get(j, j2)), right_sign);
      block.set_column(col, SparseVector::from_entries(std::move(out)));
    }
    d.blocks[p] = std::move(block);
  }
  complex_.space = space;
  complex_.differential = std::move(d);
}

const std::vector<HomBasisElement>& HomComplex::basis(int degree) const {
  static const std::vector<HomBasisElement> empty;
  auto it = basis_.find(degree);
  return it == basis_.end() ? empty : it->second;
}

std::vector<int> HomComplex::degrees() const {
  std::vector<int> out;
  for (const auto& [p, l] : basis_) out.push_back(p);
  return out;
}

std::optional<Index> HomComplex::index_of(int degree, Index row, Index col, Index b) const {
  auto it = offset_.find(key(row, col, degree));
  if (it == offset_.end()) return std::nullopt;
  const auto& list = basis(degree);
  Index idx = it->second + piece_position_[b];
  if (idx >= list.size() || list[idx].row != row || list[idx].col != col || list[idx].basis != b)
    return std::nullopt;
  return idx;
}

ModuleMorphism HomComplex::morphism(int degree, const SparseVector& coords) const {
  const DgAlgebra& a = source_.alg();
  const auto& list = basis(degree);
  AlgebraMatrix m(target_.size(), source_.size());
  for (const auto& [idx, s] : coords) {
    if (idx >= list.size()) throw StructuralError("Hom coordinate out of range");
    const auto& e = list[idx];
    m.add(e.row, e.col, a.basis_element(e.basis), s);
  }
  return ModuleMorphism(source_, target_, degree, std::move(m));
}

SparseVector HomComplex::coordinates(int degree, const AlgebraMatrix& entries) const {
  std::vector<SparseVector::Entry> out;
  for (Index j = 0; j < entries.cols(); ++j)
    for (const auto& [i, x] : entries.column(j))
      for (const auto& [b, s] : x) {
        auto idx = index_of(degree, i, j, b);
        if (!idx) throw StructuralError("matrix entry outside the Hom complex in degree " + std::to_string(degree));
        out.emplace_back(*idx, s);
      }
  return SparseVector::from_entries(std::move(out));
}

SparseVector HomComplex::coordinates(const ModuleMorphism& f) const { return coordinates(f.degree(), f.entries()); }

std::vector<SparseVector> cohomology_basis(const HomComplex& h, int degree) {
  const Field& f = h.source().alg().field();
  const std::size_t n = h.dim(degree);
  std::vector<SparseVector> cocycles;
  if (h.dim(degree + 1) == 0) {
    for (Index i = 0; i < n; ++i) cocycles.push_back(SparseVector::unit(i, f.one()));
  } else {
    cocycles = ColumnReduction(h.differential().block(degree), f).kernel();
  }
  const SparseMatrix in = h.differential().block(degree - 1);
  // A cocycle contributes a new class exactly when its column raises the rank.
  std::vector<SparseVector> out;
  std::size_t r = rank(in);
  SparseMatrix prefix = in;
  for (Index j = 0; j < cocycles.size(); ++j) {
    SparseMatrix next(n, prefix.cols() + 1);
    for (Index c = 0; c < prefix.cols(); ++c) next.set_column(c, prefix.column(c));
    next.set_column(prefix.cols(), cocycles[j]);
    std::size_t r2 = rank(next);
    if (r2 > r) {
      out.push_back(cocycles[j]);
      r = r2;
      prefix = std::move(next);
    }
  }
  return out;
}

bool is_coboundary(const HomComplex& h, int degree, const SparseVector& v) {
  if (v.empty()) return true;
  ColumnReduction red(h.differential().block(degree - 1), h.source().alg().field());
  return red.in_image(v);
}

GradedDimVector hom_dims(const SemiFreeModule& m, const SemiFreeModule& n) {
  return cohomology_dims(HomComplex(m, n).complex());
}

std::size_t hom_total(const SemiFreeModule& m, const SemiFreeModule& n) { return hom_dims(m, n).total(); }

}  // namespace ptwist
