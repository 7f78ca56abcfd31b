#include "ptwist/quasi_iso.hpp"

#include <random>

#include "ptwist/errors.hpp"
#include "ptwist/hom.hpp"
#include "ptwist/minimize.hpp"

namespace ptwist {

namespace {

// Scalar part of the degree-0 Hom element with coordinates v.
SparseMatrix scalar_matrix(const HomComplex& h, const SparseVector& v) {
  const DgAlgebra& a = h.source().alg();
  const auto& basis = h.basis(0);
  std::vector<std::vector<SparseVector::Entry>> cols(h.source().size());
  for (const auto& [idx, s] : v) {
    const auto& e = basis[idx];
    if (a.idempotent_of(e.basis)) cols[e.col].emplace_back(e.row, s);
  }
  SparseMatrix m(h.target().size(), h.source().size());
  for (Index j = 0; j < cols.size(); ++j) m.set_column(j, SparseVector::from_entries(std::move(cols[j])));
  return m;
}

bool free_profiles_agree(const SemiFreeModule& m, const SemiFreeModule& n) {
  for (std::size_t c = 0; c < m.alg().idempotent_count(); ++c) {
    SemiFreeModule p = free_module(m.algebra(), c);
    if (hom_dims(p, m) != hom_dims(p, n)) return false;
  }
  return true;
}

}  // namespace

std::string to_string(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::isomorphic:
      return "isomorphic";
    case IsoVerdict::not_isomorphic:
      return "not isomorphic";
    case IsoVerdict::undetermined:
      return "undetermined";
  }
  return "undetermined";
}

bool has_invertible_scalar_part(const ModuleMorphism& f) {
  if (f.degree() != 0 || f.source().size() != f.target().size()) return false;
  return rank(scalar_part(f)) == f.source().size();
}

IsoResult is_quasi_isomorphic(const SemiFreeModule& m, const SemiFreeModule& n, const IsoOptions& options) {
  if (m.algebra() != n.algebra()) throw StructuralError("quasi-isomorphism test across different algebras");
  const SemiFreeModule mm = minimize(m);
  const SemiFreeModule nn = minimize(n);
  const DgAlgebra& a = m.alg();
  IsoResult result;

  if (mm.signature() != nn.signature()) {
    if (a.is_augmented()) {
      result.verdict = IsoVerdict::not_isomorphic;
      result.reason = "minimal models have different generator degrees";
    } else if (!free_profiles_agree(mm, nn)) {
      result.verdict = IsoVerdict::not_isomorphic;
      result.reason = "Hom from the free modules differs";
    } else {
      result.reason = "minimal models differ over a non-augmented algebra";
    }
    return result;
  }

  HomComplex h(mm, nn, {0, 1});
  const std::size_t dim0 = h.dim(0);
  std::vector<SparseVector> kernel;
  if (h.dim(1) == 0) {
    for (Index i = 0; i < dim0; ++i) kernel.push_back(SparseVector::unit(i, a.field().one()));
  } else if (dim0 > 0) {
    ColumnReduction red(h.differential().block(0), a.field());
    kernel = red.kernel();
  }

  const std::size_t size = mm.size();
  auto try_candidate = [&](const SparseVector& v) {
    if (rank(scalar_matrix(h, v)) != size) return false;
    ModuleMorphism w = h.morphism(0, v);
    if (!w.is_closed()) throw InternalError("kernel vector of the Hom differential is not closed");
    result.verdict = IsoVerdict::isomorphic;
    result.witness = std::move(w);
    return true;
  };

  if (size == 0) {
    result.verdict = IsoVerdict::isomorphic;
    result.witness = zero_morphism(mm, nn);
    return result;
  }
  for (const auto& v : kernel)
    if (try_candidate(v)) return result;
  if (kernel.size() > 1) {
    SparseVector sum;
    for (const auto& v : kernel) sum.add_scaled(v, a.field().one());
    if (try_candidate(sum)) return result;
    std::mt19937_64 rng(options.seed);
    for (int t = 0; t < options.random_trials; ++t) {
      SparseVector combo;
      for (const auto& v : kernel) combo.add_scaled(v, a.field().random_nonzero(rng));
      if (try_candidate(combo)) return result;
    }
  }
  result.reason = kernel.empty() ? "no closed degree-0 maps between the minimal models"
                                 : "no invertible closed degree-0 map found within the search budget";
  if (a.is_augmented() && kernel.empty()) result.verdict = IsoVerdict::not_isomorphic;
  return result;
}

bool verify_witness(const ModuleMorphism& f, const std::vector<SemiFreeModule>& tests) {
  if (f.degree() != 0 || !f.is_closed()) return false;
  const SemiFreeModule c = cone(f);
  for (const auto& g : tests)
    if (!hom_dims(g, c).empty()) return false;
  return true;
}

}  // namespace ptwist
