#include "ptwist/twists.hpp"

#include <algorithm>
#include <sstream>

#include "ptwist/errors.hpp"
#include "ptwist/minimize.hpp"

namespace ptwist {

namespace {

Scalar sign_scalar(const Field& f, long long e) { return e % 2 == 0 ? f.one() : -f.one(); }

std::vector<Generator> numbered(std::vector<Generator> gens) {
  for (Index i = 0; i < gens.size(); ++i) gens[i].label = "x" + std::to_string(i);
  return gens;
}

// Global index offsets of the degree pieces of a Hom complex.
std::map<int, Index> degree_offsets(const HomComplex& h) {
  std::map<int, Index> off;
  Index total = 0;
  for (int p : h.degrees()) {
    off[p] = total;
    total += h.dim(p);
  }
  return off;
}

struct BasisRef {
  int degree;
  Index local;
};

std::vector<BasisRef> global_basis(const HomComplex& h) {
  std::vector<BasisRef> out;
  for (int p : h.degrees())
    for (Index l = 0; l < h.dim(p); ++l) out.push_back({p, l});
  return out;
}

// Columns of a matrix of algebra entries assembled from unsorted triples.
AlgebraMatrix assemble(std::size_t rows, std::size_t cols, std::vector<std::vector<std::pair<Index, Element>>> data,
                       const Scalar& one) {
  AlgebraMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    auto& c = data[j];
    std::stable_sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (Index k = 0; k < c.size();) {
      Element sum;
      Index row = c[k].first;
      for (; k < c.size() && c[k].first == row; ++k) sum.add_scaled(c[k].second, one);
      m.append(row, j, std::move(sum));
    }
  }
  return m;
}

// Matrix of a degree-`shift` linear operator on a Hom complex given by a
// function sending a basis morphism to an algebra matrix.
template <typename Fn>
SparseMatrix hom_operator(const HomComplex& h, int shift, Fn&& apply) {
  const auto offsets = degree_offsets(h);
  const auto basis = global_basis(h);
  SparseMatrix out(basis.size(), basis.size());
  for (Index alpha = 0; alpha < basis.size(); ++alpha) {
    const auto& [p, local] = basis[alpha];
    const HomBasisElement& e = h.basis(p)[local];
    AlgebraMatrix image = apply(e);
    if (image.is_zero()) continue;
    auto it = offsets.find(p + shift);
    if (it == offsets.end()) throw InternalError("operator leaves the Hom complex");
    SparseVector local_coords = h.coordinates(p + shift, image);
    std::vector<SparseVector::Entry> entries;
    for (const auto& [i, s] : local_coords) entries.emplace_back(it->second + i, s);
    out.set_column(alpha, SparseVector::from_entries(std::move(entries)));
  }
  return out;
}

}  // namespace

HomProfile HomProfile::shifted(int j) const {
  HomProfile p = *this;
  for (auto& d : p.dims) d = d.shifted(j);
  return p;
}

std::string HomProfile::to_string() const {
  std::ostringstream os;
  for (Index i = 0; i < dims.size(); ++i) {
    if (i) os << ", ";
    if (i < labels.size()) os << labels[i] << ": ";
    os << dims[i].to_string();
  }
  return os.str();
}

HomProfile hom_profile(const SemiFreeModule& m, const std::vector<SemiFreeModule>& tests,
                       const std::vector<std::string>& labels) {
  HomProfile p;
  p.labels = labels;
  for (const auto& g : tests) p.dims.push_back(hom_dims(g, m));
  return p;
}

FieldComplex flatten(const HomComplex& h) {
  FieldComplex v;
  const auto offsets = degree_offsets(h);
  for (int p : h.degrees()) v.degrees.insert(v.degrees.end(), h.dim(p), p);
  v.differential = SparseMatrix(v.degrees.size(), v.degrees.size());
  for (const auto& [p, block] : h.differential().blocks) {
    const Index src = offsets.at(p), dst = offsets.at(p + 1);
    for (Index c = 0; c < block.cols(); ++c) {
      std::vector<SparseVector::Entry> entries;
      for (const auto& [r, s] : block.column(c)) entries.emplace_back(dst + r, s);
      v.differential.set_column(src + c, SparseVector::from_entries(std::move(entries)));
    }
  }
  return v;
}

FieldComplex dual(const FieldComplex& v) {
  FieldComplex w;
  const std::size_t n = v.degrees.size();
  for (int p : v.degrees) w.degrees.push_back(-p);
  std::vector<std::vector<SparseVector::Entry>> cols(n);
  for (Index beta = 0; beta < n; ++beta)
    for (const auto& [alpha, s] : v.differential.column(beta)) {
      // D_{αβ} = s; contributes to d w_α with coefficient -(-1)^{p_β} s.
      cols[alpha].emplace_back(beta, v.degrees[beta] % 2 == 0 ? -s : s);
    }
  w.differential = SparseMatrix(n, n);
  for (Index a = 0; a < n; ++a) w.differential.set_column(a, SparseVector::from_entries(std::move(cols[a])));
  return w;
}

SemiFreeModule tensor(const FieldComplex& v, const SemiFreeModule& p) {
  const DgAlgebra& a = p.alg();
  const std::size_t np = p.size(), n = v.degrees.size() * np;
  std::vector<Generator> gens;
  gens.reserve(n);
  for (Index alpha = 0; alpha < v.degrees.size(); ++alpha)
    for (Index r = 0; r < np; ++r) gens.push_back({"", p.idempotent(r), v.degrees[alpha] + p.degree(r)});
  std::vector<std::vector<std::pair<Index, Element>>> cols(n);
  for (Index alpha = 0; alpha < v.degrees.size(); ++alpha) {
    const Scalar sign = sign_scalar(a.field(), v.degrees[alpha]);
    for (Index r = 0; r < np; ++r) {
      auto& col = cols[alpha * np + r];
      for (const auto& [beta, s] : v.differential.column(alpha))
        col.emplace_back(beta * np + r, a.idempotent(p.idempotent(r)).scaled(s));
      for (const auto& [r2, x] : p.delta().column(r)) col.emplace_back(alpha * np + r2, x.scaled(sign));
    }
  }
  return SemiFreeModule(p.algebra(), numbered(std::move(gens)), assemble(n, n, std::move(cols), a.field().one()));
}

ModuleMorphism ev_map(const SemiFreeModule& p, const SemiFreeModule& x) {
  const HomComplex h(p, x);
  const FieldComplex v = flatten(h);
  SemiFreeModule vp = tensor(v, p);
  const auto basis = global_basis(h);
  const std::size_t np = p.size();
  AlgebraMatrix e(x.size(), vp.size());
  for (Index alpha = 0; alpha < basis.size(); ++alpha) {
    const HomBasisElement& b = h.basis(basis[alpha].degree)[basis[alpha].local];
    e.append(b.row, alpha * np + b.col, x.alg().basis_element(b.basis));
  }
  ModuleMorphism f(vp, x, 0, std::move(e));
  if (!f.is_closed()) throw InternalError("evaluation map is not closed");
  return f;
}

ModuleMorphism coev_map(const SemiFreeModule& x, const SemiFreeModule& s) {
  const HomComplex h(x, s);
  const FieldComplex w = dual(flatten(h));
  SemiFreeModule ws = tensor(w, s);
  const auto basis = global_basis(h);
  const std::size_t ns = s.size();
  std::vector<std::vector<std::pair<Index, Element>>> cols(x.size());
  for (Index alpha = 0; alpha < basis.size(); ++alpha) {
    const HomBasisElement& b = h.basis(basis[alpha].degree)[basis[alpha].local];
    cols[b.col].emplace_back(alpha * ns + b.row, x.alg().basis_element(b.basis));
  }
  ModuleMorphism f(x, ws, 0, assemble(ws.size(), x.size(), std::move(cols), x.alg().field().one()));
  if (!f.is_closed()) throw InternalError("coevaluation map is not closed");
  return f;
}

SemiFreeModule spherical_twist(const SemiFreeModule& s, const SemiFreeModule& x) {
  return minimize(cone(ev_map(s, x)));
}

SemiFreeModule spherical_untwist(const SemiFreeModule& s, const SemiFreeModule& x) {
  return minimize(shift(cone(coev_map(x, s)), -1));
}

ModuleMorphism element_endomorphism(const SemiFreeModule& p, const Element& t) {
  if (p.size() != 1) throw PreconditionError("element_endomorphism needs a one-generator module");
  auto deg = p.alg().degree_of(t);
  if (!deg) throw PreconditionError("twisting element must be nonzero and homogeneous");
  AlgebraMatrix m(1, 1);
  m.append(0, 0, t);
  return ModuleMorphism(p, p, *deg, std::move(m));
}

SemiFreeModule p_twist(const SemiFreeModule& p, const ModuleMorphism& t, const SemiFreeModule& x) {
  if (!(t.source() == p) || !(t.target() == p)) throw PreconditionError("p_twist: t is not an endomorphism of P");
  if (!t.is_closed()) throw PreconditionError("p_twist: t is not closed");
  const DgAlgebra& a = p.alg();
  const Field& f = a.field();
  const int k = t.degree();
  const HomComplex h(p, x);
  const FieldComplex v = flatten(h);
  const SemiFreeModule vp = tensor(v, p);
  const std::size_t np = p.size(), nv = v.degrees.size();
  const auto t_rows = t.entries().row_support();

  // Precomposition v ↦ v∘t on Hom•(P, X).
  const SparseMatrix pre = hom_operator(h, k, [&](const HomBasisElement& e) {
    AlgebraMatrix out(x.size(), p.size());
    const Element b = a.basis_element(e.basis);
    for (Index l : t_rows[e.col]) out.add(e.row, l, a.multiply(b, t.entries().get(e.col, l)), f.one());
    return out;
  });

  std::vector<std::vector<std::pair<Index, Element>>> cols(vp.size());
  for (Index alpha = 0; alpha < nv; ++alpha) {
    const Scalar sign = sign_scalar(f, static_cast<long long>(k) * v.degrees[alpha]);
    for (Index r = 0; r < np; ++r) {
      auto& col = cols[alpha * np + r];
      for (const auto& [gamma, s] : pre.column(alpha))
        col.emplace_back(gamma * np + r, a.idempotent(p.idempotent(r)).scaled(s * sign));
      for (const auto& [r2, y] : t.entries().column(r)) col.emplace_back(alpha * np + r2, y.scaled(-sign));
    }
  }
  const ModuleMorphism hmap(shift(vp, -k), vp, 0, assemble(vp.size(), vp.size(), std::move(cols), f.one()));
  if (!hmap.is_closed()) throw InternalError("H = t⊗id - id⊗t is not closed");
  const ModuleMorphism ev = ev_map(p, x);
  const SemiFreeModule c = cone(hmap);

  AlgebraMatrix to_x(x.size(), c.size());
  for (Index j = 0; j < vp.size(); ++j)
    for (const auto& [i, y] : ev.entries().column(j)) to_x.append(i, j, y);
  ModuleMorphism g(c, x, 0, std::move(to_x));
  if (!g.is_closed()) throw InternalError("ev does not vanish on the image of H");
  return minimize(cone(g));
}

SemiFreeModule p_untwist(const SemiFreeModule& p, const ModuleMorphism& t, const SemiFreeModule& x) {
  if (!(t.source() == p) || !(t.target() == p)) throw PreconditionError("p_untwist: t is not an endomorphism of P");
  if (!t.is_closed()) throw PreconditionError("p_untwist: t is not closed");
  const DgAlgebra& a = p.alg();
  const Field& f = a.field();
  const int k = t.degree();
  const HomComplex h(x, p);
  const FieldComplex w = dual(flatten(h));
  const SemiFreeModule wp = tensor(w, p);
  const std::size_t np = p.size(), nw = w.degrees.size();

  // Postcomposition v ↦ t∘v on Hom•(X, P); column γ holds t∘v_γ.
  const SparseMatrix post = hom_operator(h, k, [&](const HomBasisElement& e) {
    AlgebraMatrix out(p.size(), x.size());
    const Element b = a.basis_element(e.basis);
    for (const auto& [r2, y] : t.entries().column(e.row)) out.add(r2, e.col, a.multiply(y, b), f.one());
    return out;
  });
  // Transpose: (Q^∨ w_α) = Σ_γ (-1)^{k p_γ} Q_{αγ} w_γ, p_γ the degree of v_γ.
  std::vector<std::vector<SparseVector::Entry>> qdual(nw);
  for (Index gamma = 0; gamma < nw; ++gamma)
    for (const auto& [alpha, s] : post.column(gamma))
      qdual[alpha].emplace_back(gamma, static_cast<long long>(k) * w.degrees[gamma] % 2 == 0 ? s : -s);

  std::vector<std::vector<std::pair<Index, Element>>> cols(wp.size());
  for (Index alpha = 0; alpha < nw; ++alpha) {
    const Scalar sign = sign_scalar(f, static_cast<long long>(k) * w.degrees[alpha]);
    for (Index r = 0; r < np; ++r) {
      auto& col = cols[alpha * np + r];
      for (const auto& [gamma, s] : qdual[alpha])
        col.emplace_back(gamma * np + r, a.idempotent(p.idempotent(r)).scaled(s));
      for (const auto& [r2, y] : t.entries().column(r)) col.emplace_back(alpha * np + r2, y.scaled(-sign));
    }
  }
  const SemiFreeModule wpk = shift(wp, k);
  const ModuleMorphism hmap(wp, wpk, 0, assemble(wp.size(), wp.size(), std::move(cols), f.one()));
  if (!hmap.is_closed()) throw InternalError("transposed H is not closed");
  const ModuleMorphism coev = coev_map(x, p);
  const SemiFreeModule c = shift(cone(hmap), -1);

  AlgebraMatrix from_x(c.size(), x.size());
  for (Index j = 0; j < x.size(); ++j)
    for (const auto& [i, y] : coev.entries().column(j)) from_x.append(wpk.size() + i, j, y);
  ModuleMorphism g(x, c, 0, std::move(from_x));
  if (!g.is_closed()) throw InternalError("transposed H does not vanish on coev");
  return minimize(shift(cone(g), -1));
}

PnkCheck check_pnk_object(const SemiFreeModule& p, const ModuleMorphism& t, int n, int k) {
  PnkCheck r;
  if (t.degree() != k || !t.is_closed()) {
    r.detail = "t is not a closed endomorphism of degree " + std::to_string(k);
    return r;
  }
  const HomComplex end(p, p);
  GradedDimVector expected;
  for (int i = 0; i <= n; ++i) expected.add(i * k, 1);
  const GradedDimVector got = cohomology_dims(end.complex());
  if (got != expected) {
    r.detail = "End profile is " + got.to_string() + ", expected " + expected.to_string();
    return r;
  }
  ModuleMorphism power = identity_morphism(p);
  for (int i = 1; i <= n; ++i) {
    power = compose(t, power);
    SparseVector c = end.coordinates(power);
    const SparseMatrix in = end.differential().block(i * k - 1);
    ColumnReduction red(in, p.alg().field());
    if (c.empty() || red.in_image(c)) {
      r.detail = "t^" + std::to_string(i) + " vanishes in cohomology";
      return r;
    }
  }
  r.passed = true;
  return r;
}

TwistDescriptor spherical_descriptor(const SemiFreeModule& s, int exponent) {
  if (exponent == 0) throw PreconditionError("twist exponent must be nonzero");
  return TwistDescriptor{TwistDescriptor::Kind::spherical, s, std::nullopt, exponent};
}

TwistDescriptor p_twist_descriptor(const SemiFreeModule& p, const Element& t, int exponent) {
  if (exponent == 0) throw PreconditionError("twist exponent must be nonzero");
  return TwistDescriptor{TwistDescriptor::Kind::p_twist, p, element_endomorphism(p, t), exponent};
}

SemiFreeModule apply_twist(const TwistDescriptor& d, const SemiFreeModule& x) {
  SemiFreeModule y = x;
  const int steps = d.exponent < 0 ? -d.exponent : d.exponent;
  for (int i = 0; i < steps; ++i) {
    if (d.kind == TwistDescriptor::Kind::spherical)
      y = d.exponent > 0 ? spherical_twist(d.object, y) : spherical_untwist(d.object, y);
    else
      y = d.exponent > 0 ? p_twist(d.object, *d.t, y) : p_untwist(d.object, *d.t, y);
  }
  return y;
}

std::string degenerate_parameter_warning(const DgAlgebra& a) {
  const auto& params = a.params();
  if (params && params->n == 1 && params->k == 1)
    return "(n,k) = (1,1): P-twists and squared spherical twists can coincide here; results are not conclusive";
  return "";
}

}  // namespace ptwist
