#include "ptwist/spherify.hpp"

#include "ptwist/errors.hpp"
#include "ptwist/hom.hpp"
#include "ptwist/minimize.hpp"

namespace ptwist {

namespace {

Scalar sign_scalar(const Field& f, long long e) { return e % 2 == 0 ? f.one() : -f.one(); }

Element offset(const Element& a, Index by) {
  std::vector<SparseVector::Entry> e;
  for (const auto& [i, s] : a) e.emplace_back(i + by, s);
  return Element::from_entries(std::move(e));
}

}  // namespace

Element SpherificationData::epsilon_times(const Element& a) const { return offset(a, base->dim()); }

std::pair<Element, Element> SpherificationData::split(const Element& b) const {
  const Index n = base->dim();
  Element lo, hi;
  for (const auto& [i, s] : b) {
    if (i < n)
      lo.push_back(i, s);
    else
      hi.push_back(i - n, s);
  }
  return {lo, hi};
}

SpherificationData build_spherification_algebra(AlgebraPtr a) {
  if (!a->h() || a->h()->empty()) throw ConfigError("spherification needs a marked element h");
  const Element& h = *a->h();
  auto kd = a->degree_of(h);
  if (!kd) throw ConfigError("marked element h is not homogeneous");
  const int k = *kd;
  if (k % 2 != 0) throw UnsupportedError("spherification requires h of even degree, got " + std::to_string(k));
  if (!is_central(*a, h)) throw PreconditionError("marked element h = " + a->format(h) + " is not central");

  const Index n = a->dim();
  const Field& f = a->field();
  AlgebraData d;
  d.field = f;
  d.basis = a->data().basis;
  for (Index b = 0; b < n; ++b) {
    const auto& src = a->basis(b);
    d.basis.push_back({src.label == "1" ? "ε" : "ε·" + src.label, src.degree + k - 1});
  }
  d.idempotents = a->data().idempotents;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const Element& p = a->product(i, j);
      if (p.empty()) continue;
      d.products.emplace_back(i, j, p);
      d.products.emplace_back(i, n + j, offset(p, n).scaled(sign_scalar(f, a->degree(i))));
      d.products.emplace_back(n + i, j, offset(p, n));
    }
  for (Index b = 0; b < n; ++b) {
    if (!a->d(b).empty()) d.differential.emplace_back(b, a->d(b));
    Element de = a->multiply(h, a->basis_element(b));
    de.add_scaled(offset(a->d(b), n), -f.one());
    if (!de.empty()) d.differential.emplace_back(n + b, de);
  }
  d.marked_t = a->marked_t();
  d.h = h;
  if (a->params()) {
    d.params = *a->params();
    d.params->family = "spherified " + a->params()->family;
  }

  SpherificationData s;
  s.base = a;
  s.extended = std::make_shared<DgAlgebra>(std::move(d));
  s.k = k;
  s.h = h;
  s.axioms = check_dg_axioms(*s.extended);
  if (!s.axioms.all_passed()) throw InternalError("spherification fails the dg-axioms:\n" + s.axioms.to_string());
  return s;
}

SemiFreeModule apply_F(const SpherificationData& s, const SemiFreeModule& m) {
  if (m.algebra() != s.base) throw StructuralError("apply_F: module is not over the base algebra");
  AlgebraMatrix d(m.size(), m.size());
  for (Index j = 0; j < m.size(); ++j)
    for (const auto& [i, x] : m.delta().column(j)) d.append(i, j, s.embed(x));
  return SemiFreeModule(s.extended, m.generators(), std::move(d));
}

SemiFreeModule apply_R(const SpherificationData& s, const SemiFreeModule& n) {
  if (n.algebra() != s.extended) throw StructuralError("apply_R: module is not over the spherified algebra");
  const DgAlgebra& a = *s.base;
  const Field& f = a.field();
  const std::size_t g = n.size();
  // x_i at index i, x_i ε at index g + i.
  std::vector<Generator> gens;
  for (const auto& x : n.generators()) gens.push_back(x);
  for (const auto& x : n.generators()) gens.push_back({x.label + "ε", x.idempotent, x.degree + s.k - 1});
  AlgebraMatrix d(2 * g, 2 * g);
  for (Index i = 0; i < g; ++i) {
    for (const auto& [j, y] : n.delta().column(i)) {
      auto [lo, hi] = s.split(y);
      d.append(j, i, lo);
    }
    for (const auto& [j, y] : n.delta().column(i)) {
      auto [lo, hi] = s.split(y);
      d.append(g + j, i, hi);
    }
  }
  for (Index i = 0; i < g; ++i) {
    d.append(i, g + i, a.multiply(a.idempotent(n.idempotent(i)), s.h).scaled(sign_scalar(f, n.degree(i))));
    for (const auto& [j, y] : n.delta().column(i)) {
      auto [lo, hi] = s.split(y);
      if (lo.empty()) continue;
      d.append(g + j, g + i, lo.scaled(sign_scalar(f, *a.degree_of(lo))));
    }
  }
  return SemiFreeModule(s.base, std::move(gens), std::move(d));
}

CotwistResult cotwist_object(const SpherificationData& s, const SemiFreeModule& m, const IsoOptions& options) {
  const SemiFreeModule rfm = apply_R(s, apply_F(s, m));
  AlgebraMatrix e(rfm.size(), m.size());
  for (Index i = 0; i < m.size(); ++i) e.append(i, i, s.base->idempotent(m.idempotent(i)));
  const ModuleMorphism eta(m, rfm, 0, std::move(e));
  if (!eta.is_closed()) throw InternalError("unit M → RF M is not closed");
  const SemiFreeModule c = shift(cone(eta), -1);

  // The M-block of cone(η)[-1] sits after the RF M block.
  AlgebraMatrix p(m.size(), c.size());
  for (Index i = 0; i < m.size(); ++i) p.append(i, rfm.size() + i, s.base->idempotent(m.idempotent(i)));
  const ModuleMorphism proj(c, m, 0, std::move(p));
  if (!proj.is_closed()) throw InternalError("connecting map of the cotwist triangle is not closed");

  CotwistResult r{minimize(c), {}, false};
  r.comparison = is_quasi_isomorphic(r.object, shift(m, -s.k), options);
  if (!m.is_zero()) {
    const HomComplex h(c, m, {-1, 0});
    r.alpha_nonzero = !is_coboundary(h, 0, h.coordinates(proj));
  }
  return r;
}

bool check_spherical(const SemiFreeModule& n, int d) {
  const HomComplex end(n, n);
  GradedDimVector expect;
  expect.add(0, 1);
  expect.add(d, 1);
  if (cohomology_dims(end.complex()) != expect) return false;
  if (d == 0) return true;
  const auto h0 = cohomology_basis(end, 0);
  const auto hd = cohomology_basis(end, d);
  if (h0.size() != 1 || hd.size() != 1) return false;
  const ModuleMorphism a = end.morphism(0, h0[0]);
  const ModuleMorphism b = end.morphism(d, hd[0]);
  return !is_coboundary(end, d, end.coordinates(compose(a, b))) &&
         !is_coboundary(end, d, end.coordinates(compose(b, a)));
}

bool check_left_adjoint_instance(const SpherificationData& s, const SemiFreeModule& n, const SemiFreeModule& m) {
  return hom_dims(shift(apply_R(s, n), s.k - 1), m) == hom_dims(n, apply_F(s, m));
}

}  // namespace ptwist
