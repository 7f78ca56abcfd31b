#include <random>

#include "doctest.h"
#include "ptwist/errors.hpp"
#include "ptwist/hom.hpp"
#include "ptwist/minimize.hpp"
#include "ptwist/serialize.hpp"
#include "support.hpp"

using namespace ptwist;
using ptwist::testing::random_closed_map;
using ptwist::testing::random_module;

namespace {

AlgebraPtr two_object() {
  static AlgebraPtr a = build_two_object_algebra(2, 2, 1);
  return a;
}

// A random (not necessarily closed) morphism of the given degree.
ModuleMorphism random_morphism(const SemiFreeModule& m, const SemiFreeModule& n, int degree, std::mt19937_64& rng) {
  const HomComplex h(m, n, {degree});
  std::vector<SparseVector::Entry> e;
  for (Index i = 0; i < h.dim(degree); ++i)
    if (rng() % 2) e.emplace_back(i, testing::small_scalar(m.alg().field(), rng));
  return h.morphism(degree, SparseVector::from_entries(std::move(e)));
}

AlgebraMatrix sum(const AlgebraMatrix& a, const AlgebraMatrix& b, const Scalar& c) {
  AlgebraMatrix out = a;
  for (Index j = 0; j < b.cols(); ++j)
    for (const auto& [i, x] : b.column(j)) out.add(i, j, x, c);
  return out;
}

}  // namespace

TEST_CASE("free modules and their Hom spaces") {
  AlgebraPtr a = two_object();
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (int s : {-2, 0, 3})
        for (int t : {0, 1}) {
          // Hom^p(x_i of degree s, y_j of degree t) is the degree s+p-t part of e_j A e_i.
          const GradedDimVector got = hom_dims(free_module(a, i, s), free_module(a, j, t));
          CHECK(got == a->piece_dims(j, i).shifted(t - s));
        }
}

TEST_CASE("validate rejects D^2 != 0") {
  AlgebraPtr a = build_pnk_algebra(1, 2);
  AlgebraMatrix d(3, 3);
  d.set(0, 1, a->unit());
  d.set(1, 2, a->unit());
  const SemiFreeModule bad(a, {{"y", 0, 0}, {"x", 0, -1}, {"z", 0, -2}}, d);
  CHECK_THROWS_AS(bad.validate(), AxiomError);
  CHECK_FALSE(bad.is_valid());
}

TEST_CASE("entries of the wrong degree or side are rejected") {
  AlgebraPtr a = two_object();
  AlgebraMatrix d(2, 2);
  d.set(0, 1, a->marked_t()[0]);  // degree 2, but the slot needs degree 0
  CHECK_THROWS_AS(SemiFreeModule(a, {{"x", 0, 0}, {"y", 0, -1}}, d), StructuralError);
  AlgebraMatrix side(2, 2);
  side.set(0, 1, a->unit());  // e_1 + e_2 is not in e_1 A e_2
  CHECK_THROWS_AS(SemiFreeModule(a, {{"x", 0, 0}, {"y", 1, -1}}, side), StructuralError);
}

TEST_CASE("cones of closed and non-closed maps") {
  AlgebraPtr a = two_object();
  const SemiFreeModule p1 = free_module(a, 0);
  const SemiFreeModule c = cone(identity_morphism(p1));
  CHECK(c.size() == 2);
  CHECK(c.is_valid());
  CHECK(hom_dims(p1, c).empty());
  CHECK(minimize(c).is_zero());

  // t_1 has degree 2, so as a degree-0 map it needs a shifted source.
  AlgebraMatrix e(1, 1);
  e.set(0, 0, a->marked_t()[0]);
  CHECK_THROWS_AS(ModuleMorphism(p1, p1, 0, e), StructuralError);
  const ModuleMorphism t(shift(p1, -2), p1, 0, e);
  CHECK(t.is_closed());
  CHECK(cone(t).is_valid());

  // A non-closed map between nontrivial complexes.
  const SemiFreeModule ct = cone(t);
  const ModuleMorphism to_p = [&] {
    AlgebraMatrix m(1, 2);
    m.set(0, 0, a->idempotent(0));
    return ModuleMorphism(ct, p1, 0, m);
  }();
  CHECK_FALSE(to_p.is_closed());
  CHECK_THROWS_AS(cone(to_p), PreconditionError);
}

TEST_CASE("Hom differential squares to zero on random modules") {
  std::mt19937_64 rng(11);
  AlgebraPtr a = two_object();
  for (int trial = 0; trial < 25; ++trial) {
    const SemiFreeModule m = random_module(a, rng), n = random_module(a, rng);
    REQUIRE(m.is_valid());
    REQUIRE(n.is_valid());
    const int p = static_cast<int>(rng() % 5) - 2;
    const ModuleMorphism f = random_morphism(m, n, p, rng);
    const ModuleMorphism df(m, n, p + 1, f.differential());
    CHECK(df.differential().is_zero());
    CHECK(df.is_closed());
  }
}

TEST_CASE("Hom differential is a derivation for composition") {
  std::mt19937_64 rng(12);
  AlgebraPtr a = two_object();
  for (int trial = 0; trial < 25; ++trial) {
    const SemiFreeModule l = random_module(a, rng), m = random_module(a, rng), n = random_module(a, rng);
    const int p = static_cast<int>(rng() % 3) - 1, q = static_cast<int>(rng() % 3) - 1;
    const ModuleMorphism f = random_morphism(m, n, p, rng);
    const ModuleMorphism g = random_morphism(l, m, q, rng);
    const ModuleMorphism df(m, n, p + 1, f.differential()), dg(l, m, q + 1, g.differential());
    // D(f∘g) = D(f)∘g + (-1)^{|f|} f∘D(g)
    const AlgebraMatrix lhs = compose(f, g).differential();
    const AlgebraMatrix rhs =
        sum(compose(df, g).entries(), compose(f, dg).entries(), p % 2 == 0 ? a->field().one() : -a->field().one());
    CHECK(lhs == rhs);
  }
}

TEST_CASE("shift and cone act on Hom as expected") {
  std::mt19937_64 rng(13);
  AlgebraPtr a = two_object();
  const SemiFreeModule g = algebra_module(a);
  for (int trial = 0; trial < 20; ++trial) {
    const SemiFreeModule m = random_module(a, rng);
    for (int j : {-2, 1, 3}) CHECK(hom_dims(g, shift(m, j)) == hom_dims(g, m).shifted(-j));

    // Euler characteristics add along cone(f): N then M[1].
    const SemiFreeModule x = ptwist::testing::random_free_sum(a, rng, 4);
    const ModuleMorphism f = random_closed_map(x, m, rng);
    const SemiFreeModule c = cone(f);
    CHECK(c.is_valid());
    CHECK(hom_dims(g, c).euler() == hom_dims(g, m).euler() - hom_dims(g, x).euler());
  }
}

TEST_CASE("module JSON round trip") {
  std::mt19937_64 rng(14);
  AlgebraPtr a = two_object();
  for (int trial = 0; trial < 10; ++trial) {
    const SemiFreeModule m = random_module(a, rng);
    const SemiFreeModule back = module_from_json(module_to_json(m), a);
    CHECK(back == m);
  }
}
