#include <random>

#include "doctest.h"
#include "ptwist/hom.hpp"
#include "ptwist/minimize.hpp"
#include "ptwist/quasi_iso.hpp"
#include "ptwist/twists.hpp"
#include "support.hpp"

using namespace ptwist;
using ptwist::testing::random_module;

namespace {

std::vector<SemiFreeModule> frees(const AlgebraPtr& a) {
  std::vector<SemiFreeModule> out;
  for (std::size_t c = 0; c < a->idempotent_count(); ++c) out.push_back(free_module(a, c));
  return out;
}

}  // namespace

TEST_CASE("minimize preserves hom-profiles and is idempotent") {
  for (AlgebraPtr a : {build_two_object_algebra(2, 2, 1), build_pnk_algebra(2, 2),
                       build_two_object_algebra(2, 2, 2, Field::prime(32003))}) {
    std::mt19937_64 rng(21);
    const auto tests = frees(a);
    int cancelled = 0;
    for (int trial = 0; trial < 30; ++trial) {
      const SemiFreeModule m = random_module(a, rng, 4);
      const SemiFreeModule mm = minimize(m);
      cancelled += mm.size() < m.size();
      CHECK(mm.is_valid());
      CHECK(is_minimal(mm));
      CHECK(mm.size() <= m.size());
      CHECK((m.size() - mm.size()) % 2 == 0);
      CHECK(hom_profile(mm, tests) == hom_profile(m, tests));
      CHECK(minimize(mm) == mm);
      CHECK(minimize(m) == mm);
    }
    // The generator must actually exercise cancellation.
    CHECK(cancelled >= 5);
  }
}

TEST_CASE("minimal models are quasi-isomorphic to the input") {
  AlgebraPtr a = build_two_object_algebra(2, 2, 1);
  std::mt19937_64 rng(22);
  const auto tests = frees(a);
  for (int trial = 0; trial < 20; ++trial) {
    const SemiFreeModule m = random_module(a, rng);
    const IsoResult r = is_quasi_isomorphic(m, minimize(m));
    REQUIRE(r.verdict == IsoVerdict::isomorphic);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->is_closed());
    CHECK(has_invertible_scalar_part(*r.witness));
    CHECK(verify_witness(*r.witness, tests));
  }
}

TEST_CASE("quasi-isomorphism verdicts") {
  AlgebraPtr a = build_two_object_algebra(2, 2, 1);
  const SemiFreeModule p1 = free_module(a, 0), p2 = free_module(a, 1);
  CHECK(is_quasi_isomorphic(p1, p1).verdict == IsoVerdict::isomorphic);
  CHECK(is_quasi_isomorphic(p1, shift(p1, 1)).verdict == IsoVerdict::not_isomorphic);
  CHECK(is_quasi_isomorphic(p1, p2).verdict == IsoVerdict::not_isomorphic);
  CHECK(is_quasi_isomorphic(cone(identity_morphism(p1)), zero_module(a)).verdict == IsoVerdict::isomorphic);
  CHECK(is_quasi_isomorphic(direct_sum(p1, p2), direct_sum(p2, p1)).verdict == IsoVerdict::isomorphic);
  // Same generators, different differential: cone(t_1) against P1 ⊕ P1[-2] shifted.
  AlgebraMatrix e(1, 1);
  e.set(0, 0, a->marked_t()[0]);
  const SemiFreeModule ct = cone(ModuleMorphism(shift(p1, -2), p1, 0, e));
  const SemiFreeModule split = direct_sum(p1, shift(shift(p1, -2), 1));
  CHECK(ct.signature() == split.signature());
  CHECK(hom_dims(p1, ct) != hom_dims(p1, split));
  CHECK(is_quasi_isomorphic(ct, split).verdict != IsoVerdict::isomorphic);
}

TEST_CASE("a witness that is not an isomorphism fails verification") {
  AlgebraPtr a = build_pnk_algebra(1, 2);
  const SemiFreeModule p = free_module(a, 0);
  CHECK_FALSE(verify_witness(zero_morphism(p, p), {p}));
  CHECK(verify_witness(identity_morphism(p), {p}));
}
