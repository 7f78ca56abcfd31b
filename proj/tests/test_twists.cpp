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

bool witnessed(const SemiFreeModule& x, const SemiFreeModule& y, const std::vector<SemiFreeModule>& tests) {
  const IsoResult r = is_quasi_isomorphic(x, y);
  return r.verdict == IsoVerdict::isomorphic && r.witness && verify_witness(*r.witness, tests);
}

bool single_generator(const SemiFreeModule& m, std::size_t c, int degree) {
  return m.size() == 1 && m.idempotent(0) == c && m.degree(0) == degree && m.delta().is_zero();
}

SemiFreeModule cone_of_t(const AlgebraPtr& a, int k) {
  const SemiFreeModule p = free_module(a, 0);
  return cone(ModuleMorphism(shift(p, -k), p, 0, element_endomorphism(p, a->marked_t()[0]).entries()));
}

}  // namespace

TEST_CASE("evaluation and coevaluation are closed") {
  AlgebraPtr a = build_two_object_algebra(2, 2, 1);
  std::mt19937_64 rng(31);
  const SemiFreeModule p = free_module(a, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const SemiFreeModule x = random_module(a, rng);
    CHECK(ev_map(p, x).is_closed());
    CHECK(coev_map(x, p).is_closed());
  }
}

TEST_CASE("spherical twist of a spherical object is a shift") {
  for (int k : {1, 2, 3, 4}) {
    CAPTURE(k);
    AlgebraPtr a = build_pnk_algebra(1, k);
    const SemiFreeModule s = free_module(a, 0);
    // End*(S) = {0, k}: T_S(S) = S[1-k] and T_S^{-1}(S) = S[k-1].
    CHECK(single_generator(spherical_twist(s, s), 0, k - 1));
    CHECK(single_generator(spherical_untwist(s, s), 0, 1 - k));
  }
}

TEST_CASE("P-twist of its own object is the shift by (n+1)k-2") {
  for (auto [n, k] : {std::pair{1, 2}, {2, 2}, {3, 2}, {2, 4}, {1, 1}, {2, 1}, {1, 3}}) {
    CAPTURE(n);
    CAPTURE(k);
    AlgebraPtr a = build_pnk_algebra(n, k);
    const SemiFreeModule p = free_module(a, 0);
    const ModuleMorphism t = element_endomorphism(p, a->marked_t()[0]);
    CHECK(check_pnk_object(p, t, n, k).passed);
    CHECK(single_generator(p_twist(p, t, p), 0, (n + 1) * k - 2));
    CHECK(single_generator(p_untwist(p, t, p), 0, 2 - (n + 1) * k));
  }
}

TEST_CASE("P^n[k] detection") {
  AlgebraPtr a = build_pnk_algebra(2, 2);
  const SemiFreeModule p = free_module(a, 0);
  const ModuleMorphism t = element_endomorphism(p, a->marked_t()[0]);
  CHECK_FALSE(check_pnk_object(p, t, 3, 2).passed);
  CHECK_FALSE(check_pnk_object(p, t, 2, 4).passed);
  // t² is not a generator of the endomorphism ring.
  const ModuleMorphism t2 = element_endomorphism(p, a->multiply(a->marked_t()[0], a->marked_t()[0]));
  CHECK_FALSE(check_pnk_object(p, t2, 2, 2).passed);
}

TEST_CASE("twists fix objects orthogonal to their centre") {
  AlgebraPtr a = build_two_object_algebra(2, 2, 0);
  const SemiFreeModule p1 = free_module(a, 0), p2 = free_module(a, 1);
  const std::vector<SemiFreeModule> tests{p1, p2};
  const auto d1 = p_twist_descriptor(p1, a->marked_t()[0]);
  CHECK(witnessed(apply_twist(d1, p2), p2, tests));
  CHECK(witnessed(apply_twist(spherical_descriptor(p1), p2), p2, tests));
}

TEST_CASE("twists and untwists invert each other") {
  std::mt19937_64 rng(32);
  for (AlgebraPtr a : {build_two_object_algebra(2, 2, 1), build_two_object_algebra(1, 2, 1), build_pnk_algebra(2, 2)}) {
    const SemiFreeModule p = free_module(a, 0);
    const ModuleMorphism t = element_endomorphism(p, a->marked_t()[0]);
    std::vector<SemiFreeModule> tests;
    for (std::size_t c = 0; c < a->idempotent_count(); ++c) tests.push_back(free_module(a, c));
    for (int trial = 0; trial < 6; ++trial) {
      const SemiFreeModule x = random_module(a, rng, 2, 6);
      CHECK(witnessed(p_untwist(p, t, p_twist(p, t, x)), x, tests));
      CHECK(witnessed(p_twist(p, t, p_untwist(p, t, x)), x, tests));
      if (a->params()->n == 1) {
        CHECK(witnessed(spherical_untwist(p, spherical_twist(p, x)), x, tests));
        CHECK(witnessed(spherical_twist(p, spherical_untwist(p, x)), x, tests));
      }
    }
  }
}

TEST_CASE("for n = 1 the P-twist is the square of the spherical twist") {
  for (int k : {1, 2, 3, 4}) {
    CAPTURE(k);
    AlgebraPtr a = build_pnk_algebra(1, k);
    const SemiFreeModule s = free_module(a, 0);
    const ModuleMorphism t = element_endomorphism(s, a->marked_t()[0]);
    for (const SemiFreeModule& x : {s, algebra_module(a), cone_of_t(a, k)})
      CHECK(witnessed(spherical_twist(s, spherical_twist(s, x)), p_twist(s, t, x), {s}));
  }
}

TEST_CASE("hom-profiles are invariant under twisting a twist back") {
  AlgebraPtr a = build_two_object_algebra(2, 2, 1);
  const SemiFreeModule p1 = free_module(a, 0), p2 = free_module(a, 1);
  const auto d = p_twist_descriptor(p1, a->marked_t()[0]);
  auto inv = d;
  inv.exponent = -1;
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 8; ++trial) {
    const SemiFreeModule x = random_module(a, rng, 3, 8);
    CHECK(hom_profile(apply_twist(inv, apply_twist(d, x)), {p1, p2}) == hom_profile(x, {p1, p2}));
  }
}

TEST_CASE("degenerate parameters carry a warning") {
  CHECK_FALSE(degenerate_parameter_warning(*build_two_object_algebra(1, 1, 0)).empty());
  CHECK(degenerate_parameter_warning(*build_two_object_algebra(2, 2, 0)).empty());
}
