#include "doctest.h"
#include "ptwist/algebra.hpp"
#include "ptwist/errors.hpp"
#include "ptwist/serialize.hpp"

using namespace ptwist;

namespace {

// Graded dimension of the two-object algebra by counting: t_c^i in degree
// ik for each object, plus m elements each way in degree nk/2.
GradedDimVector two_object_dims(int n, int k, int m) {
  GradedDimVector d;
  for (int i = 0; i <= n; ++i) d.add(i * k, 2);
  if (m > 0) d.add(n * k / 2, 2 * m);
  return d;
}

// Two-dimensional algebra k<1, x> with x² = x·x given; breaks associativity
// or d² = 0 depending on the inputs.
AlgebraData tiny(int x_degree) {
  AlgebraData d;
  d.basis = {{"e", 0}, {"x", x_degree}};
  d.idempotents = {0};
  const Field& f = d.field;
  d.products = {{0, 0, Element::unit(0, f.one())}, {0, 1, Element::unit(1, f.one())}, {1, 0, Element::unit(1, f.one())}};
  return d;
}

}  // namespace

TEST_CASE("pnk algebra dimensions and structure") {
  for (auto [n, k] : {std::pair{1, 2}, {2, 2}, {3, 2}, {2, 4}, {2, 1}}) {
    AlgebraPtr a = build_pnk_algebra(n, k);
    GradedDimVector expect;
    for (int i = 0; i <= n; ++i) expect.add(i * k, 1);
    CHECK(a->dims() == expect);
    CHECK(check_dg_axioms(*a).all_passed());
    // For odd k, t·t = -t·t forces t² = 0 before t can be graded-central.
    CHECK(is_central(*a, *a->h()) == (k % 2 == 0 || n == 1));
    CHECK(check_cy_pairing(*a, n * k));
    CHECK(a->is_augmented());
  }
}

TEST_CASE("two-object algebra dimensions and structure") {
  for (auto [n, k, m] : {std::tuple{2, 2, 1}, {2, 2, 2}, {2, 2, 0}, {1, 2, 1}, {3, 2, 2}, {2, 4, 1}, {1, 1, 0}}) {
    CAPTURE(n);
    CAPTURE(k);
    CAPTURE(m);
    AlgebraPtr a = build_two_object_algebra(n, k, m);
    CHECK(a->dims() == two_object_dims(n, k, m));
    CHECK(a->idempotent_count() == 2);
    CHECK(a->piece_dims(0, 1).total() == static_cast<std::size_t>(m));
    CHECK(a->piece_dims(1, 0).total() == static_cast<std::size_t>(m));
    const AxiomReport r = check_dg_axioms(*a);
    CHECK_MESSAGE(r.all_passed(), r.to_string());
    CHECK(is_central(*a, *a->h()));
    CHECK(check_cy_pairing(*a, n * k));
  }
}

TEST_CASE("two-object parameters outside the supported regime") {
  CHECK_THROWS_AS(build_two_object_algebra(2, 1, 1), UnsupportedError);
  CHECK_THROWS_AS(build_two_object_algebra(0, 2, 1), UnsupportedError);
  CHECK_THROWS_AS(build_pnk_algebra(1, 0), UnsupportedError);
}

TEST_CASE("non-central elements are detected") {
  AlgebraPtr a = build_two_object_algebra(2, 2, 1);
  const Index a0 = *a->find_label("a1");
  CHECK_FALSE(is_central(*a, a->basis_element(a0)));
  CHECK_FALSE(is_central(*a, a->idempotent(0)));
  CHECK(is_central(*a, a->unit()));
  CHECK(is_central(*a, Element{}));
  // t_1 + t_2^2 mixes degrees 2 and 4.
  Element mixed = a->marked_t()[0];
  mixed.add_scaled(a->multiply(a->marked_t()[1], a->marked_t()[1]), a->field().one());
  CHECK_THROWS_AS(is_central(*a, mixed), StructuralError);
}

TEST_CASE("axiom checker reports broken algebras") {
  SUBCASE("non-associative") {
    // x·x = e, x·y = y, y·x = x: (y·x)·y = y but y·(x·y) = y·y = 0.
    AlgebraData d = tiny(0);
    d.products.emplace_back(1, 1, Element::unit(0, d.field.one()));
    d.basis.push_back({"y", 0});
    d.products.emplace_back(0, 2, Element::unit(2, d.field.one()));
    d.products.emplace_back(2, 0, Element::unit(2, d.field.one()));
    d.products.emplace_back(1, 2, Element::unit(2, d.field.one()));  // x·y = y
    d.products.emplace_back(2, 1, Element::unit(1, d.field.one()));  // y·x = x
    const AxiomReport r = check_dg_axioms(DgAlgebra(d));
    CHECK_FALSE(r.all_passed());
    REQUIRE(r.find("associativity") != nullptr);
    CHECK_FALSE(r.find("associativity")->passed);
  }
  SUBCASE("d squared nonzero") {
    AlgebraData d;
    d.basis = {{"e", 0}, {"x", 0}, {"y", 1}, {"z", 2}};
    d.idempotents = {0};
    for (Index b = 0; b < 4; ++b) {
      d.products.emplace_back(0, b, Element::unit(b, d.field.one()));
      if (b) d.products.emplace_back(b, 0, Element::unit(b, d.field.one()));
    }
    d.differential = {{1, Element::unit(2, d.field.one())}, {2, Element::unit(3, d.field.one())}};
    const AxiomReport r = check_dg_axioms(DgAlgebra(d));
    REQUIRE(r.find("d^2 = 0") != nullptr);
    CHECK_FALSE(r.find("d^2 = 0")->passed);
  }
  SUBCASE("differential of the wrong degree") {
    AlgebraData d = tiny(2);
    d.differential = {{1, Element::unit(1, d.field.one())}};
    const AxiomReport r = check_dg_axioms(DgAlgebra(d));
    CHECK_FALSE(r.find("differential degree")->passed);
  }
  SUBCASE("bad indices") {
    AlgebraData d = tiny(1);
    d.products.emplace_back(5, 0, Element::unit(0, d.field.one()));
    CHECK_THROWS_AS(DgAlgebra{d}, StructuralError);
  }
}

TEST_CASE("local inverses in e A e") {
  AlgebraPtr a = build_pnk_algebra(3, 2);
  const Field& f = a->field();
  Element u = a->unit().scaled(f.from_int(2));
  auto inv = a->local_inverse(u, 0);
  REQUIRE(inv.has_value());
  CHECK((a->multiply(u, *inv) == a->unit()));
  CHECK_FALSE(a->local_inverse(a->marked_t()[0], 0).has_value());
}

TEST_CASE("algebra JSON round trip") {
  for (const Field& f : {Field(), Field::prime(32003)}) {
    AlgebraPtr a = build_two_object_algebra(2, 2, 2, f);
    const Json j = algebra_to_json(*a);
    AlgebraPtr b = algebra_from_json(j);
    CHECK(algebra_to_json(*b).dump() == j.dump());
    CHECK(b->dims() == a->dims());
    CHECK(check_dg_axioms(*b).all_passed());
  }
  Json broken = algebra_to_json(*build_pnk_algebra(1, 2));
  broken.erase("basis");
  CHECK_THROWS_AS(algebra_from_json(broken), StructuralError);
  Json out_of_range = algebra_to_json(*build_pnk_algebra(1, 2));
  out_of_range["idempotents"] = Json::array({7});
  CHECK_THROWS_AS(algebra_from_json(out_of_range), StructuralError);
}
