#include <atomic>

#include "doctest.h"
#include "ptwist/errors.hpp"
#include "ptwist/minimize.hpp"
#include "ptwist/pingpong.hpp"

using namespace ptwist;

namespace {

struct Fixture {
  AlgebraPtr a = build_two_object_algebra(2, 2, 1);
  SpherificationData s = build_spherification_algebra(a);
  TwistContext p = p_twist_context(a);
  TwistContext t = spherical_context(s);
};

const Fixture& fixture() {
  static Fixture f;
  return f;
}

}  // namespace

TEST_CASE("word parsing and printing") {
  const TwistWord w = TwistWord::parse("P1 P2' P2'");
  CHECK(w.size() == 3);
  CHECK(w.to_string() == "P1 P2' P2'");
  CHECK(TwistWord::parse("P1P2'").to_string() == "P1 P2'");
  CHECK(w.is_reduced());
  CHECK_FALSE(TwistWord::parse("P1 P2 P2' P1").is_reduced());
  CHECK(w.inverse().to_string() == "P2 P2 P1'");
  CHECK(TwistWord::parse("", 'T').empty());
  CHECK(TwistWord::parse("T2 T1").family == 'T');
  CHECK_THROWS_AS(TwistWord::parse("P3"), ConfigError);
  CHECK_THROWS_AS(TwistWord::parse("P1 T2"), ConfigError);
  CHECK_THROWS_AS(TwistWord::parse("Q1"), ConfigError);
}

TEST_CASE("reduced word enumeration") {
  CHECK(reduced_words('P', 0).empty());
  const auto one = reduced_words('P', 1);
  REQUIRE(one.size() == 4);
  CHECK(one[0].to_string() == "P1");
  CHECK(one[1].to_string() == "P1'");
  CHECK(one[2].to_string() == "P2");
  CHECK(one[3].to_string() == "P2'");
  // 4·3^{l-1} reduced words of length l in a free group of rank 2.
  const auto upto4 = reduced_words('T', 4);
  CHECK(upto4.size() == 4 + 12 + 36 + 108);
  for (std::size_t i = 0; i < upto4.size(); ++i) {
    CHECK(upto4[i].is_reduced());
    if (i > 0) CHECK(upto4[i - 1].size() <= upto4[i].size());
  }
}

TEST_CASE("applying words") {
  const Fixture& f = fixture();
  const SemiFreeModule& p1 = f.p.object("P1");
  CHECK(apply_word(f.p, TwistWord{'P', {}}, p1).module == minimize(p1));
  // P1 on P1 is the shift by -(n+1)k+2 = -4.
  const WordResult r = apply_word(f.p, TwistWord::parse("P1"), p1);
  CHECK(r.module.size() == 1);
  CHECK(r.module.degree(0) == 4);
  for (const auto& obj : f.p.objects) {
    const SemiFreeModule back = apply_word(f.p, TwistWord::parse("P1 P1'"), obj).module;
    CHECK(is_quasi_isomorphic(back, obj).verdict == IsoVerdict::isomorphic);
  }
  CHECK_THROWS_AS(f.p.object("S1"), ConfigError);
}

TEST_CASE("the generator cap names the prefix reached") {
  const Fixture& f = fixture();
  TwistContext small = f.t;
  small.generator_cap = 5;
  try {
    apply_word(small, TwistWord::parse("T1 T2 T1 T2"), small.object("S2"));
    FAIL("expected a resource error");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("'T1 T2 T1'") != std::string::npos);
  }
}

TEST_CASE("ping-pong classification") {
  const Fixture& f = fixture();
  const SemiFreeModule& s1 = f.t.object("S1");
  const SemiFreeModule& s2 = f.t.object("S2");
  CHECK(classify(apply_word(f.t, TwistWord::parse("T1"), s2).module, s1, s2).region == Region::x);
  CHECK(classify(apply_word(f.t, TwistWord::parse("T2"), s1).module, s1, s2).region == Region::x_prime);
  // hom*(S2,S1) = hom*(S1,S1) = 2; 2 > (2/2)·2 fails, so S1 lies in neither set.
  const Classification c = classify(s1, s1, s2);
  CHECK(c.region == Region::neither);
  CHECK(c.hom_s1 == 2);
  CHECK(c.hom_s2 == 2);
  CHECK(c.hom_s12 == 2);
  CHECK(c.warning.empty());
}

TEST_CASE("classification over orthogonal objects warns") {
  AlgebraPtr a = build_two_object_algebra(2, 2, 0);
  const SpherificationData s = build_spherification_algebra(a);
  const TwistContext t = spherical_context(s);
  const Classification c = classify(t.object("S1"), t.object("S1"), t.object("S2"));
  CHECK_FALSE(c.warning.empty());
}

TEST_CASE("powers swap the ping-pong sets along a short orbit") {
  const Fixture& f = fixture();
  const SemiFreeModule& s1 = f.t.object("S1");
  const SemiFreeModule& s2 = f.t.object("S2");
  for (const auto& w : reduced_words('T', 2))
    for (const auto& start : {s1, s2}) {
      const SemiFreeModule y = apply_word(f.t, w, start).module;
      const Region r = classify(y, s1, s2).region;
      if (r == Region::neither) continue;
      const int gen = r == Region::x_prime ? 0 : 1;
      const Region want = r == Region::x_prime ? Region::x : Region::x_prime;
      for (bool inv : {false, true}) {
        SemiFreeModule z = y;
        for (int m = 1; m <= 2; ++m) {
          z = apply_letter(f.t, Letter{gen, inv}, z);
          CHECK(classify(z, s1, s2).region == want);
        }
      }
    }
}

TEST_CASE("orbit cache merges only witnessed isomorphisms") {
  const Fixture& f = fixture();
  OrbitCache cache;
  const SemiFreeModule& s1 = f.t.object("S1");
  const SemiFreeModule& s2 = f.t.object("S2");
  auto ins = [&](const SemiFreeModule& m, const std::string& name) {
    return cache.insert(m, f.t.profile(m), name, {});
  };
  CHECK(ins(s1, "S1").second);
  CHECK(ins(s2, "S2").second);
  // T1 T1' S1 is S1 again.
  const auto again = ins(apply_word(f.t, TwistWord::parse("T1 T1'"), s1).module, "T1 T1' (S1)");
  CHECK_FALSE(again.second);
  CHECK(again.first == 0);
  CHECK(cache.size() == 2);
  CHECK(cache.collisions() >= 1);
  CHECK(cache.at(0).name == "S1");
}

TEST_CASE("parallel_for covers every index and rethrows") {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) { if (i == 7) throw ConfigError("seven"); }), ConfigError);
  std::atomic<int> count{0};
  parallel_for(5, 1, [&](std::size_t) { ++count; });
  CHECK(count == 5);
}

TEST_CASE("contexts on single-object algebras") {
  AlgebraPtr a = build_pnk_algebra(2, 2);
  const TwistContext c = p_twist_context(a);
  CHECK(c.objects.size() == 2);
  CHECK_THROWS_AS(apply_word(c, TwistWord::parse("P2"), c.object("P1")), ConfigError);
}
