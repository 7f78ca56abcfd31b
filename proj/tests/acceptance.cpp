// Acceptance run: one line per criterion with its runtime limit. Exit status
// is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "ptwist/certificate.hpp"
#include "ptwist/hom.hpp"
#include "ptwist/minimize.hpp"
#include "support.hpp"

using namespace ptwist;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

bool witnessed(const SemiFreeModule& x, const SemiFreeModule& y, const std::vector<SemiFreeModule>& tests) {
  const IsoResult r = is_quasi_isomorphic(x, y);
  return r.verdict == IsoVerdict::isomorphic && r.witness && verify_witness(*r.witness, tests);
}

std::vector<AlgebraPtr> criterion_algebras() {
  return {build_pnk_algebra(1, 2), build_pnk_algebra(2, 2), build_pnk_algebra(3, 2), build_pnk_algebra(2, 4),
          build_two_object_algebra(2, 2, 1), build_two_object_algebra(2, 2, 2)};
}

std::string name(const AlgebraPtr& a) {
  const auto& p = *a->params();
  return p.family == "pnk" ? "pnk(" + std::to_string(p.n) + "," + std::to_string(p.k) + ")"
                           : "two-object(" + std::to_string(p.n) + "," + std::to_string(p.k) + "," +
                                 std::to_string(p.m) + ")";
}

Outcome fail(const std::string& why) { return {false, why}; }

Outcome axioms() {
  for (const auto& a : criterion_algebras()) {
    const SpherificationData s = build_spherification_algebra(a);
    for (const char* check : {"d^2 = 0", "Leibniz", "associativity"})
      if (!s.axioms.find(check) || !s.axioms.find(check)->passed) return fail(name(a) + ": " + check);
  }
  return {true, "6 spherified algebras: d^2 = 0, Leibniz, associativity"};
}

Outcome spherical() {
  for (const auto& a : criterion_algebras()) {
    const SpherificationData s = build_spherification_algebra(a);
    const int d = a->params()->n * a->params()->k + a->params()->k - 1;
    for (std::size_t c = 0; c < a->idempotent_count(); ++c) {
      const SemiFreeModule fp = apply_F(s, free_module(a, c));
      if (hom_dims(fp, fp) != GradedDimVector{{0, 1}, {d, 1}}) return fail(name(a) + ": End profile");
      if (!check_spherical(fp, d)) return fail(name(a) + ": pairing");
    }
  }
  return {true, "End*(F P_i) = {0:1, nk+k-1:1} with perfect pairing"};
}

Outcome hom_growth() {
  std::string got;
  for (int m : {1, 2}) {
    AlgebraPtr a = build_two_object_algebra(2, 2, m);
    const SpherificationData s = build_spherification_algebra(a);
    const GradedDimVector h = hom_dims(apply_F(s, free_module(a, 0)), apply_F(s, free_module(a, 1)));
    const std::size_t mm = m;
    // Degrees nk/2 and nk/2 + k - 1; see the README on the stated "1:m".
    if (h != GradedDimVector{{2, mm}, {3, mm}} || h.total() != 2 * mm) return fail("m = " + std::to_string(m) + ": " + h.to_string());
    got += (got.empty() ? "" : ", ") + std::string("m=") + std::to_string(m) + " " + h.to_string();
  }
  return {true, "hom*(F P1, F P2): " + got + " (stated as {2:m, 1:m})"};
}

Outcome twist_shifts() {
  for (auto [n, k] : {std::pair{1, 2}, {2, 2}, {3, 2}, {2, 4}}) {
    AlgebraPtr a = build_pnk_algebra(n, k);
    const SemiFreeModule p = free_module(a, 0);
    const SemiFreeModule y = p_twist(p, element_endomorphism(p, a->marked_t()[0]), p);
    if (y.size() != 1 || y.degree(0) != (n + 1) * k - 2 || !y.delta().is_zero())
      return fail("pnk(" + std::to_string(n) + "," + std::to_string(k) + ")");
  }
  AlgebraPtr a = build_two_object_algebra(2, 2, 0);
  const SemiFreeModule p1 = free_module(a, 0), p2 = free_module(a, 1);
  for (std::size_t i = 0; i < 2; ++i) {
    const SemiFreeModule& pi = i == 0 ? p1 : p2;
    const SemiFreeModule& pj = i == 0 ? p2 : p1;
    if (!witnessed(p_twist(pi, element_endomorphism(pi, a->marked_t()[i]), pj), pj, {p1, p2}))
      return fail("orthogonal fixing");
  }
  return {true, "P_P(P) one generator in degree (n+1)k-2 for 4 (n,k); P_i(P_j) = P_j witnessed"};
}

Outcome square_is_p() {
  for (int k : {1, 2, 3, 4}) {
    AlgebraPtr a = build_pnk_algebra(1, k);
    const SemiFreeModule s = free_module(a, 0);
    const ModuleMorphism t = element_endomorphism(s, a->marked_t()[0]);
    const SemiFreeModule ct = cone(ModuleMorphism(shift(s, -k), s, 0, t.entries()));
    for (const SemiFreeModule& x : {s, algebra_module(a), ct})
      if (!witnessed(spherical_twist(s, spherical_twist(s, x)), p_twist(s, t, x), {s}))
        return fail("pnk(1," + std::to_string(k) + ")");
  }
  return {true, "T_S^2(X) = P_S(X) witnessed for X in {S, A, cone(t)}, k = 1..4"};
}

Outcome square() {
  AlgebraPtr a = build_two_object_algebra(2, 2, 1);
  const SpherificationData s = build_spherification_algebra(a);
  const std::vector<SemiFreeModule> tests{apply_F(s, free_module(a, 0)), apply_F(s, free_module(a, 1))};
  int count = 0;
  for (std::size_t c = 0; c < 2; ++c) {
    const SemiFreeModule p = free_module(a, c);
    const ModuleMorphism t = element_endomorphism(p, a->marked_t()[c]);
    const SemiFreeModule fp = apply_F(s, p);
    for (const SemiFreeModule& x : {free_module(a, 0), free_module(a, 1), algebra_module(a)}) {
      if (!witnessed(apply_F(s, p_twist(p, t, x)), spherical_twist(fp, apply_F(s, x)), tests)) return fail("twist");
      if (!witnessed(apply_F(s, p_untwist(p, t, x)), spherical_untwist(fp, apply_F(s, x)), tests))
        return fail("untwist");
      count += 2;
    }
  }
  return {true, std::to_string(count) + " witnessed squares F P_i^{+-1}(X) = T_{F P_i}^{+-1}(F X)"};
}

Outcome memberships() {
  SessionConfig c;
  c.algebra = "two-object:2,2,1";
  c.L = 0;
  c.scope = "B";
  c.exponent_bound = 3;
  c.transition_length = 4;
  const Certificate cert = certify_no_relations(Session::open(c));
  std::size_t member = 0;
  for (const auto& k : cert.checks) {
    if (k.verdict == "failed") return fail(k.name + " " + k.word + " " + k.detail);
    member += k.name == "membership";
  }
  if (member != 2) return fail("membership checks missing");
  if (cert.transitions.empty()) return fail("no transitions checked");
  if (!cert.failures.empty() || !cert.undetermined.empty()) return fail("failures or undetermined entries");
  for (const auto& t : cert.transitions)
    if (t.verdict != "passed") return fail(t.word + " on " + t.object);
  return {true, "T1 S2 in X, T2 S1 in X'; " + std::to_string(cert.transitions.size()) +
                    " transitions |m| <= 3 over orbit words <= 4 all land correctly"};
}

std::string free_text, abelian_text;

Outcome freeness() {
  SessionConfig c;
  c.algebra = "two-object:2,2,1";
  c.L = 4;
  const Certificate cert = certify_no_relations(Session::open(c));
  free_text = cert.dump();
  std::size_t distinguished = 0;
  for (const auto& w : cert.words) distinguished += w.verdict == "distinguished";
  if (cert.words.size() != 160 || distinguished != cert.words.size()) return fail("not every word distinguished");
  if (!cert.failures.empty() || !cert.undetermined.empty() || cert.verdict != "certified") return fail(cert.verdict);
  return {true, "160/160 reduced words distinguished, 0 failures, 0 undetermined"};
}

Outcome abelian() {
  SessionConfig c;
  c.algebra = "two-object:2,2,0";
  c.L = 3;
  const Certificate cert = certify_abelian(Session::open(c));
  abelian_text = cert.dump();
  std::size_t commutators = 0, shifts = 0;
  for (const auto& k : cert.checks) {
    if (k.verdict != "witnessed" && k.verdict != "exact") return fail(k.name + " " + k.word);
    commutators += k.name == "commutator";
    shifts += k.name == "shift-witness";
  }
  if (commutators != 3 || shifts != 2 * 48 || cert.verdict != "certified") return fail("incomplete certificate");
  return {true, "commutator trivial on {P1, P2, A}; 48 words P1^a P2^b with shift witnesses -4a, -4b"};
}

Outcome minimization() {
  std::mt19937_64 rng(2024);
  AlgebraPtr a = build_two_object_algebra(2, 2, 1);
  const std::vector<SemiFreeModule> tests{free_module(a, 0), free_module(a, 1)};
  for (int i = 0; i < 100; ++i) {
    const SemiFreeModule m = ptwist::testing::random_module(a, rng, 4);
    if (hom_profile(minimize(m), tests) != hom_profile(m, tests)) return fail("module " + std::to_string(i));
  }
  for (const std::string* text : {&free_text, &abelian_text}) {
    if (text->empty()) return fail("no certificate emitted");
    if (!replay_certificate(*text).identical) return fail("replay differs");
  }
  return {true, "100 random modules keep their profiles; both certificates replay byte-identically"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    double limit;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"dg-axioms of spherified algebras", 5, axioms},
      {"sphericalness of F P_i", 30, spherical},
      {"Hom growth", 30, hom_growth},
      {"twist shifts and orthogonal fixing", 60, twist_shifts},
      {"T^2 = P for n = 1", 60, square_is_p},
      {"commutativity square", 120, square},
      {"ping-pong memberships and transitions", 300, memberships},
      {"freeness evidence L = 4", 600, freeness},
      {"abelianness L = 3", 120, abelian},
      {"minimization soundness and replay", 60, minimization},
  };
  int failed = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit;
    const bool ok = o.ok && in_time;
    failed += !ok;
    std::printf("%s %2d %-40s %8.3f s (limit %g s)  %s%s\n", ok ? "PASS" : "FAIL", index, c.title, secs, c.limit,
                o.detail.c_str(), in_time ? "" : " [over time limit]");
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
