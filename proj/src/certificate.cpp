#include "ptwist/certificate.hpp"

#include <sstream>

#include "ptwist/errors.hpp"
#include "ptwist/hom.hpp"
#include "ptwist/minimize.hpp"

namespace ptwist {

namespace {

TwistContext context_for(const Session& s) {
  if (s.algebra->idempotent_count() != 2) throw ConfigError("word certificates need a two-idempotent algebra");
  if (s.config.scope == "B") {
    if (!s.spherification) throw ConfigError("spherical scope needs the spherified algebra; run spherify first");
    return spherical_context(*s.spherification, s.config.cap);
  }
  return p_twist_context(s.algebra, s.config.cap);
}

Json algebra_summary(const DgAlgebra& a) {
  Json j;
  if (const auto& p = a.params())
    j["params"] = {{"family", p->family}, {"n", p->n}, {"k", p->k}, {"m", p->m}};
  else
    j["params"] = nullptr;
  j["field"] = a.field().name();
  j["dim"] = a.dim();
  j["dims"] = dims_to_json(a.dims());
  return j;
}

bool is_orthogonal(const AlgebraPtr& a) {
  if (a->idempotent_count() != 2) throw ConfigError("word certificates need a two-idempotent algebra");
  const SemiFreeModule p1 = free_module(a, 0), p2 = free_module(a, 1);
  return hom_total(p1, p2) == 0 && hom_total(p2, p1) == 0;
}

// Tests objects of a context as "w(G)" names.
std::string applied(const TwistWord& w, const std::string& object) {
  return w.empty() ? object : w.to_string() + " (" + object + ")";
}

std::string profile_inequality(const TwistWord& w, const std::string& object, const HomProfile& before,
                               const HomProfile& after) {
  for (std::size_t i = 0; i < before.dims.size(); ++i)
    if (before.dims[i] != after.dims[i])
      return "H*Hom(" + before.labels[i] + ", " + applied(w, object) + ") = " + after.dims[i].to_string() +
             " != " + before.dims[i].to_string() + " = H*Hom(" + before.labels[i] + ", " + object + ")";
  return "";
}

/// Modules w(G) for every word and object, each computed from its parent
/// prefix. Words must come in reduced_words order (by length).
struct Evaluation {
  std::optional<SemiFreeModule> module;
  std::string error;
  std::size_t peak = 0;
};

std::vector<std::vector<Evaluation>> evaluate_words(const TwistContext& ctx, const std::vector<TwistWord>& words,
                                                    const std::vector<SemiFreeModule>& objects, unsigned threads) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < words.size(); ++i) index[words[i].to_string()] = i;
  std::vector<Evaluation> base;
  for (const auto& g : objects) {
    SemiFreeModule m = minimize(g);
    base.push_back({m, "", m.size()});
  }
  std::vector<std::vector<Evaluation>> out(words.size());
  std::size_t begin = 0;
  while (begin < words.size()) {
    std::size_t end = begin;
    while (end < words.size() && words[end].size() == words[begin].size()) ++end;
    parallel_for(end - begin, threads, [&](std::size_t t) {
      const std::size_t w = begin + t;
      TwistWord parent = words[w];
      const Letter last = parent.letters.back();
      parent.letters.pop_back();
      const std::vector<Evaluation>& from = parent.empty() ? base : out[index.at(parent.to_string())];
      std::vector<Evaluation> mine(objects.size());
      for (std::size_t o = 0; o < objects.size(); ++o) {
        if (!from[o].module) {
          mine[o].error = from[o].error;
          continue;
        }
        SemiFreeModule m = apply_letter(ctx, last, *from[o].module);
        mine[o].peak = std::max(from[o].peak, m.size());
        if (m.size() > ctx.generator_cap) {
          mine[o].error = "generator cap " + std::to_string(ctx.generator_cap) + " exceeded after prefix '" +
                          words[w].to_string() + "' on " + ctx.object_labels.at(o < ctx.object_labels.size() ? o : 0);
          continue;
        }
        mine[o].module = std::move(m);
      }
      out[w] = std::move(mine);
    });
    begin = end;
  }
  return out;
}

CheckRecord iso_check(const std::string& name, const std::string& word, const std::string& object,
                      const SemiFreeModule& y, const SemiFreeModule& g, const TwistContext& ctx,
                      const IsoOptions& options) {
  CheckRecord c{name, word, object, "", "", std::nullopt};
  const IsoResult r = is_quasi_isomorphic(y, g, options);
  if (r.verdict == IsoVerdict::isomorphic) {
    if (!r.witness || !verify_witness(*r.witness, ctx.profile_tests)) {
      c.verdict = "failed";
      c.detail = "witness does not re-verify";
      return c;
    }
    c.verdict = "witnessed";
    c.witness = witness_to_json(*r.witness, ctx.profile_labels);
    c.detail = "closed degree-0 map with invertible scalar part; cone acyclic against the test set";
    return c;
  }
  c.verdict = r.verdict == IsoVerdict::not_isomorphic ? "failed" : "undetermined";
  c.detail = r.reason;
  return c;
}

std::string check_label(const CheckRecord& c) {
  std::string s = c.name;
  if (!c.word.empty() || !c.object.empty()) s += ": " + applied(TwistWord::parse(c.word, 'P'), c.object);
  if (!c.detail.empty()) s += " (" + c.detail + ")";
  return s;
}

void collect(Certificate& cert, const CheckRecord& c) {
  if (c.verdict == "failed") cert.failures.push_back(check_label(c));
  if (c.verdict == "undetermined") cert.undetermined.push_back(check_label(c));
}

Region expected_after(Region from) { return from == Region::x ? Region::x_prime : Region::x; }

void run_transitions(const Session& s, Certificate& cert) {
  if (!s.config.transitions) return;
  if (!s.spherification) {
    cert.warnings.push_back("ping-pong transitions not checked: the algebra has no spherification (needs a central h of even degree)");
    return;
  }
  const TwistContext tctx = spherical_context(*s.spherification, s.config.cap);
  const unsigned threads = s.config.thread_count();
  const IsoOptions iso{s.config.seed};
  const SemiFreeModule& s1 = tctx.objects[0];
  const SemiFreeModule& s2 = tctx.objects[1];

  // The two memberships the argument starts from.
  const std::pair<Letter, std::size_t> seeds[] = {{Letter{0, false}, 1}, {Letter{1, false}, 0}};
  for (const auto& [l, obj] : seeds) {
    const SemiFreeModule y = apply_letter(tctx, l, tctx.objects[obj]);
    const Classification c = classify(y, s1, s2);
    const Region want = l.generator == 0 ? Region::x : Region::x_prime;
    CheckRecord r{"membership", TwistWord{'T', {l}}.to_string(), tctx.object_labels[obj],
                  c.region == want ? "passed" : "failed",
                  "classified " + to_string(c.region) + ", expected " + to_string(want) + "; hom* = " +
                      std::to_string(c.hom_s1) + ", " + std::to_string(c.hom_s2) + "; hom*(S1,S2) = " +
                      std::to_string(c.hom_s12),
                  std::nullopt};
    if (!c.warning.empty()) cert.warnings.push_back(c.warning);
    collect(cert, r);
    cert.checks.push_back(r);
  }

  // Orbit elements of word length ≤ transition_length, deduplicated.
  const std::vector<SemiFreeModule> starts{s1, s2};
  const std::vector<TwistWord> words = reduced_words('T', s.config.transition_length);
  const auto evals = evaluate_words(tctx, words, starts, threads);
  std::vector<std::pair<SemiFreeModule, std::string>> elements{{minimize(s1), "S1"}, {minimize(s2), "S2"}};
  for (std::size_t w = 0; w < words.size(); ++w)
    for (std::size_t o = 0; o < starts.size(); ++o) {
      if (evals[w][o].module)
        elements.emplace_back(*evals[w][o].module, applied(words[w], tctx.object_labels[o]));
      else
        cert.undetermined.push_back("orbit element " + applied(words[w], tctx.object_labels[o]) + ": " +
                                    evals[w][o].error);
    }
  std::vector<HomProfile> profiles(elements.size());
  parallel_for(elements.size(), threads, [&](std::size_t i) { profiles[i] = tctx.profile(elements[i].first); });
  OrbitCache cache;
  for (std::size_t i = 0; i < elements.size(); ++i) cache.insert(elements[i].first, profiles[i], elements[i].second, iso);

  struct Outcome {
    Region region = Region::neither;
    std::vector<CheckRecord> records;
    std::vector<std::string> errors;
  };
  std::vector<Outcome> outcomes(cache.size());
  const int bound = s.config.exponent_bound;
  parallel_for(cache.size(), threads, [&](std::size_t i) {
    const auto& e = cache.at(i);
    Outcome& out = outcomes[i];
    out.region = classify(e.module, s1, s2).region;
    if (out.region == Region::neither) return;
    const int gen = out.region == Region::x_prime ? 0 : 1;
    const Region want = expected_after(out.region);
    for (bool inverse : {false, true}) {
      SemiFreeModule z = e.module;
      for (int m = 1; m <= bound; ++m) {
        z = apply_letter(tctx, Letter{gen, inverse}, z);
        const std::string power = "T" + std::to_string(gen + 1) + "^" + std::to_string(inverse ? -m : m);
        if (z.size() > tctx.generator_cap) {
          out.errors.push_back("transition " + power + " on " + e.name + ": generator cap exceeded");
          break;
        }
        const Classification c = classify(z, s1, s2);
        out.records.push_back({"transition", power, e.name, c.region == want ? "passed" : "failed",
                               to_string(out.region) + " -> " + to_string(c.region) + "; hom* = " +
                                   std::to_string(c.hom_s1) + ", " + std::to_string(c.hom_s2),
                               std::nullopt});
      }
    }
  });
  std::size_t in_x = 0, in_xp = 0;
  for (const auto& out : outcomes) {
    in_x += out.region == Region::x;
    in_xp += out.region == Region::x_prime;
    for (const auto& r : out.records) {
      if (r.verdict == "failed") cert.failures.push_back(r.name + " " + r.word + " on " + r.object + " (" + r.detail + ")");
      cert.transitions.push_back(r);
    }
    for (const auto& e : out.errors) cert.undetermined.push_back(e);
  }
  cert.checks.push_back({"orbit", "", "",
                         "passed",
                         std::to_string(cache.size()) + " distinct elements of word length <= " +
                             std::to_string(s.config.transition_length) + " (" + std::to_string(in_x) + " in X, " +
                             std::to_string(in_xp) + " in X', " + std::to_string(cache.size() - in_x - in_xp) +
                             " in neither); " + std::to_string(cache.collisions()) + " key collisions resolved",
                         std::nullopt});
}

Certificate start(const Session& s, const std::string& mode, const TwistContext& ctx) {
  Certificate c;
  c.mode = mode;
  c.config = s.config;
  c.algebra = algebra_summary(*s.algebra);
  c.warnings = ctx.warnings;
  return c;
}

void finish(Certificate& c) {
  if (!c.failures.empty())
    c.verdict = "failed";
  else if (!c.undetermined.empty())
    c.verdict = "undetermined";
  else if (c.verdict.empty())
    c.verdict = "certified";
}

// (n, k) from the parameters, or read off End*(P_1) = {0, k, ..., nk}.
std::pair<int, int> pnk_parameters(const AlgebraPtr& a) {
  if (const auto& p = a->params(); p && (p->family == "pnk" || p->family == "two-object")) return {p->n, p->k};
  const auto& s = a->piece_dims(0, 0).support();
  if (s.size() < 2) throw ConfigError("cannot read (n, k) off End*(P1) = " + a->piece_dims(0, 0).to_string());
  return {static_cast<int>(s.size()) - 1, std::next(s.begin())->first};
}

TwistWord power_word(int generator, int exponent) {
  TwistWord w{'P', {}};
  for (int i = 0; i < std::abs(exponent); ++i) w.letters.push_back({generator, exponent < 0});
  return w;
}

}  // namespace

int Certificate::exit_code() const {
  if (verdict == "certified" || verdict == "completed") return exit_ok;
  if (verdict == "failed") return exit_failed;
  return exit_undetermined;
}

Json witness_to_json(const ModuleMorphism& f, const std::vector<std::string>& verified_against) {
  Json j;
  j["source_generators"] = f.source().size();
  j["target_generators"] = f.target().size();
  j["degree"] = f.degree();
  Json entries = Json::array();
  for (Index c = 0; c < f.entries().cols(); ++c)
    for (const auto& [r, x] : f.entries().column(c)) entries.push_back(Json::array({r, c, element_to_json(x)}));
  j["entries"] = entries;
  j["verified_against"] = verified_against;
  return j;
}

Json Certificate::to_json() const {
  Json j;
  j["schema"] = kCertificateSchema;
  j["tool_version"] = kToolVersion;
  j["mode"] = mode;
  j["config"] = config.to_json();
  j["algebra"] = algebra;
  j["verdict"] = verdict;
  j["warnings"] = warnings;
  Json ws = Json::array();
  for (const auto& w : words) {
    Json r;
    r["word"] = w.word;
    r["object"] = w.object;
    r["verdict"] = w.verdict;
    r["before"] = profile_to_json(w.before);
    r["after"] = w.after ? profile_to_json(*w.after) : Json();
    r["detail"] = w.detail;
    r["peak_generators"] = w.peak_generators;
    ws.push_back(r);
  }
  j["words"] = ws;
  auto checks_json = [](const std::vector<CheckRecord>& v) {
    Json out = Json::array();
    for (const auto& c : v) {
      Json r;
      r["name"] = c.name;
      r["word"] = c.word;
      r["object"] = c.object;
      r["verdict"] = c.verdict;
      r["detail"] = c.detail;
      if (c.witness) r["witness"] = *c.witness;
      out.push_back(r);
    }
    return out;
  };
  j["checks"] = checks_json(checks);
  j["transitions"] = checks_json(transitions);
  j["relations"] = relations;
  j["undetermined"] = undetermined;
  j["failures"] = failures;
  return j;
}

std::string Certificate::summary() const {
  std::ostringstream s;
  s << kToolVersion << ": " << mode << " certificate for " << config.algebra << " over " << algebra.value("field", "?")
    << ", scope " << config.scope << ", L = " << config.L << "\n";
  for (const auto& w : warnings) s << "warning: " << w << "\n";
  std::size_t distinguished = 0;
  for (const auto& w : words) distinguished += w.verdict == "distinguished";
  if (!words.empty()) s << "words: " << words.size() << " evaluated, " << distinguished << " distinguished\n";
  std::size_t passed = 0;
  for (const auto& c : checks) passed += c.verdict != "failed" && c.verdict != "undetermined";
  if (!checks.empty()) s << "checks: " << passed << "/" << checks.size() << " passed\n";
  std::size_t tpassed = 0;
  for (const auto& c : transitions) tpassed += c.verdict == "passed";
  if (!transitions.empty()) s << "transitions: " << tpassed << "/" << transitions.size() << " landed as required\n";
  if (mode == "relations-search") {
    s << "candidate relations: " << relations.size() << "\n";
    for (const auto& r : relations) s << "  " << r << "\n";
  }
  for (const auto& u : undetermined) s << "undetermined: " << u << "\n";
  for (const auto& f : failures) s << "FAILED: " << f << "\n";
  s << "verdict: " << verdict;
  if (verdict == "certified" && mode == "free") s << " up to length " << config.L;
  s << "\n";
  return s.str();
}

Certificate certify_no_relations(const Session& s) {
  if (is_orthogonal(s.algebra))
    throw ConfigError("orthogonal algebra: Hom*(P1, P2) = 0, so the twists commute and no freeness certificate exists");
  const TwistContext ctx = context_for(s);
  Certificate cert = start(s, "free", ctx);
  const unsigned threads = s.config.thread_count();
  const std::vector<TwistWord> words = reduced_words(ctx.family, s.config.L);
  const auto evals = evaluate_words(ctx, words, ctx.objects, threads);

  std::vector<HomProfile> before(ctx.objects.size());
  for (std::size_t o = 0; o < ctx.objects.size(); ++o) before[o] = ctx.profile(ctx.objects[o]);
  std::vector<WordRecord> records(words.size());
  parallel_for(words.size(), threads, [&](std::size_t w) {
    WordRecord& r = records[w];
    r.word = words[w].to_string();
    std::string errors;
    for (std::size_t o = 0; o < ctx.objects.size(); ++o) {
      const Evaluation& e = evals[w][o];
      if (!e.module) {
        errors += (errors.empty() ? "" : "; ") + e.error;
        continue;
      }
      HomProfile after = ctx.profile(*e.module);
      if (after != before[o]) {
        r.object = ctx.object_labels[o];
        r.before = before[o];
        r.detail = profile_inequality(words[w], r.object, before[o], after);
        r.after = std::move(after);
        r.verdict = "distinguished";
        r.peak_generators = e.peak;
        return;
      }
    }
    r.verdict = errors.empty() ? "undetermined" : "budget-exceeded";
    r.detail = errors.empty() ? "profile unchanged on every test object" : errors;
  });
  for (auto& r : records) {
    if (r.verdict != "distinguished") cert.undetermined.push_back("word " + r.word + ": " + r.detail);
    cert.words.push_back(std::move(r));
  }
  run_transitions(s, cert);
  finish(cert);
  return cert;
}

Certificate certify_abelian(const Session& s) {
  if (s.config.scope != "A") throw ConfigError("abelian certification runs with the P-twists over A (scope A)");
  if (!is_orthogonal(s.algebra))
    throw ConfigError("non-orthogonal algebra: Hom*(P1, P2) != 0; use certify free");
  const TwistContext ctx = p_twist_context(s.algebra, s.config.cap);
  Certificate cert = start(s, "abelian", ctx);
  const IsoOptions iso{s.config.seed};
  const auto [n, k] = pnk_parameters(s.algebra);
  const int shift_by = -(n + 1) * k + 2;
  const unsigned threads = s.config.thread_count();
  auto add = [&](const CheckRecord& c) {
    collect(cert, c);
    cert.checks.push_back(c);
  };

  for (int i = 0; i < 2; ++i)
    for (bool inverse : {false, true}) {
      const TwistWord w{'P', {Letter{i, inverse}}};
      const SemiFreeModule& pj = ctx.objects[1 - i];
      add(iso_check("fixes", w.to_string(), ctx.object_labels[1 - i], apply_word(ctx, w, pj).module, pj, ctx, iso));
    }
  for (int i = 0; i < 2; ++i) {
    const TwistWord w{'P', {Letter{i, false}}};
    const SemiFreeModule& pi = ctx.objects[i];
    const SemiFreeModule y = apply_word(ctx, w, pi).module;
    const bool exact = y.size() == 1 && y.idempotent(0) == static_cast<std::size_t>(i) && y.degree(0) == -shift_by &&
                       y.delta().is_zero();
    CheckRecord c{"self-shift", w.to_string(), ctx.object_labels[i], exact ? "exact" : "failed",
                  "minimal model is one generator e_" + std::to_string(i + 1) + " in degree " +
                      (y.size() == 1 ? std::to_string(y.degree(0)) : "?") + "; expected P" + std::to_string(i + 1) +
                      "[" + std::to_string(shift_by) + "]",
                  std::nullopt};
    add(c);
  }
  const TwistWord commutator = TwistWord::parse("P1 P2 P1' P2'");
  for (std::size_t o = 0; o < ctx.objects.size(); ++o)
    add(iso_check("commutator", commutator.to_string(), ctx.object_labels[o],
                  apply_word(ctx, commutator, ctx.objects[o]).module, ctx.objects[o], ctx, iso));

  if (shift_by == 0) {
    cert.warnings.push_back("(n, k) = (1, 1): P_i(P_i) = P_i, so the shift witnesses carry no information");
    cert.verdict = "non-conclusive";
  }
  // g = P1^a P2^b moves P_i by a_i · shift; the profile change on P_i with a_i ≠ 0 shows g ≠ id.
  std::vector<std::pair<int, int>> exps;
  for (int a = -s.config.L; a <= s.config.L; ++a)
    for (int b = -s.config.L; b <= s.config.L; ++b)
      if (a != 0 || b != 0) exps.emplace_back(a, b);
  std::vector<std::vector<CheckRecord>> found(exps.size());
  std::vector<WordRecord> records(exps.size());
  parallel_for(exps.size(), threads, [&](std::size_t e) {
    auto [a, b] = exps[e];
    TwistWord g = power_word(0, a);
    for (const auto& l : power_word(1, b).letters) g.letters.push_back(l);
    const int nu[2] = {a, b};
    WordRecord& r = records[e];
    r.word = g.to_string();
    r.verdict = "undetermined";
    r.detail = "shift by 0 leaves every profile unchanged";
    for (int i = 0; i < 2; ++i) {
      const WordResult y = apply_word(ctx, g, ctx.objects[i]);
      const SemiFreeModule expect = shift(ctx.objects[i], nu[i] * shift_by);
      found[e].push_back(iso_check("shift-witness", r.word, ctx.object_labels[i] + " -> " + ctx.object_labels[i] +
                                                               "[" + std::to_string(nu[i] * shift_by) + "]",
                                   y.module, expect, ctx, iso));
      if (r.verdict != "distinguished" && nu[i] * shift_by != 0) {
        const HomProfile before = ctx.profile(ctx.objects[i]);
        HomProfile after = ctx.profile(y.module);
        if (after != before) {
          r.object = ctx.object_labels[i];
          r.before = before;
          r.detail = profile_inequality(g, r.object, before, after);
          r.after = std::move(after);
          r.verdict = "distinguished";
          r.peak_generators = y.peak_generators;
        }
      }
    }
  });
  for (std::size_t e = 0; e < exps.size(); ++e) {
    for (auto& c : found[e]) add(c);
    if (records[e].verdict != "distinguished" && shift_by != 0)
      cert.undetermined.push_back("word " + records[e].word + ": " + records[e].detail);
    cert.words.push_back(std::move(records[e]));
  }
  finish(cert);
  return cert;
}

Certificate search_relations(const Session& s) {
  const TwistContext ctx = context_for(s);
  Certificate cert = start(s, "relations-search", ctx);
  const IsoOptions iso{s.config.seed};
  const unsigned threads = s.config.thread_count();
  const std::vector<TwistWord> words = reduced_words(ctx.family, s.config.L);
  const auto evals = evaluate_words(ctx, words, ctx.objects, threads);
  std::vector<HomProfile> before(ctx.objects.size());
  for (std::size_t o = 0; o < ctx.objects.size(); ++o) before[o] = ctx.profile(ctx.objects[o]);

  struct Outcome {
    bool relation = false;
    std::vector<CheckRecord> checks;
    std::string undetermined;
  };
  std::vector<Outcome> outcomes(words.size());
  parallel_for(words.size(), threads, [&](std::size_t w) {
    Outcome& out = outcomes[w];
    const std::string name = words[w].to_string();
    std::vector<CheckRecord> checks;
    bool open = false;
    for (std::size_t o = 0; o < ctx.objects.size(); ++o) {
      const Evaluation& e = evals[w][o];
      if (!e.module) {
        out.undetermined = "word " + name + ": " + e.error;
        return;
      }
      if (ctx.profile(*e.module) != before[o]) return;
      CheckRecord c = iso_check("identity", name, ctx.object_labels[o], *e.module, ctx.objects[o], ctx, iso);
      if (c.verdict == "failed") return;
      if (c.verdict == "undetermined") open = true;
      checks.push_back(std::move(c));
    }
    if (open) {
      out.undetermined = "word " + name + ": profiles unchanged but no witnessed isomorphism on the full test set";
      return;
    }
    out.relation = true;
    out.checks = std::move(checks);
  });
  for (std::size_t w = 0; w < words.size(); ++w) {
    if (outcomes[w].relation) {
      cert.relations.push_back(words[w].to_string());
      for (auto& c : outcomes[w].checks) cert.checks.push_back(std::move(c));
    }
    if (!outcomes[w].undetermined.empty()) cert.undetermined.push_back(outcomes[w].undetermined);
  }
  cert.verdict = cert.undetermined.empty() ? "completed" : "undetermined";
  return cert;
}

int ReplayResult::exit_code() const {
  if (!records_ok || !identical) return exit_failed;
  return regenerated.exit_code();
}

ReplayResult replay_certificate(const std::string& text, std::optional<int> max_length, unsigned threads) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw StructuralError(std::string("certificate is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("schema", "") != kCertificateSchema)
    throw StructuralError("not a " + std::string(kCertificateSchema) + " document");
  SessionConfig config = SessionConfig::from_json(j.at("config"));
  config.threads = threads;
  const std::string mode = j.value("mode", "");
  if (max_length) {
    if (*max_length < 0 || *max_length > config.L)
      throw ConfigError("replay length must lie in [0, " + std::to_string(config.L) + "]");
  }
  const Session s = Session::open(config);

  ReplayResult out;
  // Recorded witnesses first: each distinguished word must reproduce its profile.
  if (mode != "relations-search") {
    const TwistContext ctx = mode == "abelian" ? p_twist_context(s.algebra, config.cap) : context_for(s);
    for (const auto& r : j.at("words")) {
      if (r.at("verdict") != "distinguished") continue;
      const TwistWord w = TwistWord::parse(r.at("word").get<std::string>(), ctx.family);
      if (max_length && static_cast<int>(w.size()) > *max_length) continue;
      const SemiFreeModule y = apply_word(ctx, w, ctx.object(r.at("object").get<std::string>())).module;
      if (profile_to_json(ctx.profile(y)) != r.at("after")) {
        out.records_ok = false;
        out.mismatches.push_back("word " + w.to_string() + " on " + r.at("object").get<std::string>() +
                                 ": recorded profile does not reproduce");
      }
    }
  }

  SessionConfig regen = config;
  if (max_length) regen.L = *max_length;
  Session rs = s;
  rs.config = regen;
  if (mode == "free")
    out.regenerated = certify_no_relations(rs);
  else if (mode == "abelian")
    out.regenerated = certify_abelian(rs);
  else if (mode == "relations-search")
    out.regenerated = search_relations(rs);
  else
    throw StructuralError("unknown certificate mode '" + mode + "'");

  if (!max_length || *max_length == config.L) {
    out.identical = out.regenerated.dump() == text;
    if (!out.identical) out.mismatches.push_back("regenerated certificate differs from the input");
  } else {
    // Monotonicity: a shorter budget must certify whenever the original did.
    out.identical = j.at("verdict") != "certified" || out.regenerated.verdict == "certified";
    if (!out.identical) out.mismatches.push_back("certificate does not re-certify at length " + std::to_string(*max_length));
  }
  return out;
}

}  // namespace ptwist
