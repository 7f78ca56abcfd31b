#include "ptwist/pingpong.hpp"

#include <atomic>
#include <cctype>
#include <exception>
#include <sstream>
#include <thread>

#include "ptwist/errors.hpp"
#include "ptwist/minimize.hpp"

namespace ptwist {

TwistWord TwistWord::parse(const std::string& text, char default_family) {
  TwistWord w;
  w.family = default_family;
  bool family_seen = false;
  for (std::size_t i = 0; i < text.size();) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') {
      ++i;
      continue;
    }
    if (c != 'P' && c != 'T')
      throw ConfigError("bad twist word '" + text + "': expected P or T at position " + std::to_string(i));
    if (family_seen && c != w.family) throw ConfigError("twist word '" + text + "' mixes P and T letters");
    w.family = c;
    family_seen = true;
    if (i + 1 >= text.size() || (text[i + 1] != '1' && text[i + 1] != '2'))
      throw ConfigError("bad twist word '" + text + "': letter index must be 1 or 2");
    Letter l{text[i + 1] - '1', false};
    i += 2;
    if (i < text.size() && text[i] == '\'') {
      l.inverse = true;
      ++i;
    }
    w.letters.push_back(l);
  }
  return w;
}

std::string TwistWord::to_string() const {
  std::string s;
  for (const auto& l : letters) {
    if (!s.empty()) s += ' ';
    s += family;
    s += static_cast<char>('1' + l.generator);
    if (l.inverse) s += '\'';
  }
  return s;
}

bool TwistWord::is_reduced() const {
  for (std::size_t i = 1; i < letters.size(); ++i)
    if (letters[i].generator == letters[i - 1].generator && letters[i].inverse != letters[i - 1].inverse) return false;
  return true;
}

TwistWord TwistWord::inverse() const {
  TwistWord w{family, {}};
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back({it->generator, !it->inverse});
  return w;
}

TwistWord TwistWord::operator+(const Letter& l) const {
  TwistWord w = *this;
  w.letters.push_back(l);
  return w;
}

std::array<Letter, 4> alphabet() { return {Letter{0, false}, Letter{0, true}, Letter{1, false}, Letter{1, true}}; }

std::vector<TwistWord> reduced_words(char family, int max_length) {
  std::vector<TwistWord> out;
  std::vector<TwistWord> level{TwistWord{family, {}}};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<TwistWord> next;
    for (const auto& w : level)
      for (const auto& l : alphabet()) {
        if (!w.empty() && w.letters.back().generator == l.generator && w.letters.back().inverse != l.inverse) continue;
        next.push_back(w + l);
      }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

const SemiFreeModule& TwistContext::object(const std::string& label) const {
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (object_labels[i] == label) return objects[i];
  throw ConfigError("unknown test object '" + label + "'");
}

TwistContext p_twist_context(AlgebraPtr a, std::size_t generator_cap) {
  const std::size_t r = a->idempotent_count();
  if (r > 2 || a->marked_t().size() != r)
    throw ConfigError("P-twist words need one or two idempotents, each with a marked t_i");
  TwistContext ctx;
  ctx.algebra = a;
  ctx.family = 'P';
  ctx.generator_cap = generator_cap;
  for (std::size_t c = 0; c < r; ++c) {
    const std::string label = "P" + std::to_string(c + 1);
    ctx.profile_tests.push_back(free_module(a, c, 0, label));
    ctx.profile_labels.push_back(label);
    ctx.twists.push_back(p_twist_descriptor(ctx.profile_tests.back(), a->marked_t()[c]));
  }
  if (const auto& params = a->params()) {
    for (std::size_t i = 0; i < r; ++i) {
      PnkCheck c = check_pnk_object(ctx.twists[i].object, *ctx.twists[i].t, params->n, params->k);
      if (!c.passed) throw PreconditionError("P" + std::to_string(i + 1) + " is not a P^n[k]-object: " + c.detail);
    }
  }
  if (auto w = degenerate_parameter_warning(*a); !w.empty()) ctx.warnings.push_back(w);
  ctx.objects = ctx.profile_tests;
  ctx.object_labels = ctx.profile_labels;
  ctx.objects.push_back(algebra_module(a));
  ctx.object_labels.push_back("A");
  return ctx;
}

TwistContext spherical_context(const SpherificationData& s, std::size_t generator_cap) {
  const AlgebraPtr& a = s.base;
  const std::size_t r = a->idempotent_count();
  if (r > 2) throw ConfigError("spherical twist words need one or two idempotents");
  TwistContext ctx;
  ctx.algebra = s.extended;
  ctx.family = 'T';
  ctx.generator_cap = generator_cap;
  const int d = a->params() ? a->params()->n * a->params()->k + a->params()->k - 1 : 0;
  for (std::size_t c = 0; c < r; ++c) {
    const std::string label = "S" + std::to_string(c + 1);
    SemiFreeModule sc = apply_F(s, free_module(a, c, 0, label));
    if (a->params() && !check_spherical(sc, d))
      throw PreconditionError(label + " = F(P" + std::to_string(c + 1) + ") is not " + std::to_string(d) + "-spherical");
    ctx.twists.push_back(spherical_descriptor(sc));
    ctx.profile_tests.push_back(sc);
    ctx.profile_labels.push_back(label);
  }
  ctx.objects = ctx.profile_tests;
  ctx.object_labels = ctx.profile_labels;
  ctx.objects.push_back(apply_F(s, algebra_module(a)));
  ctx.object_labels.push_back("B");
  return ctx;
}

SemiFreeModule apply_letter(const TwistContext& ctx, const Letter& l, const SemiFreeModule& m) {
  if (l.generator < 0 || static_cast<std::size_t>(l.generator) >= ctx.twists.size())
    throw ConfigError("letter " + std::string(1, ctx.family) + std::to_string(l.generator + 1) +
                      " has no twist: the algebra has " + std::to_string(ctx.twists.size()) + " object(s)");
  TwistDescriptor d = ctx.twists[l.generator];
  if (l.inverse) d.exponent = -d.exponent;
  return apply_twist(d, m);
}

WordResult apply_word(const TwistContext& ctx, const TwistWord& w, const SemiFreeModule& m) {
  WordResult r{minimize(m), 0};
  r.peak_generators = r.module.size();
  TwistWord prefix{w.family, {}};
  for (const auto& l : w.letters) {
    r.module = apply_letter(ctx, l, r.module);
    prefix = prefix + l;
    r.peak_generators = std::max(r.peak_generators, r.module.size());
    if (r.module.size() > ctx.generator_cap)
      throw ResourceError("generator cap " + std::to_string(ctx.generator_cap) + " exceeded after prefix '" +
                          prefix.to_string() + "' (" + std::to_string(r.module.size()) + " generators)");
  }
  return r;
}

std::string to_string(Region r) {
  switch (r) {
    case Region::x:
      return "X";
    case Region::x_prime:
      return "X'";
    case Region::neither:
      return "neither";
  }
  return "neither";
}

Classification classify(const SemiFreeModule& y, const SemiFreeModule& s1, const SemiFreeModule& s2) {
  Classification c;
  c.hom_s1 = hom_total(s1, y);
  c.hom_s2 = hom_total(s2, y);
  c.hom_s12 = hom_total(s1, s2);
  if (c.hom_s12 < 2) c.warning = "hom*(S1,S2) < 2: the ping-pong sets need not be disjoint";
  // Compare 2·hom*(S_2,Y) > hom*(S_1,S_2)·hom*(S_1,Y) to stay in integers.
  const bool in_x = 2 * c.hom_s2 > c.hom_s12 * c.hom_s1;
  const bool in_xp = 2 * c.hom_s1 > c.hom_s12 * c.hom_s2;
  if (in_x && in_xp) {
    if (c.hom_s12 >= 2) throw InternalError("ping-pong sets X and X' intersect");
    c.region = Region::neither;
    return c;
  }
  c.region = in_x ? Region::x : (in_xp ? Region::x_prime : Region::neither);
  return c;
}

std::pair<std::size_t, bool> OrbitCache::insert(const SemiFreeModule& m, const HomProfile& profile,
                                                const std::string& name, const IsoOptions& options) {
  const SemiFreeModule mm = minimize(m);
  auto& bucket = index_[{mm.signature(), profile}];
  for (std::size_t i : bucket) {
    ++collisions_;
    if (is_quasi_isomorphic(entries_[i].module, mm, options)) return {i, false};
  }
  bucket.push_back(entries_.size());
  entries_.push_back({mm, name});
  return {entries_.size() - 1, true};
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace ptwist
