#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptwist/quasi_iso.hpp"
#include "ptwist/spherify.hpp"
#include "ptwist/twists.hpp"

namespace ptwist {

struct Letter {
  int generator = 0;  // 0 or 1
  bool inverse = false;
  bool operator==(const Letter&) const = default;
};

/// A word over {X1, X1', X2, X2'} with X = P (P-twists) or T (spherical
/// twists). Letters act left to right: "P1 P2" sends M to P2(P1(M)).
struct TwistWord {
  char family = 'P';
  std::vector<Letter> letters;

  static TwistWord parse(const std::string& text, char default_family = 'P');
  std::string to_string() const;
  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  bool is_reduced() const;
  TwistWord inverse() const;
  TwistWord operator+(const Letter& l) const;
  bool operator==(const TwistWord& o) const { return family == o.family && letters == o.letters; }
};

// The four letters in alphabet order X1, X1', X2, X2'.
std::array<Letter, 4> alphabet();
// Nonempty reduced words of length ≤ max_length, by length then alphabet order.
std::vector<TwistWord> reduced_words(char family, int max_length);

/// Where words act: the two twists, the profile test set and the objects on
/// which words are evaluated.
struct TwistContext {
  AlgebraPtr algebra;
  char family = 'P';
  std::vector<TwistDescriptor> twists;  // X_1, X_2
  std::vector<SemiFreeModule> profile_tests;
  std::vector<std::string> profile_labels;
  std::vector<SemiFreeModule> objects;  // P_1, P_2, A or S_1, S_2, B
  std::vector<std::string> object_labels;
  std::size_t generator_cap = 4096;
  std::vector<std::string> warnings;

  HomProfile profile(const SemiFreeModule& m) const { return hom_profile(m, profile_tests, profile_labels); }
  const SemiFreeModule& object(const std::string& label) const;
};

// P-twists along the marked t_1, t_2 of a two-idempotent algebra.
TwistContext p_twist_context(AlgebraPtr a, std::size_t generator_cap = 4096);
// Spherical twists along S_i = F(P_i) over the spherified algebra.
TwistContext spherical_context(const SpherificationData& s, std::size_t generator_cap = 4096);

SemiFreeModule apply_letter(const TwistContext& ctx, const Letter& l, const SemiFreeModule& m);

struct WordResult {
  SemiFreeModule module;
  std::size_t peak_generators = 0;
};
// Throws ResourceError naming the prefix reached when a step exceeds the cap.
WordResult apply_word(const TwistContext& ctx, const TwistWord& w, const SemiFreeModule& m);

enum class Region { x, x_prime, neither };
std::string to_string(Region r);

struct Classification {
  Region region = Region::neither;
  std::size_t hom_s1 = 0;   // hom*(S_1, Y)
  std::size_t hom_s2 = 0;   // hom*(S_2, Y)
  std::size_t hom_s12 = 0;  // hom*(S_1, S_2)
  std::string warning;
};
// X: hom*(S_2,Y) > hom*(S_1,S_2)/2 · hom*(S_1,Y); X′ symmetric.
Classification classify(const SemiFreeModule& y, const SemiFreeModule& s1, const SemiFreeModule& s2);

/// Orbit elements keyed by (generator signature, profile); a key collision
/// is merged only after an explicit quasi-isomorphism witness.
class OrbitCache {
 public:
  struct Entry {
    SemiFreeModule module;
    std::string name;  // first word/object that produced it
  };
  // Index of an existing isomorphic entry, or of the newly inserted one.
  std::pair<std::size_t, bool> insert(const SemiFreeModule& m, const HomProfile& profile, const std::string& name,
                                      const IsoOptions& options);
  const Entry& at(std::size_t i) const { return entries_[i]; }
  std::size_t size() const { return entries_.size(); }
  std::size_t collisions() const { return collisions_; }

 private:
  std::map<std::pair<GeneratorSignature, HomProfile>, std::vector<std::size_t>> index_;
  std::vector<Entry> entries_;
  std::size_t collisions_ = 0;
};

// Runs fn(i) for i in [0, n) on up to `threads` workers. Exceptions are
// rethrown on the calling thread (the first one by index).
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace ptwist
