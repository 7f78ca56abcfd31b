#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptwist/pingpong.hpp"
#include "ptwist/serialize.hpp"
#include "ptwist/session.hpp"

namespace ptwist {

inline constexpr const char* kToolVersion = "ptwist 0.1.0";
inline constexpr const char* kCertificateSchema = "ptwist-certificate/1";

// Exit statuses shared by the CLI and replay.
enum ExitCode : int { exit_ok = 0, exit_config = 1, exit_failed = 2, exit_undetermined = 3 };

/// One word evaluated on one test object. "distinguished" records carry
/// both profiles; the inequality is explicit in `detail`.
struct WordRecord {
  std::string word;
  std::string object;
  HomProfile before;
  std::optional<HomProfile> after;
  std::string verdict;  // distinguished | undetermined | budget-exceeded
  std::string detail;
  std::size_t peak_generators = 0;
};

/// A named check: an isomorphism, an exact equality or a ping-pong landing.
struct CheckRecord {
  std::string name;
  std::string word;
  std::string object;
  std::string verdict;  // witnessed | exact | passed | failed | undetermined
  std::string detail;
  std::optional<Json> witness;
};

struct Certificate {
  std::string mode;  // free | abelian | relations-search
  SessionConfig config;
  Json algebra;  // params, field, graded dimension
  std::vector<std::string> warnings;
  std::vector<WordRecord> words;
  std::vector<CheckRecord> checks;
  std::vector<CheckRecord> transitions;
  std::vector<std::string> relations;  // relations-search only
  std::vector<std::string> undetermined;
  std::vector<std::string> failures;
  std::string verdict;  // certified | failed | undetermined | non-conclusive | completed

  int exit_code() const;
  Json to_json() const;
  std::string dump() const { return to_json().dump(2) + "\n"; }
  std::string summary() const;
};

Json witness_to_json(const ModuleMorphism& f, const std::vector<std::string>& verified_against);

// Refuses orthogonal input (ConfigError). For every nonempty reduced word of
// length ≤ L, the first test object whose profile changes is the witness.
Certificate certify_no_relations(const Session& s);
// Refuses non-orthogonal input (ConfigError).
Certificate certify_abelian(const Session& s);
// Words ≤ L acting on every test object by a witnessed isomorphism.
Certificate search_relations(const Session& s);

struct ReplayResult {
  bool records_ok = true;   // every recorded profile recomputes exactly
  bool identical = false;   // regenerated certificate is byte-identical
  std::vector<std::string> mismatches;
  Certificate regenerated;
  int exit_code() const;
};
// Re-verifies the recorded words (|w| ≤ max_length when given) and
// regenerates the certificate from its config block.
ReplayResult replay_certificate(const std::string& text, std::optional<int> max_length = std::nullopt,
                                unsigned threads = 0);

}  // namespace ptwist
