#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ptwist/algebra.hpp"
#include "ptwist/serialize.hpp"
#include "ptwist/spherify.hpp"

namespace ptwist {

/// Everything that determines a run. The thread count and the output path
/// are deliberately left out of to_json(): they do not affect results.
struct SessionConfig {
  std::string algebra = "two-object:2,2,1";  // pnk:n,k | two-object:n,k,m | file:path
  std::string field = "Q";                   // Q | F_p | prime:p
  int L = 4;
  std::size_t cap = 4096;
  std::uint64_t seed = 1;
  std::string scope = "A";  // A: P-twists over A; B: spherical twists over B
  int exponent_bound = 3;
  int transition_length = 4;
  bool transitions = true;
  unsigned threads = 0;  // 0: all available cores

  // ConfigError on the first bad parameter.
  void validate() const;
  unsigned thread_count() const;
  Json to_json() const;
  static SessionConfig from_json(const Json& j);
};

AlgebraPtr build_algebra(const std::string& spec, const Field& field);

struct Session {
  SessionConfig config;
  AlgebraPtr algebra;
  std::optional<SpherificationData> spherification;

  // Builds the algebra and, for scope B or transition checks, its
  // spherification when the algebra admits one.
  static Session open(const SessionConfig& config);
};

}  // namespace ptwist
