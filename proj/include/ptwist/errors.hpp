#pragma once

#include <stdexcept>
#include <string>

namespace ptwist {

// Malformed input: shape mismatches, dangling indices, algebra mismatch.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A dg-axiom (d^2 = 0, Leibniz, ...) fails on data that was required to satisfy it.
class AxiomError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated an operation's precondition (e.g. cone of a non-closed map).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad or inconsistent session parameters.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameters outside the supported regime (e.g. odd k where k must be even).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured budget (generator cap) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An invariant that holds by construction was observed broken.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ptwist
