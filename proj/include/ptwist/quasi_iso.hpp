#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptwist/module.hpp"

namespace ptwist {

enum class IsoVerdict { isomorphic, not_isomorphic, undetermined };

std::string to_string(IsoVerdict v);

struct IsoOptions {
  std::uint64_t seed = 1;
  int random_trials = 8;
};

struct IsoResult {
  IsoVerdict verdict = IsoVerdict::undetermined;
  // Closed degree-0 map between the minimal models with invertible scalar part.
  std::optional<ModuleMorphism> witness;
  std::string reason;

  explicit operator bool() const { return verdict == IsoVerdict::isomorphic; }
};

// Minimizes both sides and looks for a witness. Over an augmented algebra a
// mismatch of generator signatures proves non-isomorphism; otherwise a
// failed search yields "undetermined", never a false positive.
IsoResult is_quasi_isomorphic(const SemiFreeModule& m, const SemiFreeModule& n, const IsoOptions& options = {});

// True when the scalar part of f is square and invertible.
bool has_invertible_scalar_part(const ModuleMorphism& f);

// Independent check that a closed degree-0 map is a quasi-isomorphism as
// seen by the given test objects: Hom(G, cone f) must be acyclic.
bool verify_witness(const ModuleMorphism& f, const std::vector<SemiFreeModule>& tests);

}  // namespace ptwist
