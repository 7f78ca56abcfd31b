#pragma once

#include "ptwist/module.hpp"

namespace ptwist {

// Cancels pairs of generators joined by an invertible degree-0 entry,
// δ'_kl = δ_kl - δ_kj u^{-1} δ_il for the pivot u = δ_ij, until none is
// left. Columns are scanned in increasing order and the lowest available
// row is chosen, so the output depends only on the input.
SemiFreeModule minimize(const SemiFreeModule& m);

// True when no entry of δ has an invertible scalar part.
bool is_minimal(const SemiFreeModule& m);

}  // namespace ptwist
