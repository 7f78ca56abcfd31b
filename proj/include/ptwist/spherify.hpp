#pragma once

#include <vector>

#include "ptwist/algebra.hpp"
#include "ptwist/module.hpp"
#include "ptwist/quasi_iso.hpp"

namespace ptwist {

/// B = A[ε]/ε² with deg ε = k - 1 and d_B(a_1 + ε a_2) = d a_1 + h a_2 - ε d a_2.
/// Basis index b of A is b in B; ε·b is dim A + b.
struct SpherificationData {
  AlgebraPtr base;
  AlgebraPtr extended;
  int k = 0;
  Element h;
  AxiomReport axioms;

  Element embed(const Element& a) const { return a; }
  Element epsilon_times(const Element& a) const;
  // Split a B-element into its A-part and ε-part.
  std::pair<Element, Element> split(const Element& b) const;
};

// Requires a marked central h of even degree k.
SpherificationData build_spherification_algebra(AlgebraPtr a);

// B ⊗_A M: same generators, entries pushed into B.
SemiFreeModule apply_F(const SpherificationData& s, const SemiFreeModule& m);
// Restriction to A: each generator x of degree s gives x and xε of degree
// s + k - 1, joined by (-1)^s h.
SemiFreeModule apply_R(const SpherificationData& s, const SemiFreeModule& n);

struct CotwistResult {
  SemiFreeModule object;  // minimal model of cone(M → RF M)[-1]
  IsoResult comparison;   // against M[-k]
  bool alpha_nonzero = false;
};
CotwistResult cotwist_object(const SpherificationData& s, const SemiFreeModule& m, const IsoOptions& options = {});

// End profile {0:1, d:1} and a perfect composition pairing H^0 × H^d → H^d.
bool check_spherical(const SemiFreeModule& n, int d);

// The left adjoint of F is R[k-1] (Hom_A(B, A) ≅ B[k-1]); checked on the pair
// (N, M) as H* Hom_A(R(N)[k-1], M) = H* Hom_B(N, F M).
bool check_left_adjoint_instance(const SpherificationData& s, const SemiFreeModule& n, const SemiFreeModule& m);

}  // namespace ptwist
