#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptwist/hom.hpp"
#include "ptwist/module.hpp"

namespace ptwist {

/// Graded dimensions of H* Hom•(G, M) for each test object G.
struct HomProfile {
  std::vector<std::string> labels;
  std::vector<GradedDimVector> dims;

  std::size_t total(std::size_t i) const { return dims[i].total(); }
  HomProfile shifted(int j) const;
  std::string to_string() const;
  bool operator==(const HomProfile& o) const { return dims == o.dims; }
  auto operator<=>(const HomProfile& o) const { return dims <=> o.dims; }
};

HomProfile hom_profile(const SemiFreeModule& m, const std::vector<SemiFreeModule>& tests,
                       const std::vector<std::string>& labels = {});

/// A finite complex of vector spaces: basis element α has degree degrees[α],
/// and column α of `differential` is d(basis α).
struct FieldComplex {
  std::vector<int> degrees;
  SparseMatrix differential;
};

// Global basis of a Hom complex, degree by degree in increasing order.
FieldComplex flatten(const HomComplex& h);
// Dual complex: w_α of degree -p_α, d w_α = -Σ_β (-1)^{p_β} D_{αβ} w_β.
FieldComplex dual(const FieldComplex& v);
// V ⊗ P, generator (α, r) at index α·|P| + r, with
// D(v ⊗ z) = dv ⊗ z + (-1)^{|v|} v ⊗ Dz.
SemiFreeModule tensor(const FieldComplex& v, const SemiFreeModule& p);

// Hom•(P, X) ⊗ P → X, v ⊗ z ↦ v(z).
ModuleMorphism ev_map(const SemiFreeModule& p, const SemiFreeModule& x);
// X → Hom•(X, S)^∨ ⊗ S, x ↦ Σ_α w_α ⊗ v_α(x).
ModuleMorphism coev_map(const SemiFreeModule& x, const SemiFreeModule& s);

// minimize(cone(ev)).
SemiFreeModule spherical_twist(const SemiFreeModule& s, const SemiFreeModule& x);
// minimize(cone(coev)[-1]).
SemiFreeModule spherical_untwist(const SemiFreeModule& s, const SemiFreeModule& x);

// The degree-|t| endomorphism of a one-generator module P given by t ∈ e_c A e_c.
ModuleMorphism element_endomorphism(const SemiFreeModule& p, const Element& t);

// P-twist along a closed endomorphism t of P: the cone of the map
// cone(H) → X induced by ev, with H = t ⊗ id - id ⊗ t on Hom•(P,X) ⊗ P.
SemiFreeModule p_twist(const SemiFreeModule& p, const ModuleMorphism& t, const SemiFreeModule& x);
// Inverse by the dual double cone built from coev and the transpose of H.
SemiFreeModule p_untwist(const SemiFreeModule& p, const ModuleMorphism& t, const SemiFreeModule& x);

// End profile {0:1, k:1, ..., nk:1} with t^n nonzero in cohomology, and a
// perfect pairing H^i × H^{nk-i} → H^{nk}.
struct PnkCheck {
  bool passed = false;
  std::string detail;
};
PnkCheck check_pnk_object(const SemiFreeModule& p, const ModuleMorphism& t, int n, int k);

struct TwistDescriptor {
  enum class Kind { spherical, p_twist };
  Kind kind = Kind::spherical;
  SemiFreeModule object;
  std::optional<ModuleMorphism> t;  // for p-twists
  int exponent = 1;                 // nonzero
};

TwistDescriptor spherical_descriptor(const SemiFreeModule& s, int exponent = 1);
TwistDescriptor p_twist_descriptor(const SemiFreeModule& p, const Element& t, int exponent = 1);

SemiFreeModule apply_twist(const TwistDescriptor& d, const SemiFreeModule& x);

// Warning text for parameter choices where twists may coincide, or empty.
std::string degenerate_parameter_warning(const DgAlgebra& a);

}  // namespace ptwist
