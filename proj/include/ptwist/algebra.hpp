#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ptwist/graded.hpp"
#include "ptwist/linalg.hpp"
#include "ptwist/scalar.hpp"

namespace ptwist {

// An algebra element: coordinates in the algebra's basis.
using Element = SparseVector;

struct BasisElement {
  std::string label;
  int degree = 0;
};

struct AlgebraParams {
  std::string family;  // "pnk", "two-object", "spherified", "file", ...
  int n = 0;
  int k = 0;
  int m = 0;
  bool operator==(const AlgebraParams&) const = default;
};

/// Raw description of a finite-dimensional dg-algebra by structure constants.
struct AlgebraData {
  Field field;
  std::vector<BasisElement> basis;
  std::vector<Index> idempotents;  // basis indices of e_1..e_r
  // Nonzero products b_i·b_j.
  std::vector<std::tuple<Index, Index, Element>> products;
  // Nonzero differentials d(b_i).
  std::vector<std::pair<Index, Element>> differential;
  std::vector<Element> marked_t;  // t_1..t_r, t_i ∈ e_i A e_i
  std::optional<Element> h;
  std::optional<AlgebraParams> params;
};

/// A finite-dimensional dg-algebra with a complete set of orthogonal
/// idempotents that are themselves basis elements. Construction only checks
/// index ranges; the dg-axioms are verified by check_dg_axioms so that broken
/// inputs can still be reported on.
class DgAlgebra {
 public:
  explicit DgAlgebra(AlgebraData data);

  const AlgebraData& data() const { return data_; }
  const Field& field() const { return data_.field; }
  std::size_t dim() const { return data_.basis.size(); }
  const BasisElement& basis(Index b) const { return data_.basis[b]; }
  int degree(Index b) const { return data_.basis[b].degree; }
  std::optional<Index> find_label(const std::string& label) const;

  std::size_t idempotent_count() const { return data_.idempotents.size(); }
  Index idempotent_basis(std::size_t c) const { return data_.idempotents[c]; }
  // Index c with basis(b) == e_c, if b is an idempotent.
  std::optional<std::size_t> idempotent_of(Index b) const;
  // (l, r) with e_l·b·e_r = b, or nullopt if b is not idempotent-homogeneous.
  std::optional<std::pair<std::size_t, std::size_t>> sides(Index b) const { return sides_[b]; }
  // Basis indices spanning the degree-`degree` part of e_l A e_r.
  const std::vector<Index>& piece(std::size_t left, std::size_t right, int degree) const;
  GradedDimVector piece_dims(std::size_t left, std::size_t right) const;
  GradedDimVector dims() const;

  const Element& product(Index a, Index b) const { return mult_[a * dim() + b]; }
  Element multiply(const Element& x, const Element& y) const;
  const Element& d(Index b) const { return diff_[b]; }
  Element differential(const Element& x) const;
  bool has_zero_differential() const;

  Element unit() const;
  Element idempotent(std::size_t c) const { return basis_element(idempotent_basis(c)); }
  Element basis_element(Index b) const { return Element::unit(b, field().one()); }
  // Degree of a nonzero homogeneous element; nullopt for zero or inhomogeneous.
  std::optional<int> degree_of(const Element& x) const;
  // Coefficient of e_c in x.
  Scalar unit_coefficient(const Element& x, std::size_t c) const;
  // Inverse of λe_c + r with r in the radical of e_c A e_c; nullopt if λ = 0.
  std::optional<Element> local_inverse(const Element& x, std::size_t c) const;

  const std::vector<Element>& marked_t() const { return data_.marked_t; }
  const std::optional<Element>& h() const { return data_.h; }
  const std::optional<AlgebraParams>& params() const { return data_.params; }

  // True when the span of non-idempotent basis elements is a dg-ideal, so
  // that A → ⊕ k·e_c is a dg-algebra map. Minimal models are then unique up
  // to isomorphism and their generator degrees are invariants.
  bool is_augmented() const { return augmented_; }

  std::string format(const Element& x) const;

 private:
  AlgebraData data_;
  std::vector<Element> mult_;
  std::vector<Element> diff_;
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> sides_;
  std::map<std::tuple<std::size_t, std::size_t, int>, std::vector<Index>> pieces_;
  std::vector<std::ptrdiff_t> idempotent_index_;
  bool augmented_ = false;
};

using AlgebraPtr = std::shared_ptr<const DgAlgebra>;

// k[t]/t^{n+1}, deg t = k; marked t_1 = t, h = t.
AlgebraPtr build_pnk_algebra(int n, int k, const Field& field = Field());

// End of two P^n[k]-objects whose mutual Homs are k^m in degree nk/2, with
// dual bases b_j a_i = δ_ij t_1^n and a_i b_j = δ_ij t_2^n. Odd k is only
// accepted for m = 0, where no cross terms exist.
AlgebraPtr build_two_object_algebra(int n, int k, int m, const Field& field = Field());

struct AxiomCheck {
  std::string name;
  bool passed = true;
  std::string detail;  // first violation
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_passed() const;
  const AxiomCheck* find(const std::string& name) const;
  std::string to_string() const;
};

// Degree additivity, associativity, unit, idempotent laws, d degree 1, d² = 0, Leibniz.
AxiomReport check_dg_axioms(const DgAlgebra& a);

// x·b = (-1)^{|x||b|} b·x for every basis b. Throws StructuralError for
// inhomogeneous x; the zero element is central.
bool is_central(const DgAlgebra& a, const Element& x);

// Composition pairings e_iAe_j × e_jAe_i → (e_iAe_i)_d perfect in all
// complementary degrees. Requires zero differential.
bool check_cy_pairing(const DgAlgebra& a, int d);

}  // namespace ptwist
