#pragma once

// Seeded generators and independent oracles shared by the test binaries.

#include <random>
#include <vector>

#include "ptwist/hom.hpp"
#include "ptwist/module.hpp"

namespace ptwist::testing {

inline Scalar small_scalar(const Field& f, std::mt19937_64& rng, bool nonzero = false) {
  for (;;) {
    const long long v = static_cast<long long>(rng() % 7) - 3;
    if (v != 0 || !nonzero) return f.from_int(v);
  }
}

// Dense Gaussian elimination over the field, written without the library's
// reduction code.
inline std::size_t dense_rank(std::vector<std::vector<Scalar>> rows, const Field& f) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    const Scalar inv = rows[rank][c].inverse();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c].is_zero()) continue;
      const Scalar s = rows[r][c] * inv;
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= s * rows[rank][k];
    }
    ++rank;
  }
  (void)f;
  return rank;
}

// A random closed degree-0 map X → Y: a random cocycle class plus a random
// coboundary (which is what puts invertible entries into cones).
inline ModuleMorphism random_closed_map(const SemiFreeModule& x, const SemiFreeModule& y, std::mt19937_64& rng) {
  const Field& f = x.alg().field();
  const HomComplex h(x, y, {-1, 0, 1});
  SparseVector v;
  for (const auto& c : cohomology_basis(h, 0)) v.add_scaled(c, small_scalar(f, rng));
  if (h.dim(-1) > 0) {
    std::vector<SparseVector::Entry> g;
    for (Index i = 0; i < h.dim(-1); ++i)
      if (rng() % 2) g.emplace_back(i, small_scalar(f, rng));
    v.add_scaled(h.differential().block(-1).apply(SparseVector::from_entries(std::move(g))), f.one());
  }
  return h.morphism(0, v);
}

inline SemiFreeModule random_free_sum(AlgebraPtr a, std::mt19937_64& rng, int span) {
  SemiFreeModule m = free_module(a, rng() % a->idempotent_count(), static_cast<int>(rng() % (2 * span + 1)) - span);
  if (rng() % 3 == 0)
    m = direct_sum(m, free_module(a, rng() % a->idempotent_count(), static_cast<int>(rng() % (2 * span + 1)) - span));
  return m;
}

// Iterated cones of random closed maps, with the occasional contractible
// cone(id) summand, capped at max_generators.
inline SemiFreeModule random_module(AlgebraPtr a, std::mt19937_64& rng, int steps = 3, std::size_t max_generators = 12) {
  int span = 0;
  for (Index b = 0; b < a->dim(); ++b) span = std::max(span, std::abs(a->degree(b)));
  SemiFreeModule m = random_free_sum(a, rng, span);
  for (int s = 0; s < steps; ++s) {
    const SemiFreeModule x = random_free_sum(a, rng, span);
    SemiFreeModule next = m;
    switch (rng() % 4) {
      case 0:
        next = cone(random_closed_map(x, m, rng));
        break;
      case 1:
        next = cone(random_closed_map(m, x, rng));
        break;
      case 2:
        next = direct_sum(m, cone(identity_morphism(x)));
        break;
      default:
        next = shift(cone(random_closed_map(x, m, rng)), static_cast<int>(rng() % 3) - 1);
    }
    if (next.size() > max_generators) break;
    m = next;
  }
  return m;
}

}  // namespace ptwist::testing
