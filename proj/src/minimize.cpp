#include "ptwist/minimize.hpp"

#include <map>
#include <set>

#include "ptwist/errors.hpp"

namespace ptwist {

namespace {

bool cancellable(const SemiFreeModule& m, Index i, Index j, const Element& x) {
  return i != j && m.idempotent(i) == m.idempotent(j) && m.degree(i) == m.degree(j) + 1 &&
         !m.alg().unit_coefficient(x, m.idempotent(i)).is_zero();
}

}  // namespace

bool is_minimal(const SemiFreeModule& m) {
  for (Index j = 0; j < m.size(); ++j)
    for (const auto& [i, x] : m.delta().column(j))
      if (cancellable(m, i, j, x)) return false;
  return true;
}

SemiFreeModule minimize(const SemiFreeModule& m) {
  if (is_minimal(m)) return m;
  const DgAlgebra& a = m.alg();
  const std::size_t n = m.size();
  const Scalar one = a.field().one();
  std::vector<std::map<Index, Element>> cols(n);
  std::vector<std::set<Index>> rows(n);
  for (Index j = 0; j < n; ++j)
    for (const auto& [i, x] : m.delta().column(j)) {
      cols[j].emplace(i, x);
      rows[i].insert(j);
    }
  std::vector<bool> alive(n, true);

  auto find_pivot = [&](Index j) -> std::optional<Index> {
    for (auto it = cols[j].rbegin(); it != cols[j].rend(); ++it)
      if (cancellable(m, it->first, j, it->second)) return it->first;
    return std::nullopt;
  };

  auto cancel = [&](Index i, Index j) {
    const Element u = cols[j].at(i);
    const Element uinv = *a.local_inverse(u, m.idempotent(i));
    // Snapshot of column j (minus the pivot) and row i (minus column j).
    std::vector<std::pair<Index, Element>> left;
    for (const auto& [k, x] : cols[j])
      if (k != i) left.emplace_back(k, a.multiply(x, uinv));
    std::vector<std::pair<Index, Element>> right;
    for (Index l : rows[i])
      if (l != j) right.emplace_back(l, cols[l].at(i));
    for (const auto& [l, y] : right)
      for (const auto& [k, xu] : left) {
        Element prod = a.multiply(xu, y);
        if (prod.empty()) continue;
        auto [it, inserted] = cols[l].try_emplace(k);
        it->second.add_scaled(prod, -one);
        if (it->second.empty()) {
          cols[l].erase(it);
          rows[k].erase(l);
        } else if (inserted) {
          rows[k].insert(l);
        }
      }
    // Drop generators i and j.
    for (Index g : {i, j}) {
      for (const auto& [k, x] : cols[g]) rows[k].erase(g);
      for (Index l : rows[g]) cols[l].erase(g);
      cols[g].clear();
      rows[g].clear();
      alive[g] = false;
    }
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (Index j = 0; j < n; ++j) {
      if (!alive[j]) continue;
      if (auto i = find_pivot(j)) {
        cancel(*i, j);
        changed = true;
      }
    }
  }

  std::vector<Index> keep;
  std::vector<Index> new_index(n, 0);
  for (Index g = 0; g < n; ++g)
    if (alive[g]) {
      new_index[g] = keep.size();
      keep.push_back(g);
    }
  std::vector<Generator> gens;
  gens.reserve(keep.size());
  for (Index g : keep) gens.push_back(m.generator(g));
  AlgebraMatrix d(keep.size(), keep.size());
  for (Index g : keep)
    for (auto& [k, x] : cols[g]) d.append(new_index[k], new_index[g], std::move(x));
  return SemiFreeModule(m.algebra(), std::move(gens), std::move(d));
}

}  // namespace ptwist
