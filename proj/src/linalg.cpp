#include "ptwist/linalg.hpp"

#include <algorithm>

#include "ptwist/errors.hpp"

namespace ptwist {

SparseVector SparseVector::from_entries(std::vector<Entry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.first < b.first; });
  SparseVector v;
  for (auto& [i, s] : entries) {
    if (!v.entries_.empty() && v.entries_.back().first == i)
      v.entries_.back().second += s;
    else
      v.entries_.emplace_back(i, std::move(s));
  }
  std::erase_if(v.entries_, [](const Entry& e) { return e.second.is_zero(); });
  return v;
}

Scalar SparseVector::get(Index i, const Scalar& zero) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, Index k) { return e.first < k; });
  if (it != entries_.end() && it->first == i) return it->second;
  return zero;
}

void SparseVector::add_scaled(const SparseVector& other, const Scalar& c) {
  if (c.is_zero() || other.empty()) return;
  std::vector<Entry> out;
  out.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == entries_.end() || b->first < a->first) {
      out.emplace_back(b->first, b->second * c);
      ++b;
    } else {
      Scalar s = a->second + b->second * c;
      if (!s.is_zero()) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(out);
}

SparseVector SparseVector::scaled(const Scalar& c) const {
  SparseVector v;
  if (c.is_zero()) return v;
  v.entries_.reserve(entries_.size());
  for (const auto& [i, s] : entries_) v.entries_.emplace_back(i, s * c);
  return v;
}

void SparseVector::push_back(Index i, Scalar v) {
  if (!entries_.empty() && entries_.back().first >= i)
    throw InternalError("SparseVector::push_back out of order");
  if (!v.is_zero()) entries_.emplace_back(i, std::move(v));
}

void SparseMatrix::set_column(Index j, SparseVector v) {
  if (!v.empty() && v.last_index() >= rows_) throw StructuralError("matrix column entry out of range");
  columns_.at(j) = std::move(v);
}

bool SparseMatrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const SparseVector& c) { return c.empty(); });
}

SparseMatrix SparseMatrix::identity(std::size_t n, const Scalar& one) {
  SparseMatrix m(n, n);
  for (Index i = 0; i < n; ++i) m.columns_[i] = SparseVector::unit(i, one);
  return m;
}

SparseVector SparseMatrix::apply(const SparseVector& x) const {
  SparseVector y;
  for (const auto& [j, c] : x) {
    if (j >= cols()) throw StructuralError("vector length exceeds matrix columns");
    y.add_scaled(columns_[j], c);
  }
  return y;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
  if (cols() != o.rows()) throw StructuralError("matrix product shape mismatch");
  SparseMatrix r(rows_, o.cols());
  for (Index j = 0; j < o.cols(); ++j) r.columns_[j] = apply(o.columns_[j]);
  return r;
}

ColumnReduction::ColumnReduction(const SparseMatrix& m, const Field& field)
    : ColumnReduction(m, field.one(), true) {}

ColumnReduction::ColumnReduction(const SparseMatrix& m, Scalar one, bool track_kernel)
    : one_(std::move(one)), tracked_(track_kernel), pivot_of_row_(m.rows(), -1) {
  for (Index j = 0; j < m.cols(); ++j) {
    SparseVector v = m.column(j);
    SparseVector combo;
    if (tracked_) combo = SparseVector::unit(j, one_);
    while (!v.empty()) {
      auto p = pivot_of_row_[v.last_index()];
      if (p < 0) break;
      Scalar c = -(v.last_value() / reduced_[p].last_value());
      v.add_scaled(reduced_[p], c);
      if (tracked_) combo.add_scaled(combination_[p], c);
    }
    if (v.empty()) {
      if (tracked_) kernel_.push_back(std::move(combo));
      continue;
    }
    pivot_of_row_[v.last_index()] = static_cast<std::ptrdiff_t>(reduced_.size());
    reduced_.push_back(std::move(v));
    if (tracked_) combination_.push_back(std::move(combo));
    ++rank_;
  }
}

std::optional<SparseVector> ColumnReduction::solve(const SparseVector& b) const {
  if (!tracked_) throw InternalError("ColumnReduction::solve without tracking");
  SparseVector r = b;
  SparseVector x;
  while (!r.empty()) {
    if (r.last_index() >= pivot_of_row_.size()) return std::nullopt;
    auto p = pivot_of_row_[r.last_index()];
    if (p < 0) return std::nullopt;
    Scalar c = r.last_value() / reduced_[p].last_value();
    r.add_scaled(reduced_[p], -c);
    x.add_scaled(combination_[p], c);
  }
  return x;
}

bool ColumnReduction::in_image(const SparseVector& b) const {
  SparseVector r = b;
  while (!r.empty()) {
    if (r.last_index() >= pivot_of_row_.size()) return false;
    auto p = pivot_of_row_[r.last_index()];
    if (p < 0) return false;
    r.add_scaled(reduced_[p], -(r.last_value() / reduced_[p].last_value()));
  }
  return true;
}

std::size_t rank(const SparseMatrix& m) { return ColumnReduction(m, Scalar(), false).rank(); }

}  // namespace ptwist
