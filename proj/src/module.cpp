#include "ptwist/module.hpp"

#include <algorithm>
#include <map>

#include "ptwist/errors.hpp"

namespace ptwist {

namespace {

Scalar sign_scalar(const Field& f, long long e) { return e % 2 == 0 ? f.one() : -f.one(); }

void check_entry(const DgAlgebra& a, const Element& x, std::size_t left, std::size_t right, int degree,
                 const std::string& where) {
  for (const auto& [b, s] : x) {
    if (b >= a.dim()) throw StructuralError(where + ": basis index out of range");
    auto sides = a.sides(b);
    if (!sides || sides->first != left || sides->second != right)
      throw StructuralError(where + ": entry " + a.format(x) + " is not in e_" + std::to_string(left + 1) + " A e_" +
                            std::to_string(right + 1));
    if (a.degree(b) != degree)
      throw StructuralError(where + ": entry " + a.format(x) + " has degree " + std::to_string(a.degree(b)) +
                            ", expected " + std::to_string(degree));
  }
}

// (X·Y) for algebra matrices X (r×m) and Y (m×c).
AlgebraMatrix multiply(const DgAlgebra& a, const AlgebraMatrix& x, const AlgebraMatrix& y) {
  AlgebraMatrix out(x.rows(), y.cols());
  const Scalar one = a.field().one();
  for (Index j = 0; j < y.cols(); ++j) {
    std::map<Index, Element> acc;
    for (const auto& [k, ykj] : y.column(j))
      for (const auto& [i, xik] : x.column(k)) acc[i].add_scaled(a.multiply(xik, ykj), one);
    for (auto& [i, e] : acc)
      if (!e.empty()) out.append(i, j, std::move(e));
  }
  return out;
}

}  // namespace

Element AlgebraMatrix::get(Index i, Index j) const {
  const Column& c = columns_[j];
  auto it = std::lower_bound(c.begin(), c.end(), i, [](const Entry& e, Index r) { return e.first < r; });
  if (it != c.end() && it->first == i) return it->second;
  return Element();
}

void AlgebraMatrix::set(Index i, Index j, Element x) {
  if (i >= rows_) throw StructuralError("matrix row out of range");
  Column& c = columns_.at(j);
  auto it = std::lower_bound(c.begin(), c.end(), i, [](const Entry& e, Index r) { return e.first < r; });
  if (it != c.end() && it->first == i) {
    if (x.empty())
      c.erase(it);
    else
      it->second = std::move(x);
  } else if (!x.empty()) {
    c.insert(it, {i, std::move(x)});
  }
}

void AlgebraMatrix::add(Index i, Index j, const Element& x, const Scalar& s) {
  if (x.empty() || s.is_zero()) return;
  Element cur = get(i, j);
  cur.add_scaled(x, s);
  set(i, j, std::move(cur));
}

void AlgebraMatrix::append(Index i, Index j, Element x) {
  if (x.empty()) return;
  Column& c = columns_.at(j);
  if (i >= rows_) throw StructuralError("matrix row out of range");
  if (!c.empty() && c.back().first >= i) {
    set(i, j, std::move(x));
    return;
  }
  c.emplace_back(i, std::move(x));
}

bool AlgebraMatrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const Column& c) { return c.empty(); });
}

std::size_t AlgebraMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

std::vector<std::vector<Index>> AlgebraMatrix::row_support() const {
  std::vector<std::vector<Index>> rows(rows_);
  for (Index j = 0; j < columns_.size(); ++j)
    for (const auto& [i, e] : columns_[j]) rows[i].push_back(j);
  return rows;
}

SemiFreeModule::SemiFreeModule(AlgebraPtr algebra, std::vector<Generator> generators, AlgebraMatrix delta) {
  if (!algebra) throw StructuralError("module without algebra");
  const std::size_t n = generators.size();
  if (delta.rows() != n || delta.cols() != n)
    throw StructuralError("differential matrix is " + std::to_string(delta.rows()) + "x" +
                          std::to_string(delta.cols()) + " for " + std::to_string(n) + " generators");
  for (const auto& g : generators)
    if (g.idempotent >= algebra->idempotent_count())
      throw StructuralError("generator " + g.label + " has idempotent index out of range");
  for (Index j = 0; j < n; ++j)
    for (const auto& [i, x] : delta.column(j))
      check_entry(*algebra, x, generators[i].idempotent, generators[j].idempotent,
                  generators[j].degree + 1 - generators[i].degree,
                  "differential entry (" + generators[i].label + ", " + generators[j].label + ")");
  auto rows = delta.row_support();
  data_ = std::make_shared<const Data>(Data{std::move(algebra), std::move(generators), std::move(delta), std::move(rows)});
}

GeneratorSignature SemiFreeModule::signature() const {
  GeneratorSignature s;
  s.reserve(size());
  for (const auto& g : generators()) s.emplace_back(g.idempotent, g.degree);
  std::sort(s.begin(), s.end());
  return s;
}

void SemiFreeModule::validate() const {
  const DgAlgebra& a = alg();
  const std::size_t n = size();
  const Scalar one = a.field().one();
  for (Index k = 0; k < n; ++k) {
    std::map<Index, Element> acc;
    for (const auto& [i, dik] : delta().column(k)) {
      for (const auto& [l, dli] : delta().column(i)) acc[l].add_scaled(a.multiply(dli, dik), one);
      acc[i].add_scaled(a.differential(dik), sign_scalar(a.field(), degree(i)));
    }
    for (const auto& [l, x] : acc)
      if (!x.empty())
        throw AxiomError("D^2 != 0: coefficient of " + generator(l).label + " in D^2(" + generator(k).label +
                         ") is " + a.format(x));
  }
  // The scalar part must be nilpotent: its support graph has no cycle.
  std::vector<std::vector<Index>> succ(n);
  for (Index j = 0; j < n; ++j)
    for (const auto& [i, x] : delta().column(j))
      if (!a.unit_coefficient(x, idempotent(i)).is_zero() && idempotent(i) == idempotent(j)) succ[j].push_back(i);
  std::vector<int> state(n, 0);
  for (Index start = 0; start < n; ++start) {
    if (state[start]) continue;
    std::vector<std::pair<Index, std::size_t>> stack{{start, 0}};
    state[start] = 1;
    while (!stack.empty()) {
      auto& [v, pos] = stack.back();
      if (pos < succ[v].size()) {
        Index w = succ[v][pos++];
        if (state[w] == 1) throw AxiomError("scalar part of the differential is not nilpotent");
        if (state[w] == 0) {
          state[w] = 1;
          stack.emplace_back(w, 0);
        }
      } else {
        state[v] = 2;
        stack.pop_back();
      }
    }
  }
}

bool SemiFreeModule::is_valid() const {
  try {
    validate();
    return true;
  } catch (const AxiomError&) {
    return false;
  }
}

bool SemiFreeModule::operator==(const SemiFreeModule& o) const {
  return algebra() == o.algebra() && generators() == o.generators() && delta() == o.delta();
}

SemiFreeModule free_module(AlgebraPtr a, std::size_t c, int degree, std::string label) {
  if (c >= a->idempotent_count()) throw StructuralError("idempotent index out of range");
  if (label.empty()) label = "P" + std::to_string(c + 1);
  return SemiFreeModule(a, {Generator{std::move(label), c, degree}}, AlgebraMatrix(1, 1));
}

SemiFreeModule algebra_module(AlgebraPtr a) {
  std::vector<Generator> gens;
  for (std::size_t c = 0; c < a->idempotent_count(); ++c) gens.push_back({"P" + std::to_string(c + 1), c, 0});
  const std::size_t n = gens.size();
  return SemiFreeModule(a, std::move(gens), AlgebraMatrix(n, n));
}

SemiFreeModule zero_module(AlgebraPtr a) { return SemiFreeModule(a, {}, AlgebraMatrix(0, 0)); }

SemiFreeModule shift(const SemiFreeModule& m, int j) {
  if (j == 0) return m;
  std::vector<Generator> gens = m.generators();
  for (auto& g : gens) g.degree -= j;
  AlgebraMatrix d = m.delta();
  if (j % 2 != 0) {
    AlgebraMatrix neg(d.rows(), d.cols());
    const Scalar minus = -m.alg().field().one();
    for (Index c = 0; c < d.cols(); ++c)
      for (const auto& [i, x] : d.column(c)) neg.append(i, c, x.scaled(minus));
    d = std::move(neg);
  }
  return SemiFreeModule(m.algebra(), std::move(gens), std::move(d));
}

SemiFreeModule direct_sum(const SemiFreeModule& m, const SemiFreeModule& n) {
  if (m.algebra() != n.algebra()) throw StructuralError("direct sum of modules over different algebras");
  std::vector<Generator> gens = m.generators();
  gens.insert(gens.end(), n.generators().begin(), n.generators().end());
  const std::size_t a = m.size(), total = gens.size();
  AlgebraMatrix d(total, total);
  for (Index j = 0; j < a; ++j)
    for (const auto& [i, x] : m.delta().column(j)) d.append(i, j, x);
  for (Index j = 0; j < n.size(); ++j)
    for (const auto& [i, x] : n.delta().column(j)) d.append(a + i, a + j, x);
  return SemiFreeModule(m.algebra(), std::move(gens), std::move(d));
}

ModuleMorphism::ModuleMorphism(SemiFreeModule source, SemiFreeModule target, int degree, AlgebraMatrix entries)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree), entries_(std::move(entries)) {
  if (source_.algebra() != target_.algebra()) throw StructuralError("morphism between modules over different algebras");
  if (entries_.rows() != target_.size() || entries_.cols() != source_.size())
    throw StructuralError("morphism matrix shape does not match the modules");
  for (Index j = 0; j < source_.size(); ++j)
    for (const auto& [i, x] : entries_.column(j))
      check_entry(source_.alg(), x, target_.idempotent(i), source_.idempotent(j),
                  source_.degree(j) + degree_ - target_.degree(i),
                  "morphism entry (" + target_.generator(i).label + ", " + source_.generator(j).label + ")");
  closed_ = differential().is_zero();
}

AlgebraMatrix ModuleMorphism::differential() const {
  const DgAlgebra& a = source_.alg();
  const Field& f = a.field();
  AlgebraMatrix out = multiply(a, target_.delta(), entries_);
  AlgebraMatrix right = multiply(a, entries_, source_.delta());
  const Scalar minus = -sign_scalar(f, degree_);
  for (Index j = 0; j < right.cols(); ++j)
    for (const auto& [i, x] : right.column(j)) out.add(i, j, x, minus);
  if (!a.has_zero_differential())
    for (Index j = 0; j < entries_.cols(); ++j)
      for (const auto& [i, x] : entries_.column(j))
        out.add(i, j, a.differential(x), sign_scalar(f, target_.degree(i)));
  return out;
}

ModuleMorphism identity_morphism(const SemiFreeModule& m) {
  AlgebraMatrix e(m.size(), m.size());
  for (Index i = 0; i < m.size(); ++i) e.append(i, i, m.alg().idempotent(m.idempotent(i)));
  return ModuleMorphism(m, m, 0, std::move(e));
}

ModuleMorphism zero_morphism(const SemiFreeModule& m, const SemiFreeModule& n, int degree) {
  return ModuleMorphism(m, n, degree, AlgebraMatrix(n.size(), m.size()));
}

ModuleMorphism compose(const ModuleMorphism& f, const ModuleMorphism& g) {
  if (!(f.source() == g.target())) throw StructuralError("compose: source of f is not the target of g");
  return ModuleMorphism(g.source(), f.target(), f.degree() + g.degree(),
                        multiply(f.source().alg(), f.entries(), g.entries()));
}

SparseMatrix scalar_part(const ModuleMorphism& f) {
  if (f.degree() != 0) throw PreconditionError("scalar part of a morphism of nonzero degree");
  const DgAlgebra& a = f.source().alg();
  SparseMatrix s(f.target().size(), f.source().size());
  for (Index j = 0; j < f.source().size(); ++j) {
    SparseVector col;
    for (const auto& [i, x] : f.entries().column(j))
      if (f.target().idempotent(i) == f.source().idempotent(j))
        col.push_back(i, a.unit_coefficient(x, f.source().idempotent(j)));
    s.set_column(j, std::move(col));
  }
  return s;
}

SemiFreeModule cone(const ModuleMorphism& f) {
  if (f.degree() != 0) throw PreconditionError("cone of a morphism of degree " + std::to_string(f.degree()));
  if (!f.is_closed()) {
    const AlgebraMatrix r = f.differential();
    std::string detail;
    for (Index j = 0; j < r.cols() && detail.empty(); ++j)
      if (!r.column(j).empty()) {
        Index i = r.column(j).front().first;
        detail = " (D(f) has entry " + f.source().alg().format(r.column(j).front().second) + " at (" +
                 f.target().generator(i).label + ", " + f.source().generator(j).label + "))";
      }
    throw PreconditionError("cone of a morphism that is not closed" + detail);
  }
  const SemiFreeModule& m = f.source();
  const SemiFreeModule& n = f.target();
  std::vector<Generator> gens = n.generators();
  for (const auto& g : m.generators()) gens.push_back({g.label + "'", g.idempotent, g.degree - 1});
  const std::size_t b = n.size(), total = gens.size();
  AlgebraMatrix d(total, total);
  const Scalar minus = -m.alg().field().one();
  for (Index j = 0; j < b; ++j)
    for (const auto& [i, x] : n.delta().column(j)) d.append(i, j, x);
  for (Index j = 0; j < m.size(); ++j) {
    for (const auto& [i, x] : f.entries().column(j)) d.append(i, b + j, x);
    for (const auto& [i, x] : m.delta().column(j)) d.append(b + i, b + j, x.scaled(minus));
  }
  return SemiFreeModule(m.algebra(), std::move(gens), std::move(d));
}

}  // namespace ptwist
