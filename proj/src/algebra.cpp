#include "ptwist/algebra.hpp"

#include <sstream>

#include "ptwist/errors.hpp"

namespace ptwist {

namespace {

int sign(long long exponent) { return exponent % 2 == 0 ? 1 : -1; }

Scalar signed_one(const Field& f, int s) { return s > 0 ? f.one() : -f.one(); }

void check_element(const Element& x, std::size_t dim, const std::string& what) {
  if (!x.empty() && x.last_index() >= dim) throw StructuralError(what + " refers to a basis index out of range");
}

}  // namespace

DgAlgebra::DgAlgebra(AlgebraData data) : data_(std::move(data)) {
  const std::size_t n = dim();
  if (data_.idempotents.empty()) throw StructuralError("algebra needs at least one idempotent");
  idempotent_index_.assign(n, -1);
  for (std::size_t c = 0; c < data_.idempotents.size(); ++c) {
    Index b = data_.idempotents[c];
    if (b >= n) throw StructuralError("idempotent index out of range");
    if (idempotent_index_[b] >= 0) throw StructuralError("idempotent listed twice");
    idempotent_index_[b] = static_cast<std::ptrdiff_t>(c);
  }
  mult_.assign(n * n, Element());
  diff_.assign(n, Element());
  for (auto& [a, b, x] : data_.products) {
    if (a >= n || b >= n) throw StructuralError("product index out of range");
    check_element(x, n, "product");
    mult_[a * n + b] = x;
  }
  for (auto& [a, x] : data_.differential) {
    if (a >= n) throw StructuralError("differential index out of range");
    check_element(x, n, "differential");
    diff_[a] = x;
  }
  for (const auto& t : data_.marked_t) check_element(t, n, "marked element");
  if (data_.h) check_element(*data_.h, n, "marked h");

  // Idempotent decomposition of each basis element.
  sides_.assign(n, std::nullopt);
  const std::size_t r = idempotent_count();
  for (Index b = 0; b < n; ++b) {
    const Element eb = basis_element(b);
    std::optional<std::size_t> left, right;
    bool ok = true;
    for (std::size_t c = 0; c < r && ok; ++c) {
      const Element& le = product(data_.idempotents[c], b);
      if (le == eb) {
        if (left) ok = false;
        left = c;
      } else if (!le.empty()) {
        ok = false;
      }
      const Element& re = product(b, data_.idempotents[c]);
      if (re == eb) {
        if (right) ok = false;
        right = c;
      } else if (!re.empty()) {
        ok = false;
      }
    }
    if (ok && left && right) {
      sides_[b] = std::make_pair(*left, *right);
      pieces_[{*left, *right, degree(b)}].push_back(b);
    }
  }

  augmented_ = true;
  for (Index b = 0; b < n && augmented_; ++b) {
    auto in_radical = [&](const Element& x) {
      for (const auto& [i, s] : x)
        if (idempotent_index_[i] >= 0) return false;
      return true;
    };
    if (!in_radical(diff_[b])) augmented_ = false;
    if (idempotent_index_[b] >= 0) continue;
    for (Index c = 0; c < n && augmented_; ++c) {
      if (!in_radical(mult_[b * n + c]) || !in_radical(mult_[c * n + b])) augmented_ = false;
    }
  }
}

std::optional<Index> DgAlgebra::find_label(const std::string& label) const {
  for (Index b = 0; b < dim(); ++b)
    if (data_.basis[b].label == label) return b;
  return std::nullopt;
}

std::optional<std::size_t> DgAlgebra::idempotent_of(Index b) const {
  if (idempotent_index_[b] < 0) return std::nullopt;
  return static_cast<std::size_t>(idempotent_index_[b]);
}

const std::vector<Index>& DgAlgebra::piece(std::size_t left, std::size_t right, int deg) const {
  static const std::vector<Index> empty;
  auto it = pieces_.find({left, right, deg});
  return it == pieces_.end() ? empty : it->second;
}

GradedDimVector DgAlgebra::piece_dims(std::size_t left, std::size_t right) const {
  GradedDimVector g;
  for (const auto& [key, v] : pieces_)
    if (std::get<0>(key) == left && std::get<1>(key) == right) g.add(std::get<2>(key), v.size());
  return g;
}

GradedDimVector DgAlgebra::dims() const {
  GradedDimVector g;
  for (const auto& b : data_.basis) g.add(b.degree, 1);
  return g;
}

Element DgAlgebra::multiply(const Element& x, const Element& y) const {
  std::vector<Element::Entry> acc;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) {
      const Element& p = product(i, j);
      if (p.empty()) continue;
      Scalar ab = a * b;
      for (const auto& [k, c] : p) acc.emplace_back(k, c * ab);
    }
  return Element::from_entries(std::move(acc));
}

Element DgAlgebra::differential(const Element& x) const {
  Element r;
  for (const auto& [i, a] : x) r.add_scaled(diff_[i], a);
  return r;
}

bool DgAlgebra::has_zero_differential() const {
  for (const auto& x : diff_)
    if (!x.empty()) return false;
  return true;
}

Element DgAlgebra::unit() const {
  std::vector<Element::Entry> e;
  for (Index b : data_.idempotents) e.emplace_back(b, field().one());
  return Element::from_entries(std::move(e));
}

std::optional<int> DgAlgebra::degree_of(const Element& x) const {
  if (x.empty()) return std::nullopt;
  int d = degree(x.entries().front().first);
  for (const auto& [i, s] : x)
    if (degree(i) != d) return std::nullopt;
  return d;
}

Scalar DgAlgebra::unit_coefficient(const Element& x, std::size_t c) const {
  return x.get(idempotent_basis(c), field().zero());
}

std::optional<Element> DgAlgebra::local_inverse(const Element& x, std::size_t c) const {
  Scalar lambda = unit_coefficient(x, c);
  if (lambda.is_zero()) return std::nullopt;
  Element nil = x.scaled(lambda.inverse());
  nil.add_scaled(idempotent(c), -field().one());  // u/λ - e_c
  Element result = idempotent(c);
  Element power = idempotent(c);
  for (std::size_t step = 0; step <= dim() && !power.empty(); ++step) {
    power = multiply(power, nil).scaled(-field().one());
    result.add_scaled(power, field().one());
  }
  if (!power.empty()) throw InternalError("non-nilpotent radical part in local inverse");
  return result.scaled(lambda.inverse());
}

std::string DgAlgebra::format(const Element& x) const {
  if (x.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, s] : x) {
    std::string c = s.to_string();
    bool neg = !c.empty() && c[0] == '-';
    if (neg) c.erase(0, 1);
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    if (!s.is_one() && !(-s).is_one()) os << c << "*";
    os << data_.basis[i].label;
    first = false;
  }
  return os.str();
}

AlgebraPtr build_pnk_algebra(int n, int k, const Field& field) {
  if (n < 1 || k < 1) throw UnsupportedError("pnk algebra needs n >= 1 and k >= 1");
  AlgebraData d;
  d.field = field;
  for (int i = 0; i <= n; ++i) {
    std::string label = i == 0 ? "1" : (i == 1 ? "t" : "t^" + std::to_string(i));
    d.basis.push_back({label, i * k});
  }
  d.idempotents = {0};
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) d.products.emplace_back(i, j, Element::unit(i + j, field.one()));
  d.marked_t = {Element::unit(1, field.one())};
  d.h = Element::unit(1, field.one());
  d.params = AlgebraParams{"pnk", n, k, 0};
  return std::make_shared<DgAlgebra>(std::move(d));
}

AlgebraPtr build_two_object_algebra(int n, int k, int m, const Field& field) {
  if (n < 1 || k < 1 || m < 0) throw UnsupportedError("two-object algebra needs n >= 1, k >= 1, m >= 0");
  if (m > 0 && k % 2 != 0) throw UnsupportedError("two-object algebra with m > 0 requires k even");
  const int mid = n * k / 2;
  AlgebraData d;
  d.field = field;
  // e_c, t_c, ..., t_c^n for c = 1, 2, then a_1..a_m (e_2 A e_1), b_1..b_m (e_1 A e_2).
  auto power_index = [n](int c, int i) { return static_cast<Index>(c * (n + 1) + i); };
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i <= n; ++i) {
      std::string base = "t" + std::to_string(c + 1);
      std::string label = i == 0 ? "e" + std::to_string(c + 1) : (i == 1 ? base : base + "^" + std::to_string(i));
      d.basis.push_back({label, i * k});
    }
  const Index a0 = power_index(2, 0);
  const Index b0 = a0 + m;
  for (int j = 0; j < m; ++j) d.basis.push_back({"a" + std::to_string(j + 1), mid});
  for (int j = 0; j < m; ++j) d.basis.push_back({"b" + std::to_string(j + 1), mid});
  d.idempotents = {power_index(0, 0), power_index(1, 0)};
  const Scalar one = field.one();
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j)
        d.products.emplace_back(power_index(c, i), power_index(c, j), Element::unit(power_index(c, i + j), one));
  for (int j = 0; j < m; ++j) {
    const Index a = a0 + j, b = b0 + j;
    // a ∈ e_2 A e_1, b ∈ e_1 A e_2
    d.products.emplace_back(power_index(1, 0), a, Element::unit(a, one));
    d.products.emplace_back(a, power_index(0, 0), Element::unit(a, one));
    d.products.emplace_back(power_index(0, 0), b, Element::unit(b, one));
    d.products.emplace_back(b, power_index(1, 0), Element::unit(b, one));
    for (int i = 0; i < m; ++i) {
      if (i != j) continue;
      d.products.emplace_back(b0 + j, a0 + i, Element::unit(power_index(0, n), one));
      d.products.emplace_back(a0 + i, b0 + j, Element::unit(power_index(1, n), one));
    }
  }
  d.marked_t = {Element::unit(power_index(0, 1), one), Element::unit(power_index(1, 1), one)};
  d.h = Element::from_entries({{power_index(0, 1), one}, {power_index(1, 1), one}});
  d.params = AlgebraParams{"two-object", n, k, m};
  return std::make_shared<DgAlgebra>(std::move(d));
}

bool AxiomReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

const AxiomCheck* AxiomReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string AxiomReport::to_string() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.passed) os << ": " << c.detail;
    os << '\n';
  }
  return os.str();
}

AxiomReport check_dg_axioms(const DgAlgebra& a) {
  const std::size_t n = a.dim();
  const Field& f = a.field();
  auto label = [&](Index i) { return a.basis(i).label; };
  AxiomReport report;

  AxiomCheck decomposition{"idempotent decomposition", true, ""};
  for (Index b = 0; b < n && decomposition.passed; ++b)
    if (!a.sides(b)) {
      decomposition.passed = false;
      decomposition.detail = label(b) + " does not lie in a single e_i A e_j";
    }
  report.checks.push_back(decomposition);

  AxiomCheck idem{"idempotent laws", true, ""};
  for (std::size_t i = 0; i < a.idempotent_count() && idem.passed; ++i) {
    if (a.degree(a.idempotent_basis(i)) != 0) {
      idem.passed = false;
      idem.detail = label(a.idempotent_basis(i)) + " has nonzero degree";
    }
    for (std::size_t j = 0; j < a.idempotent_count() && idem.passed; ++j) {
      Element expect = i == j ? a.idempotent(i) : Element();
      if (!(a.product(a.idempotent_basis(i), a.idempotent_basis(j)) == expect)) {
        idem.passed = false;
        idem.detail = label(a.idempotent_basis(i)) + "·" + label(a.idempotent_basis(j)) + " ≠ δ_ij e_i";
      }
    }
  }
  report.checks.push_back(idem);

  AxiomCheck unit{"unit", true, ""};
  const Element one = a.unit();
  for (Index b = 0; b < n && unit.passed; ++b) {
    Element eb = a.basis_element(b);
    if (!(a.multiply(one, eb) == eb) || !(a.multiply(eb, one) == eb)) {
      unit.passed = false;
      unit.detail = "1·" + label(b) + " or " + label(b) + "·1 differs from " + label(b);
    }
  }
  report.checks.push_back(unit);

  AxiomCheck additive{"degree additivity", true, ""};
  for (Index i = 0; i < n && additive.passed; ++i)
    for (Index j = 0; j < n && additive.passed; ++j)
      for (const auto& [k, s] : a.product(i, j))
        if (a.degree(k) != a.degree(i) + a.degree(j)) {
          additive.passed = false;
          additive.detail = label(i) + "·" + label(j) + " has a term " + label(k) + " of the wrong degree";
          break;
        }
  report.checks.push_back(additive);

  AxiomCheck assoc{"associativity", true, ""};
  for (Index i = 0; i < n && assoc.passed; ++i)
    for (Index j = 0; j < n && assoc.passed; ++j) {
      const Element& ij = a.product(i, j);
      for (Index k = 0; k < n && assoc.passed; ++k) {
        Element lhs = a.multiply(ij, a.basis_element(k));
        Element rhs = a.multiply(a.basis_element(i), a.product(j, k));
        if (!(lhs == rhs)) {
          assoc.passed = false;
          assoc.detail = "(" + label(i) + "·" + label(j) + ")·" + label(k) + " = " + a.format(lhs) + " but " +
                         label(i) + "·(" + label(j) + "·" + label(k) + ") = " + a.format(rhs);
        }
      }
    }
  report.checks.push_back(assoc);

  AxiomCheck ddeg{"differential degree", true, ""};
  for (Index i = 0; i < n && ddeg.passed; ++i)
    for (const auto& [k, s] : a.d(i))
      if (a.degree(k) != a.degree(i) + 1) {
        ddeg.passed = false;
        ddeg.detail = "d(" + label(i) + ") has a term " + label(k) + " of degree " + std::to_string(a.degree(k)) +
                      ", expected " + std::to_string(a.degree(i) + 1);
        break;
      }
  report.checks.push_back(ddeg);

  AxiomCheck dsq{"d^2 = 0", true, ""};
  for (Index i = 0; i < n && dsq.passed; ++i) {
    Element dd = a.differential(a.d(i));
    if (!dd.empty()) {
      dsq.passed = false;
      dsq.detail = "d(d(" + label(i) + ")) = " + a.format(dd);
    }
  }
  report.checks.push_back(dsq);

  AxiomCheck leibniz{"Leibniz", true, ""};
  for (Index i = 0; i < n && leibniz.passed; ++i)
    for (Index j = 0; j < n && leibniz.passed; ++j) {
      Element lhs = a.differential(a.product(i, j));
      Element rhs = a.multiply(a.d(i), a.basis_element(j));
      rhs.add_scaled(a.multiply(a.basis_element(i), a.d(j)), signed_one(f, sign(a.degree(i))));
      if (!(lhs == rhs)) {
        leibniz.passed = false;
        leibniz.detail = "d(" + label(i) + "·" + label(j) + ") = " + a.format(lhs) + " but d(a)b ± a d(b) = " +
                         a.format(rhs);
      }
    }
  report.checks.push_back(leibniz);
  return report;
}

bool is_central(const DgAlgebra& a, const Element& x) {
  if (x.empty()) return true;
  auto dx = a.degree_of(x);
  if (!dx) throw StructuralError("is_central: element " + a.format(x) + " is not homogeneous");
  for (Index b = 0; b < a.dim(); ++b) {
    Element eb = a.basis_element(b);
    Element lhs = a.multiply(x, eb);
    Element rhs = a.multiply(eb, x).scaled(signed_one(a.field(), sign(static_cast<long long>(*dx) * a.degree(b))));
    if (!(lhs == rhs)) return false;
  }
  return true;
}

bool check_cy_pairing(const DgAlgebra& a, int d) {
  if (!a.has_zero_differential()) throw PreconditionError("check_cy_pairing requires zero differential");
  const std::size_t r = a.idempotent_count();
  for (std::size_t i = 0; i < r; ++i) {
    const auto& top = a.piece(i, i, d);
    if (top.size() != 1) return false;
    const Index omega = top.front();
    for (std::size_t j = 0; j < r; ++j) {
      GradedDimVector left = a.piece_dims(i, j);
      GradedDimVector right = a.piece_dims(j, i);
      for (const auto& [p, dim] : left.support())
        if (right.at(d - p) != dim) return false;
      for (const auto& [q, dim] : right.support())
        if (left.at(d - q) != dim) return false;
      for (const auto& [p, dim] : left.support()) {
        const auto& xs = a.piece(i, j, p);
        const auto& ys = a.piece(j, i, d - p);
        SparseMatrix pairing(xs.size(), ys.size());
        for (std::size_t col = 0; col < ys.size(); ++col) {
          std::vector<SparseVector::Entry> entries;
          for (std::size_t row = 0; row < xs.size(); ++row) {
            Scalar c = a.product(xs[row], ys[col]).get(omega, a.field().zero());
            if (!c.is_zero()) entries.emplace_back(row, c);
          }
          pairing.set_column(col, SparseVector::from_entries(std::move(entries)));
        }
        if (rank(pairing) != xs.size()) return false;
      }
    }
  }
  return true;
}

}  // namespace ptwist
