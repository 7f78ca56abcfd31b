#include "ptwist/scalar.hpp"

#include <charconv>
#include <stdexcept>

#include "ptwist/errors.hpp"

namespace ptwist {

namespace {

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}

std::uint32_t pow_mod(std::uint32_t a, std::uint32_t e, std::uint32_t p) {
  std::uint32_t r = 1 % p;
  while (e) {
    if (e & 1u) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1u;
  }
  return r;
}

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Scalar::Scalar(mpq_class q) : value_(std::move(q)) {
  std::get<mpq_class>(value_).canonicalize();
}

Scalar::Scalar(std::uint64_t residue, std::uint32_t modulus)
    : value_(Residue{static_cast<std::uint32_t>(residue % modulus), modulus}) {}

bool Scalar::is_zero() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return sgn(*q) == 0;
  return std::get<Residue>(value_).value == 0;
}

bool Scalar::is_one() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return *q == 1;
  return std::get<Residue>(value_).value == 1;
}

std::uint32_t Scalar::modulus() const {
  if (auto* r = std::get_if<Residue>(&value_)) return r->modulus;
  return 0;
}

void Scalar::check_same_field(const Scalar& o) const {
  if (modulus() != o.modulus())
    throw std::logic_error("scalar arithmetic across different fields");
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    Scalar r;
    r.value_ = mpq_class(*q + std::get<mpq_class>(o.value_));
    return r;
  }
  auto a = std::get<Residue>(value_), b = std::get<Residue>(o.value_);
  std::uint32_t s = a.value + b.value;
  if (s >= a.modulus) s -= a.modulus;
  return Scalar(s, a.modulus);
}

Scalar Scalar::operator-() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    Scalar r;
    r.value_ = mpq_class(-*q);
    return r;
  }
  auto a = std::get<Residue>(value_);
  return Scalar(a.value == 0 ? 0 : a.modulus - a.value, a.modulus);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    Scalar r;
    r.value_ = mpq_class(*q * std::get<mpq_class>(o.value_));
    return r;
  }
  auto a = std::get<Residue>(value_), b = std::get<Residue>(o.value_);
  return Scalar(mul_mod(a.value, b.value, a.modulus), a.modulus);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero scalar");
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    Scalar r;
    r.value_ = mpq_class(1 / *q);
    return r;
  }
  auto a = std::get<Residue>(value_);
  return Scalar(pow_mod(a.value, a.modulus - 2, a.modulus), a.modulus);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
  if (modulus() != o.modulus()) return false;
  if (auto* q = std::get_if<mpq_class>(&value_)) return *q == std::get<mpq_class>(o.value_);
  return std::get<Residue>(value_).value == std::get<Residue>(o.value_).value;
}

std::string Scalar::to_string() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return q->get_str();
  auto a = std::get<Residue>(value_);
  return std::to_string(a.value) + " mod " + std::to_string(a.modulus);
}

Field Field::prime(std::uint32_t p) {
  if (!is_prime(p)) throw ConfigError("field characteristic " + std::to_string(p) + " is not prime");
  if (p > (1u << 31)) throw ConfigError("prime too large for 32-bit residues");
  return Field(p);
}

Scalar Field::zero() const { return p_ == 0 ? Scalar(mpq_class(0)) : Scalar(0, p_); }
Scalar Field::one() const { return p_ == 0 ? Scalar(mpq_class(1)) : Scalar(1, p_); }

Scalar Field::from_int(long long v) const {
  if (p_ == 0) return Scalar(mpq_class(static_cast<long>(v)));
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return Scalar(static_cast<std::uint64_t>(r), p_);
}

Scalar Field::from_rational(const mpq_class& q) const {
  if (p_ == 0) return Scalar(q);
  mpz_class num = q.get_num() % p_;
  mpz_class den = q.get_den() % p_;
  if (num < 0) num += p_;
  if (den == 0) throw std::domain_error("denominator divisible by the characteristic");
  return Scalar(num.get_ui(), p_) / Scalar(den.get_ui(), p_);
}

Scalar Field::parse(std::string_view text) const {
  text = trim(text);
  auto pos = text.find("mod");
  if (pos != std::string_view::npos) {
    auto value = trim(text.substr(0, pos));
    auto mod = trim(text.substr(pos + 3));
    std::uint64_t v = 0;
    std::uint32_t m = 0;
    auto r1 = std::from_chars(value.data(), value.data() + value.size(), v);
    auto r2 = std::from_chars(mod.data(), mod.data() + mod.size(), m);
    if (r1.ec != std::errc() || r2.ec != std::errc() || r1.ptr != value.data() + value.size() ||
        r2.ptr != mod.data() + mod.size())
      throw StructuralError("malformed residue '" + std::string(text) + "'");
    if (m != p_)
      throw StructuralError("residue modulus " + std::to_string(m) + " does not match field " + name());
    return Scalar(v, m);
  }
  mpq_class q;
  if (q.set_str(std::string(text), 10) != 0 || q.get_den() == 0)
    throw StructuralError("malformed rational '" + std::string(text) + "'");
  q.canonicalize();
  return from_rational(q);
}

Scalar Field::random_nonzero(std::mt19937_64& rng, std::uint64_t range) const {
  for (;;) {
    std::uint64_t raw = rng();
    if (p_ != 0) {
      Scalar s(raw % p_, p_);
      if (!s.is_zero()) return s;
      continue;
    }
    long long v = static_cast<long long>(raw % (2 * range + 1)) - static_cast<long long>(range);
    if (v != 0) return from_int(v);
  }
}

std::string Field::name() const { return p_ == 0 ? "Q" : "F_" + std::to_string(p_); }

Field Field::from_name(std::string_view name) {
  name = trim(name);
  if (name == "Q" || name == "rational" || name == "rationals") return rationals();
  std::string_view digits;
  if (name.rfind("F_", 0) == 0)
    digits = name.substr(2);
  else if (name.rfind("prime:", 0) == 0)
    digits = name.substr(6);
  else if (name == "prime")
    return prime(kDefaultPrime);
  else
    throw ConfigError("unknown field '" + std::string(name) + "'");
  std::uint32_t p = 0;
  auto r = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (r.ec != std::errc() || r.ptr != digits.data() + digits.size())
    throw ConfigError("malformed prime in field '" + std::string(name) + "'");
  return prime(p);
}

}  // namespace ptwist
