#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace ptwist {

/// An exact scalar: either a rational number or a residue modulo a prime.
///
/// A default-constructed Scalar is the rational zero. Arithmetic between a
/// rational and a residue (or residues with different moduli) throws
/// std::logic_error; the active field of a session is fixed by its Field.
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(mpq_class q);
  Scalar(std::uint64_t residue, std::uint32_t modulus);

  bool is_zero() const;
  bool is_one() const;
  std::uint32_t modulus() const;  // 0 for rationals

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;
  bool operator==(const Scalar& o) const;

  // "3/7", "-2" for rationals; "12 mod 32003" for residues.
  std::string to_string() const;

 private:
  struct Residue {
    std::uint32_t value;
    std::uint32_t modulus;
  };
  void check_same_field(const Scalar& o) const;

  std::variant<mpq_class, Residue> value_;
};

/// The base field of a session: the rationals, or F_p for a prime p.
class Field {
 public:
  static constexpr std::uint32_t kDefaultPrime = 32003;

  Field() = default;  // rationals
  static Field rationals() { return Field(); }
  static Field prime(std::uint32_t p);

  bool is_rational() const { return p_ == 0; }
  std::uint32_t characteristic() const { return p_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long v) const;
  Scalar from_rational(const mpq_class& q) const;
  Scalar parse(std::string_view text) const;
  bool contains(const Scalar& s) const { return s.modulus() == p_; }

  // Uniform-ish nonzero scalar; draws only raw mt19937_64 output so the
  // sequence is identical on every platform.
  Scalar random_nonzero(std::mt19937_64& rng, std::uint64_t range = 1u << 20) const;

  // "Q" or "F_p".
  std::string name() const;
  static Field from_name(std::string_view name);

  bool operator==(const Field& o) const = default;

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

}  // namespace ptwist
