#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <gmpxx.h>

namespace dpres {

class Scalar;

/// The coefficient field: a prime field GF(p) or the rationals.
class FieldSpec {
 public:
  /// Throws ConfigError unless p is a prime below 2^31.
  static FieldSpec prime(std::int64_t p);
  static FieldSpec rationals();

  bool is_prime_field() const { return modulus_ != 0; }
  /// 0 for the rationals.
  std::uint32_t characteristic() const { return modulus_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(std::int64_t v) const;
  /// num/den reduced into the field; den must be invertible.
  Scalar from_fraction(const mpz_class& num, const mpz_class& den) const;

  std::string name() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  friend class Scalar;
  explicit FieldSpec(std::uint32_t modulus) : modulus_(modulus) {}
  std::uint32_t modulus_ = 0;
};

/// An exact field element. Carries its field so mixed-field arithmetic is caught.
class Scalar {
 public:
  Scalar() = default;  // the rational zero

  FieldSpec field() const;
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  /// Throws PreconditionError on zero.
  Scalar inverse() const;

  bool operator==(const Scalar& o) const;

  /// Residue in [0,p) for prime fields; reduced "a" or "a/b" for rationals.
  std::string to_string() const;
  /// Exact rational value (residue for prime fields).
  mpq_class to_rational() const;
  /// Residue for prime fields; throws for rationals.
  std::uint32_t residue() const;

 private:
  friend class FieldSpec;
  static Scalar mod(std::uint32_t p, std::uint64_t r) {
    Scalar s;
    s.modulus_ = p;
    s.residue_ = static_cast<std::uint32_t>(r % p);
    return s;
  }
  static Scalar rational(mpq_class q);
  void check_same(const Scalar& o) const;

  std::uint32_t modulus_ = 0;  // 0 -> rationals
  std::uint32_t residue_ = 0;
  std::shared_ptr<const mpq_class> q_;  // null means zero
};

}  // namespace dpres
