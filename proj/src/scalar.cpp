#include "dpres/scalar.hpp"

#include "dpres/error.hpp"

namespace dpres {

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = t - q * new_t;
    std::swap(t, new_t);
    r = r - q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

}  // namespace

FieldSpec FieldSpec::prime(std::int64_t p) {
  if (p >= (std::int64_t{1} << 31) || !is_prime(p))
    throw ConfigError("field modulus " + std::to_string(p) + " is not a prime below 2^31");
  return FieldSpec(static_cast<std::uint32_t>(p));
}

FieldSpec FieldSpec::rationals() { return FieldSpec(0); }

Scalar FieldSpec::zero() const { return from_int(0); }
Scalar FieldSpec::one() const { return from_int(1); }

Scalar FieldSpec::from_int(std::int64_t v) const {
  if (modulus_ == 0) return Scalar::rational(mpq_class(static_cast<long>(v)));
  std::int64_t r = v % static_cast<std::int64_t>(modulus_);
  if (r < 0) r += modulus_;
  return Scalar::mod(modulus_, static_cast<std::uint64_t>(r));
}

Scalar FieldSpec::from_fraction(const mpz_class& num, const mpz_class& den) const {
  if (den == 0) throw PreconditionError("zero denominator");
  if (modulus_ == 0) {
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar::rational(q);
  }
  mpz_class p(static_cast<unsigned long>(modulus_));
  mpz_class n = num % p, d = den % p;
  if (n < 0) n += p;
  if (d < 0) d += p;
  if (d == 0) throw PreconditionError("denominator vanishes in " + name());
  Scalar a = Scalar::mod(modulus_, n.get_ui());
  Scalar b = Scalar::mod(modulus_, d.get_ui());
  return a / b;
}

std::string FieldSpec::name() const {
  return modulus_ == 0 ? "QQ" : "GF(" + std::to_string(modulus_) + ")";
}

Scalar Scalar::rational(mpq_class q) {
  Scalar s;
  if (q != 0) s.q_ = std::make_shared<const mpq_class>(std::move(q));
  return s;
}

FieldSpec Scalar::field() const { return FieldSpec(modulus_); }

bool Scalar::is_zero() const { return modulus_ ? residue_ == 0 : !q_; }

bool Scalar::is_one() const { return modulus_ ? residue_ == 1 : (q_ && *q_ == 1); }

void Scalar::check_same(const Scalar& o) const {
  if (modulus_ != o.modulus_)
    throw ConfigError("arithmetic between " + field().name() + " and " + o.field().name());
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  if (modulus_) return mod(modulus_, std::uint64_t{residue_} + o.residue_);
  if (!q_) return o;
  if (!o.q_) return *this;
  return rational(*q_ + *o.q_);
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same(o);
  if (modulus_) return mod(modulus_, std::uint64_t{residue_} + modulus_ - o.residue_);
  if (!o.q_) return *this;
  if (!q_) return -o;
  return rational(*q_ - *o.q_);
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  if (modulus_) return mod(modulus_, std::uint64_t{residue_} * o.residue_);
  if (!q_ || !o.q_) return Scalar();
  return rational(*q_ * *o.q_);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  if (modulus_) return mod(modulus_, residue_ == 0 ? 0 : modulus_ - residue_);
  if (!q_) return *this;
  return rational(-*q_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw PreconditionError("inverse of zero");
  if (modulus_) return mod(modulus_, inverse_mod(residue_, modulus_));
  return rational(1 / *q_);
}

bool Scalar::operator==(const Scalar& o) const {
  if (modulus_ != o.modulus_) return false;
  if (modulus_) return residue_ == o.residue_;
  if (!q_ || !o.q_) return !q_ && !o.q_;
  return *q_ == *o.q_;
}

std::string Scalar::to_string() const {
  if (modulus_) return std::to_string(residue_);
  return q_ ? q_->get_str() : "0";
}

mpq_class Scalar::to_rational() const {
  if (modulus_) return mpq_class(static_cast<unsigned long>(residue_));
  return q_ ? *q_ : mpq_class(0);
}

std::uint32_t Scalar::residue() const {
  if (!modulus_) throw ConfigError("residue() of a rational scalar");
  return residue_;
}

}  // namespace dpres
