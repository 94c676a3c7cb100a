#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dpres/scalar.hpp"

namespace dpres {

/// Weighted polynomial ring k[x_1..x_n], deg x_l = weights[l] > 0.
class Ring {
 public:
  Ring(FieldSpec field, std::vector<int> weights);
  /// n variables of weight 1.
  static Ring standard(FieldSpec field, int n);

  const FieldSpec& field() const { return field_; }
  int nvars() const { return static_cast<int>(weights_.size()); }
  const std::vector<int>& weights() const { return weights_; }
  int weight(int l) const { return weights_[static_cast<std::size_t>(l)]; }
  /// d = sum of the weights.
  int total_weight() const { return total_weight_; }

  friend bool operator==(const Ring&, const Ring&) = default;

 private:
  FieldSpec field_;
  std::vector<int> weights_;
  int total_weight_ = 0;
};

/// x^u. `degree` is the weighted exponent sum.
struct Monomial {
  std::vector<int> exponents;
  int degree = 0;

  static Monomial one(const Ring& ring);
  static Monomial make(const Ring& ring, std::vector<int> exponents);
  static Monomial variable(const Ring& ring, int l);

  Monomial operator*(const Monomial& o) const;
  /// Graded reverse lexicographic order (weighted degree first).
  std::strong_ordering operator<=>(const Monomial& o) const;
  bool operator==(const Monomial& o) const = default;
  std::string to_string() const;
};

/// X^(u). `degree` is the negated weighted exponent sum (never positive).
struct DPMonomial {
  std::vector<int> exponents;
  int degree = 0;

  static DPMonomial make(const Ring& ring, std::vector<int> exponents);

  std::strong_ordering operator<=>(const DPMonomial& o) const;
  bool operator==(const DPMonomial& o) const = default;
  std::string to_string() const;
};

/// All monomials of weighted degree j, in descending graded-reverse-lex order.
std::vector<Monomial> monomials_of_degree(const Ring& ring, int j);
/// The divided-power monomials dual to monomials_of_degree(ring, j), same order.
std::vector<DPMonomial> dp_monomials_of_degree(const Ring& ring, int j);
/// Position of x^exponents in monomials_of_degree(ring, degree).
std::size_t monomial_index(const Ring& ring, const std::vector<int>& exponents, int degree);

namespace detail {

/// Sparse linear combination of monomials, terms kept sorted descending and nonzero.
template <class Mono>
class SparseSum {
 public:
  struct Term {
    Mono monomial;
    Scalar coefficient;
  };

  SparseSum() = default;
  SparseSum(Mono m, Scalar c) {
    if (!c.is_zero()) terms_.push_back({std::move(m), std::move(c)});
  }

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  /// Common degree of all terms; nullopt for zero or inhomogeneous values.
  std::optional<int> homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    int d = terms_.front().monomial.degree;
    for (const auto& t : terms_)
      if (t.monomial.degree != d) return std::nullopt;
    return d;
  }

  Scalar coefficient(const Mono& m) const {
    for (const auto& t : terms_)
      if (t.monomial == m) return t.coefficient;
    return terms_.empty() ? Scalar() : terms_.front().coefficient.field().zero();
  }

  SparseSum operator+(const SparseSum& o) const { return merge(o, false); }
  SparseSum operator-(const SparseSum& o) const { return merge(o, true); }
  SparseSum& operator+=(const SparseSum& o) { return *this = merge(o, false); }
  SparseSum& operator-=(const SparseSum& o) { return *this = merge(o, true); }
  SparseSum operator-() const {
    SparseSum r = *this;
    for (auto& t : r.terms_) t.coefficient = -t.coefficient;
    return r;
  }
  SparseSum scaled(const Scalar& s) const {
    if (s.is_zero()) return {};
    SparseSum r = *this;
    for (auto& t : r.terms_) t.coefficient *= s;
    return r;
  }
  bool operator==(const SparseSum& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (!(terms_[i].monomial == o.terms_[i].monomial) ||
          !(terms_[i].coefficient == o.terms_[i].coefficient))
        return false;
    return true;
  }

  /// Builds from unsorted terms, combining duplicates and dropping zeros.
  static SparseSum from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.monomial > b.monomial; });
    SparseSum r;
    for (auto& t : terms) {
      if (!r.terms_.empty() && r.terms_.back().monomial == t.monomial) {
        r.terms_.back().coefficient += t.coefficient;
        if (r.terms_.back().coefficient.is_zero()) r.terms_.pop_back();
      } else if (!t.coefficient.is_zero()) {
        r.terms_.push_back(std::move(t));
      }
    }
    return r;
  }

 private:
  SparseSum merge(const SparseSum& o, bool negate) const {
    SparseSum r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() ||
          (i < terms_.size() && terms_[i].monomial > o.terms_[j].monomial)) {
        r.terms_.push_back(terms_[i++]);
      } else if (i == terms_.size() || o.terms_[j].monomial > terms_[i].monomial) {
        Term t = o.terms_[j++];
        if (negate) t.coefficient = -t.coefficient;
        r.terms_.push_back(std::move(t));
      } else {
        Scalar c = negate ? terms_[i].coefficient - o.terms_[j].coefficient
                          : terms_[i].coefficient + o.terms_[j].coefficient;
        if (!c.is_zero()) r.terms_.push_back({terms_[i].monomial, c});
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

}  // namespace detail

/// Element of R. The zero polynomial carries no field.
class Polynomial : public detail::SparseSum<Monomial> {
 public:
  using SparseSum::SparseSum;
  Polynomial(SparseSum s) : SparseSum(std::move(s)) {}  // NOLINT

  static Polynomial constant(const Ring& ring, const Scalar& c);
  static Polynomial variable(const Ring& ring, int l);

  Polynomial operator*(const Polynomial& o) const;
  /// Coefficient of the unit monomial (zero scalar of the field, or a
  /// default scalar for the zero polynomial).
  Scalar constant_term() const;
  bool is_constant() const;
  /// Renders like "x1^2*x2 - 3*x3"; "0" for zero.
  std::string to_string() const;
};

/// Element of the divided-power dual of R.
class DPPolynomial : public detail::SparseSum<DPMonomial> {
 public:
  using SparseSum::SparseSum;
  DPPolynomial(SparseSum s) : SparseSum(std::move(s)) {}  // NOLINT

  static DPPolynomial constant(const Ring& ring, const Scalar& c);
  /// Renders in the .dpm term syntax, e.g. "X1*X2 + X2^(2)".
  std::string to_string() const;
};

/// The contraction action phi . f; bilinear extension of x^u . X^(v) = X^(v-u).
/// Throws ConfigError when the inputs do not live over `ring`.
DPPolynomial contract(const Ring& ring, const Polynomial& phi, const DPPolynomial& f);
/// Degree-0 part of phi . f, i.e. f(phi). Requires deg phi = -deg f for homogeneous inputs.
Scalar dp_pairing(const Ring& ring, const Polynomial& phi, const DPPolynomial& f);

/// Coordinates of a homogeneous polynomial in the monomials_of_degree basis.
std::vector<Scalar> coordinates(const Ring& ring, const Polynomial& p, int degree);
std::vector<Scalar> coordinates(const Ring& ring, const DPPolynomial& f, int degree);
Polynomial polynomial_from_coordinates(const Ring& ring, int degree,
                                       const std::vector<Scalar>& coords);
DPPolynomial dp_from_coordinates(const Ring& ring, int degree, const std::vector<Scalar>& coords);

}  // namespace dpres
