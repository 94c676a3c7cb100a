#include "dpres/algebra.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "dpres/error.hpp"

namespace dpres {

Ring::Ring(FieldSpec field, std::vector<int> weights)
    : field_(field), weights_(std::move(weights)) {
  if (weights_.empty()) throw ConfigError("a ring needs at least one variable");
  for (int w : weights_) {
    if (w < 1) throw ConfigError("variable weights must be positive");
    total_weight_ += w;
  }
}

Ring Ring::standard(FieldSpec field, int n) {
  if (n < 1) throw ConfigError("a ring needs at least one variable");
  return Ring(field, std::vector<int>(static_cast<std::size_t>(n), 1));
}

namespace {

int weighted_degree(const Ring& ring, const std::vector<int>& e) {
  if (static_cast<int>(e.size()) != ring.nvars())
    throw ConfigError("exponent vector length does not match the ring");
  int d = 0;
  for (std::size_t l = 0; l < e.size(); ++l) {
    if (e[l] < 0) throw ConfigError("negative exponent");
    d += e[l] * ring.weights()[l];
  }
  return d;
}

// Graded reverse lex on (weighted total, exponents).
std::strong_ordering grevlex(int total_a, const std::vector<int>& a, int total_b,
                             const std::vector<int>& b) {
  if (total_a != total_b) return total_a <=> total_b;
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return b[i] <=> a[i];
  }
  return std::strong_ordering::equal;
}

void enumerate(const Ring& ring, std::size_t l, int remaining, std::vector<int>& cur,
               std::vector<std::vector<int>>& out) {
  if (l + 1 == cur.size()) {
    int w = ring.weights()[l];
    if (remaining % w == 0) {
      cur[l] = remaining / w;
      out.push_back(cur);
    }
    return;
  }
  for (int e = remaining / ring.weights()[l]; e >= 0; --e) {
    cur[l] = e;
    enumerate(ring, l + 1, remaining - e * ring.weights()[l], cur, out);
  }
  cur[l] = 0;
}

std::vector<std::vector<int>> exponent_vectors(const Ring& ring, int j) {
  std::vector<std::vector<int>> out;
  if (j < 0) return out;
  std::vector<int> cur(static_cast<std::size_t>(ring.nvars()), 0);
  enumerate(ring, 0, j, cur, out);
  return out;
}

const std::vector<Monomial>& cached_basis(const Ring& ring, int j) {
  static std::mutex mu;
  static std::map<std::pair<std::vector<int>, int>, std::vector<Monomial>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(ring.weights(), j);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<Monomial> basis;
  for (auto& e : exponent_vectors(ring, j)) basis.push_back(Monomial{std::move(e), j});
  std::sort(basis.begin(), basis.end(), std::greater<>());
  return cache.emplace(key, std::move(basis)).first->second;
}

std::size_t index_in_basis(const std::vector<Monomial>& basis, const std::vector<int>& e, int j) {
  Monomial probe{e, j};
  auto it = std::lower_bound(basis.begin(), basis.end(), probe, std::greater<>());
  if (it == basis.end() || !(*it == probe)) throw ConfigError("monomial not in degree basis");
  return static_cast<std::size_t>(it - basis.begin());
}

std::string power_string(char var, std::size_t l, int e, bool divided) {
  std::string s(1, var);
  s += std::to_string(l + 1);
  if (e == 1) return s;
  return divided ? s + "^(" + std::to_string(e) + ")" : s + "^" + std::to_string(e);
}

template <class Sum>
std::string render(const Sum& p, bool divided) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    std::string mono = t.monomial.to_string();
    bool unit = mono == "1";
    std::string c = t.coefficient.to_string();
    bool negative = !c.empty() && c[0] == '-';
    if (negative) c = c.substr(1);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (unit) {
      os << c;
    } else if (c == "1") {
      os << mono;
    } else {
      os << c << "*" << mono;
    }
  }
  (void)divided;
  return os.str();
}

}  // namespace

Monomial Monomial::one(const Ring& ring) {
  return Monomial{std::vector<int>(static_cast<std::size_t>(ring.nvars()), 0), 0};
}

Monomial Monomial::make(const Ring& ring, std::vector<int> exponents) {
  int d = weighted_degree(ring, exponents);
  return Monomial{std::move(exponents), d};
}

Monomial Monomial::variable(const Ring& ring, int l) {
  Monomial m = one(ring);
  m.exponents[static_cast<std::size_t>(l)] = 1;
  m.degree = ring.weight(l);
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  if (exponents.size() != o.exponents.size()) throw ConfigError("monomials from different rings");
  Monomial m = *this;
  for (std::size_t i = 0; i < exponents.size(); ++i) m.exponents[i] += o.exponents[i];
  m.degree += o.degree;
  return m;
}

std::strong_ordering Monomial::operator<=>(const Monomial& o) const {
  return grevlex(degree, exponents, o.degree, o.exponents);
}

std::string Monomial::to_string() const {
  std::string s;
  for (std::size_t l = 0; l < exponents.size(); ++l) {
    if (exponents[l] == 0) continue;
    if (!s.empty()) s += "*";
    s += power_string('x', l, exponents[l], false);
  }
  return s.empty() ? "1" : s;
}

DPMonomial DPMonomial::make(const Ring& ring, std::vector<int> exponents) {
  int d = weighted_degree(ring, exponents);
  return DPMonomial{std::move(exponents), -d};
}

std::strong_ordering DPMonomial::operator<=>(const DPMonomial& o) const {
  return grevlex(-degree, exponents, -o.degree, o.exponents);
}

std::string DPMonomial::to_string() const {
  std::string s;
  for (std::size_t l = 0; l < exponents.size(); ++l) {
    if (exponents[l] == 0) continue;
    if (!s.empty()) s += "*";
    s += power_string('X', l, exponents[l], true);
  }
  return s.empty() ? "1" : s;
}

std::vector<Monomial> monomials_of_degree(const Ring& ring, int j) {
  if (j < 0) return {};
  return cached_basis(ring, j);
}

std::vector<DPMonomial> dp_monomials_of_degree(const Ring& ring, int j) {
  std::vector<DPMonomial> out;
  if (j < 0) return out;
  for (const auto& m : cached_basis(ring, j)) out.push_back(DPMonomial{m.exponents, -j});
  return out;
}

std::size_t monomial_index(const Ring& ring, const std::vector<int>& exponents, int degree) {
  return index_in_basis(cached_basis(ring, degree), exponents, degree);
}

Polynomial Polynomial::constant(const Ring& ring, const Scalar& c) {
  return Polynomial(Monomial::one(ring), c);
}

Polynomial Polynomial::variable(const Ring& ring, int l) {
  return Polynomial(Monomial::variable(ring, l), ring.field().one());
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (terms().size() == 1 && o.terms().size() == 1) {
    return Polynomial(terms()[0].monomial * o.terms()[0].monomial,
                      terms()[0].coefficient * o.terms()[0].coefficient);
  }
  std::vector<Term> prod;
  prod.reserve(terms().size() * o.terms().size());
  for (const auto& a : terms())
    for (const auto& b : o.terms()) prod.push_back({a.monomial * b.monomial, a.coefficient * b.coefficient});
  return from_terms(std::move(prod));
}

Scalar Polynomial::constant_term() const {
  if (is_zero()) return Scalar();
  const auto& last = terms().back();  // smallest monomial sorts last
  if (last.monomial.degree == 0) return last.coefficient;
  return last.coefficient.field().zero();
}

bool Polynomial::is_constant() const {
  return is_zero() || (terms().size() == 1 && terms()[0].monomial.degree == 0);
}

std::string Polynomial::to_string() const { return render(*this, false); }

DPPolynomial DPPolynomial::constant(const Ring& ring, const Scalar& c) {
  return DPPolynomial(DPMonomial{std::vector<int>(static_cast<std::size_t>(ring.nvars()), 0), 0},
                      c);
}

std::string DPPolynomial::to_string() const { return render(*this, true); }

namespace {

void check_over(const Ring& ring, const std::vector<int>& exps, const Scalar& c) {
  if (static_cast<int>(exps.size()) != ring.nvars())
    throw ConfigError("contraction input has " + std::to_string(exps.size()) +
                      " variables, ring has " + std::to_string(ring.nvars()));
  if (!(c.field() == ring.field()))
    throw ConfigError("contraction input over " + c.field().name() + ", ring over " +
                      ring.field().name());
}

}  // namespace

DPPolynomial contract(const Ring& ring, const Polynomial& phi, const DPPolynomial& f) {
  for (const auto& t : phi.terms()) check_over(ring, t.monomial.exponents, t.coefficient);
  for (const auto& t : f.terms()) check_over(ring, t.monomial.exponents, t.coefficient);
  std::vector<DPPolynomial::Term> out;
  for (const auto& a : phi.terms()) {
    for (const auto& b : f.terms()) {
      std::vector<int> e = b.monomial.exponents;
      bool vanishes = false;
      for (std::size_t l = 0; l < e.size(); ++l) {
        e[l] -= a.monomial.exponents[l];
        if (e[l] < 0) {
          vanishes = true;
          break;
        }
      }
      if (vanishes) continue;
      out.push_back({DPMonomial{std::move(e), b.monomial.degree + a.monomial.degree},
                     a.coefficient * b.coefficient});
    }
  }
  return DPPolynomial::from_terms(std::move(out));
}

Scalar dp_pairing(const Ring& ring, const Polynomial& phi, const DPPolynomial& f) {
  auto dp = phi.homogeneous_degree();
  auto df = f.homogeneous_degree();
  if (dp && df && *dp != -*df)
    throw PreconditionError("pairing degree mismatch: " + std::to_string(*dp) + " against " +
                            std::to_string(*df));
  DPPolynomial c = contract(ring, phi, f);
  for (const auto& t : c.terms())
    if (t.monomial.degree == 0) return t.coefficient;
  return ring.field().zero();
}

std::vector<Scalar> coordinates(const Ring& ring, const Polynomial& p, int degree) {
  const auto& basis = cached_basis(ring, degree);
  std::vector<Scalar> v(basis.size(), ring.field().zero());
  for (const auto& t : p.terms()) {
    if (t.monomial.degree != degree) throw ConfigError("coordinates: inhomogeneous polynomial");
    v[index_in_basis(basis, t.monomial.exponents, degree)] = t.coefficient;
  }
  return v;
}

std::vector<Scalar> coordinates(const Ring& ring, const DPPolynomial& f, int degree) {
  const auto& basis = cached_basis(ring, -degree);
  std::vector<Scalar> v(basis.size(), ring.field().zero());
  for (const auto& t : f.terms()) {
    if (t.monomial.degree != degree) throw ConfigError("coordinates: inhomogeneous DP polynomial");
    v[index_in_basis(basis, t.monomial.exponents, -degree)] = t.coefficient;
  }
  return v;
}

Polynomial polynomial_from_coordinates(const Ring& ring, int degree,
                                       const std::vector<Scalar>& coords) {
  const auto& basis = cached_basis(ring, degree);
  if (coords.size() != basis.size()) throw ConfigError("coordinate vector length mismatch");
  std::vector<Polynomial::Term> terms;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!coords[i].is_zero()) terms.push_back({basis[i], coords[i]});
  return Polynomial::from_terms(std::move(terms));
}

DPPolynomial dp_from_coordinates(const Ring& ring, int degree, const std::vector<Scalar>& coords) {
  const auto& basis = cached_basis(ring, -degree);
  if (coords.size() != basis.size()) throw ConfigError("coordinate vector length mismatch");
  std::vector<DPPolynomial::Term> terms;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!coords[i].is_zero()) terms.push_back({DPMonomial{basis[i].exponents, degree}, coords[i]});
  return DPPolynomial::from_terms(std::move(terms));
}

}  // namespace dpres
