#include "support.hpp"

#include "dpres/linalg.hpp"

namespace support {

dpres::DPMatrix random_dpmatrix(Rng& rng, const Ring& ring, const std::vector<int>& a,
                                const std::vector<int>& b) {
  dpres::DPMatrix p(ring, a, b);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      int deg = a[i] - b[j];
      if (deg > 0 || rng() % 4 == 0) continue;
      dpres::DPPolynomial f;
      for (const auto& mono : dpres::dp_monomials_of_degree(ring, -deg)) {
        if (rng() % 3 == 0) continue;
        auto c = dpres::random_scalar(ring.field(), rng);
        if (!c.is_zero()) f += dpres::DPPolynomial(mono, c);
      }
      p.set(i, j, f);
    }
  return p;
}

FiniteLengthModule random_module(Rng& rng, const FieldSpec& field, int max_vars, std::size_t max_dim) {
  for (;;) {
    int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_vars));
    std::vector<int> w(static_cast<std::size_t>(n), 1);
    if (rng() % 4 == 0)
      for (auto& x : w) x = 1 + static_cast<int>(rng() % 2);
    Ring ring(field, w);
    std::size_t q = 1 + rng() % 2, p = 1 + rng() % 2;
    std::vector<int> a(q), b(p);
    for (auto& x : a) x = -static_cast<int>(rng() % 4);
    for (auto& x : b) x = static_cast<int>(rng() % 2);
    FiniteLengthModule m = dpres::quotient_module(random_dpmatrix(rng, ring, a, b));
    if (!m.is_zero() && m.total_dim() <= max_dim) return m;
  }
}

FiniteLengthModule random_gorenstein(Rng& rng, const Ring& ring, int socle) {
  return dpres::quotient_module(dpres::cyclic_matrix(ring, dpres::random_dp_form(ring, socle, rng)));
}

std::size_t count_monomials(const std::vector<int>& weights, int j) {
  if (j < 0) return 0;
  if (weights.empty()) return j == 0 ? 1 : 0;
  std::vector<int> rest(weights.begin() + 1, weights.end());
  std::size_t total = 0;
  for (int e = 0; e * weights[0] <= j; ++e) total += count_monomials(rest, j - e * weights[0]);
  return total;
}

bool euler_characteristic_matches(const dpres::BettiTable& t, const FiniteLengthModule& m) {
  const auto& w = m.ring().weights();
  int lo = m.min_degree() - 2, hi = m.max_degree() + 3 * m.ring().total_weight();
  for (int k = lo; k <= hi; ++k) {
    long long sum = 0;
    for (const auto& [key, beta] : t.entries())
      sum += (key.first % 2 ? -1 : 1) * static_cast<long long>(beta) *
             static_cast<long long>(count_monomials(w, k - key.second));
    if (sum != static_cast<long long>(m.dim(k))) return false;
  }
  return true;
}

std::vector<int> members(std::uint32_t s) {
  std::vector<int> out;
  for (int l = 0; l < 32; ++l)
    if (s >> l & 1u) out.push_back(l);
  return out;
}

int concatenation_sign(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> v = a;
  v.insert(v.end(), b.begin(), b.end());
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j + 1 < v.size() - i; ++j) {
      if (v[j] == v[j + 1]) return 0;
      if (v[j] > v[j + 1]) {
        std::swap(v[j], v[j + 1]);
        sign = -sign;
      }
    }
  for (std::size_t j = 0; j + 1 < v.size(); ++j)
    if (v[j] == v[j + 1]) return 0;
  return sign;
}

namespace {

dpres::ModuleElement unit(const FiniteLengthModule& m, int degree, std::size_t k) {
  dpres::ModuleElement e{degree, std::vector<dpres::Scalar>(m.dim(degree), m.field().zero())};
  e.coords[k] = m.field().one();
  return e;
}

}  // namespace

bool pairing_brute_force(const FiniteLengthModule& m, const dpres::GradedPairing& p) {
  const auto& F = m.field();
  for (int j = m.min_degree(); j <= m.max_degree(); ++j) {
    const int jj = p.s - j;
    // Gram matrix between M_j and M_{s-j}.
    dpres::Matrix g(F, m.dim(j), m.dim(jj));
    for (std::size_t u = 0; u < m.dim(j); ++u)
      for (std::size_t v = 0; v < m.dim(jj); ++v) {
        auto a = unit(m, j, u), b = unit(m, jj, v);
        g(u, v) = dpres::pairing_value(p, a, b);
        if (!(g(u, v) == F.from_int(p.epsilon) * dpres::pairing_value(p, b, a))) return false;
      }
    if (g.rows() != g.cols() || dpres::rank(g) != g.rows()) return false;
    for (int l = 0; l < m.ring().nvars(); ++l) {
      const int jl = j + m.ring().weight(l);
      for (std::size_t u = 0; u < m.dim(j); ++u)
        for (std::size_t v = 0; v < m.dim(p.s - jl); ++v) {
          auto a = unit(m, j, u), b = unit(m, p.s - jl, v);
          auto xa = m.apply(dpres::Polynomial::variable(m.ring(), l), a);
          auto xb = m.apply(dpres::Polynomial::variable(m.ring(), l), b);
          dpres::Scalar lhs = m.dim(jl) ? dpres::pairing_value(p, xa, b) : F.zero();
          dpres::Scalar rhs = m.dim(xb.degree) ? dpres::pairing_value(p, a, xb) : F.zero();
          if (!(lhs == rhs)) return false;
        }
    }
  }
  return true;
}

bool annihilator_matches(const dpres::DPMatrix& p, const std::vector<TupleGenerator>& gens,
                         std::string* report) {
  const Ring& ring = p.ring();
  const auto& b = p.col_twists();
  auto w = dpres::annihilator(p);
  for (int d = w.lo; d <= w.hi + 1; ++d) {
    const std::size_t amb = dpres::ambient_dim(ring, b, d);
    std::vector<std::vector<dpres::Scalar>> cols;
    for (const auto& g : gens)
      for (const auto& mono : dpres::monomials_of_degree(ring, d - g.degree)) {
        std::vector<dpres::Polynomial> t;
        for (const auto& x : g.tuple) t.push_back(dpres::Polynomial(mono, ring.field().one()) * x);
        cols.push_back(dpres::ambient_coordinates(ring, b, d, t));
      }
    dpres::Matrix span = dpres::Matrix::from_columns(ring.field(), amb, cols);
    dpres::Matrix expected;
    if (d > w.hi) {
      expected = dpres::Matrix::identity(ring.field(), amb);
    } else {
      auto it = w.basis.find(d);
      expected = it == w.basis.end() ? dpres::Matrix(ring.field(), amb, 0) : it->second;
    }
    if (!dpres::same_column_space(span, expected)) {
      if (report)
        *report = "degree " + std::to_string(d) + ": generated rank " + std::to_string(dpres::rank(span)) +
                  ", annihilator rank " + std::to_string(dpres::rank(expected));
      return false;
    }
  }
  return true;
}

}  // namespace support
