#include "dpres/nielsen.hpp"

#include <algorithm>

#include "dpres/error.hpp"

namespace dpres {

namespace {

std::size_t subset_position(const std::vector<Subset>& basis, Subset s) {
  return static_cast<std::size_t>(std::lower_bound(basis.begin(), basis.end(), s) - basis.begin());
}

// Multinomial prod_l binom(u_l, v_l) as a field element.
Scalar binomial(const FieldSpec& field, const std::vector<int>& u, const std::vector<int>& v) {
  mpz_class acc = 1;
  for (std::size_t l = 0; l < u.size(); ++l) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(u[l]), static_cast<unsigned long>(v[l]));
    acc *= b;
  }
  return field.from_fraction(acc, 1);
}

// All v ≤ u componentwise.
std::vector<std::vector<int>> lower_exponents(const std::vector<int>& u) {
  std::vector<std::vector<int>> out{{}};
  for (int e : u) {
    std::vector<std::vector<int>> next;
    for (const auto& p : out)
      for (int k = 0; k <= e; ++k) {
        auto q = p;
        q.push_back(k);
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  return out;
}

int exponent_degree(const Ring& ring, const std::vector<int>& u) {
  int d = 0;
  for (std::size_t l = 0; l < u.size(); ++l) d += u[l] * ring.weight(static_cast<int>(l));
  return d;
}

std::vector<int> minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r = a;
  for (std::size_t l = 0; l < r.size(); ++l) r[l] -= b[l];
  return r;
}

void accumulate(TensorElement& e, const TensorElement::key_type& key, const std::vector<Scalar>& v,
                const Scalar& c) {
  auto it = e.find(key);
  if (it == e.end()) {
    std::vector<Scalar> w(v.size(), c.field().zero());
    it = e.emplace(key, std::move(w)).first;
  }
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) it->second[k] += c * v[k];
}

std::string nielsen_label(Subset s, const BasisLabel& b) {
  return subset_label(s) + "|" + std::to_string(b.degree) + ":" + std::to_string(b.index);
}

}  // namespace

FreeModule nielsen_module(const FiniteLengthModule& m, int i) {
  const Ring& ring = m.ring();
  FreeModule f;
  auto basis = m.basis();
  for (Subset s : exterior_basis(ring.nvars(), i))
    for (const auto& b : basis) {
      f.twists.push_back(subset_degree(ring, s) + b.degree);
      f.labels.push_back(nielsen_label(s, b));
    }
  return f;
}

std::pair<GradedFreeMatrix, GradedFreeMatrix> nielsen_parts(const FiniteLengthModule& m, int i) {
  const Ring& ring = m.ring();
  const int n = ring.nvars();
  if (i < 1 || i > n) throw ConfigError("Nielsen differential index out of range");
  FreeModule src = nielsen_module(m, i), tgt = nielsen_module(m, i - 1);
  GradedFreeMatrix p0(ring, src, tgt), p1(ring, src, tgt);
  auto sb = exterior_basis(n, i), tb = exterior_basis(n, i - 1);
  auto basis = m.basis();
  const std::size_t dm = basis.size();
  for (std::size_t si = 0; si < sb.size(); ++si)
    for (int l = 0; l < n; ++l) {
      SignedSubset r = ext_contract(l, sb[si]);
      if (r.sign == 0) continue;
      const std::size_t ti = subset_position(tb, r.set);
      const Scalar sign = ring.field().from_int(r.sign);
      for (std::size_t bi = 0; bi < dm; ++bi) {
        const std::size_t col = si * dm + bi;
        p0.set(ti * dm + bi, col, Polynomial::variable(ring, l).scaled(sign));
        const BasisLabel& b = basis[bi];
        Matrix a = m.act(l, b.degree);
        const int tdeg = b.degree + ring.weight(l);
        for (std::size_t ci = 0; ci < a.rows(); ++ci) {
          if (a(ci, b.index).is_zero()) continue;
          std::size_t row = ti * dm + m.flat_index({tdeg, ci});
          p1.set(row, col, Polynomial::constant(ring, -(sign * a(ci, b.index))));
        }
      }
    }
  return {std::move(p0), std::move(p1)};
}

GradedFreeMatrix nielsen_differential(const FiniteLengthModule& m, int i) {
  auto [p0, p1] = nielsen_parts(m, i);
  return p0 + p1;
}

namespace {

std::optional<Augmentation> module_augmentation(const FiniteLengthModule& m) {
  Augmentation aug{m, {}};
  for (const auto& b : m.basis()) {
    std::vector<Scalar> v(m.dim(b.degree), m.field().zero());
    v[b.index] = m.field().one();
    aug.images.push_back({b.degree, std::move(v)});
  }
  return aug;
}

}  // namespace

FreeComplex nielsen_complex(const FiniteLengthModule& m) {
  const Ring& ring = m.ring();
  FreeComplex c{ring, {}, {}, std::nullopt};
  if (m.is_zero()) return c;
  for (int i = 0; i <= ring.nvars(); ++i) c.modules.push_back(nielsen_module(m, i));
  for (int i = 1; i <= ring.nvars(); ++i) c.differentials.push_back(nielsen_differential(m, i));
  c.augmentation = module_augmentation(m);
  return c;
}

GradedFreeMatrix diagonal_matrix(const GradedFreeMatrix& f, const FiniteLengthModule& m) {
  const Ring& ring = f.ring();
  const FieldSpec& field = ring.field();
  auto basis = m.basis();
  const std::size_t dm = basis.size();

  auto tensor = [&](const FreeModule& g) {
    FreeModule out;
    for (std::size_t k = 0; k < g.rank(); ++k)
      for (const auto& b : basis) {
        out.twists.push_back(g.twists[k] + b.degree);
        out.labels.push_back((k < g.labels.size() ? g.labels[k] : std::to_string(k)) + "|" +
                             std::to_string(b.degree) + ":" + std::to_string(b.index));
      }
    return out;
  };
  GradedFreeMatrix out(ring, tensor(f.source()), tensor(f.target()));

  for (std::size_t c = 0; c < f.cols(); ++c)
    for (std::size_t bi = 0; bi < dm; ++bi) {
      const BasisLabel& b = basis[bi];
      // (M-degree, target row, monomial) -> vector in M_degree
      std::map<std::tuple<int, std::size_t, std::vector<int>>, std::vector<Scalar>> pending;
      for (std::size_t r = 0; r < f.rows(); ++r)
        for (const auto& t : f(r, c).terms()) {
          std::vector<Scalar> v(m.dim(b.degree), field.zero());
          v[b.index] = t.coefficient;
          pending[{b.degree, r, t.monomial.exponents}] = std::move(v);
        }
      std::map<std::size_t, std::vector<Polynomial::Term>> column;
      while (!pending.empty()) {
        auto it = pending.begin();
        auto [j, r, u] = it->first;
        std::vector<Scalar> v = std::move(it->second);
        pending.erase(it);
        bool any = false;
        for (std::size_t k = 0; k < v.size(); ++k)
          if (!v[k].is_zero()) {
            column[r * dm + m.flat_index({j, k})].push_back({Monomial::make(ring, u), v[k]});
            any = true;
          }
        if (!any) continue;
        // x^u ⊗ w ⊗ v = x^u ·diag (1 ⊗ w ⊗ v) - sum_{u' < u} C(u,u') x^{u'} ⊗ w ⊗ x^{u-u'} v
        for (const auto& lower : lower_exponents(u)) {
          if (lower == u) continue;
          auto diff = minus(u, lower);
          const int j2 = j + exponent_degree(ring, diff);
          if (m.dim(j2) == 0) continue;
          Scalar coef = binomial(field, u, lower);
          if (coef.is_zero()) continue;
          auto w = m.act_monomial(diff, j).apply(v);
          auto& slot = pending[{j2, r, lower}];
          if (slot.empty()) slot.assign(m.dim(j2), field.zero());
          for (std::size_t k = 0; k < w.size(); ++k)
            if (!w[k].is_zero()) slot[k] -= coef * w[k];
        }
      }
      for (auto& [row, terms] : column) out.set(row, c * dm + bi, Polynomial::from_terms(std::move(terms)));
    }
  return out;
}

FreeComplex nielsen_II_resolution(const FiniteLengthModule& m) {
  const Ring& ring = m.ring();
  FreeComplex c{ring, {}, {}, std::nullopt};
  if (m.is_zero()) return c;
  for (int i = 1; i <= ring.nvars(); ++i)
    c.differentials.push_back(diagonal_matrix(koszul_differential(ring, i), m));
  c.modules.push_back(c.differentials.front().target());
  for (const auto& d : c.differentials) c.modules.push_back(d.source());
  c.augmentation = module_augmentation(m);
  return c;
}

FreeComplex nielsen_IIa_resolution(const FiniteLengthModule& n) {
  const Ring& ring = n.ring();
  FreeComplex c{ring, {}, {}, std::nullopt};
  if (n.is_zero()) return c;
  FreeComplex k = dual_koszul_complex(ring);
  for (const auto& d : k.differentials) c.differentials.push_back(diagonal_matrix(d, n));
  c.modules.push_back(c.differentials.front().target());
  for (const auto& d : c.differentials) c.modules.push_back(d.source());
  c.augmentation = module_augmentation(n);
  return c;
}

TensorElement tensor_basis_element(const FiniteLengthModule& m, const std::vector<int>& u, Subset s,
                                   const BasisLabel& b) {
  std::vector<Scalar> v(m.dim(b.degree), m.field().zero());
  v.at(b.index) = m.field().one();
  return TensorElement{{{b.degree, s, u}, std::move(v)}};
}

namespace {

TensorElement koszul_like(const FiniteLengthModule& m, const TensorElement& e, bool module_part) {
  const Ring& ring = m.ring();
  const FieldSpec& field = m.field();
  TensorElement out;
  for (const auto& [key, v] : e) {
    const auto& [j, s, u] = key;
    for (int l = 0; l < ring.nvars(); ++l) {
      SignedSubset r = ext_contract(l, s);
      if (r.sign == 0) continue;
      Scalar sign = field.from_int(r.sign);
      auto u2 = u;
      u2[static_cast<std::size_t>(l)] += 1;
      accumulate(out, {j, r.set, u2}, v, sign);
      if (module_part) {
        const int j2 = j + ring.weight(l);
        if (m.dim(j2) == 0) continue;
        accumulate(out, {j2, r.set, u}, m.act(l, j).apply(v), -sign);
      }
    }
  }
  return out;
}

}  // namespace

TensorElement apply_nielsen(const FiniteLengthModule& m, const TensorElement& e) {
  return koszul_like(m, e, true);
}

TensorElement apply_koszul(const FiniteLengthModule& m, const TensorElement& e) {
  return koszul_like(m, e, false);
}

TensorElement apply_epsilon(const FiniteLengthModule& m, const TensorElement& e) {
  const Ring& ring = m.ring();
  TensorElement out;
  for (const auto& [key, v] : e) {
    const auto& [j, s, u] = key;
    for (const auto& lower : lower_exponents(u)) {
      auto diff = minus(u, lower);
      const int j2 = j + exponent_degree(ring, diff);
      if (m.dim(j2) == 0) continue;
      Scalar coef = binomial(m.field(), u, lower);
      if (coef.is_zero()) continue;
      accumulate(out, {j2, s, lower}, m.act_monomial(diff, j).apply(v), coef);
    }
  }
  return out;
}

bool tensor_equal(const TensorElement& a, const TensorElement& b) {
  auto nonzero = [](const std::vector<Scalar>& v) {
    return std::any_of(v.begin(), v.end(), [](const Scalar& x) { return !x.is_zero(); });
  };
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it == b.end()) {
      if (nonzero(v)) return false;
    } else if (!(it->second == v)) {
      return false;
    }
  }
  for (const auto& [k, v] : b)
    if (!a.count(k) && nonzero(v)) return false;
  return true;
}

GradedFreeMatrix beta(int i, const FiniteLengthModule& m, const GradedPairing& pairing) {
  const Ring& ring = m.ring();
  const int n = ring.nvars();
  if (i < 0 || i > n) throw ConfigError("beta index out of range");
  if (!check_pairing(m, pairing)) throw ConfigError("beta needs a valid pairing");
  auto sb = exterior_basis(n, i), tb = exterior_basis(n, n - i);
  auto basis = m.basis();
  const std::size_t dm = basis.size();
  Matrix c(ring.field(), tb.size() * dm, sb.size() * dm);
  for (std::size_t si = 0; si < sb.size(); ++si) {
    Subset comp = complement(n, sb[si]);
    const std::size_t ti = subset_position(tb, comp);
    const Scalar sign = ring.field().from_int(wedge_sign(comp, sb[si]));
    for (std::size_t bi = 0; bi < dm; ++bi) {
      const BasisLabel& b = basis[bi];
      const int cdeg = pairing.s - b.degree;
      const Matrix& tau = pairing.tau.components.at(b.degree);
      for (std::size_t ci = 0; ci < m.dim(cdeg); ++ci) {
        const Scalar& val = tau(ci, b.index);
        if (val.is_zero()) continue;
        c(ti * dm + m.flat_index({cdeg, ci}), si * dm + bi) = sign * val;
      }
    }
  }
  return GradedFreeMatrix::from_constant(ring, nielsen_module(m, i),
                                         nielsen_module(m, n - i).dual(ring.total_weight() + pairing.s),
                                         c);
}

SelfdualResolution selfdual_resolution(const FiniteLengthModule& m, const GradedPairing& pairing) {
  const Ring& ring = m.ring();
  const int n = ring.nvars();
  if (n % 2 == 0) throw PreconditionError("selfdual resolutions need an odd number of variables");
  if (m.is_zero()) throw PreconditionError("selfdual resolution of the zero module");
  if (!check_pairing(m, pairing)) throw ConfigError("selfdual_resolution: the pairing fails its check");
  const int mid = (n - 1) / 2;
  const int shift = ring.total_weight() + pairing.s;

  SelfdualResolution out{FreeComplex{ring, {}, {}, std::nullopt}, mid, pairing.epsilon,
                         pairing.epsilon * (mid % 2 == 0 ? 1 : -1), shift};
  FreeComplex& c = out.complex;
  for (int i = 0; i <= mid; ++i) c.modules.push_back(nielsen_module(m, i));
  for (int i = mid + 1; i <= n; ++i) c.modules.push_back(nielsen_module(m, n - i).dual(shift));
  for (int i = 1; i <= mid; ++i) c.differentials.push_back(nielsen_differential(m, i));

  GradedFreeMatrix b = beta(mid + 1, m, pairing);
  auto inv = inverse(b.constant_part());
  if (!inv) throw PreconditionError("beta is not invertible");
  c.differentials.push_back(nielsen_differential(m, mid + 1).times_constant(*inv, c.modules[mid + 1]));
  for (int i = mid + 2; i <= n; ++i)
    c.differentials.push_back(c.differentials[static_cast<std::size_t>(n - i)].transpose(shift));
  c.augmentation = module_augmentation(m);
  return out;
}

const GradedFreeMatrix& middle_map(const FreeComplex& c) {
  if (c.length() % 2 == 0) throw PreconditionError("middle map needs a complex of odd length");
  return c.d((c.length() - 1) / 2 + 1);
}

}  // namespace dpres
