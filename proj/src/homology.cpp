#include "dpres/homology.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "dpres/error.hpp"
#include "dpres/koszul.hpp"

namespace dpres {

std::size_t BettiTable::at(int i, int j) const {
  auto it = entries_.find({i, j});
  return it == entries_.end() ? 0 : it->second;
}

void BettiTable::add(int i, int j, std::size_t count) {
  if (count == 0) return;
  entries_[{i, j}] += count;
}

std::size_t BettiTable::rank(int i) const {
  std::size_t r = 0;
  for (const auto& [key, v] : entries_)
    if (key.first == i) r += v;
  return r;
}

int BettiTable::max_index() const {
  int m = -1;
  for (const auto& [key, v] : entries_) m = std::max(m, key.first);
  return m;
}

BettiTable BettiTable::normalized() const {
  std::optional<int> base;
  for (const auto& [key, v] : entries_)
    if (key.first == 0 && (!base || key.second < *base)) base = key.second;
  BettiTable t;
  for (const auto& [key, v] : entries_) t.add(key.first, key.second - base.value_or(0), v);
  return t;
}

std::string BettiTable::compact() const {
  std::map<int, std::vector<std::size_t>> rows;
  for (const auto& [key, v] : entries_) rows[key.second - key.first];
  for (int i = 0; i <= max_index(); ++i)
    for (auto& [row, vals] : rows)
      if (std::size_t v = at(i, row + i)) vals.push_back(v);
  std::ostringstream os;
  bool first_row = true;
  for (const auto& [row, vals] : rows) {
    os << (first_row ? "" : ";");
    first_row = false;
    for (std::size_t k = 0; k < vals.size(); ++k) os << (k ? "," : "") << vals[k];
  }
  return os.str();
}

std::string BettiTable::to_string() const {
  if (entries_.empty()) return "(empty)\n";
  int lo = 0, hi = 0;
  bool init = false;
  for (const auto& [key, v] : entries_) {
    int row = key.second - key.first;
    if (!init) {
      lo = hi = row;
      init = true;
    }
    lo = std::min(lo, row);
    hi = std::max(hi, row);
  }
  std::ostringstream os;
  os << "      ";
  for (int i = 0; i <= max_index(); ++i) os << ' ' << std::setw(5) << i;
  os << '\n';
  for (int row = lo; row <= hi; ++row) {
    os << std::setw(5) << row << ':';
    for (int i = 0; i <= max_index(); ++i) {
      std::size_t v = at(i, row + i);
      os << ' ' << std::setw(5) << (v ? std::to_string(v) : "-");
    }
    os << '\n';
  }
  return os.str();
}

namespace {

// Dense working copy of a complex; cancelled generators are flagged dead.
struct Workspace {
  Ring ring;
  std::vector<FreeModule> modules;
  std::vector<std::vector<bool>> alive;
  std::vector<std::vector<Polynomial>> grid;  // grid[i-1] for d_i, rows F_{i-1}

  explicit Workspace(const FreeComplex& c) : ring(c.ring), modules(c.modules) {
    for (const auto& m : modules) alive.emplace_back(m.rank(), true);
    for (const auto& d : c.differentials) {
      std::vector<Polynomial> g(d.rows() * d.cols());
      for (std::size_t r = 0; r < d.rows(); ++r)
        for (std::size_t k = 0; k < d.cols(); ++k) g[r * d.cols() + k] = d(r, k);
      grid.push_back(std::move(g));
    }
  }

  std::size_t cols(std::size_t i) const { return modules[i].rank(); }
  Polynomial& at(std::size_t i, std::size_t r, std::size_t c) { return grid[i - 1][r * cols(i) + c]; }

  bool find_unit(std::size_t i, std::size_t& r_out, std::size_t& c_out) {
    for (std::size_t r = 0; r < modules[i - 1].rank(); ++r) {
      if (!alive[i - 1][r]) continue;
      for (std::size_t c = 0; c < cols(i); ++c) {
        if (!alive[i][c]) continue;
        const Polynomial& p = at(i, r, c);
        if (!p.is_zero() && p.is_constant()) {
          r_out = r;
          c_out = c;
          return true;
        }
      }
    }
    return false;
  }

  // Gaussian cancellation of the unit at (r, c) of d_i.
  void cancel(std::size_t i, std::size_t r, std::size_t c) {
    Scalar uinv = at(i, r, c).constant_term().inverse();
    std::vector<std::pair<std::size_t, Polynomial>> column, row;
    for (std::size_t r2 = 0; r2 < modules[i - 1].rank(); ++r2)
      if (alive[i - 1][r2] && r2 != r && !at(i, r2, c).is_zero())
        column.emplace_back(r2, at(i, r2, c).scaled(uinv));
    for (std::size_t c2 = 0; c2 < cols(i); ++c2)
      if (alive[i][c2] && c2 != c && !at(i, r, c2).is_zero()) row.emplace_back(c2, at(i, r, c2));
    for (const auto& [r2, a] : column)
      for (const auto& [c2, b] : row) at(i, r2, c2) -= a * b;
    alive[i - 1][r] = false;
    alive[i][c] = false;
  }

  void reduce(std::size_t i) {
    std::size_t r = 0, c = 0;
    while (find_unit(i, r, c)) cancel(i, r, c);
  }

  FreeModule kept(std::size_t i) const {
    FreeModule f;
    for (std::size_t k = 0; k < modules[i].rank(); ++k)
      if (alive[i][k]) {
        f.twists.push_back(modules[i].twists[k]);
        if (k < modules[i].labels.size()) f.labels.push_back(modules[i].labels[k]);
      }
    return f;
  }

  GradedFreeMatrix kept_matrix(std::size_t i) {
    GradedFreeMatrix d(ring, kept(i), kept(i - 1));
    std::size_t rr = 0;
    for (std::size_t r = 0; r < modules[i - 1].rank(); ++r) {
      if (!alive[i - 1][r]) continue;
      std::size_t cc = 0;
      for (std::size_t c = 0; c < cols(i); ++c) {
        if (!alive[i][c]) continue;
        d.set(rr, cc++, at(i, r, c));
      }
      ++rr;
    }
    return d;
  }
};

std::vector<std::size_t> middle_out(std::size_t len) {
  std::vector<std::size_t> order;
  if (len == 0) return order;
  std::size_t mid = (len + 1) / 2;
  order.push_back(mid);
  for (std::size_t k = 1; order.size() < len; ++k) {
    if (mid > k) order.push_back(mid - k);
    if (mid + k <= len) order.push_back(mid + k);
  }
  return order;
}

std::optional<Augmentation> kept_augmentation(const FreeComplex& c, const std::vector<bool>& alive0) {
  if (!c.augmentation) return std::nullopt;
  Augmentation a{c.augmentation->module, {}};
  for (std::size_t k = 0; k < alive0.size(); ++k)
    if (alive0[k]) a.images.push_back(c.augmentation->images.at(k));
  return a;
}

}  // namespace

FreeComplex minimize(const FreeComplex& c, PivotOrder order) {
  Workspace w(c);
  std::vector<std::size_t> seq;
  if (order == PivotOrder::MiddleOut) {
    seq = middle_out(c.length());
  } else {
    for (std::size_t i = 1; i <= c.length(); ++i) seq.push_back(i);
  }
  for (auto i : seq) w.reduce(i);

  FreeComplex out{c.ring, {}, {}, std::nullopt};
  for (std::size_t i = 0; i < c.modules.size(); ++i) out.modules.push_back(w.kept(i));
  for (std::size_t i = 1; i <= c.length(); ++i) out.differentials.push_back(w.kept_matrix(i));
  if (!c.modules.empty()) out.augmentation = kept_augmentation(c, w.alive[0]);
  return out;
}

FreeComplex minimize_symmetric(const FreeComplex& c, int m, int epsilon) {
  const std::size_t n = c.length();
  if (m < 0 || n != static_cast<std::size_t>(2 * m + 1))
    throw PreconditionError("minimize_symmetric: complex length must be 2m+1");
  if (epsilon != 1 && epsilon != -1) throw ConfigError("minimize_symmetric: epsilon must be +-1");
  const FieldSpec& field = c.ring.field();
  const int sigma = epsilon * (m % 2 == 0 ? 1 : -1);
  if (sigma == 1 && field.characteristic() == 2)
    throw PreconditionError(
        "symmetric minimization of a symmetric middle form needs characteristic != 2; use minimize");

  const auto mm = static_cast<std::size_t>(m);
  if (c.modules[0].rank() != c.modules[n].rank())
    throw PreconditionError("minimize_symmetric: F_0 and F_n differ in rank");
  const int shift = c.modules[0].rank() ? c.modules[0].twists[0] + c.modules[n].twists[0] : 0;
  for (std::size_t i = 0; i <= mm; ++i)
    if (c.modules[n - i].twists != c.modules[i].dual(shift).twists)
      throw PreconditionError("minimize_symmetric: F_" + std::to_string(n - i) +
                              " is not the dual of F_" + std::to_string(i));
  for (std::size_t i = 1; i <= mm; ++i)
    if (!c.d(n + 1 - i).same_entries(c.d(i).transpose(shift)))
      throw PreconditionError("minimize_symmetric: d_" + std::to_string(n + 1 - i) +
                              " is not the transpose of d_" + std::to_string(i));
  const GradedFreeMatrix& t0 = c.d(mm + 1);
  if (!t0.transpose(shift).same_entries(t0.scaled(field.from_int(sigma))))
    throw PreconditionError("minimize_symmetric: middle map does not have the stated symmetry");

  // Left half d_1..d_m plus the middle map; F_{m+1} shares generators with F_m.
  FreeComplex left{c.ring, {}, {}, c.augmentation};
  for (std::size_t i = 0; i <= mm + 1; ++i) left.modules.push_back(c.modules[i]);
  for (std::size_t i = 1; i <= mm + 1; ++i) left.differentials.push_back(c.d(i));
  Workspace w(left);
  const std::size_t tm = mm + 1;
  auto T = [&](std::size_t a, std::size_t b) -> Polynomial& { return w.at(tm, a, b); };
  auto alive = [&](std::size_t a) { return static_cast<bool>(w.alive[mm][a]); };
  auto kill = [&](std::size_t a) {
    w.alive[mm][a] = false;
    w.alive[mm + 1][a] = false;
  };
  const std::size_t rk = c.modules[mm].rank();
  auto is_unit = [](const Polynomial& p) { return !p.is_zero() && p.is_constant(); };

  for (;;) {
    bool done = false;
    if (sigma == 1)
      for (std::size_t a = 0; a < rk && !done; ++a) {
        if (!alive(a) || !is_unit(T(a, a))) continue;
        w.cancel(tm, a, a);
        w.alive[mm][a] = false;
        w.alive[mm + 1][a] = false;
        done = true;
      }
    for (std::size_t a = 0; a < rk && !done; ++a) {
      if (!alive(a)) continue;
      for (std::size_t b = a + 1; b < rk && !done; ++b) {
        if (!alive(b) || !is_unit(T(a, b))) continue;
        Polynomial det = T(a, a) * T(b, b) - T(a, b) * T(b, a);
        if (!is_unit(det)) continue;
        Scalar dinv = det.constant_term().inverse();
        // B^{-1} = adj(B) / det
        Polynomial i00 = T(b, b).scaled(dinv), i01 = (-T(a, b)).scaled(dinv);
        Polynomial i10 = (-T(b, a)).scaled(dinv), i11 = T(a, a).scaled(dinv);
        std::vector<std::tuple<std::size_t, Polynomial, Polynomial>> lefts;
        for (std::size_t r = 0; r < rk; ++r) {
          if (!alive(r) || r == a || r == b) continue;
          const Polynomial& ta = T(r, a);
          const Polynomial& tb = T(r, b);
          if (ta.is_zero() && tb.is_zero()) continue;
          lefts.emplace_back(r, ta * i00 + tb * i10, ta * i01 + tb * i11);
        }
        for (const auto& [r, l0, l1] : lefts)
          for (std::size_t k = 0; k < rk; ++k) {
            if (!alive(k) || k == a || k == b) continue;
            const Polynomial& ua = T(a, k);
            const Polynomial& ub = T(b, k);
            if (ua.is_zero() && ub.is_zero()) continue;
            T(r, k) -= l0 * ua + l1 * ub;
          }
        kill(a);
        kill(b);
        done = true;
      }
    }
    if (!done) break;
  }
  for (std::size_t a = 0; a < rk; ++a)
    for (std::size_t b = 0; b < rk; ++b)
      if (alive(a) && alive(b) && is_unit(T(a, b)))
        throw PreconditionError("minimize_symmetric: unit entries remain that admit no symmetric pivot");

  for (std::size_t i = mm; i >= 1; --i) {
    std::size_t r = 0, k = 0;
    while (w.find_unit(i, r, k)) {
      w.cancel(i, r, k);
      if (i == mm) w.alive[mm + 1][k] = false;
    }
  }

  FreeComplex out{c.ring, {}, {}, std::nullopt};
  for (std::size_t i = 0; i <= mm; ++i) out.modules.push_back(w.kept(i));
  for (std::size_t i = mm + 1; i <= n; ++i) out.modules.push_back(out.modules[n - i].dual(shift));
  for (std::size_t i = 1; i <= mm; ++i) out.differentials.push_back(w.kept_matrix(i));
  {
    GradedFreeMatrix t(c.ring, out.modules[mm + 1], out.modules[mm]);
    std::size_t rr = 0;
    for (std::size_t r = 0; r < rk; ++r) {
      if (!alive(r)) continue;
      std::size_t cc = 0;
      for (std::size_t k = 0; k < rk; ++k) {
        if (!alive(k)) continue;
        t.set(rr, cc++, T(r, k));
      }
      ++rr;
    }
    out.differentials.push_back(std::move(t));
  }
  for (std::size_t i = mm + 2; i <= n; ++i)
    out.differentials.push_back(out.differentials[n - i].transpose(shift));
  out.augmentation = kept_augmentation(c, w.alive[0]);
  return out;
}

BettiTable betti_table(const FreeComplex& c) {
  for (std::size_t i = 1; i <= c.length(); ++i)
    if (c.d(i).has_unit_entry())
      throw PreconditionError("betti_table: d_" + std::to_string(i) + " has a unit entry; minimize first");
  BettiTable t;
  for (std::size_t i = 0; i < c.modules.size(); ++i)
    for (int tw : c.modules[i].twists) t.add(static_cast<int>(i), tw);
  return t;
}

namespace {

// Koszul-tensor-M strand: (⋀^i W ⊗ M)_j -> (⋀^{i-1} W ⊗ M)_j.
Matrix tor_map(const FiniteLengthModule& m, int i, int j) {
  const Ring& ring = m.ring();
  const int n = ring.nvars();
  auto src = exterior_basis(n, i), tgt = exterior_basis(n, i - 1);
  std::vector<std::size_t> soff, toff;
  std::size_t sdim = 0, tdim = 0;
  for (Subset s : src) {
    soff.push_back(sdim);
    sdim += m.dim(j - subset_degree(ring, s));
  }
  for (Subset s : tgt) {
    toff.push_back(tdim);
    tdim += m.dim(j - subset_degree(ring, s));
  }
  Matrix a(m.field(), tdim, sdim);
  for (std::size_t si = 0; si < src.size(); ++si) {
    const int mdeg = j - subset_degree(ring, src[si]);
    if (m.dim(mdeg) == 0) continue;
    for (int l = 0; l < n; ++l) {
      SignedSubset r = ext_contract(l, src[si]);
      if (r.sign == 0) continue;
      auto ti = static_cast<std::size_t>(std::lower_bound(tgt.begin(), tgt.end(), r.set) - tgt.begin());
      Matrix x = m.act(l, mdeg);
      Scalar sign = m.field().from_int(r.sign);
      for (std::size_t p = 0; p < x.rows(); ++p)
        for (std::size_t q = 0; q < x.cols(); ++q)
          if (!x(p, q).is_zero()) a(toff[ti] + p, soff[si] + q) += sign * x(p, q);
    }
  }
  return a;
}

std::size_t tor_dim(const FiniteLengthModule& m, int i, int j) {
  std::size_t d = 0;
  for (Subset s : exterior_basis(m.ring().nvars(), i)) d += m.dim(j - subset_degree(m.ring(), s));
  return d;
}

}  // namespace

BettiTable tor_betti(const FiniteLengthModule& m) {
  BettiTable t;
  if (m.is_zero()) return t;
  const int n = m.ring().nvars();
  const int lo = m.min_degree(), hi = m.max_degree() + m.ring().total_weight();
  for (int j = lo; j <= hi; ++j) {
    std::vector<std::size_t> rk(static_cast<std::size_t>(n) + 2, 0);
    for (int i = 1; i <= n; ++i) rk[static_cast<std::size_t>(i)] = rank(tor_map(m, i, j));
    for (int i = 0; i <= n; ++i) {
      std::size_t dim = tor_dim(m, i, j);
      std::size_t ker = dim - rk[static_cast<std::size_t>(i)];
      t.add(i, j, ker - rk[static_cast<std::size_t>(i) + 1]);
    }
  }
  return t;
}

bool StrandReport::all_exact() const {
  return std::all_of(degrees.begin(), degrees.end(),
                     [](const Degree& d) { return d.exact && d.augmentation_ok; });
}

StrandReport verify_strands(const FreeComplex& c, const FiniteLengthModule& m, int lo, int hi) {
  StrandReport rep;
  const Ring& ring = c.ring;
  const std::size_t len = c.length();
  for (int j = lo; j <= hi; ++j) {
    StrandReport::Degree d;
    d.degree = j;
    d.module_dim = m.dim(j);
    std::vector<Matrix> mats;
    for (std::size_t i = 0; i < c.modules.size(); ++i) d.dims.push_back(strand_dim(ring, c.modules[i], j));
    for (std::size_t i = 1; i <= len; ++i) {
      mats.push_back(strand_matrix(c.d(i), j));
      d.ranks.push_back(rank(mats.back()));
    }
    for (std::size_t i = 1; i <= len; ++i) {
      std::size_t next = i < len ? d.ranks[i] : 0;
      if (d.dims[i] != d.ranks[i - 1] + next) d.exact = false;
    }
    d.h0 = d.dims.empty() ? 0 : d.dims[0] - (len ? d.ranks[0] : 0);
    if (d.h0 != d.module_dim) d.exact = false;

    if (c.augmentation && !c.modules.empty()) {
      const auto& aug = *c.augmentation;
      Matrix e(ring.field(), m.dim(j), d.dims[0]);
      std::size_t col = 0;
      for (std::size_t r = 0; r < c.modules[0].rank(); ++r)
        for (const auto& mono : monomials_of_degree(ring, j - c.modules[0].twists[r])) {
          const ModuleElement& g = aug.images[r];
          if (m.dim(j) > 0 && m.dim(g.degree) > 0) {
            auto v = m.act_monomial(mono.exponents, g.degree).apply(g.coords);
            for (std::size_t k = 0; k < v.size(); ++k) e(k, col) = v[k];
          }
          ++col;
        }
      if (rank(e) != m.dim(j)) d.augmentation_ok = false;
      if (len && !(e * mats[0]).is_zero()) d.augmentation_ok = false;
    }
    rep.degrees.push_back(std::move(d));
  }
  return rep;
}

StrandReport verify_strands(const FreeComplex& c, const FiniteLengthModule& m) {
  if (m.is_zero()) return {};
  return verify_strands(c, m, m.min_degree(), m.max_degree() + c.ring.total_weight() + 2);
}

std::vector<Scalar> herzog_kuhl(const std::vector<int>& degrees) {
  if (degrees.size() < 2) throw ConfigError("herzog_kuhl needs at least two degrees");
  for (std::size_t i = 1; i < degrees.size(); ++i)
    if (degrees[i] <= degrees[i - 1]) throw ConfigError("degree sequence must be strictly increasing");
  const FieldSpec qq = FieldSpec::rationals();
  const std::size_t c = degrees.size() - 1;
  Matrix a(qq, c, c), rhs(qq, c, 1);
  for (std::size_t k = 0; k < c; ++k) {
    for (std::size_t i = 1; i <= c; ++i) {
      mpz_class p;
      mpz_class base = degrees[i];
      mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k));
      if (i % 2) p = -p;
      a(k, i - 1) = qq.from_fraction(p, 1);
    }
    mpz_class base = degrees[0], p;
    mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k));
    rhs(k, 0) = qq.from_fraction(-p, 1);
  }
  auto inv = inverse(a);
  if (!inv) throw PreconditionError("Herzog-Kuehl system is singular");
  Matrix x = *inv * rhs;
  std::vector<Scalar> beta{qq.one()};
  for (std::size_t i = 0; i < c; ++i) {
    if (x(i, 0).to_rational() <= 0)
      throw PreconditionError("Herzog-Kuehl solution has a non-positive entry");
    beta.push_back(x(i, 0));
  }
  return beta;
}

namespace {

long long choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

Char2Constraints char2_constraints(int ell) {
  if (ell < 3) throw PreconditionError("char2_constraints needs l >= 3");
  if (ell > 20) throw ConfigError("char2_constraints: l too large");
  Char2Constraints c;
  c.ell = ell;
  c.n = (1 << ell) - 3;
  c.m = (c.n - 1) / 2;
  c.a_max = static_cast<int>(c.n * choose(c.n, c.m) / 2 - choose(c.n, c.m - 1) - 1);
  return c;
}

bool Char2Constraints::check(const BettiTable& table) const {
  BettiTable t = table.normalized();
  std::size_t x = t.at(m + 1, m + 2), y = t.at(m, m + 2);
  return x == y && x % 2 == 1 && x <= static_cast<std::size_t>(2 * a_max + 1);
}

std::string Char2Constraints::explain(const BettiTable& table) const {
  BettiTable t = table.normalized();
  std::size_t x = t.at(m + 1, m + 2), y = t.at(m, m + 2);
  std::ostringstream os;
  os << "beta_{" << m + 1 << "," << m + 2 << "}=" << x << " beta_{" << m << "," << m + 2 << "}=" << y
     << (x == y ? " equal" : " differ") << (x % 2 ? ", odd" : ", even")
     << (x <= static_cast<std::size_t>(2 * a_max + 1) ? ", within bound " : ", above bound ")
     << 2 * a_max + 1;
  return os.str();
}

std::vector<int> obstructed_degree_sequence(int ell) {
  if (ell < 2) throw PreconditionError("obstructed_degree_sequence needs l >= 2");
  if (ell > 20) throw ConfigError("obstructed_degree_sequence: l too large");
  const int h = 1 << (ell - 1), p = 1 << ell;
  std::vector<int> seq{0};
  for (int k = h + 1; k <= p - 1; ++k) seq.push_back(k);
  for (int k = p + 1; k <= p + h - 1; ++k) seq.push_back(k);
  seq.push_back(2 * p);
  return seq;
}

}  // namespace dpres
