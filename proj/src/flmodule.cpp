#include "dpres/flmodule.hpp"

#include <sstream>

#include "dpres/error.hpp"
#include "dpres/random.hpp"

namespace dpres {

FiniteLengthModule::FiniteLengthModule(Ring ring) : ring_(std::move(ring)) {
  action_.resize(static_cast<std::size_t>(ring_.nvars()));
}

FiniteLengthModule::FiniteLengthModule(Ring ring, int min_degree, std::vector<std::size_t> dims,
                                       std::vector<std::vector<Matrix>> action)
    : ring_(std::move(ring)), min_degree_(min_degree), dims_(std::move(dims)),
      action_(std::move(action)) {
  const auto n = static_cast<std::size_t>(ring_.nvars());
  if (action_.size() != n) throw ConfigError("module needs one action family per variable");
  auto dim_at = [&](int j) -> std::size_t {
    if (j < min_degree_ || j >= min_degree_ + static_cast<int>(dims_.size())) return 0;
    return dims_[static_cast<std::size_t>(j - min_degree_)];
  };
  for (std::size_t l = 0; l < n; ++l) {
    if (action_[l].size() != dims_.size())
      throw ConfigError("action of x" + std::to_string(l + 1) + " has the wrong number of degrees");
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      const Matrix& a = action_[l][k];
      int j = min_degree_ + static_cast<int>(k);
      if (a.cols() != dims_[k] || a.rows() != dim_at(j + ring_.weight(static_cast<int>(l))))
        throw ConfigError("action of x" + std::to_string(l + 1) + " in degree " +
                          std::to_string(j) + " has the wrong shape");
      if (!(a.field() == ring_.field()) && a.rows() * a.cols() > 0)
        throw ConfigError("action matrix over the wrong field");
    }
  }

  // trim zero components at both ends
  std::size_t lo = 0, hi = dims_.size();
  while (lo < hi && dims_[lo] == 0) ++lo;
  while (hi > lo && dims_[hi - 1] == 0) --hi;
  if (lo != 0 || hi != dims_.size()) {
    std::vector<std::size_t> d(dims_.begin() + static_cast<std::ptrdiff_t>(lo),
                               dims_.begin() + static_cast<std::ptrdiff_t>(hi));
    for (auto& fam : action_)
      fam = std::vector<Matrix>(fam.begin() + static_cast<std::ptrdiff_t>(lo),
                                fam.begin() + static_cast<std::ptrdiff_t>(hi));
    min_degree_ += static_cast<int>(lo);
    dims_ = std::move(d);
  }
  if (dims_.empty()) min_degree_ = 0;

  for (int l = 0; l < ring_.nvars(); ++l)
    for (int m = l + 1; m < ring_.nvars(); ++m)
      for (int j = min_degree_; j < min_degree_ + static_cast<int>(dims_.size()); ++j) {
        Matrix lm = act(l, j + ring_.weight(m)) * act(m, j);
        Matrix ml = act(m, j + ring_.weight(l)) * act(l, j);
        if (!(lm == ml))
          throw ConfigError("actions of x" + std::to_string(l + 1) + " and x" +
                            std::to_string(m + 1) + " do not commute in degree " +
                            std::to_string(j));
      }
}

int FiniteLengthModule::min_degree() const {
  if (is_zero()) throw PreconditionError("the zero module has no degrees");
  return min_degree_;
}

int FiniteLengthModule::max_degree() const {
  if (is_zero()) throw PreconditionError("the zero module has no degrees");
  return min_degree_ + static_cast<int>(dims_.size()) - 1;
}

std::size_t FiniteLengthModule::dim(int j) const {
  if (j < min_degree_ || j >= min_degree_ + static_cast<int>(dims_.size())) return 0;
  return dims_[static_cast<std::size_t>(j - min_degree_)];
}

std::size_t FiniteLengthModule::total_dim() const {
  std::size_t t = 0;
  for (auto d : dims_) t += d;
  return t;
}

std::map<int, std::size_t> FiniteLengthModule::hilbert_function() const {
  std::map<int, std::size_t> hf;
  for (std::size_t k = 0; k < dims_.size(); ++k) hf[min_degree_ + static_cast<int>(k)] = dims_[k];
  return hf;
}

Matrix FiniteLengthModule::act(int l, int j) const {
  int target = j + ring_.weight(l);
  if (j < min_degree_ || j >= min_degree_ + static_cast<int>(dims_.size()))
    return Matrix(field(), dim(target), 0);
  return action_[static_cast<std::size_t>(l)][static_cast<std::size_t>(j - min_degree_)];
}

Matrix FiniteLengthModule::act_monomial(const std::vector<int>& exponents, int j) const {
  Matrix m = Matrix::identity(field(), dim(j));
  int cur = j;
  for (std::size_t l = 0; l < exponents.size(); ++l)
    for (int e = 0; e < exponents[l]; ++e) {
      m = act(static_cast<int>(l), cur) * m;
      cur += ring_.weight(static_cast<int>(l));
    }
  return m;
}

ModuleElement FiniteLengthModule::apply(const Polynomial& p, const ModuleElement& v) const {
  auto deg = p.homogeneous_degree();
  if (p.is_zero()) return {v.degree, std::vector<Scalar>(dim(v.degree), field().zero())};
  if (!deg) throw ConfigError("module action needs a homogeneous polynomial");
  ModuleElement out{v.degree + *deg, std::vector<Scalar>(dim(v.degree + *deg), field().zero())};
  for (const auto& t : p.terms()) {
    auto w = act_monomial(t.monomial.exponents, v.degree).apply(v.coords);
    for (std::size_t i = 0; i < w.size(); ++i) out.coords[i] += t.coefficient * w[i];
  }
  return out;
}

std::vector<BasisLabel> FiniteLengthModule::basis() const {
  std::vector<BasisLabel> out;
  for (std::size_t k = 0; k < dims_.size(); ++k)
    for (std::size_t i = 0; i < dims_[k]; ++i) out.push_back({min_degree_ + static_cast<int>(k), i});
  return out;
}

std::size_t FiniteLengthModule::flat_index(const BasisLabel& b) const {
  std::size_t off = 0;
  for (int j = min_degree_; j < b.degree; ++j) off += dim(j);
  if (b.index >= dim(b.degree)) throw ConfigError("basis label out of range");
  return off + b.index;
}

std::vector<ModuleElement> FiniteLengthModule::minimal_generators() const {
  std::vector<ModuleElement> gens;
  for (int j = min_degree_; j < min_degree_ + static_cast<int>(dims_.size()); ++j) {
    std::size_t dj = dim(j);
    Matrix span(field(), dj, 0);
    for (int l = 0; l < ring_.nvars(); ++l) span = hstack(span, act(l, j - ring_.weight(l)));
    RowEchelon e = row_reduce(hstack(span, Matrix::identity(field(), dj)));
    for (auto p : e.pivots) {
      if (p < span.cols()) continue;
      std::vector<Scalar> v(dj, field().zero());
      v[p - span.cols()] = field().one();
      gens.push_back({j, std::move(v)});
    }
  }
  return gens;
}

std::vector<int> FiniteLengthModule::generator_degrees() const {
  std::vector<int> d;
  for (const auto& g : minimal_generators()) d.push_back(g.degree);
  return d;
}

FiniteLengthModule FiniteLengthModule::shifted(int t) const {
  if (is_zero()) return *this;
  return FiniteLengthModule(ring_, min_degree_ - t, dims_, action_);
}

std::string FiniteLengthModule::to_string() const {
  std::ostringstream os;
  os << "module over " << field().name() << "[x1..x" << ring_.nvars() << "], HF";
  if (is_zero()) return os.str() + " 0";
  os << " from degree " << min_degree_ << ":";
  for (auto d : dims_) os << ' ' << d;
  return os.str();
}

FiniteLengthModule direct_sum(const FiniteLengthModule& a, const FiniteLengthModule& b) {
  if (!(a.ring() == b.ring())) throw ConfigError("direct sum of modules over different rings");
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const Ring& ring = a.ring();
  int lo = std::min(a.min_degree(), b.min_degree());
  int hi = std::max(a.max_degree(), b.max_degree());
  std::vector<std::size_t> dims;
  for (int j = lo; j <= hi; ++j) dims.push_back(a.dim(j) + b.dim(j));
  std::vector<std::vector<Matrix>> action(static_cast<std::size_t>(ring.nvars()));
  for (int l = 0; l < ring.nvars(); ++l)
    for (int j = lo; j <= hi; ++j) {
      int t = j + ring.weight(l);
      Matrix blk(ring.field(), a.dim(t) + b.dim(t), a.dim(j) + b.dim(j));
      Matrix x = a.act(l, j), y = b.act(l, j);
      for (std::size_t r = 0; r < x.rows(); ++r)
        for (std::size_t c = 0; c < x.cols(); ++c) blk(r, c) = x(r, c);
      for (std::size_t r = 0; r < y.rows(); ++r)
        for (std::size_t c = 0; c < y.cols(); ++c) blk(x.rows() + r, x.cols() + c) = y(r, c);
      action[static_cast<std::size_t>(l)].push_back(std::move(blk));
    }
  return FiniteLengthModule(ring, lo, std::move(dims), std::move(action));
}

FiniteLengthModule dual_module(const FiniteLengthModule& m) {
  if (m.is_zero()) return m;
  const Ring& ring = m.ring();
  int lo = -m.max_degree(), hi = -m.min_degree();
  std::vector<std::size_t> dims;
  for (int j = lo; j <= hi; ++j) dims.push_back(m.dim(-j));
  std::vector<std::vector<Matrix>> action(static_cast<std::size_t>(ring.nvars()));
  for (int l = 0; l < ring.nvars(); ++l)
    for (int j = lo; j <= hi; ++j)
      action[static_cast<std::size_t>(l)].push_back(m.act(l, -j - ring.weight(l)).transpose());
  return FiniteLengthModule(ring, lo, std::move(dims), std::move(action));
}

FiniteLengthModule residue_field(const Ring& ring) {
  std::vector<std::vector<Matrix>> action(static_cast<std::size_t>(ring.nvars()));
  for (int l = 0; l < ring.nvars(); ++l)
    action[static_cast<std::size_t>(l)].push_back(Matrix(ring.field(), 0, 1));
  return FiniteLengthModule(ring, 0, {1}, std::move(action));
}

ModuleMap ModuleMap::scaled(const Scalar& c) const {
  ModuleMap r = *this;
  for (auto& [j, mat] : r.components) mat = mat.scaled(c);
  return r;
}

ModuleMap ModuleMap::operator+(const ModuleMap& o) const {
  if (twist != o.twist) throw ConfigError("adding module maps of different degrees");
  ModuleMap r = *this;
  for (const auto& [j, mat] : o.components) {
    auto it = r.components.find(j);
    if (it == r.components.end()) {
      r.components.emplace(j, mat);
    } else {
      it->second = it->second + mat;
    }
  }
  return r;
}

ModuleMap zero_map(const FiniteLengthModule& source, const FiniteLengthModule& target, int t) {
  ModuleMap f;
  f.twist = t;
  if (source.is_zero()) return f;
  for (int j = source.min_degree(); j <= source.max_degree(); ++j)
    f.components.emplace(j, Matrix(source.field(), target.dim(j + t), source.dim(j)));
  return f;
}

namespace {

Matrix component(const FiniteLengthModule& source, const FiniteLengthModule& target,
                 const ModuleMap& f, int j) {
  auto it = f.components.find(j);
  if (it != f.components.end()) return it->second;
  return Matrix(source.field(), target.dim(j + f.twist), source.dim(j));
}

// Layout of the unknown entries of a degree-t map, one block per source degree.
struct HomLayout {
  std::map<int, std::size_t> offset;
  std::size_t total = 0;
};

HomLayout hom_layout(const FiniteLengthModule& m, const FiniteLengthModule& n, int t) {
  HomLayout lay;
  if (m.is_zero()) return lay;
  for (int j = m.min_degree(); j <= m.max_degree(); ++j) {
    lay.offset[j] = lay.total;
    lay.total += n.dim(j + t) * m.dim(j);
  }
  return lay;
}

std::vector<Scalar> flatten(const FiniteLengthModule& m, const FiniteLengthModule& n,
                            const ModuleMap& f) {
  std::vector<Scalar> v;
  if (m.is_zero()) return v;
  for (int j = m.min_degree(); j <= m.max_degree(); ++j) {
    Matrix c = component(m, n, f, j);
    for (std::size_t r = 0; r < c.rows(); ++r)
      for (std::size_t k = 0; k < c.cols(); ++k) v.push_back(c(r, k));
  }
  return v;
}

ModuleMap combination(const std::vector<ModuleMap>& basis, const std::vector<Scalar>& coeffs,
                      const FiniteLengthModule& m, const FiniteLengthModule& n, int t) {
  ModuleMap f = zero_map(m, n, t);
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (!coeffs[k].is_zero()) f = f + basis[k].scaled(coeffs[k]);
  return f;
}

bool invertible_everywhere(const FiniteLengthModule& m, const FiniteLengthModule& n,
                           const ModuleMap& f) {
  if (m.is_zero()) return n.is_zero();
  for (int j = m.min_degree(); j <= m.max_degree(); ++j) {
    Matrix c = component(m, n, f, j);
    if (c.rows() != c.cols() || rank(c) != c.rows()) return false;
  }
  return true;
}

// Random, then (for small prime fields) exhaustive search for an invertible
// element of span(basis).
std::optional<ModuleMap> search_invertible(const std::vector<ModuleMap>& basis,
                                           const FiniteLengthModule& m,
                                           const FiniteLengthModule& n, int t,
                                           const PairingOptions& opt, std::uint64_t salt) {
  if (basis.empty()) return std::nullopt;
  const FieldSpec& field = m.field();
  Rng rng = derived_rng(opt.seed, salt);
  std::vector<Scalar> coeffs(basis.size());
  for (int trial = 0; trial < opt.random_trials; ++trial) {
    for (auto& c : coeffs) c = random_scalar(field, rng);
    ModuleMap f = combination(basis, coeffs, m, n, t);
    if (invertible_everywhere(m, n, f)) return f;
  }
  if (!field.is_prime_field()) return std::nullopt;
  const std::uint64_t q = field.characteristic();
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (count > opt.exhaustive_cap / q) return std::nullopt;
    count *= q;
  }
  std::vector<std::uint64_t> digits(basis.size(), 0);
  for (std::uint64_t idx = 1; idx < count; ++idx) {
    for (std::size_t k = 0; k < digits.size(); ++k) {
      if (++digits[k] < q) break;
      digits[k] = 0;
    }
    for (std::size_t k = 0; k < digits.size(); ++k)
      coeffs[k] = field.from_int(static_cast<std::int64_t>(digits[k]));
    ModuleMap f = combination(basis, coeffs, m, n, t);
    if (invertible_everywhere(m, n, f)) return f;
  }
  return std::nullopt;
}

}  // namespace

bool is_module_map(const FiniteLengthModule& source, const FiniteLengthModule& target,
                   const ModuleMap& f) {
  if (source.is_zero()) return true;
  const Ring& ring = source.ring();
  for (int j = source.min_degree(); j <= source.max_degree(); ++j) {
    Matrix c = component(source, target, f, j);
    if (c.rows() != target.dim(j + f.twist) || c.cols() != source.dim(j)) return false;
  }
  for (int l = 0; l < ring.nvars(); ++l)
    for (int j = source.min_degree(); j <= source.max_degree(); ++j) {
      int dl = ring.weight(l);
      Matrix lhs = target.act(l, j + f.twist) * component(source, target, f, j);
      Matrix rhs = component(source, target, f, j + dl) * source.act(l, j);
      if (!(lhs == rhs)) return false;
    }
  return true;
}

std::vector<ModuleMap> hom_space(const FiniteLengthModule& m, const FiniteLengthModule& n, int t) {
  if (!(m.ring() == n.ring())) throw ConfigError("hom between modules over different rings");
  std::vector<ModuleMap> out;
  HomLayout lay = hom_layout(m, n, t);
  if (lay.total == 0) return out;
  const Ring& ring = m.ring();
  const FieldSpec& field = m.field();

  std::vector<std::vector<Scalar>> rows;
  auto var = [&](int j, std::size_t r, std::size_t c) {
    return lay.offset.at(j) + r * m.dim(j) + c;
  };
  for (int l = 0; l < ring.nvars(); ++l) {
    int dl = ring.weight(l);
    for (int j = m.min_degree(); j <= m.max_degree(); ++j) {
      Matrix na = n.act(l, j + t);  // N_{j+t} -> N_{j+t+dl}
      Matrix ma = m.act(l, j);      // M_j -> M_{j+dl}
      std::size_t out_rows = n.dim(j + t + dl);
      bool upper = m.dim(j + dl) > 0;
      for (std::size_t p = 0; p < out_rows; ++p)
        for (std::size_t q = 0; q < m.dim(j); ++q) {
          std::vector<Scalar> row(lay.total, field.zero());
          bool any = false;
          for (std::size_t r = 0; r < n.dim(j + t); ++r)
            if (!na(p, r).is_zero()) {
              row[var(j, r, q)] += na(p, r);
              any = true;
            }
          if (upper)
            for (std::size_t r = 0; r < m.dim(j + dl); ++r)
              if (!ma(r, q).is_zero()) {
                row[var(j + dl, p, r)] -= ma(r, q);
                any = true;
              }
          if (any) rows.push_back(std::move(row));
        }
    }
  }
  Matrix constraints(field, rows.size(), lay.total);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < lay.total; ++k) constraints(i, k) = rows[i][k];
  Matrix ker = kernel(constraints);
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    ModuleMap f;
    f.twist = t;
    for (int j = m.min_degree(); j <= m.max_degree(); ++j) {
      Matrix blk(field, n.dim(j + t), m.dim(j));
      for (std::size_t r = 0; r < blk.rows(); ++r)
        for (std::size_t k = 0; k < blk.cols(); ++k) blk(r, k) = ker(var(j, r, k), c);
      f.components.emplace(j, std::move(blk));
    }
    out.push_back(std::move(f));
  }
  return out;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  ModuleMap h;
  h.twist = f.twist + g.twist;
  for (const auto& [j, mat] : f.components) {
    auto it = g.components.find(j + f.twist);
    if (it == g.components.end()) {
      if (mat.rows() != 0) throw ConfigError("compose: missing component in degree " +
                                             std::to_string(j + f.twist));
      continue;
    }
    h.components.emplace(j, it->second * mat);
  }
  return h;
}

bool is_isomorphism(const FiniteLengthModule& source, const FiniteLengthModule& target,
                    const ModuleMap& f) {
  if (f.twist != 0 || source.hilbert_function() != target.hilbert_function()) return false;
  return is_module_map(source, target, f) && invertible_everywhere(source, target, f);
}

std::optional<ModuleMap> find_isomorphism(const FiniteLengthModule& m, const FiniteLengthModule& n,
                                          std::uint64_t seed) {
  if (m.hilbert_function() != n.hilbert_function()) return std::nullopt;
  if (m.is_zero()) return ModuleMap{};
  PairingOptions opt;
  opt.seed = seed;
  return search_invertible(hom_space(m, n, 0), m, n, 0, opt, 0x150);
}

std::optional<GradedPairing> gorenstein_pairing(const FiniteLengthModule& m,
                                                const PairingOptions& options) {
  if (m.is_zero()) throw PreconditionError("gorenstein_pairing needs a nonzero module");
  const int s = m.min_degree() + m.max_degree();
  for (int j = m.min_degree(); j <= m.max_degree(); ++j)
    if (m.dim(j) != m.dim(s - j)) return std::nullopt;

  const FiniteLengthModule dual = dual_module(m);
  const std::vector<ModuleMap> hom = hom_space(m, dual, -s);
  if (hom.empty()) return std::nullopt;
  const FieldSpec& field = m.field();

  // The involution tau -> tau*(-s): (iota tau)_j = (tau_{s-j})^T.
  auto involution = [&](const ModuleMap& tau) {
    ModuleMap r;
    r.twist = -s;
    for (int j = m.min_degree(); j <= m.max_degree(); ++j)
      r.components.emplace(j, component(m, dual, tau, s - j).transpose());
    return r;
  };
  std::vector<std::vector<Scalar>> flat, flat_iota;
  for (const auto& h : hom) {
    flat.push_back(flatten(m, dual, h));
    flat_iota.push_back(flatten(m, dual, involution(h)));
  }

  std::vector<int> signs;
  if (options.only_sign == 0 || options.only_sign == 1) signs.push_back(1);
  if ((options.only_sign == 0 || options.only_sign == -1) && field.characteristic() != 2)
    signs.push_back(-1);
  if (options.only_sign == -1 && field.characteristic() == 2) signs.push_back(1);

  for (int eps : signs) {
    const std::size_t len = flat.front().size();
    Matrix a(field, len, hom.size());
    Scalar e = field.from_int(eps);
    for (std::size_t k = 0; k < hom.size(); ++k)
      for (std::size_t i = 0; i < len; ++i) a(i, k) = flat_iota[k][i] - e * flat[k][i];
    Matrix ker = kernel(a);
    std::vector<ModuleMap> sector;
    for (std::size_t c = 0; c < ker.cols(); ++c)
      sector.push_back(combination(hom, ker.column(c), m, dual, -s));
    auto tau = search_invertible(sector, m, dual, -s, options, eps > 0 ? 0x5e1 : 0x5e2);
    if (tau) return GradedPairing{s, std::move(*tau), eps};
  }
  return std::nullopt;
}

bool check_pairing(const FiniteLengthModule& m, const GradedPairing& pairing) {
  if (m.is_zero()) throw ConfigError("check_pairing on the zero module");
  const int s = pairing.s;
  if (pairing.tau.twist != -s) throw ConfigError("pairing map has the wrong degree");
  if (pairing.epsilon != 1 && pairing.epsilon != -1) throw ConfigError("pairing sign must be +-1");
  for (const auto& [j, mat] : pairing.tau.components)
    if (mat.rows() != m.dim(s - j) || mat.cols() != m.dim(j))
      throw ConfigError("pairing component in degree " + std::to_string(j) + " has the wrong shape");
  const FiniteLengthModule dual = dual_module(m);
  if (!invertible_everywhere(m, dual, pairing.tau)) return false;
  Scalar e = m.field().from_int(pairing.epsilon);
  for (int j = m.min_degree(); j <= m.max_degree(); ++j) {
    Matrix a = component(m, dual, pairing.tau, j);
    Matrix b = component(m, dual, pairing.tau, s - j).transpose().scaled(e);
    if (!(a == b)) return false;
  }
  return is_module_map(m, dual, pairing.tau);
}

Scalar pairing_value(const GradedPairing& pairing, const ModuleElement& a, const ModuleElement& b) {
  if (a.degree + b.degree != pairing.s) throw ConfigError("pairing_value: degrees do not add to s");
  auto it = pairing.tau.components.find(a.degree);
  if (it == pairing.tau.components.end() || a.coords.empty() || b.coords.empty()) return Scalar();
  auto f = it->second.apply(a.coords);
  Scalar v = f.empty() ? Scalar() : f[0].field().zero();
  for (std::size_t i = 0; i < f.size(); ++i) v += f[i] * b.coords[i];
  return v;
}

}  // namespace dpres
