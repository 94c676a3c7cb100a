#include "dpres/dpmatrix.hpp"

#include <algorithm>

#include "dpres/error.hpp"

namespace dpres {

DPMatrix::DPMatrix(Ring ring, std::vector<int> row_twists, std::vector<int> col_twists)
    : ring_(std::move(ring)), row_twists_(std::move(row_twists)),
      col_twists_(std::move(col_twists)), entries_(row_twists_.size() * col_twists_.size()) {}

void DPMatrix::set(std::size_t i, std::size_t j, DPPolynomial f) {
  if (i >= rows() || j >= cols()) throw ConfigError("DPMatrix entry index out of range");
  for (const auto& t : f.terms()) {
    if (static_cast<int>(t.monomial.exponents.size()) != ring_.nvars())
      throw ConfigError("entry uses a different number of variables");
    if (!(t.coefficient.field() == ring_.field()))
      throw ConfigError("entry coefficients over " + t.coefficient.field().name() + ", matrix over " +
                        ring_.field().name());
  }
  const int want = -col_twists_[j] + row_twists_[i];
  if (!f.is_zero()) {
    auto deg = f.homogeneous_degree();
    if (!deg)
      throw ParseError("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                       ") is not homogeneous");
    if (*deg != want)
      throw ParseError("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                       ") has degree " + std::to_string(*deg) + ", expected " +
                       std::to_string(want));
  }
  entries_[i * cols() + j] = std::move(f);
}

bool DPMatrix::operator==(const DPMatrix& o) const {
  return ring_ == o.ring_ && row_twists_ == o.row_twists_ && col_twists_ == o.col_twists_ &&
         entries_ == o.entries_;
}

std::size_t ambient_dim(const Ring& ring, const std::vector<int>& col_twists, int degree) {
  std::size_t n = 0;
  for (int b : col_twists) n += monomials_of_degree(ring, degree + b).size();
  return n;
}

std::vector<Scalar> ambient_coordinates(const Ring& ring, const std::vector<int>& col_twists,
                                        int degree, const std::vector<Polynomial>& tuple) {
  if (tuple.size() != col_twists.size()) throw ConfigError("tuple length does not match the twists");
  std::vector<Scalar> v;
  for (std::size_t j = 0; j < tuple.size(); ++j) {
    auto c = coordinates(ring, tuple[j], degree + col_twists[j]);
    v.insert(v.end(), c.begin(), c.end());
  }
  return v;
}

namespace {

std::size_t dp_dim(const Ring& ring, int e) {
  return e > 0 ? 0 : monomials_of_degree(ring, -e).size();
}

// Contraction by x_l from K^d_e to K^d_{e+d_l}.
Matrix contraction_matrix(const Ring& ring, int l, int e) {
  const int e2 = e + ring.weight(l);
  Matrix m(ring.field(), dp_dim(ring, e2), dp_dim(ring, e));
  if (m.rows() == 0 || m.cols() == 0) return m;
  auto src = dp_monomials_of_degree(ring, -e);
  auto tgt = dp_monomials_of_degree(ring, -e2);
  for (std::size_t c = 0; c < src.size(); ++c) {
    std::vector<int> v = src[c].exponents;
    if (v[static_cast<std::size_t>(l)] == 0) continue;
    v[static_cast<std::size_t>(l)] -= 1;
    DPMonomial want{v, e2};
    auto it = std::lower_bound(tgt.begin(), tgt.end(), want, std::greater<>());
    m(static_cast<std::size_t>(it - tgt.begin()), c) = ring.field().one();
  }
  return m;
}

struct Window {
  int lo = 0;
  int hi = -1;
};

Window window_of(const DPMatrix& p) {
  if (p.rows() == 0 || p.cols() == 0) return {};
  return {-*std::max_element(p.col_twists().begin(), p.col_twists().end()),
          -*std::min_element(p.row_twists().begin(), p.row_twists().end())};
}

std::vector<std::size_t> pivot_rows(const Matrix& echelon_cols) {
  std::vector<std::size_t> piv;
  for (std::size_t c = 0; c < echelon_cols.cols(); ++c) {
    std::size_t r = 0;
    while (echelon_cols(r, c).is_zero()) ++r;
    piv.push_back(r);
  }
  return piv;
}

std::vector<Scalar> coords_at(const std::vector<Scalar>& v, const std::vector<std::size_t>& piv) {
  std::vector<Scalar> out;
  out.reserve(piv.size());
  for (auto r : piv) out.push_back(v[r]);
  return out;
}

}  // namespace

Matrix evaluation_matrix(const DPMatrix& p, int degree) {
  const Ring& ring = p.ring();
  std::size_t rows = 0;
  std::vector<std::size_t> row_off;
  for (int a : p.row_twists()) {
    row_off.push_back(rows);
    rows += dp_dim(ring, degree + a);
  }
  Matrix e(ring.field(), rows, ambient_dim(ring, p.col_twists(), degree));
  std::size_t col = 0;
  for (std::size_t j = 0; j < p.cols(); ++j) {
    for (const auto& mono : monomials_of_degree(ring, degree + p.col_twists()[j])) {
      Polynomial x(mono, ring.field().one());
      for (std::size_t i = 0; i < p.rows(); ++i) {
        int e_deg = degree + p.row_twists()[i];
        if (e_deg > 0 || p.entry(i, j).is_zero()) continue;
        DPPolynomial c = contract(ring, x, p.entry(i, j));
        if (c.is_zero()) continue;
        auto v = coordinates(ring, c, e_deg);
        for (std::size_t k = 0; k < v.size(); ++k) e(row_off[i] + k, col) = v[k];
      }
      ++col;
    }
  }
  return e;
}

GradedIdealWitness annihilator(const DPMatrix& p) {
  GradedIdealWitness w;
  Window win = window_of(p);
  w.lo = win.lo;
  w.hi = win.hi;
  for (int d = win.lo; d <= win.hi; ++d) w.basis.emplace(d, column_space(kernel(evaluation_matrix(p, d))));
  return w;
}

bool annihilates(const DPMatrix& p, const std::vector<Polynomial>& tuple) {
  std::optional<int> deg;
  for (std::size_t j = 0; j < tuple.size(); ++j) {
    if (tuple[j].is_zero()) continue;
    auto dj = tuple[j].homogeneous_degree();
    if (!dj) throw ConfigError("annihilates: inhomogeneous component");
    int d = *dj - p.col_twists()[j];
    if (deg && *deg != d) throw ConfigError("annihilates: components of different degrees");
    deg = d;
  }
  if (!deg) return true;
  auto v = ambient_coordinates(p.ring(), p.col_twists(), *deg, tuple);
  for (const auto& x : evaluation_matrix(p, *deg).apply(v))
    if (!x.is_zero()) return false;
  return true;
}

FiniteLengthModule quotient_module(const DPMatrix& p) {
  const Ring& ring = p.ring();
  Window win = window_of(p);
  if (win.lo > win.hi) return FiniteLengthModule(ring);

  std::map<int, Matrix> image;
  std::map<int, std::vector<std::size_t>> piv;
  for (int d = win.lo; d <= win.hi; ++d) {
    image[d] = column_space(evaluation_matrix(p, d));
    piv[d] = pivot_rows(image[d]);
  }
  auto dim = [&](int d) -> std::size_t {
    auto it = image.find(d);
    return it == image.end() ? 0 : it->second.cols();
  };

  std::vector<std::size_t> dims;
  for (int d = win.lo; d <= win.hi; ++d) dims.push_back(dim(d));
  std::vector<std::vector<Matrix>> action(static_cast<std::size_t>(ring.nvars()));
  for (int l = 0; l < ring.nvars(); ++l) {
    for (int d = win.lo; d <= win.hi; ++d) {
      const int d2 = d + ring.weight(l);
      Matrix a(ring.field(), dim(d2), dim(d));
      if (a.rows() > 0 && a.cols() > 0) {
        // block-diagonal contraction on ⊕_i K^d_{d+a_i}
        std::size_t src_rows = image[d].rows();
        std::size_t tgt_rows = image[d2].rows();
        Matrix big(ring.field(), tgt_rows, src_rows);
        std::size_t ro = 0, co = 0;
        for (int ai : p.row_twists()) {
          Matrix blk = contraction_matrix(ring, l, d + ai);
          for (std::size_t r = 0; r < blk.rows(); ++r)
            for (std::size_t c = 0; c < blk.cols(); ++c) big(ro + r, co + c) = blk(r, c);
          ro += dp_dim(ring, d2 + ai);
          co += dp_dim(ring, d + ai);
        }
        Matrix moved = big * image[d];
        for (std::size_t c = 0; c < moved.cols(); ++c) {
          auto v = coords_at(moved.column(c), piv[d2]);
          for (std::size_t r = 0; r < v.size(); ++r) a(r, c) = v[r];
        }
      }
      action[static_cast<std::size_t>(l)].push_back(std::move(a));
    }
  }
  return FiniteLengthModule(ring, win.lo, std::move(dims), std::move(action));
}

std::vector<ModuleElement> quotient_generators(const DPMatrix& p) {
  std::vector<ModuleElement> gens;
  const Ring& ring = p.ring();
  for (std::size_t j = 0; j < p.cols(); ++j) {
    int d = -p.col_twists()[j];
    Matrix img = column_space(evaluation_matrix(p, d));
    std::vector<Polynomial> tuple(p.cols());
    tuple[j] = Polynomial::constant(ring, ring.field().one());
    auto v = evaluation_matrix(p, d).apply(ambient_coordinates(ring, p.col_twists(), d, tuple));
    gens.push_back({d, img.cols() ? coords_at(v, pivot_rows(img)) : std::vector<Scalar>{}});
  }
  return gens;
}

DPMatrix transpose(const DPMatrix& p) {
  std::vector<int> rows, cols;
  for (int b : p.col_twists()) rows.push_back(-b);
  for (int a : p.row_twists()) cols.push_back(-a);
  DPMatrix t(p.ring(), rows, cols);
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) t.set(j, i, p.entry(i, j));
  return t;
}

namespace {

// P_ij = sum_u h_i(x^u g_j) X^(u) with h_i ∈ (M*)_{a_i}, given as functionals on M_{-a_i}.
DPMatrix presentation_from(const FiniteLengthModule& m, const std::vector<ModuleElement>& gens,
                           const std::vector<ModuleElement>& duals) {
  const Ring& ring = m.ring();
  std::vector<int> a, b;
  for (const auto& h : duals) a.push_back(h.degree);
  for (const auto& g : gens) b.push_back(-g.degree);
  DPMatrix p(ring, a, b);
  for (std::size_t i = 0; i < duals.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j) {
      int deg = -duals[i].degree - gens[j].degree;  // degree of r
      std::vector<DPPolynomial::Term> terms;
      for (const auto& mono : monomials_of_degree(ring, deg)) {
        auto v = m.act_monomial(mono.exponents, gens[j].degree).apply(gens[j].coords);
        Scalar c = ring.field().zero();
        for (std::size_t k = 0; k < v.size(); ++k) c += duals[i].coords[k] * v[k];
        if (!c.is_zero()) terms.push_back({DPMonomial{mono.exponents, -deg}, c});
      }
      p.set(i, j, DPPolynomial::from_terms(std::move(terms)));
    }
  return p;
}

}  // namespace

DPMatrix present(const FiniteLengthModule& m) {
  if (m.is_zero()) throw PreconditionError("present: the zero module has no presentation");
  return presentation_from(m, m.minimal_generators(), dual_module(m).minimal_generators());
}

DPMatrix symmetric_presentation(const FiniteLengthModule& m, const GradedPairing& pairing) {
  if (m.is_zero()) throw PreconditionError("symmetric_presentation: zero module");
  auto gens = m.minimal_generators();
  std::vector<ModuleElement> duals;
  for (const auto& g : gens) {
    const Matrix& t = pairing.tau.components.at(g.degree);
    duals.push_back({g.degree - pairing.s, t.apply(g.coords)});
  }
  return presentation_from(m, gens, duals);
}

std::optional<Symmetry> is_symmetric(const DPMatrix& p) {
  if (p.rows() != p.cols() || p.rows() == 0) return std::nullopt;
  const int s = p.row_twists()[0] + p.col_twists()[0];
  for (std::size_t i = 0; i < p.rows(); ++i)
    if (p.row_twists()[i] + p.col_twists()[i] != s) return std::nullopt;
  for (int eps : {1, -1}) {
    bool ok = true;
    for (std::size_t i = 0; i < p.rows() && ok; ++i)
      for (std::size_t j = 0; j < p.cols() && ok; ++j) {
        const DPPolynomial& x = p.entry(i, j);
        DPPolynomial y = eps > 0 ? p.entry(j, i) : DPPolynomial(-p.entry(j, i));
        ok = x == y;
      }
    if (ok) return Symmetry{s, eps};
  }
  return std::nullopt;
}

}  // namespace dpres
