#include "dpres/complex.hpp"

#include <algorithm>
#include <sstream>

#include "dpres/error.hpp"

namespace dpres {

FreeModule FreeModule::dual(int shift) const {
  FreeModule f = *this;
  for (auto& t : f.twists) t = shift - t;
  return f;
}

GradedFreeMatrix::GradedFreeMatrix(Ring ring, FreeModule source, FreeModule target)
    : ring_(std::move(ring)), source_(std::move(source)), target_(std::move(target)),
      entries_(source_.rank() * target_.rank()) {}

GradedFreeMatrix GradedFreeMatrix::from_constant(Ring ring, FreeModule source, FreeModule target,
                                                 const Matrix& m) {
  if (m.rows() != target.rank() || m.cols() != source.rank())
    throw ConfigError("constant matrix does not fit the free modules");
  GradedFreeMatrix g(ring, std::move(source), std::move(target));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero()) g.set(r, c, Polynomial::constant(g.ring_, m(r, c)));
  return g;
}

void GradedFreeMatrix::set(std::size_t r, std::size_t c, Polynomial p) {
  if (!p.is_zero()) {
    auto deg = p.homogeneous_degree();
    if (!deg || *deg != entry_degree(r, c))
      throw ConfigError("entry (" + std::to_string(r) + "," + std::to_string(c) + ") = " +
                        p.to_string() + " should have degree " +
                        std::to_string(entry_degree(r, c)));
  }
  entries_[r * cols() + c] = std::move(p);
}

GradedFreeMatrix GradedFreeMatrix::operator*(const GradedFreeMatrix& o) const {
  if (cols() != o.rows() || source_.twists != o.target_.twists)
    throw ConfigError("composing free maps with mismatched modules");
  GradedFreeMatrix p(ring_, o.source_, target_);
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t k = 0; k < cols(); ++k) {
      const Polynomial& a = (*this)(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < o.cols(); ++c) {
        const Polynomial& b = o(k, c);
        if (!b.is_zero()) p.entries_[r * p.cols() + c] += a * b;
      }
    }
  return p;
}

GradedFreeMatrix GradedFreeMatrix::times_constant(const Matrix& m,
                                                  const FreeModule& new_source) const {
  if (m.rows() != cols() || m.cols() != new_source.rank())
    throw ConfigError("times_constant: shape mismatch");
  GradedFreeMatrix p(ring_, new_source, target_);
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t k = 0; k < cols(); ++k) {
      const Polynomial& a = (*this)(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (!m(k, c).is_zero()) p.entries_[r * p.cols() + c] += a.scaled(m(k, c));
    }
  for (std::size_t r = 0; r < p.rows(); ++r)
    for (std::size_t c = 0; c < p.cols(); ++c) p.set(r, c, p(r, c));
  return p;
}

GradedFreeMatrix GradedFreeMatrix::operator+(const GradedFreeMatrix& o) const {
  if (rows() != o.rows() || cols() != o.cols()) throw ConfigError("adding free maps of different shapes");
  GradedFreeMatrix s = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) s.entries_[i] += o.entries_[i];
  return s;
}

GradedFreeMatrix GradedFreeMatrix::operator-() const {
  GradedFreeMatrix s = *this;
  for (auto& e : s.entries_) e = -e;
  return s;
}

GradedFreeMatrix GradedFreeMatrix::scaled(const Scalar& x) const {
  GradedFreeMatrix s = *this;
  for (auto& e : s.entries_) e = e.scaled(x);
  return s;
}

GradedFreeMatrix GradedFreeMatrix::transpose(int shift) const {
  GradedFreeMatrix t(ring_, target_.dual(shift), source_.dual(shift));
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = 0; c < cols(); ++c) t.entries_[c * t.cols() + r] = (*this)(r, c);
  return t;
}

bool GradedFreeMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

bool GradedFreeMatrix::same_entries(const GradedFreeMatrix& o) const {
  return rows() == o.rows() && cols() == o.cols() && entries_ == o.entries_;
}

bool GradedFreeMatrix::is_constant() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Polynomial& p) { return p.is_constant(); });
}

Matrix GradedFreeMatrix::constant_part() const {
  Matrix m(ring_.field(), rows(), cols());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = 0; c < cols(); ++c) {
      const Polynomial& p = (*this)(r, c);
      if (!p.is_zero()) m(r, c) = p.constant_term();
    }
  return m;
}

bool GradedFreeMatrix::has_unit_entry() const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [](const Polynomial& p) { return !p.is_zero() && p.is_constant(); });
}

std::string GradedFreeMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows(); ++r) {
    os << '[';
    for (std::size_t c = 0; c < cols(); ++c) os << (c ? ", " : "") << (*this)(r, c).to_string();
    os << "]\n";
  }
  return os.str();
}

std::vector<std::size_t> FreeComplex::ranks() const {
  std::vector<std::size_t> r;
  for (const auto& m : modules) r.push_back(m.rank());
  return r;
}

std::size_t strand_dim(const Ring& ring, const FreeModule& f, int j) {
  std::size_t n = 0;
  for (int t : f.twists) n += monomials_of_degree(ring, j - t).size();
  return n;
}

Matrix strand_matrix(const GradedFreeMatrix& f, int j) {
  const Ring& ring = f.ring();
  std::vector<std::size_t> row_off;
  std::size_t rows = 0;
  for (int t : f.target().twists) {
    row_off.push_back(rows);
    rows += monomials_of_degree(ring, j - t).size();
  }
  Matrix m(ring.field(), rows, strand_dim(ring, f.source(), j));
  std::size_t col = 0;
  for (std::size_t c = 0; c < f.cols(); ++c) {
    for (const auto& mono : monomials_of_degree(ring, j - f.source().twists[c])) {
      for (std::size_t r = 0; r < f.rows(); ++r) {
        const Polynomial& p = f(r, c);
        if (p.is_zero()) continue;
        const int deg = j - f.target().twists[r];
        for (const auto& t : p.terms()) {
          Monomial prod = t.monomial * mono;
          m(row_off[r] + monomial_index(ring, prod.exponents, deg), col) += t.coefficient;
        }
      }
      ++col;
    }
  }
  return m;
}

bool is_complex(const FreeComplex& c) {
  if (c.modules.size() != c.differentials.size() + 1) return false;
  for (std::size_t i = 1; i <= c.length(); ++i) {
    const auto& d = c.d(i);
    if (d.source().twists != c.modules[i].twists || d.target().twists != c.modules[i - 1].twists)
      return false;
  }
  for (std::size_t i = 1; i < c.length(); ++i)
    if (!(c.d(i) * c.d(i + 1)).is_zero()) return false;
  if (c.augmentation && c.length() >= 1) {
    const auto& aug = *c.augmentation;
    const auto& d1 = c.d(1);
    if (aug.images.size() != c.modules[0].rank()) return false;
    for (std::size_t col = 0; col < d1.cols(); ++col) {
      int deg = d1.source().twists[col];
      std::vector<Scalar> acc(aug.module.dim(deg), c.ring.field().zero());
      for (std::size_t r = 0; r < d1.rows(); ++r) {
        if (d1(r, col).is_zero()) continue;
        auto v = aug.module.apply(d1(r, col), aug.images[r]);
        for (std::size_t k = 0; k < v.coords.size(); ++k) acc[k] += v.coords[k];
      }
      for (const auto& x : acc)
        if (!x.is_zero()) return false;
    }
  }
  return true;
}

FiniteLengthModule cokernel_module(const FreeComplex& c, int top) {
  const Ring& ring = c.ring;
  const FreeModule& f0 = c.modules.at(0);
  if (f0.rank() == 0) return FiniteLengthModule(ring);
  const int lo = *std::min_element(f0.twists.begin(), f0.twists.end());
  if (top < lo) return FiniteLengthModule(ring);

  struct Slice {
    Matrix image;                       // reduced column echelon
    std::vector<std::size_t> pivots;    // pivot row of each image column
    std::vector<std::size_t> free_rows; // rows indexing the quotient basis
  };
  std::vector<Slice> slices;
  for (int j = lo; j <= top; ++j) {
    Slice s;
    std::size_t dim = strand_dim(ring, f0, j);
    s.image = c.length() >= 1 ? column_space(strand_matrix(c.d(1), j)) : Matrix(ring.field(), dim, 0);
    std::vector<bool> is_piv(dim, false);
    for (std::size_t k = 0; k < s.image.cols(); ++k) {
      std::size_t r = 0;
      while (s.image(r, k).is_zero()) ++r;
      s.pivots.push_back(r);
      is_piv[r] = true;
    }
    for (std::size_t r = 0; r < dim; ++r)
      if (!is_piv[r]) s.free_rows.push_back(r);
    slices.push_back(std::move(s));
  }

  // offsets of summands inside the degree-j strand
  auto locate = [&](int j, std::size_t summand, const std::vector<int>& exps) {
    std::size_t off = 0;
    for (std::size_t r = 0; r < summand; ++r) off += monomials_of_degree(ring, j - f0.twists[r]).size();
    return off + monomial_index(ring, exps, j - f0.twists[summand]);
  };
  struct Coord {
    std::size_t summand;
    std::vector<int> exps;
  };
  auto decode = [&](int j, std::size_t row) {
    for (std::size_t r = 0; r < f0.rank(); ++r) {
      auto monos = monomials_of_degree(ring, j - f0.twists[r]);
      if (row < monos.size()) return Coord{r, monos[row].exponents};
      row -= monos.size();
    }
    throw ConfigError("cokernel: strand index out of range");
  };

  std::vector<std::size_t> dims;
  for (const auto& s : slices) dims.push_back(s.free_rows.size());
  std::vector<std::vector<Matrix>> action(static_cast<std::size_t>(ring.nvars()));
  for (int l = 0; l < ring.nvars(); ++l) {
    for (int j = lo; j <= top; ++j) {
      const Slice& src = slices[static_cast<std::size_t>(j - lo)];
      const int j2 = j + ring.weight(l);
      const std::size_t tdim = j2 <= top ? slices[static_cast<std::size_t>(j2 - lo)].free_rows.size() : 0;
      Matrix a(ring.field(), tdim, src.free_rows.size());
      if (tdim > 0) {
        const Slice& tgt = slices[static_cast<std::size_t>(j2 - lo)];
        const std::size_t full = strand_dim(ring, f0, j2);
        for (std::size_t k = 0; k < src.free_rows.size(); ++k) {
          Coord co = decode(j, src.free_rows[k]);
          co.exps[static_cast<std::size_t>(l)] += 1;
          std::vector<Scalar> v(full, ring.field().zero());
          v[locate(j2, co.summand, co.exps)] = ring.field().one();
          for (std::size_t q = 0; q < tgt.pivots.size(); ++q) {
            Scalar coef = v[tgt.pivots[q]];
            if (coef.is_zero()) continue;
            for (std::size_t r = 0; r < full; ++r)
              if (!tgt.image(r, q).is_zero()) v[r] -= coef * tgt.image(r, q);
          }
          for (std::size_t r = 0; r < tgt.free_rows.size(); ++r) a(r, k) = v[tgt.free_rows[r]];
        }
      }
      action[static_cast<std::size_t>(l)].push_back(std::move(a));
    }
  }
  return FiniteLengthModule(ring, lo, std::move(dims), std::move(action));
}

}  // namespace dpres
