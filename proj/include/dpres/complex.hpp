#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dpres/algebra.hpp"
#include "dpres/flmodule.hpp"
#include "dpres/linalg.hpp"

namespace dpres {

/// ⊕ R(-t) over the listed twists t. Labels are free-form names for the generators.
struct FreeModule {
  std::vector<int> twists;
  std::vector<std::string> labels;

  std::size_t rank() const { return twists.size(); }
  /// Twists t -> shift - t, labels kept.
  FreeModule dual(int shift) const;
  bool operator==(const FreeModule& o) const { return twists == o.twists; }
};

/// Degree-0 map of free modules; entry (r, c) is homogeneous of degree
/// source.twists[c] - target.twists[r] (or zero).
class GradedFreeMatrix {
 public:
  GradedFreeMatrix(Ring ring, FreeModule source, FreeModule target);
  /// A constant matrix between free modules (entries must be allowed in degree 0).
  static GradedFreeMatrix from_constant(Ring ring, FreeModule source, FreeModule target,
                                        const Matrix& m);

  const Ring& ring() const { return ring_; }
  const FreeModule& source() const { return source_; }
  const FreeModule& target() const { return target_; }
  std::size_t rows() const { return target_.rank(); }
  std::size_t cols() const { return source_.rank(); }

  const Polynomial& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols() + c]; }
  /// Throws ConfigError if p has the wrong degree.
  void set(std::size_t r, std::size_t c, Polynomial p);
  /// Entry degree mandated by the twists.
  int entry_degree(std::size_t r, std::size_t c) const {
    return source_.twists[c] - target_.twists[r];
  }

  /// Composite (*this) ∘ o.
  GradedFreeMatrix operator*(const GradedFreeMatrix& o) const;
  /// (*this) ∘ m for a constant matrix m with the given new source.
  GradedFreeMatrix times_constant(const Matrix& m, const FreeModule& new_source) const;
  GradedFreeMatrix operator+(const GradedFreeMatrix& o) const;
  GradedFreeMatrix operator-() const;
  GradedFreeMatrix scaled(const Scalar& s) const;
  /// The dual map target^∨ -> source^∨ with twists t -> shift - t.
  GradedFreeMatrix transpose(int shift) const;

  bool is_zero() const;
  /// Entries equal (twists are not compared).
  bool same_entries(const GradedFreeMatrix& o) const;
  /// True if every entry is a scalar; then constant_part() is the whole map.
  bool is_constant() const;
  Matrix constant_part() const;
  /// True if some entry is a nonzero scalar.
  bool has_unit_entry() const;

  std::string to_string() const;

 private:
  Ring ring_;
  FreeModule source_;
  FreeModule target_;
  std::vector<Polynomial> entries_;
};

/// Images of the generators of F_0 in M.
struct Augmentation {
  FiniteLengthModule module;
  std::vector<ModuleElement> images;
};

/// 0 <- F_0 <- F_1 <- ... <- F_len, differentials[i-1] = d_i : F_i -> F_{i-1}.
struct FreeComplex {
  Ring ring;
  std::vector<FreeModule> modules;
  std::vector<GradedFreeMatrix> differentials;
  std::optional<Augmentation> augmentation;

  std::size_t length() const { return differentials.size(); }
  const GradedFreeMatrix& d(std::size_t i) const { return differentials.at(i - 1); }
  std::vector<std::size_t> ranks() const;
};

/// Shapes match and every composite d_i d_{i+1} (and aug ∘ d_1) vanishes.
bool is_complex(const FreeComplex& c);

/// Coker(d_1) as a finite-length module, computed in degrees up to `top`.
FiniteLengthModule cokernel_module(const FreeComplex& c, int top);

/// Matrix of a map of free modules restricted to internal degree j, in monomial bases.
Matrix strand_matrix(const GradedFreeMatrix& f, int j);
/// Dimension of (⊕R(-t))_j.
std::size_t strand_dim(const Ring& ring, const FreeModule& f, int j);

}  // namespace dpres
