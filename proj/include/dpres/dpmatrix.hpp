#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpres/algebra.hpp"
#include "dpres/flmodule.hpp"
#include "dpres/linalg.hpp"

namespace dpres {

/// q x p homogeneous matrix in divided powers, a map ⊕R(b_j) -> ⊕K^d(a_i).
/// Entry (i, j) is zero or homogeneous of degree -b_j + a_i.
class DPMatrix {
 public:
  DPMatrix(Ring ring, std::vector<int> row_twists, std::vector<int> col_twists);

  const Ring& ring() const { return ring_; }
  const FieldSpec& field() const { return ring_.field(); }
  std::size_t rows() const { return row_twists_.size(); }
  std::size_t cols() const { return col_twists_.size(); }
  const std::vector<int>& row_twists() const { return row_twists_; }
  const std::vector<int>& col_twists() const { return col_twists_; }

  const DPPolynomial& entry(std::size_t i, std::size_t j) const { return entries_[i * cols() + j]; }
  /// Throws ParseError if f is not homogeneous of degree -b_j + a_i.
  void set(std::size_t i, std::size_t j, DPPolynomial f);

  bool operator==(const DPMatrix& o) const;

 private:
  Ring ring_;
  std::vector<int> row_twists_;
  std::vector<int> col_twists_;
  std::vector<DPPolynomial> entries_;
};

/// Ann_R(P) ⊆ ⊕R(b_j), degreewise. An element of degree D has components
/// phi_j ∈ R_{D+b_j}; coordinates are the concatenation of those blocks.
struct GradedIdealWitness {
  int lo = 0;
  int hi = -1;
  /// Reduced column-echelon basis of Ann_D for lo <= D <= hi.
  std::map<int, Matrix> basis;
  /// Everything of degree > hi lies in Ann.
  bool full_above = true;
};

/// Dimension of (⊕R(b_j))_D.
std::size_t ambient_dim(const Ring& ring, const std::vector<int>& col_twists, int degree);
/// Coordinates of a tuple of homogeneous polynomials in (⊕R(b_j))_D.
std::vector<Scalar> ambient_coordinates(const Ring& ring, const std::vector<int>& col_twists,
                                        int degree, const std::vector<Polynomial>& tuple);
/// The matrix of phi -> (sum_j phi_j . P_ij)_i on (⊕R(b_j))_D.
Matrix evaluation_matrix(const DPMatrix& p, int degree);

GradedIdealWitness annihilator(const DPMatrix& p);
/// Does Ann contain this homogeneous tuple (one polynomial per column)?
bool annihilates(const DPMatrix& p, const std::vector<Polynomial>& tuple);

/// M(P), realized as the image of P with the contraction action.
FiniteLengthModule quotient_module(const DPMatrix& p);
/// Images of the free generators e_j (degree -b_j) in quotient_module(p).
std::vector<ModuleElement> quotient_generators(const DPMatrix& p);

/// Entries transposed; row twists -b_j, column twists -a_i.
DPMatrix transpose(const DPMatrix& p);

/// A matrix P with quotient_module(P) ≅ M (throws PreconditionError for M = 0).
DPMatrix present(const FiniteLengthModule& m);
/// A symmetric presentation built from a pairing: P_ij = sum_u B(g_i, x^u g_j) X^(u).
DPMatrix symmetric_presentation(const FiniteLengthModule& m, const GradedPairing& pairing);

struct Symmetry {
  int s = 0;
  int epsilon = 1;
};
/// (s, eps) when P is square, a_i = s - b_i and P_ij = eps P_ji.
std::optional<Symmetry> is_symmetric(const DPMatrix& p);

}  // namespace dpres
