#pragma once

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "dpres/complex.hpp"
#include "dpres/flmodule.hpp"
#include "dpres/koszul.hpp"

namespace dpres {

/// R ⊗ ⋀^i W ⊗ M. Summand (S, b) has twist deg S + deg b; order is
/// (S colex, deg b, index of b).
FreeModule nielsen_module(const FiniteLengthModule& m, int i);

/// The two parts of phi_i = phi_{i,0} + phi_{i,1}: the Koszul part (entries +-x_l)
/// and the module part (constant entries -+ x_l acting on M).
std::pair<GradedFreeMatrix, GradedFreeMatrix> nielsen_parts(const FiniteLengthModule& m, int i);
GradedFreeMatrix nielsen_differential(const FiniteLengthModule& m, int i);
/// Nielsen I: A_i(M) with augmentation A_0 = R ⊗ M -> M.
FreeComplex nielsen_complex(const FiniteLengthModule& m);

/// Matrix of f ⊗ id_M in the diagonal-action bases 1 ⊗ e ⊗ b, where f maps
/// free modules whose bases are listed by f's source and target.
GradedFreeMatrix diagonal_matrix(const GradedFreeMatrix& f, const FiniteLengthModule& m);
/// Nielsen II: Koszul differentials tensored with M, written in the diagonal basis.
FreeComplex nielsen_II_resolution(const FiniteLengthModule& m);
/// Nielsen IIa: dual Koszul differentials tensored with N in the diagonal basis;
/// augmentation xi_top^∨ ⊗ b -> b.
FreeComplex nielsen_IIa_resolution(const FiniteLengthModule& n);

/// Vector-level element of R ⊗ ⋀W ⊗ M: (M-degree, S, monomial) -> vector in M_degree.
using TensorElement = std::map<std::tuple<int, Subset, std::vector<int>>, std::vector<Scalar>>;
/// x^u ⊗ xi_S ⊗ b for a basis element b.
TensorElement tensor_basis_element(const FiniteLengthModule& m, const std::vector<int>& u, Subset s,
                                   const BasisLabel& b);
/// Nielsen I differential with R acting on the left factor only.
TensorElement apply_nielsen(const FiniteLengthModule& m, const TensorElement& e);
/// delta ⊗ id.
TensorElement apply_koszul(const FiniteLengthModule& m, const TensorElement& e);
/// r ⊗ w ⊗ b -> r ·diag (1 ⊗ w ⊗ b).
TensorElement apply_epsilon(const FiniteLengthModule& m, const TensorElement& e);
bool tensor_equal(const TensorElement& a, const TensorElement& b);

/// beta_i : A_i(M) -> A_{n-i}(M)^∨ with twists d + s - t; entry at
/// ((S', c), (S, b)) is sign(xi_S' ∧ xi_S) B(b, c).
GradedFreeMatrix beta(int i, const FiniteLengthModule& m, const GradedPairing& pairing);

struct SelfdualResolution {
  FreeComplex complex;
  int m = 0;          ///< (n-1)/2
  int epsilon = 1;    ///< sign of the pairing
  int sigma = 1;      ///< T^t = sigma T, sigma = epsilon (-1)^m
  int twist_sum = 0;  ///< F_{n-i} has twists twist_sum - t
};

/// K(M): A_0..A_m, middle map T = phi_{m+1} beta_{m+1}^{-1}, then the transposed
/// left half. Requires odd n (PreconditionError) and a valid pairing (ConfigError).
SelfdualResolution selfdual_resolution(const FiniteLengthModule& m, const GradedPairing& pairing);

/// The map F_{m+1} -> F_m of a complex of odd length 2m+1.
const GradedFreeMatrix& middle_map(const FreeComplex& c);

}  // namespace dpres
