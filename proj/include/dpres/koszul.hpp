#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dpres/complex.hpp"

namespace dpres {

/// Index set S ⊆ {0..n-1} as a bit mask; xi_S = xi_{s1} ∧ ... in increasing order.
using Subset = std::uint32_t;

/// Subsets of size i in colexicographic order.
std::vector<Subset> exterior_basis(int n, int i);
/// Weighted degree sum_{l in S} d_l.
int subset_degree(const Ring& ring, Subset s);
std::string subset_label(Subset s);
Subset complement(int n, Subset s);

struct SignedSubset {
  int sign = 0;  ///< 0 means the result is zero
  Subset set = 0;
};
/// x_l ⌐ xi_S: zero unless l ∈ S, else (-1)^{pos-1} xi_{S \ l}.
SignedSubset ext_contract(int l, Subset s);
/// Sign of xi_a ∧ xi_b against xi_{a∪b}; 0 if they overlap.
int wedge_sign(Subset a, Subset b);

/// R ⊗ ⋀^i W with twists deg S.
FreeModule koszul_module(const Ring& ring, int i);
/// delta_i : R ⊗ ⋀^i W -> R ⊗ ⋀^{i-1} W.
GradedFreeMatrix koszul_differential(const Ring& ring, int i);
/// The Koszul complex with augmentation onto k.
FreeComplex koszul_complex(const Ring& ring);
/// Position h holds (R ⊗ ⋀^{n-h} W)^∨ (twists d - t) with differential delta_{n-h+1}^T.
FreeComplex dual_koszul_complex(const Ring& ring);

/// alpha_i : R ⊗ ⋀^i W -> (R ⊗ ⋀^{n-i} W)^∨, xi_S -> (xi_S' -> sign(xi_S' ∧ xi_S)).
GradedFreeMatrix alpha(const Ring& ring, int i);
/// (-1)^{floor((i-1)/2)}.
int ell_sign(int i);

enum class MiddleSymmetry { Skew, Symmetric };
/// Skew for n ≡ 3 mod 4, symmetric for n ≡ 1 mod 4; throws PreconditionError for even n.
MiddleSymmetry middle_symmetry(int n);
/// T = delta_{m+1} alpha_{m+1}^{-1}, m = (n-1)/2 (n odd).
GradedFreeMatrix koszul_middle_map(const Ring& ring);

}  // namespace dpres
