#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dpres/cli.hpp"
#include "dpres/complex.hpp"
#include "dpres/dpmatrix.hpp"
#include "dpres/flmodule.hpp"
#include "dpres/homology.hpp"
#include "dpres/random.hpp"

namespace support {

using dpres::FieldSpec;
using dpres::FiniteLengthModule;
using dpres::Ring;
using dpres::Rng;

/// Random M(P) with 1 <= dim <= max_dim over at most max_vars variables.
FiniteLengthModule random_module(Rng& rng, const FieldSpec& field, int max_vars = 4,
                                 std::size_t max_dim = 10);
/// Random DP matrix with the given twists (entries of positive degree are zero).
dpres::DPMatrix random_dpmatrix(Rng& rng, const Ring& ring, const std::vector<int>& a,
                                const std::vector<int>& b);
/// R/Ann(f) for a random form f of degree -socle.
FiniteLengthModule random_gorenstein(Rng& rng, const Ring& ring, int socle);

/// Number of exponent vectors of weighted degree j, by plain recursion.
std::size_t count_monomials(const std::vector<int>& weights, int j);

/// sum_i (-1)^i sum_j beta_ij dim R_{k-j} == dim M_k for every k in a generous window.
bool euler_characteristic_matches(const dpres::BettiTable& t, const FiniteLengthModule& m);

/// Sign of the permutation sorting the concatenation of two increasing index lists.
int concatenation_sign(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> members(std::uint32_t s);

/// B(x_l u, v) = B(u, x_l v), B(u, v) = eps B(v, u) and nondegeneracy, element by element.
bool pairing_brute_force(const FiniteLengthModule& m, const dpres::GradedPairing& p);

/// A homogeneous generator of a submodule of ⊕R(b_j): one polynomial per column.
struct TupleGenerator {
  int degree;
  std::vector<dpres::Polynomial> tuple;
};
/// Compares Ann(P) with the submodule generated by `gens`, degree by degree over the
/// witness window and one degree above it. Fills `report` on mismatch.
bool annihilator_matches(const dpres::DPMatrix& p, const std::vector<TupleGenerator>& gens,
                         std::string* report = nullptr);

}  // namespace support
