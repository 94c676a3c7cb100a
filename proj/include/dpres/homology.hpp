#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dpres/complex.hpp"
#include "dpres/flmodule.hpp"

namespace dpres {

/// beta_{i,j}: number of summands R(-j) in homological position i.
class BettiTable {
 public:
  BettiTable() = default;

  std::size_t at(int i, int j) const;
  void add(int i, int j, std::size_t count = 1);
  const std::map<std::pair<int, int>, std::size_t>& entries() const { return entries_; }

  /// Total rank in position i.
  std::size_t rank(int i) const;
  int max_index() const;
  /// Shifted so the smallest degree in position 0 is 0.
  BettiTable normalized() const;
  /// "1;10,16;16,10;1": nonzero entries of each display row j - i, by ascending i.
  std::string compact() const;
  /// Grid with rows j - i and columns i.
  std::string to_string() const;

  bool operator==(const BettiTable&) const = default;

 private:
  std::map<std::pair<int, int>, std::size_t> entries_;
};

enum class PivotOrder {
  MiddleOut,   ///< differentials from the middle outward
  LeftToRight  ///< d_1, d_2, ...
};

/// Cancels unit entries until no differential has a nonzero constant entry.
FreeComplex minimize(const FreeComplex& c, PivotOrder order = PivotOrder::MiddleOut);

/// Symmetry-preserving minimization of a selfdual complex of length 2m+1 whose
/// middle map satisfies T^t = epsilon (-1)^m T. Throws PreconditionError in
/// characteristic 2 when that form is symmetric, or when the input is not selfdual.
FreeComplex minimize_symmetric(const FreeComplex& c, int m, int epsilon);

/// Requires a minimal complex (PreconditionError otherwise).
BettiTable betti_table(const FreeComplex& c);
/// Tor_i(k, M)_j from the Koszul complex tensored with M.
BettiTable tor_betti(const FiniteLengthModule& m);

struct StrandReport {
  struct Degree {
    int degree = 0;
    bool exact = true;
    std::vector<std::size_t> dims;   ///< dim (F_i)_j
    std::vector<std::size_t> ranks;  ///< rank of d_i in degree j (index i-1)
    std::size_t h0 = 0;              ///< dim (F_0)_j - rank d_1
    std::size_t module_dim = 0;
    bool augmentation_ok = true;
  };
  std::vector<Degree> degrees;
  bool all_exact() const;
};

/// Degreewise exactness evidence over [lo, hi]: exact at i >= 1, H_0 = M_j, and
/// the augmentation is onto and kills the image of d_1.
StrandReport verify_strands(const FreeComplex& c, const FiniteLengthModule& m, int lo, int hi);
/// Default window [minDeg M, maxDeg M + d + 2].
StrandReport verify_strands(const FreeComplex& c, const FiniteLengthModule& m);

/// beta_0..beta_c over QQ with beta_0 = 1 solving sum_i (-1)^i beta_i d_i^k = 0, k < c.
/// ConfigError for non-increasing input, PreconditionError for a non-positive solution.
std::vector<Scalar> herzog_kuhl(const std::vector<int>& degrees);

struct Char2Constraints {
  int ell = 0;
  int n = 0;
  int m = 0;
  int a_max = 0;
  /// beta_{m+1,m+2} = beta_{m,m+2}, odd, at most 2 a_max + 1 (normalized table).
  bool check(const BettiTable& table) const;
  std::string explain(const BettiTable& table) const;
};
Char2Constraints char2_constraints(int ell);

/// (0, 2^{l-1}+1, ..., 2^l - 1, 2^l + 1, ..., 2^l + 2^{l-1} - 1, 2^{l+1}).
std::vector<int> obstructed_degree_sequence(int ell);

}  // namespace dpres
