#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpres/algebra.hpp"
#include "dpres/linalg.hpp"

namespace dpres {

/// A homogeneous element: a degree plus coordinates in that component's basis.
struct ModuleElement {
  int degree = 0;
  std::vector<Scalar> coords;
};

/// Basis element `index` of the component in degree `degree`.
struct BasisLabel {
  int degree = 0;
  std::size_t index = 0;
  bool operator==(const BasisLabel&) const = default;
};

/// Graded R-module of finite length, stored as per-degree dimensions plus
/// one multiplication matrix per variable per degree.
class FiniteLengthModule {
 public:
  /// The zero module over `ring`.
  explicit FiniteLengthModule(Ring ring);
  /// `dims[k]` is the dimension in degree min_degree + k. `action[l][k]` is the
  /// matrix of x_l from degree min_degree + k to min_degree + k + d_l (zero rows
  /// when the target degree lies outside). Throws ConfigError on bad shapes or
  /// non-commuting actions.
  FiniteLengthModule(Ring ring, int min_degree, std::vector<std::size_t> dims,
                     std::vector<std::vector<Matrix>> action);

  const Ring& ring() const { return ring_; }
  const FieldSpec& field() const { return ring_.field(); }
  bool is_zero() const { return dims_.empty(); }
  /// Lowest / highest nonzero degree (PreconditionError on the zero module).
  int min_degree() const;
  int max_degree() const;
  std::size_t dim(int j) const;
  std::size_t total_dim() const;
  std::map<int, std::size_t> hilbert_function() const;

  /// Matrix of x_l from M_j to M_{j+d_l}; a correctly shaped zero matrix outside the support.
  Matrix act(int l, int j) const;
  Matrix act_monomial(const std::vector<int>& exponents, int j) const;
  ModuleElement apply(const Polynomial& p, const ModuleElement& v) const;

  /// Homogeneous basis ordered by (degree, index).
  std::vector<BasisLabel> basis() const;
  /// Position of a label in basis().
  std::size_t flat_index(const BasisLabel& b) const;

  /// Degrees of a minimal homogeneous generating set, ascending.
  std::vector<int> generator_degrees() const;
  /// Minimal homogeneous generators chosen greedily by degree (echelon complement).
  std::vector<ModuleElement> minimal_generators() const;

  /// (M(t))_j = M_{t+j}.
  FiniteLengthModule shifted(int t) const;

  std::string to_string() const;

 private:
  Ring ring_;
  int min_degree_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<Matrix>> action_;
};

/// Sum M ⊕ N over the same ring.
FiniteLengthModule direct_sum(const FiniteLengthModule& a, const FiniteLengthModule& b);
/// M* = Hom_k(M, k), graded by (M*)_j = Hom(M_{-j}, k).
FiniteLengthModule dual_module(const FiniteLengthModule& m);
/// The residue field k in degree 0.
FiniteLengthModule residue_field(const Ring& ring);

/// Degree-t map: components[j] is the matrix source_j -> target_{j+t} for each
/// j in the source support (possibly with zero rows).
struct ModuleMap {
  int twist = 0;
  std::map<int, Matrix> components;

  ModuleMap scaled(const Scalar& c) const;
  ModuleMap operator+(const ModuleMap& o) const;
};

/// The zero map of degree t.
ModuleMap zero_map(const FiniteLengthModule& source, const FiniteLengthModule& target, int t);
bool is_module_map(const FiniteLengthModule& source, const FiniteLengthModule& target,
                   const ModuleMap& f);
/// Basis of Hom_R(M, N)_t.
std::vector<ModuleMap> hom_space(const FiniteLengthModule& m, const FiniteLengthModule& n, int t);
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);
bool is_isomorphism(const FiniteLengthModule& source, const FiniteLengthModule& target,
                    const ModuleMap& f);
/// Searches Hom(M, N)_0 for an isomorphism (randomized, then exhaustive when small).
std::optional<ModuleMap> find_isomorphism(const FiniteLengthModule& m, const FiniteLengthModule& n,
                                          std::uint64_t seed = 1);

/// tau: M -> M*(-s), stored as a ModuleMap M -> M* of twist -s, so
/// tau_j is a dim M_{s-j} x dim M_j matrix. B(m, m') = tau(m)(m').
struct GradedPairing {
  int s = 0;
  ModuleMap tau;
  int epsilon = 1;
};

struct PairingOptions {
  std::uint64_t seed = 1;
  int random_trials = 512;
  /// Exhaustive scan only when |k|^dim stays below this.
  std::uint64_t exhaustive_cap = std::uint64_t{1} << 20;
  /// 0 tries both signs (+1 first); otherwise only the given sign.
  int only_sign = 0;
};

std::optional<GradedPairing> gorenstein_pairing(const FiniteLengthModule& m,
                                                const PairingOptions& options = {});
/// Checks per-degree invertibility, B(m, m') = eps B(m', m) and B(x m, m') = B(m, x m').
/// Throws ConfigError on shape mismatch.
bool check_pairing(const FiniteLengthModule& m, const GradedPairing& pairing);
/// B(a, b) for homogeneous a, b with deg a + deg b = s.
Scalar pairing_value(const GradedPairing& pairing, const ModuleElement& a, const ModuleElement& b);

}  // namespace dpres
