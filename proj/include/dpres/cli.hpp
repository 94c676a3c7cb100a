#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dpres/complex.hpp"
#include "dpres/dpmatrix.hpp"
#include "dpres/flmodule.hpp"
#include "dpres/homology.hpp"
#include "dpres/random.hpp"

namespace dpres {

enum class OutputFormat { Text, Json, Csv };
OutputFormat parse_format(const std::string& name);

/// Structured records; every rendering is produced from `data`.
struct Report {
  std::string command;
  nlohmann::ordered_json data;

  std::string text() const;
  std::string json() const;
  /// key,value lines with dotted paths.
  std::string csv() const;
  std::string render(OutputFormat f) const;
};

struct ExperimentConfig {
  std::string name = "char2";
  FieldSpec field = FieldSpec::prime(2);
  int ell = 3;
  std::vector<int> weights;  // empty: all 1
  int socle = 3;
  int trials = 20;
  std::uint64_t seed = 1;
  OutputFormat format = OutputFormat::Text;
};

/// Output of the resolve pipeline.
struct Resolution {
  FreeComplex complex;
  std::optional<GradedPairing> pairing;
  bool selfdual = false;
  bool minimal = false;
  std::string minimization = "none";  // none | plain | symmetric
  int m = 0;
  int sigma = 0;
  int twist_sum = 0;
  /// T^t = sigma T on the returned complex (selfdual only).
  std::optional<bool> middle_ok = std::nullopt;
};

/// Gorenstein modules over an odd number of variables get the selfdual
/// construction; everything else the Nielsen complex.
Resolution resolve_module(const FiniteLengthModule& m, bool minimize_result = true,
                          std::uint64_t seed = 1);

/// Uniform random coefficients on every divided-power monomial of degree -degree.
DPPolynomial random_dp_form(const Ring& ring, int degree, Rng& rng);
/// The 1x1 matrix (f) with f of degree -socle, generator in degree 0.
DPMatrix cyclic_matrix(const Ring& ring, const DPPolynomial& f);
/// min(dim R_i, dim R_{socle-i}) for 0 <= i <= socle.
std::vector<std::size_t> generic_gorenstein_hf(const Ring& ring, int socle);
std::vector<std::size_t> hilbert_vector(const FiniteLengthModule& m);

Report run_resolve(const DPMatrix& p, bool minimize_result = true);
Report run_check_gorenstein(const DPMatrix& p);
Report run_char2_experiment(const ExperimentConfig& config);
Report run_hk(const std::vector<int>& degrees);
Report run_verify(const DPMatrix& p, int lo, int hi);

/// "0,2,3" -> {0, 2, 3}; ConfigError on malformed input.
std::vector<int> parse_int_list(const std::string& text);

}  // namespace dpres
