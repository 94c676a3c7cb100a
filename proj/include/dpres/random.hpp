#pragma once

#include <cstdint>
#include <random>

#include "dpres/scalar.hpp"

namespace dpres {

using Rng = std::mt19937_64;

/// Uniform over GF(p); uniform on {-9..9} over the rationals.
Scalar random_scalar(const FieldSpec& field, Rng& rng);
Scalar random_nonzero_scalar(const FieldSpec& field, Rng& rng);

/// Deterministic per-job stream derived from a base seed and an index.
Rng derived_rng(std::uint64_t seed, std::uint64_t index);

}  // namespace dpres
