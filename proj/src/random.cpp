#include "dpres/random.hpp"

namespace dpres {

Scalar random_scalar(const FieldSpec& field, Rng& rng) {
  if (field.is_prime_field()) {
    std::uniform_int_distribution<std::int64_t> dist(0, field.characteristic() - 1);
    return field.from_int(dist(rng));
  }
  std::uniform_int_distribution<std::int64_t> dist(-9, 9);
  return field.from_int(dist(rng));
}

Scalar random_nonzero_scalar(const FieldSpec& field, Rng& rng) {
  for (;;) {
    Scalar s = random_scalar(field, rng);
    if (!s.is_zero()) return s;
  }
}

Rng derived_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

}  // namespace dpres
