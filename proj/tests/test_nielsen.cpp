#include "doctest.h"

#include "dpres/error.hpp"
#include "dpres/homology.hpp"
#include "dpres/nielsen.hpp"
#include "support.hpp"

using namespace dpres;

namespace {

std::size_t choose(int n, int k) {
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

int sign_pow(int e) { return e % 2 ? -1 : 1; }

}  // namespace

TEST_CASE("Nielsen differential splits into anticommuting square-zero parts") {
  Rng rng(100);
  for (int trial = 0; trial < 20; ++trial) {
    FieldSpec f = trial % 4 == 0 ? FieldSpec::prime(2) : FieldSpec::prime(101);
    FiniteLengthModule m = support::random_module(rng, f, 4, 10);
    const int n = m.ring().nvars();
    for (int i = 1; i < n; ++i) {
      auto [a0, a1] = nielsen_parts(m, i);
      auto [b0, b1] = nielsen_parts(m, i + 1);
      CHECK((a0 * b0).is_zero());
      CHECK((a1 * b1).is_zero());
      CHECK((a0 * b1).same_entries(-(a1 * b0)));
      CHECK(a1.is_constant());
      CHECK((a0 + a1).same_entries(nielsen_differential(m, i)));
    }
  }
}

TEST_CASE("Nielsen complex resolves M") {
  Rng rng(7);
  for (int trial = 0; trial < 12; ++trial) {
    FiniteLengthModule m = support::random_module(rng, FieldSpec::prime(101), 4, 8);
    FreeComplex c = nielsen_complex(m);
    const int n = m.ring().nvars();
    REQUIRE(c.length() == static_cast<std::size_t>(n));
    for (int i = 0; i <= n; ++i) CHECK(c.modules[static_cast<std::size_t>(i)].rank() == choose(n, i) * m.total_dim());
    CHECK(is_complex(c));
    CHECK(verify_strands(c, m).all_exact());
  }
}

TEST_CASE("Nielsen II in the diagonal basis equals Nielsen I") {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    FiniteLengthModule m = support::random_module(rng, FieldSpec::prime(101), 3, 8);
    FreeComplex one = nielsen_complex(m), two = nielsen_II_resolution(m);
    REQUIRE(two.length() == one.length());
    for (std::size_t i = 1; i <= one.length(); ++i) {
      CHECK(two.modules[i] == one.modules[i]);
      CHECK(two.d(i).same_entries(one.d(i)));
    }
    FreeComplex iia = nielsen_IIa_resolution(m);
    CHECK(is_complex(iia));
    CHECK(verify_strands(iia, m).all_exact());
  }
}

TEST_CASE("the diagonal isomorphism intertwines both differentials") {
  Rng rng(55);
  for (int trial = 0; trial < 8; ++trial) {
    FiniteLengthModule m = support::random_module(rng, FieldSpec::prime(101), 3, 8);
    const int n = m.ring().nvars();
    for (int k = 0; k < 6; ++k) {
      std::vector<int> u(static_cast<std::size_t>(n));
      for (auto& e : u) e = static_cast<int>(rng() % 3);
      Subset s = static_cast<Subset>(rng() % (1u << n));
      auto basis = m.basis();
      BasisLabel b = basis[rng() % basis.size()];
      TensorElement e = tensor_basis_element(m, u, s, b);
      CHECK(tensor_equal(apply_epsilon(m, apply_nielsen(m, e)), apply_koszul(m, apply_epsilon(m, e))));
    }
  }
}

TEST_CASE("beta identities and the selfdual resolution") {
  Rng rng(3);
  for (int n : {1, 3, 5}) {
    for (int trial = 0; trial < (n == 5 ? 2 : 5); ++trial) {
      Ring r = Ring::standard(FieldSpec::prime(101), n);
      FiniteLengthModule m = support::random_gorenstein(rng, r, 2 + trial % 2);
      auto p = gorenstein_pairing(m);
      REQUIRE(p.has_value());
      const int shift = r.total_weight() + p->s;
      const int mid = (n - 1) / 2;
      for (int i = 1; i <= n; ++i) {
        GradedFreeMatrix lhs = beta(i - 1, m, *p) * nielsen_differential(m, i);
        GradedFreeMatrix rhs = nielsen_differential(m, n - i + 1).transpose(shift) * beta(i, m, *p);
        CHECK(lhs.same_entries(rhs.scaled(r.field().from_int(sign_pow(n - i)))));
      }
      CHECK(beta(mid + 1, m, *p).transpose(shift).same_entries(beta(mid, m, *p).scaled(r.field().from_int(p->epsilon))));

      SelfdualResolution sr = selfdual_resolution(m, *p);
      CHECK(sr.m == mid);
      CHECK(sr.sigma == p->epsilon * sign_pow(mid));
      CHECK(sr.twist_sum == shift);
      CHECK(is_complex(sr.complex));
      if (n <= 3) CHECK(verify_strands(sr.complex, m).all_exact());
      const GradedFreeMatrix& t = middle_map(sr.complex);
      CHECK(t.transpose(shift).same_entries(t.scaled(r.field().from_int(sr.sigma))));
      for (int i = 0; i <= n; ++i)
        CHECK(sr.complex.modules[static_cast<std::size_t>(i)].rank() == choose(n, i) * m.total_dim());
    }
  }
}

TEST_CASE("selfdual resolution preconditions") {
  Rng rng(9);
  Ring even = Ring::standard(FieldSpec::prime(101), 2);
  FiniteLengthModule m2 = support::random_gorenstein(rng, even, 2);
  auto p2 = gorenstein_pairing(m2);
  REQUIRE(p2.has_value());
  CHECK_THROWS_AS(selfdual_resolution(m2, *p2), PreconditionError);

  Ring odd = Ring::standard(FieldSpec::prime(101), 3);
  FiniteLengthModule m3 = support::random_gorenstein(rng, odd, 2);
  auto p3 = gorenstein_pairing(m3);
  REQUIRE(p3.has_value());
  GradedPairing bad = *p3;
  bad.epsilon = -bad.epsilon;
  CHECK_THROWS_AS(selfdual_resolution(m3, bad), ConfigError);
}

TEST_CASE("zero module has the empty Nielsen complex") {
  FiniteLengthModule z(Ring::standard(FieldSpec::prime(5), 3));
  FreeComplex c = nielsen_complex(z);
  for (const auto& f : c.modules) CHECK(f.rank() == 0);
}
