#include "doctest.h"

#include "dpres/dpmatrix.hpp"
#include "dpres/error.hpp"
#include "dpres/io.hpp"
#include "support.hpp"

using namespace dpres;

namespace {

Polynomial x(const Ring& r, std::vector<int> e, long c = 1) {
  return Polynomial(Monomial::make(r, std::move(e)), r.field().from_int(c));
}

DPMatrix two_generators() {
  return parse_dpmatrix(
      "field QQ\nvars 2\nrowtwists 0\ncoltwists 3 2\n"
      "entry 1 1 : X1^(3)\nentry 1 2 : X1^(1)X2^(1) + X2^(2)\n");
}

}  // namespace

TEST_CASE("entries must be homogeneous of degree -b_j + a_i") {
  Ring r = Ring::standard(FieldSpec::prime(5), 2);
  DPMatrix p(r, {0}, {3, 2});
  DPPolynomial f(DPMonomial::make(r, {1, 1}), r.field().one());
  try {
    p.set(0, 0, f);
    FAIL("expected a homogeneity error");
  } catch (const ParseError& e) {
    std::string msg = e.what();
    CHECK(msg.find("(1,1)") != std::string::npos);
    CHECK(msg.find("-2") != std::string::npos);
    CHECK(msg.find("-3") != std::string::npos);
  }
  CHECK_NOTHROW(p.set(0, 1, f));
}

TEST_CASE("two-generator example: annihilator and Hilbert function") {
  DPMatrix p = two_generators();
  const Ring& r = p.ring();
  std::vector<support::TupleGenerator> gens{
      {-2, {x(r, {0, 1}), Polynomial()}},
      {-1, {x(r, {2, 0}), x(r, {1, 0}) - x(r, {0, 1})}},
      {0, {Polynomial(), x(r, {2, 0})}},
  };
  std::string why;
  CHECK_MESSAGE(support::annihilator_matches(p, gens, &why), why);

  FiniteLengthModule m = quotient_module(p);
  CHECK(m.total_dim() == 6);
  CHECK(m.min_degree() == -3);
  CHECK(hilbert_vector(m) == std::vector<std::size_t>{1, 2, 2, 1});

  DPMatrix t = transpose(p);
  CHECK(t.row_twists() == std::vector<int>{-3, -2});
  CHECK(t.col_twists() == std::vector<int>{0});
  std::vector<support::TupleGenerator> ideal{
      {4, {x(r, {4, 0})}},
      {2, {x(r, {1, 1}) - x(r, {0, 2})}},
      {3, {x(r, {2, 1})}},
      {3, {x(r, {0, 3})}},
  };
  CHECK_MESSAGE(support::annihilator_matches(t, ideal, &why), why);
  CHECK(transpose(t) == p);
}

TEST_CASE("annihilates") {
  DPMatrix p = two_generators();
  const Ring& r = p.ring();
  CHECK(annihilates(p, {x(r, {2, 0}), x(r, {1, 0}) - x(r, {0, 1})}));
  CHECK_FALSE(annihilates(p, {x(r, {2, 0}), x(r, {1, 0})}));
  CHECK(annihilates(p, {x(r, {0, 1}), Polynomial()}));
}

TEST_CASE("quotient generators span the module") {
  DPMatrix p = two_generators();
  FiniteLengthModule m = quotient_module(p);
  auto g = quotient_generators(p);
  REQUIRE(g.size() == 2);
  CHECK(g[0].degree == -3);
  CHECK(g[1].degree == -2);
  CHECK(m.generator_degrees() == std::vector<int>{-3, -2});
}

TEST_CASE("present recovers the module up to isomorphism") {
  Rng rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    FieldSpec f = trial % 3 == 0 ? FieldSpec::prime(2) : FieldSpec::prime(101);
    FiniteLengthModule m = support::random_module(rng, f, 3, 8);
    DPMatrix p = present(m);
    CHECK(p.cols() == m.generator_degrees().size());
    FiniteLengthModule back = quotient_module(p);
    CHECK(hilbert_vector(back) == hilbert_vector(m));
    CHECK(back.min_degree() == m.min_degree());
    CHECK(find_isomorphism(m, back).has_value());
  }
  CHECK_THROWS_AS(present(FiniteLengthModule(Ring::standard(FieldSpec::prime(3), 2))), PreconditionError);
}

TEST_CASE("present of a cyclic Gorenstein module is a multiple of the form") {
  Rng rng(4);
  Ring r = Ring::standard(FieldSpec::prime(101), 3);
  for (int trial = 0; trial < 5; ++trial) {
    DPPolynomial f = random_dp_form(r, 3, rng);
    DPMatrix p = present(quotient_module(cyclic_matrix(r, f)));
    REQUIRE(p.rows() == 1);
    REQUIRE(p.cols() == 1);
    auto deg = f.homogeneous_degree().value();
    auto a = coordinates(r, p.entry(0, 0), deg), b = coordinates(r, f, deg);
    Matrix both = Matrix::from_columns(r.field(), a.size(), {a, b});
    CHECK(rank(both) == 1);
  }
}

TEST_CASE("symmetric matrices") {
  Ring r = Ring::standard(FieldSpec::prime(101), 2);
  DPMatrix p = two_generators();
  CHECK_FALSE(is_symmetric(p).has_value());

  DPMatrix c = cyclic_matrix(r, DPPolynomial(DPMonomial::make(r, {2, 0}), r.field().one()) +
                                    DPPolynomial(DPMonomial::make(r, {0, 2}), r.field().one()));
  auto sym = is_symmetric(c);
  REQUIRE(sym.has_value());
  CHECK(sym->epsilon == 1);
  CHECK(sym->s == -2);

  Rng rng(8);
  DPMatrix skew(r, {-3, -4}, {0, 1});
  DPPolynomial g = random_dp_form(r, 4, rng);
  skew.set(0, 1, g);
  skew.set(1, 0, -g);
  auto s2 = is_symmetric(skew);
  REQUIRE(s2.has_value());
  CHECK(s2->epsilon == -1);
}

TEST_CASE("symmetric presentation from a pairing") {
  Rng rng(21);
  Ring r = Ring::standard(FieldSpec::prime(101), 3);
  for (int trial = 0; trial < 5; ++trial) {
    FiniteLengthModule m = support::random_gorenstein(rng, r, 2 + trial % 2);
    auto pairing = gorenstein_pairing(m);
    REQUIRE(pairing.has_value());
    DPMatrix p = symmetric_presentation(m, *pairing);
    auto sym = is_symmetric(p);
    REQUIRE(sym.has_value());
    CHECK(sym->epsilon == pairing->epsilon);
    CHECK(sym->s == -pairing->s);
    CHECK(find_isomorphism(m, quotient_module(p)).has_value());
  }
}

TEST_CASE("ring and field mismatches are configuration errors") {
  Ring r = Ring::standard(FieldSpec::prime(5), 2);
  Ring other = Ring::standard(FieldSpec::prime(7), 2);
  DPMatrix p(r, {0}, {1});
  CHECK_THROWS_AS(p.set(0, 0, DPPolynomial(DPMonomial::make(other, {1, 0}), other.field().one())),
                  ConfigError);
  Ring three = Ring::standard(FieldSpec::prime(5), 3);
  CHECK_THROWS_AS(p.set(0, 0, DPPolynomial(DPMonomial::make(three, {1, 0, 0}), three.field().one())),
                  ConfigError);
}

TEST_CASE("zero matrix gives the zero module") {
  Ring r = Ring::standard(FieldSpec::prime(5), 2);
  DPMatrix p(r, {0, -1}, {0});
  CHECK(quotient_module(p).is_zero());
}
