#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "dpres/cli.hpp"
#include "dpres/error.hpp"
#include "dpres/io.hpp"
#include "dpres/koszul.hpp"
#include "dpres/nielsen.hpp"
#include "support.hpp"

using namespace dpres;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

int sign_pow(int e) { return e % 2 ? -1 : 1; }

Polynomial x(const Ring& r, std::vector<int> e) {
  return Polynomial(Monomial::make(r, std::move(e)), r.field().one());
}

FieldSpec rotating_field(int k) {
  switch (k % 4) {
    case 0:
      return FieldSpec::prime(2);
    case 1:
      return FieldSpec::prime(3);
    case 2:
      return FieldSpec::prime(101);
    default:
      return FieldSpec::rationals();
  }
}

std::vector<FiniteLengthModule> fifty_modules() {
  std::vector<FiniteLengthModule> out;
  for (int k = 0; k < 50; ++k) {
    Rng rng = derived_rng(314, static_cast<std::uint64_t>(k));
    out.push_back(support::random_module(rng, rotating_field(k), 4, 10));
  }
  return out;
}

bool middle_has_sign(const FreeComplex& c, int shift, int sign) {
  const GradedFreeMatrix& t = middle_map(c);
  return t.transpose(shift).same_entries(t.scaled(c.ring.field().from_int(sign)));
}

Outcome criterion1() {
  Outcome o;
  DPMatrix p = read_dpmatrix_file(std::string(DPRES_DATA) + "/two_generators.dpm");
  const Ring& r = p.ring();
  std::string why;
  o.require(support::annihilator_matches(p,
                                         {{-2, {x(r, {0, 1}), Polynomial()}},
                                          {-1, {x(r, {2, 0}), x(r, {1, 0}) - x(r, {0, 1})}},
                                          {0, {Polynomial(), x(r, {2, 0})}}},
                                         &why),
            "Ann(P): " + why);
  FiniteLengthModule m = quotient_module(p);
  o.require(m.total_dim() == 6, "dim M(P) != 6");
  o.require(hilbert_vector(m) == std::vector<std::size_t>{1, 2, 2, 1}, "HF != (1,2,2,1)");
  o.require(support::annihilator_matches(transpose(p),
                                         {{4, {x(r, {4, 0})}},
                                          {2, {x(r, {1, 1}) - x(r, {0, 2})}},
                                          {3, {x(r, {2, 1})}},
                                          {3, {x(r, {0, 3})}}},
                                         &why),
            "Ann(P^t): " + why);
  if (o.pass) o.detail = "Ann(P), Ann(P^t), dim 6, HF 1,2,2,1";
  return o;
}

Outcome criterion2() {
  Outcome o;
  int squares = 0;
  for (int n = 2; n <= 5; ++n)
    for (auto f : {FieldSpec::prime(101), FieldSpec::rationals()}) {
      Ring r = Ring::standard(f, n);
      const int d = r.total_weight();
      for (int i = 1; i <= n; ++i) {
        GradedFreeMatrix lhs = alpha(r, i - 1) * koszul_differential(r, i);
        GradedFreeMatrix rhs = koszul_differential(r, n - i + 1).transpose(d) * alpha(r, i);
        o.require(lhs.same_entries(rhs.scaled(f.from_int(sign_pow(n - i)))),
                  "square n=" + std::to_string(n) + " i=" + std::to_string(i));
        o.require(lhs.scaled(f.from_int(ell_sign(i - 1)))
                      .same_entries(rhs.scaled(f.from_int(ell_sign(i) * sign_pow(n)))),
                  "rescaled square n=" + std::to_string(n) + " i=" + std::to_string(i));
        ++squares;
      }
      if (n % 2 == 1) {
        GradedFreeMatrix t = koszul_middle_map(r);
        int expect = n == 3 ? -1 : 1;
        o.require(t.transpose(d).same_entries(t.scaled(f.from_int(expect))),
                  "middle map symmetry n=" + std::to_string(n));
        o.require(!t.transpose(d).same_entries(t.scaled(f.from_int(-expect))), "middle map is both");
      }
    }
  if (o.pass) o.detail = std::to_string(squares) + " squares over GF(101) and QQ; n=3 skew, n=5 symmetric";
  return o;
}

Outcome criterion3(const std::vector<FiniteLengthModule>& mods) {
  Outcome o;
  int checks = 0;
  for (std::size_t k = 0; k < mods.size(); ++k) {
    const auto& m = mods[k];
    for (int i = 1; i < m.ring().nvars(); ++i) {
      auto [a0, a1] = nielsen_parts(m, i);
      auto [b0, b1] = nielsen_parts(m, i + 1);
      std::string tag = " (module " + std::to_string(k) + ", i=" + std::to_string(i) + ")";
      o.require((a0 * b0).is_zero(), "phi_0 phi_0 != 0" + tag);
      o.require((a1 * b1).is_zero(), "phi_1 phi_1 != 0" + tag);
      o.require((a0 * b1).same_entries(-(a1 * b0)), "mixed products" + tag);
      ++checks;
    }
  }
  if (o.pass) o.detail = std::to_string(mods.size()) + " modules, " + std::to_string(checks) + " index pairs";
  return o;
}

Outcome criterion4(const std::vector<FiniteLengthModule>& mods) {
  Outcome o;
  for (std::size_t k = 0; k < mods.size(); ++k) {
    BettiTable b = betti_table(minimize(nielsen_complex(mods[k])));
    o.require(b == tor_betti(mods[k]), "module " + std::to_string(k) + ": " + b.compact() + " vs " +
                                           tor_betti(mods[k]).compact());
  }
  if (o.pass) o.detail = std::to_string(mods.size()) + " modules agree with Tor";
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (int n : {3, 5}) {
    Ring r = Ring::standard(FieldSpec::prime(101), n);
    for (int k = 0; k < 20; ++k) {
      Rng rng = derived_rng(500 + static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
      FiniteLengthModule m = support::random_gorenstein(rng, r, 2 + k % 2);
      auto p = gorenstein_pairing(m);
      std::string tag = " (n=" + std::to_string(n) + ", trial " + std::to_string(k) + ")";
      o.require(p.has_value(), "no pairing" + tag);
      if (!p) continue;
      SelfdualResolution sr = selfdual_resolution(m, *p);
      const int sign = p->epsilon * sign_pow(sr.m);
      o.require(middle_has_sign(sr.complex, sr.twist_sum, sign), "T != eps(-1)^m T^t" + tag);
      FreeComplex mc = minimize_symmetric(sr.complex, sr.m, sr.epsilon);
      o.require(middle_has_sign(mc, sr.twist_sum, sign), "minimized T loses symmetry" + tag);
      o.require(is_complex(mc), "minimized complex is not a complex" + tag);
      o.require(betti_table(mc) == tor_betti(m), "minimized Betti table wrong" + tag);
    }
  }
  if (o.pass) o.detail = "20 modules each for n=3 and n=5 over GF(101)";
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::ostringstream seen;
  for (auto f : {FieldSpec::prime(101), FieldSpec::prime(2)}) {
    Ring r = Ring::standard(f, 3);
    std::map<std::size_t, int> counts;
    for (int k = 0; k < 20; ++k) {
      Rng rng = derived_rng(600 + f.characteristic(), static_cast<std::uint64_t>(k));
      FiniteLengthModule m = support::random_gorenstein(rng, r, 2 + k % 3);
      Resolution res = resolve_module(m, true, rng());
      std::size_t b1 = betti_table(res.complex).rank(1);
      ++counts[b1];
      o.require(b1 % 2 == 1, f.name() + " trial " + std::to_string(k) + ": beta_1 = " + std::to_string(b1));
    }
    seen << f.name() << " beta_1:";
    for (auto [b, c] : counts) seen << ' ' << b << "x" << c;
    seen << "; ";
  }
  if (o.pass) o.detail = seen.str();
  return o;
}

Outcome criterion7() {
  Outcome o;
  ExperimentConfig cfg;
  cfg.ell = 3;
  cfg.socle = 3;
  cfg.trials = 20;
  cfg.seed = 1;

  cfg.field = FieldSpec::prime(101);
  Report odd = run_char2_experiment(cfg);
  int pure = 0;
  for (const auto& t : odd.data["trials"])
    if (!t["degenerate"].get<bool>() && t["betti"] == "1;10,16;16,10;1") ++pure;
  o.require(pure * 100 >= 80 * cfg.trials, "GF(101): only " + std::to_string(pure) + "/20 pure");

  cfg.field = FieldSpec::prime(2);
  Report two = run_char2_experiment(cfg);
  int ok = 0;
  for (const auto& t : two.data["trials"]) {
    if (t["degenerate"].get<bool>()) {
      o.require(false, "GF(2): degenerate trial " + t["index"].dump());
      continue;
    }
    auto a = t["beta_middle"].get<std::size_t>(), b = t["beta_middle_left"].get<std::size_t>();
    bool good = a == b && a % 2 == 1 && a >= 1;
    o.require(a % 2 == 1, "GF(2): even beta_{3,4} in trial " + t["index"].dump());
    o.require(good, "GF(2): trial " + t["index"].dump() + " fails beta_{3,4} = beta_{2,4} odd");
    ok += good;
  }
  std::ostringstream d;
  d << "GF(101) pure " << pure << "/20; GF(2) parity " << ok << "/20, beta_{3,4} distribution";
  for (const auto& [k, v] : two.data["summary"]["middle_distribution"].items()) d << ' ' << k << "x" << v.dump();
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::vector<int> deg{0, 2, 3, 5, 6, 8};
  auto beta = herzog_kuhl(deg);
  std::vector<std::string> got;
  for (const auto& b : beta) got.push_back(b.to_string());
  o.require(got == std::vector<std::string>{"1", "10", "16", "16", "10", "1"}, "solution differs");
  const std::size_t c = deg.size() - 1;
  for (std::size_t k = 0; k < c; ++k) {
    mpq_class sum = 0;
    for (std::size_t i = 0; i <= c; ++i) {
      mpq_class power = 1;
      for (std::size_t e = 0; e < k; ++e) power *= deg[i];
      sum += sign_pow(static_cast<int>(i)) * beta[i].to_rational() * power;
    }
    o.require(sum == 0, "equation k=" + std::to_string(k) + " fails");
  }
  if (o.pass) o.detail = "1,10,16,16,10,1; all " + std::to_string(c) + " equations exact";
  return o;
}

Outcome criterion9() {
  Outcome o;
  const FieldSpec f = FieldSpec::prime(101);
  // symmetric 1x1
  for (int k = 0; k < 10; ++k) {
    Rng rng = derived_rng(900, static_cast<std::uint64_t>(k));
    Ring r = Ring::standard(f, 2 + k % 3);
    DPMatrix p = cyclic_matrix(r, random_dp_form(r, 2 + k % 3, rng));
    auto sym = is_symmetric(p);
    o.require(sym && sym->epsilon == 1, "1x1 not recognized as symmetric");
    FiniteLengthModule m = quotient_module(p);
    auto pr = gorenstein_pairing(m);
    o.require(pr && pr->epsilon == 1, "1x1 trial " + std::to_string(k) + ": no matching pairing");
    if (pr) o.require(support::pairing_brute_force(m, *pr), "1x1 pairing fails elementwise check");
  }
  // symmetric 2x2
  for (int k = 0; k < 10; ++k) {
    Rng rng = derived_rng(901, static_cast<std::uint64_t>(k));
    Ring r = Ring::standard(f, 2 + k % 2);
    const int s = 1 + k % 2;
    DPMatrix p(r, {-s, -s - 1}, {0, 1});
    p.set(0, 0, random_dp_form(r, s, rng));
    DPPolynomial g = random_dp_form(r, s + 1, rng);
    p.set(0, 1, g);
    p.set(1, 0, g);
    p.set(1, 1, random_dp_form(r, s + 2, rng));
    auto sym = is_symmetric(p);
    o.require(sym && sym->epsilon == 1, "2x2 not recognized as symmetric");
    FiniteLengthModule m = quotient_module(p);
    PairingOptions opt;
    opt.only_sign = 1;
    auto pr = gorenstein_pairing(m, opt);
    o.require(pr.has_value(), "2x2 trial " + std::to_string(k) + ": no symmetric pairing");
    if (pr) o.require(support::pairing_brute_force(m, *pr), "2x2 pairing fails elementwise check");
  }
  // cokernels of selfdual minimal resolutions
  std::map<int, int> signs;
  for (int k = 0; k < 10; ++k) {
    Rng rng = derived_rng(902, static_cast<std::uint64_t>(k));
    const int n = k % 5 == 4 ? 5 : 3;
    Ring r = Ring::standard(f, n);
    FiniteLengthModule m(r);
    PairingOptions opt;
    if (k % 2 == 0) {
      m = support::random_gorenstein(rng, r, 2 + k % 3);
    } else {
      DPMatrix p(r, {-2, -3}, {0, 1});
      DPPolynomial g = random_dp_form(r, 3, rng);
      p.set(0, 1, g);
      p.set(1, 0, -g);
      m = quotient_module(p);
      opt.only_sign = -1;
    }
    auto pr = gorenstein_pairing(m, opt);
    std::string tag = " (sample " + std::to_string(k) + ")";
    o.require(pr.has_value(), "no pairing to start from" + tag);
    if (!pr) continue;
    SelfdualResolution sr = selfdual_resolution(m, *pr);
    FreeComplex mc = minimize_symmetric(sr.complex, sr.m, sr.epsilon);
    const FreeModule& last = mc.modules.back();
    const int top = *std::max_element(last.twists.begin(), last.twists.end()) - r.total_weight();
    FiniteLengthModule coker = cokernel_module(mc, top);
    o.require(find_isomorphism(coker, m).has_value(), "cokernel is not M" + tag);
    const int expected = sr.sigma * sign_pow(sr.m);
    PairingOptions want;
    want.only_sign = expected;
    auto cp = gorenstein_pairing(coker, want);
    o.require(cp.has_value(), "cokernel has no pairing of sign sigma(-1)^m" + tag);
    if (cp) o.require(support::pairing_brute_force(coker, *cp), "cokernel pairing fails check" + tag);
    ++signs[expected];
  }
  if (o.pass) {
    std::ostringstream d;
    d << "10 symmetric 1x1, 10 symmetric 2x2, 10 cokernels (signs";
    for (auto [s, c] : signs) d << ' ' << (s > 0 ? "+" : "-") << "1:" << c;
    d << ")";
    o.detail = d.str();
  }
  return o;
}

}  // namespace

int main() {
  std::vector<FiniteLengthModule> mods;
  std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, criterion1},
      {2, criterion2},
      {3, [&] {
         mods = fifty_modules();
         return criterion3(mods);
       }},
      {4, [&] { return criterion4(mods); }},
      {5, criterion5},
      {6, criterion6},
      {7, criterion7},
      {8, criterion8},
      {9, criterion9},
  };
  int failures = 0;
  for (auto& [id, fn] : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d: %s - %s (%.2fs)\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures ? 1 : 0;
}
