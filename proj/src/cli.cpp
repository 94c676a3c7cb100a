#include "dpres/cli.hpp"

#include <numeric>
#include <sstream>

#include "dpres/error.hpp"
#include "dpres/nielsen.hpp"

namespace dpres {

using json = nlohmann::ordered_json;

OutputFormat parse_format(const std::string& name) {
  if (name == "text") return OutputFormat::Text;
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  throw ConfigError("unknown output format '" + name + "' (expected text, json or csv)");
}

namespace {

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

bool all_scalars(const json& a) {
  return std::all_of(a.begin(), a.end(), [](const json& x) { return !x.is_structured(); });
}

void text_node(std::ostream& os, const std::string& key, const json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    os << pad << key << ":\n";
    for (const auto& [k, x] : v.items()) text_node(os, k, x, indent + 2);
  } else if (v.is_array() && all_scalars(v)) {
    os << pad << key << ":";
    for (const auto& x : v) os << ' ' << scalar_text(x);
    os << '\n';
  } else if (v.is_array()) {
    std::size_t k = 0;
    for (const auto& x : v) text_node(os, key + "[" + std::to_string(k++) + "]", x, indent);
  } else if (v.is_string() && v.get<std::string>().find('\n') != std::string::npos) {
    os << pad << key << ":\n";
    std::istringstream lines(v.get<std::string>());
    std::string line;
    while (std::getline(lines, line)) os << pad << "  " << line << '\n';
  } else {
    os << pad << key << ": " << scalar_text(v) << '\n';
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void csv_node(std::ostream& os, const std::string& path, const json& v) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) csv_node(os, path.empty() ? k : path + "." + k, x);
  } else if (v.is_array()) {
    std::size_t k = 0;
    for (const auto& x : v) csv_node(os, path + "." + std::to_string(k++), x);
  } else {
    os << csv_field(path) << ',' << csv_field(v.is_null() ? "" : scalar_text(v)) << '\n';
  }
}

json ring_json(const Ring& ring) {
  return json{{"field", ring.field().name()}, {"vars", ring.nvars()}, {"weights", ring.weights()}};
}

json module_json(const FiniteLengthModule& m) {
  json j{{"dim", m.total_dim()}};
  if (m.is_zero()) {
    j["min_degree"] = nullptr;
    j["hilbert_function"] = json::array();
  } else {
    j["min_degree"] = m.min_degree();
    j["hilbert_function"] = hilbert_vector(m);
  }
  return j;
}

json table_json(const BettiTable& t, bool minimal) {
  json entries = json::array();
  for (const auto& [key, v] : t.entries()) entries.push_back(json{{"i", key.first}, {"j", key.second}, {"beta", v}});
  return json{{"minimal", minimal}, {"compact", t.compact()}, {"entries", entries}, {"grid", t.to_string()}};
}

BettiTable graded_ranks(const FreeComplex& c) {
  BettiTable t;
  for (std::size_t i = 0; i < c.modules.size(); ++i)
    for (int tw : c.modules[i].twists) t.add(static_cast<int>(i), tw);
  return t;
}

json pairing_json(const std::optional<GradedPairing>& p) {
  if (!p) return json{{"found", false}};
  return json{{"found", true}, {"s", p->s}, {"epsilon", p->epsilon}};
}

json symmetry_json(const DPMatrix& p) {
  auto sym = is_symmetric(p);
  if (!sym) return json{{"holds", false}};
  return json{{"holds", true}, {"s", sym->s}, {"epsilon", sym->epsilon}};
}

json resolution_json(const Resolution& r) {
  return json{{"construction", r.selfdual ? "selfdual" : "nielsen"},
              {"minimization", r.minimization},
              {"length", r.complex.length()},
              {"ranks", r.complex.ranks()}};
}

json middle_json(const Resolution& r) {
  if (!r.selfdual) return json{{"kind", "none"}};
  return json{{"kind", r.sigma == 1 ? "symmetric" : "skew"},
              {"sigma", r.sigma},
              {"holds", r.middle_ok.value_or(false)}};
}

bool is_pure(const BettiTable& t) {
  for (int i = 0; i <= t.max_index(); ++i) {
    int count = 0;
    for (const auto& [key, v] : t.entries())
      if (key.first == i) ++count;
    if (count > 1) return false;
  }
  return true;
}

}  // namespace

std::string Report::text() const {
  std::ostringstream os;
  for (const auto& [k, v] : data.items()) text_node(os, k, v, 0);
  return os.str();
}

std::string Report::json() const { return data.dump(2) + "\n"; }

std::string Report::csv() const {
  std::ostringstream os;
  os << "key,value\n";
  csv_node(os, "", data);
  return os.str();
}

std::string Report::render(OutputFormat f) const {
  switch (f) {
    case OutputFormat::Json:
      return json();
    case OutputFormat::Csv:
      return csv();
    case OutputFormat::Text:
      break;
  }
  return text();
}

std::vector<std::size_t> hilbert_vector(const FiniteLengthModule& m) {
  std::vector<std::size_t> hf;
  if (m.is_zero()) return hf;
  for (int j = m.min_degree(); j <= m.max_degree(); ++j) hf.push_back(m.dim(j));
  return hf;
}

Resolution resolve_module(const FiniteLengthModule& m, bool minimize_result, std::uint64_t seed) {
  Resolution out{FreeComplex{m.ring(), {}, {}, std::nullopt}, std::nullopt};
  if (m.is_zero()) {
    out.complex = nielsen_complex(m);
    out.minimal = true;
    return out;
  }
  PairingOptions opt;
  opt.seed = seed;
  out.pairing = gorenstein_pairing(m, opt);
  const int n = m.ring().nvars();
  if (out.pairing && n % 2 == 1) {
    SelfdualResolution sr = selfdual_resolution(m, *out.pairing);
    out.selfdual = true;
    out.m = sr.m;
    out.sigma = sr.sigma;
    out.twist_sum = sr.twist_sum;
    if (!minimize_result) {
      out.complex = sr.complex;
    } else if (sr.sigma == 1 && m.field().characteristic() == 2) {
      out.complex = minimize(sr.complex);
      out.minimization = "plain";
      out.minimal = true;
    } else {
      out.complex = minimize_symmetric(sr.complex, sr.m, sr.epsilon);
      out.minimization = "symmetric";
      out.minimal = true;
    }
    const GradedFreeMatrix& t = middle_map(out.complex);
    const FreeModule& fm = out.complex.modules[static_cast<std::size_t>(sr.m)];
    const FreeModule& fm1 = out.complex.modules[static_cast<std::size_t>(sr.m) + 1];
    out.middle_ok = fm1 == fm.dual(sr.twist_sum) &&
                    t.transpose(sr.twist_sum).same_entries(t.scaled(m.field().from_int(sr.sigma)));
    return out;
  }
  FreeComplex c = nielsen_complex(m);
  if (minimize_result) {
    out.complex = minimize(c);
    out.minimization = "plain";
    out.minimal = true;
  } else {
    out.complex = std::move(c);
  }
  return out;
}

DPPolynomial random_dp_form(const Ring& ring, int degree, Rng& rng) {
  auto monos = dp_monomials_of_degree(ring, degree);
  if (monos.empty()) throw PreconditionError("no divided-power monomials of degree -" + std::to_string(degree));
  for (;;) {
    DPPolynomial f;
    for (const auto& mono : monos) {
      Scalar c = random_scalar(ring.field(), rng);
      if (!c.is_zero()) f += DPPolynomial(mono, c);
    }
    if (!f.is_zero()) return f;
  }
}

DPMatrix cyclic_matrix(const Ring& ring, const DPPolynomial& f) {
  auto deg = f.homogeneous_degree();
  if (!deg) throw PreconditionError("cyclic_matrix needs a nonzero homogeneous form");
  DPMatrix p(ring, {*deg}, {0});
  p.set(0, 0, f);
  return p;
}

std::vector<std::size_t> generic_gorenstein_hf(const Ring& ring, int socle) {
  std::vector<std::size_t> hf;
  for (int i = 0; i <= socle; ++i)
    hf.push_back(std::min(monomials_of_degree(ring, i).size(), monomials_of_degree(ring, socle - i).size()));
  return hf;
}

Report run_resolve(const DPMatrix& p, bool minimize_result) {
  Report r{"resolve", json::object()};
  auto& d = r.data;
  d["command"] = "resolve";
  d["ring"] = ring_json(p.ring());
  d["matrix"] = json{{"rows", p.rows()}, {"cols", p.cols()}, {"row_twists", p.row_twists()},
                     {"col_twists", p.col_twists()}};
  FiniteLengthModule m = quotient_module(p);
  d["module"] = module_json(m);
  d["symmetric_matrix"] = symmetry_json(p);
  Resolution res = resolve_module(m, minimize_result);
  d["gorenstein"] = pairing_json(res.pairing);
  d["resolution"] = resolution_json(res);
  d["betti"] = table_json(res.minimal ? betti_table(res.complex) : graded_ranks(res.complex), res.minimal);
  d["middle_map"] = middle_json(res);
  return r;
}

Report run_check_gorenstein(const DPMatrix& p) {
  Report r{"check-gorenstein", json::object()};
  auto& d = r.data;
  d["command"] = "check-gorenstein";
  d["ring"] = ring_json(p.ring());
  FiniteLengthModule m = quotient_module(p);
  d["module"] = module_json(m);
  d["symmetric_matrix"] = symmetry_json(p);
  std::optional<GradedPairing> pairing;
  if (!m.is_zero()) pairing = gorenstein_pairing(m);
  json g = pairing_json(pairing);
  if (pairing) g["verified"] = check_pairing(m, *pairing);
  d["gorenstein"] = g;
  return r;
}

Report run_char2_experiment(const ExperimentConfig& cfg) {
  if (cfg.name != "char2") throw ConfigError("unknown experiment '" + cfg.name + "'");
  if (cfg.trials < 1) throw ConfigError("trials must be at least 1");
  if (cfg.socle < 1) throw ConfigError("socle degree must be positive");
  Char2Constraints rules = char2_constraints(cfg.ell);
  if (cfg.ell > 3)
    throw PreconditionError("l = " + std::to_string(cfg.ell) + " means n = " + std::to_string(rules.n) +
                            " variables; only l = 3 (n = 5) is feasible here");
  std::vector<int> weights = cfg.weights;
  if (weights.empty()) weights.assign(static_cast<std::size_t>(rules.n), 1);
  if (weights.size() != static_cast<std::size_t>(rules.n))
    throw ConfigError("expected " + std::to_string(rules.n) + " weights");
  Ring ring(cfg.field, weights);
  const auto target = generic_gorenstein_hf(ring, cfg.socle);
  constexpr int kRetryCap = 100;

  Report r{"experiment", json::object()};
  auto& d = r.data;
  d["command"] = "experiment";
  d["experiment"] = cfg.name;
  d["config"] = json{{"l", cfg.ell},  {"n", rules.n},           {"m", rules.m},
                     {"field", cfg.field.name()}, {"weights", weights}, {"socle", cfg.socle},
                     {"trials", cfg.trials},     {"seed", cfg.seed}};
  d["constraints"] = json{{"a_max", rules.a_max}, {"bound", 2 * rules.a_max + 1}};
  d["target_hf"] = target;

  json trials = json::array();
  int degenerate = 0, passed = 0, pure = 0;
  std::map<std::size_t, int> middle;
  for (int t = 0; t < cfg.trials; ++t) {
    Rng rng = derived_rng(cfg.seed, static_cast<std::uint64_t>(t));
    json rec{{"index", t}};
    std::optional<FiniteLengthModule> mod;
    int attempts = 0;
    while (attempts < kRetryCap) {
      ++attempts;
      FiniteLengthModule m = quotient_module(cyclic_matrix(ring, random_dp_form(ring, cfg.socle, rng)));
      if (hilbert_vector(m) == target) {
        mod = std::move(m);
        break;
      }
    }
    rec["attempts"] = attempts;
    if (!mod) {
      ++degenerate;
      rec["degenerate"] = true;
      trials.push_back(rec);
      continue;
    }
    rec["degenerate"] = false;
    Resolution res = resolve_module(*mod, true, rng());
    BettiTable table = betti_table(res.complex).normalized();
    std::size_t x = table.at(rules.m + 1, rules.m + 2), y = table.at(rules.m, rules.m + 2);
    bool ok = rules.check(table);
    bool is_p = is_pure(table);
    passed += ok;
    pure += is_p;
    ++middle[x];
    rec["minimization"] = res.minimization;
    rec["betti"] = table.compact();
    rec["beta_middle"] = x;
    rec["beta_middle_left"] = y;
    rec["pure"] = is_p;
    rec["passes"] = ok;
    trials.push_back(rec);
  }
  d["trials"] = trials;
  json dist = json::object();
  for (const auto& [x, count] : middle) dist[std::to_string(x)] = count;
  const int good = cfg.trials - degenerate;
  d["summary"] = json{{"trials", cfg.trials},
                      {"degenerate", degenerate},
                      {"passed", passed},
                      {"pure", pure},
                      {"pass_percent", good ? 100 * passed / good : 0},
                      {"pure_percent", good ? 100 * pure / good : 0},
                      {"middle_distribution", dist}};
  return r;
}

Report run_hk(const std::vector<int>& degrees) {
  std::vector<Scalar> beta = herzog_kuhl(degrees);
  const std::size_t c = degrees.size() - 1;
  Report r{"hk", json::object()};
  auto& d = r.data;
  d["command"] = "hk";
  d["degrees"] = degrees;
  d["codimension"] = c;

  std::vector<mpq_class> q;
  for (const auto& b : beta) q.push_back(b.to_rational());
  json rationals = json::array();
  for (const auto& b : beta) rationals.push_back(b.to_string());
  d["beta"] = rationals;

  bool equations = true;
  for (std::size_t k = 0; k < c; ++k) {
    mpq_class sum = 0;
    for (std::size_t i = 0; i <= c; ++i) {
      mpz_class p;
      mpz_class base = degrees[i];
      mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k));
      sum += (i % 2 ? -1 : 1) * q[i] * p;
    }
    equations = equations && sum == 0;
  }
  d["equations_hold"] = equations;

  mpz_class den = 1;
  for (const auto& x : q) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<mpz_class> ints;
  mpz_class g = 0;
  for (const auto& x : q) {
    mpq_class y = x * den;
    ints.push_back(y.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), y.get_num_mpz_t());
  }
  json normalized = json::array();
  BettiTable table;
  for (std::size_t i = 0; i < ints.size(); ++i) {
    mpz_class v = ints[i] / g;
    if (!v.fits_slong_p()) throw PreconditionError("normalized Betti number too large");
    normalized.push_back(v.get_si());
    table.add(static_cast<int>(i), degrees[i], static_cast<std::size_t>(v.get_si()));
  }
  d["normalized"] = normalized;
  d["grid"] = table.to_string();

  for (int ell = 2; ell <= 10; ++ell) {
    if (obstructed_degree_sequence(ell) != degrees) continue;
    const std::size_t lo = (c - 1) / 2;
    long a = normalized[lo].get<long>(), b = normalized[lo + 1].get<long>();
    d["obstruction"] = json{
        {"l", ell},
        {"note", "no graded Cohen-Macaulay factor ring of codimension " + std::to_string(c) +
                     " has a pure resolution with this degree sequence"},
        {"middle_positions", json::array({lo, lo + 1})},
        {"middle_betti", json::array({a, b})},
        {"parity", std::string(a % 2 ? "odd" : "even") + "," + (b % 2 ? "odd" : "even")}};
  }
  return r;
}

Report run_verify(const DPMatrix& p, int lo, int hi) {
  if (lo > hi) throw ConfigError("window must satisfy lo <= hi");
  Report r{"verify", json::object()};
  auto& d = r.data;
  d["command"] = "verify";
  d["ring"] = ring_json(p.ring());
  FiniteLengthModule m = quotient_module(p);
  d["module"] = module_json(m);
  Resolution res = resolve_module(m, true);
  d["resolution"] = resolution_json(res);
  d["window"] = json::array({lo, hi});
  StrandReport rep = verify_strands(res.complex, m, lo, hi);
  json degs = json::array();
  for (const auto& s : rep.degrees)
    degs.push_back(json{{"degree", s.degree},
                        {"dims", s.dims},
                        {"ranks", s.ranks},
                        {"h0", s.h0},
                        {"module_dim", s.module_dim},
                        {"exact", s.exact},
                        {"augmentation_ok", s.augmentation_ok}});
  d["strands"] = degs;
  d["all_exact"] = rep.all_exact();
  return r;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ConfigError("empty item in list '" + text + "'");
    item = item.substr(b, e - b + 1);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("not an integer: '" + item + "'");
    }
    if (used != item.size()) throw ConfigError("not an integer: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

}  // namespace dpres
