#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "dpres/cli.hpp"
#include "dpres/error.hpp"
#include "dpres/io.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kPrecondition = 3 };

std::pair<int, int> parse_window(const std::string& w) {
  auto v = dpres::parse_int_list(w);
  if (v.size() != 2) throw dpres::ConfigError("--window expects lo,hi");
  return {v[0], v[1]};
}

dpres::FieldSpec parse_field(const std::string& s) {
  if (s == "QQ") return dpres::FieldSpec::rationals();
  auto v = dpres::parse_int_list(s);
  if (v.size() != 1) throw dpres::ConfigError("--field expects a prime or QQ");
  return dpres::FieldSpec::prime(v[0]);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resolutions of finite-length modules given by matrices in divided powers"};
  app.require_subcommand(1);

  std::string input, format = "text", window;
  bool no_minimize = false;

  auto* resolve = app.add_subcommand("resolve", "minimal (selfdual when possible) resolution of M(P)");
  resolve->add_option("--input", input, ".dpm file")->required();
  resolve->add_flag("--no-minimize", no_minimize, "report the unminimized construction");
  resolve->add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));

  auto* gor = app.add_subcommand("check-gorenstein", "search for a graded pairing on M(P)");
  gor->add_option("--input", input, ".dpm file")->required();
  gor->add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));

  auto* exp = app.add_subcommand("experiment", "seeded experiments");
  std::string exp_name, field = "2";
  dpres::ExperimentConfig cfg;
  exp->add_option("name", exp_name, "experiment name (char2)")->required();
  exp->add_option("--l", cfg.ell, "n = 2^l - 3 variables");
  exp->add_option("--field", field, "prime or QQ");
  exp->add_option("--socle", cfg.socle, "socle degree of the random forms");
  exp->add_option("--trials", cfg.trials, "number of trials");
  exp->add_option("--seed", cfg.seed, "base seed");
  exp->add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));

  auto* hk = app.add_subcommand("hk", "pure Betti numbers from a degree sequence");
  std::string degrees;
  hk->add_option("--degrees", degrees, "comma separated, strictly increasing")->required();
  hk->add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));

  auto* verify = app.add_subcommand("verify", "degreewise exactness of the computed resolution");
  verify->add_option("--input", input, ".dpm file")->required();
  verify->add_option("--window", window, "lo,hi (use --window=lo,hi for negative lo)")->required();
  verify->add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    dpres::OutputFormat fmt = dpres::parse_format(format);
    dpres::Report report;
    if (*resolve) {
      report = dpres::run_resolve(dpres::read_dpmatrix_file(input), !no_minimize);
    } else if (*gor) {
      report = dpres::run_check_gorenstein(dpres::read_dpmatrix_file(input));
    } else if (*exp) {
      cfg.name = exp_name;
      cfg.field = parse_field(field);
      report = dpres::run_char2_experiment(cfg);
    } else if (*hk) {
      report = dpres::run_hk(dpres::parse_int_list(degrees));
    } else if (*verify) {
      auto [lo, hi] = parse_window(window);
      report = dpres::run_verify(dpres::read_dpmatrix_file(input), lo, hi);
    }
    std::cout << report.render(fmt);
  } catch (const dpres::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const dpres::PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return kPrecondition;
  } catch (const dpres::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}
