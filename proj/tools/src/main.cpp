#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "ale/errors.hpp"
#include "checks.hpp"
#include "runconfig.hpp"
#include "subcommands.hpp"

namespace {

using ale::cli::Json;

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ale::ParseError("cannot open output file '" + out_path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ALE instanton geometry verification toolkit"};
  app.set_help_flag("--help", "print usage");  // frees -h for the step option --h
  app.require_subcommand(1);
  app.fallthrough();

  double tol = 0.0;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string only_csv;
  app.add_option("--tol", tol, "override check tolerances (positive)");
  app.add_option("--seed", seed, "seed for randomized sweeps (default 0)");
  app.add_option("--out", out_path, "write the JSON report to a file instead of stdout");
  app.add_option("--only", only_csv, "comma list of check groups (picard,aklines,nodal,metrics)");

  // verify-all
  auto* verify = app.add_subcommand("verify-all", "run the full verification battery");
  std::string config_file;
  verify->add_option("--config", config_file, "JSON run configuration");

  // picard
  auto* picard_cmd = app.add_subcommand("picard", "divisor class Q and Theorem-1 identities");
  std::string type_text = "A3";
  bool picard_all = false;
  picard_cmd->add_option("--type", type_text, "configuration label, e.g. A3, D5, E8");
  picard_cmd->add_flag("--all", picard_all, "report every supported configuration");

  // ak-line
  auto* ak_cmd = app.add_subcommand("ak-line", "construct and certify an A_k twistor line");
  int ak_k = 0;
  double ak_a = 0.0;
  std::string ak_c = "1,0", ak_A = "1,0", ak_levels;
  ak_cmd->add_option("--k", ak_k, "cyclic index k >= 0")->required();
  ak_cmd->add_option("--a", ak_a, "real coefficient of z(u)");
  ak_cmd->add_option("--c", ak_c, "complex coefficient RE,IM");
  ak_cmd->add_option("--A", ak_A, "scale of x(u), RE,IM");
  ak_cmd->add_option("--levels", ak_levels, "comma list of k+1 distinct reals")->required();

  // nodal
  auto* nodal_cmd = app.add_subcommand("nodal", "solve for a nodal hyperelliptic curve");
  int nodal_ell = 2;
  std::string branch_csv;
  std::string nodal_seed_file;
  nodal_cmd->add_option("--ell", nodal_ell, "family parameter l >= 1")->required();
  nodal_cmd->add_option("--branch", branch_csv, "comma list of 2l branch points (complex literals)");
  nodal_cmd->add_option("--seed", nodal_seed_file, "JSON seed candidate file");

  // d4
  auto* d4_cmd = app.add_subcommand("d4", "evaluate the elliptic constraint for D4");
  std::string z_csv, a_csv, signs_csv = "1,1,1,1";
  bool exhaustive = false;
  int solve_coeff = -1;
  d4_cmd->add_option("--z", z_csv, "5 coefficients c0,..,c4 of the quartic")->required();
  d4_cmd->add_option("--a", a_csv, "4 nonzero real levels")->required();
  d4_cmd->add_option("--signs", signs_csv, "4 signs, +1 or -1");
  d4_cmd->add_flag("--exhaustive", exhaustive, "score all 4^4 root selections");
  d4_cmd->add_option("--solve-coeff", solve_coeff, "Newton-adjust this coefficient (0..4)");

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "certify the metric identities");
  std::string check;
  std::string grid_file;
  double step = 1e-2;
  metrics_cmd->add_option("--check", check, "eh-ricci|moment|hyperbolic|weyl-form|toda")->required();
  metrics_cmd->add_option("--grid", grid_file, "grid JSON for the toda check");
  metrics_cmd->add_option("--h", step, "finite-difference step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) {
      ale::cli::RunConfig cfg;
      if (!config_file.empty()) {
        std::ifstream in(config_file);
        if (!in) throw ale::ParseError("cannot open config file '" + config_file + "'");
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        cfg = ale::cli::parse_config(text);
      }
      // command-line flags override the file
      if (app.count("--tol")) {
        if (!(tol > 0.0)) throw ale::ParseError("--tol must be positive");
        cfg.tol = tol;
      }
      if (app.count("--seed")) cfg.seed = seed;
      if (app.count("--out")) cfg.out = out_path;
      if (app.count("--only")) {
        cfg.only.clear();
        for (const auto& g : ale::cli::split(only_csv, ',')) cfg.only.push_back(g);
        for (const auto& g : cfg.only) {
          const auto& known = ale::cli::default_groups();
          if (std::find(known.begin(), known.end(), g) == known.end()) {
            throw ale::ParseError("unknown check group '" + g + "'");
          }
        }
      }
      int exit_code = 0;
      const Json report = ale::cli::verify_all(cfg, &exit_code);
      emit(report, cfg.out);
      return exit_code;
    }

    Json result;
    if (picard_cmd->parsed()) {
      result = ale::cli::run_picard_cmd(type_text, picard_all);
    } else if (ak_cmd->parsed()) {
      result = ale::cli::run_akline_cmd(ak_k, ak_a, ak_c, ak_A, ak_levels);
    } else if (nodal_cmd->parsed()) {
      std::optional<std::string> seed_opt;
      if (!nodal_seed_file.empty()) seed_opt = nodal_seed_file;
      result = ale::cli::run_nodal_cmd(nodal_ell, branch_csv, seed_opt);
    } else if (d4_cmd->parsed()) {
      std::optional<int> coeff_opt;
      if (d4_cmd->count("--solve-coeff")) coeff_opt = solve_coeff;
      result = ale::cli::run_d4_cmd(z_csv, a_csv, signs_csv, exhaustive, coeff_opt);
    } else if (metrics_cmd->parsed()) {
      std::optional<std::string> grid_opt;
      if (!grid_file.empty()) grid_opt = grid_file;
      result = ale::cli::run_metrics_cmd(check, grid_opt, step);
    }
    emit(result, out_path);
    if (result.contains("pass") && !result["pass"].get<bool>()) return 1;
    return 0;
  } catch (const ale::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ale::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
