#include "subcommands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ale/elliptic.hpp"
#include "ale/errors.hpp"
#include "ale/metrics.hpp"
#include "ale/nodal.hpp"
#include "ale/picard.hpp"
#include "ale/roots.hpp"
#include "ale/twistor.hpp"

namespace ale::cli {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

namespace {

std::vector<Complex> parse_complex_csv(const std::string& csv) {
  std::vector<Complex> out;
  for (const auto& item : split(csv, ',')) out.push_back(parse_complex_literal(item));
  return out;
}

std::vector<double> parse_double_csv(const std::string& csv) {
  std::vector<double> out;
  for (const auto& item : split(csv, ',')) {
    char* end = nullptr;
    out.push_back(std::strtod(item.c_str(), &end));
    if (end == nullptr || *end != '\0') throw ParseError("bad number '" + item + "'");
  }
  return out;
}

Json curve_point_json(const elliptic::CurvePoint& p) {
  if (p.at_infinity) return Json{{"at_infinity", true}, {"sheet", p.infinity_sheet}};
  return Json{{"u", to_json(p.u)}, {"w", to_json(p.w)}};
}

Json abel_residual_json(const elliptic::AbelResidual& r) {
  return Json{{"value", to_json(r.value)},
              {"lattice_distance", r.lattice_distance},
              {"normalized", r.normalized}};
}

}  // namespace

Json run_picard_cmd(const std::string& type, bool all) {
  if (all) {
    Json arr = Json::array();
    for (int ell = 1; ell <= 6; ++ell) {
      arr.push_back(Json::parse(picard::report_json(
          picard::verify_theorem(picard::CurveConfig::make(picard::ConfigType::a_odd(ell))))));
    }
    for (int k = 4; k <= 10; ++k) {
      arr.push_back(Json::parse(picard::report_json(
          picard::verify_theorem(picard::CurveConfig::make(picard::ConfigType::d(k))))));
    }
    for (int n = 6; n <= 8; ++n) {
      arr.push_back(Json::parse(picard::report_json(
          picard::verify_theorem(picard::CurveConfig::make(picard::ConfigType::e(n))))));
    }
    return Json{{"command", "picard"}, {"reports", arr}};
  }
  const auto cfg_type = picard::parse_config_type(type);
  const auto rep = picard::verify_theorem(picard::CurveConfig::make(cfg_type));
  Json j = Json::parse(picard::report_json(rep));
  j["command"] = "picard";
  return j;
}

Json run_akline_cmd(int k, double a, const std::string& c_text, const std::string& A_text,
                    const std::string& levels_csv) {
  twistor::AkParams prm;
  prm.k = k;
  prm.a = a;
  prm.c = parse_complex_pair(c_text);
  prm.scale_A = parse_complex_pair(A_text);
  prm.levels = parse_double_csv(levels_csv);

  const auto line = twistor::build_line(prm);
  const double residual = twistor::residual_ak(line, prm.levels);
  return Json{{"command", "ak-line"},
              {"alphas", to_json(line.alphas)},
              {"betas", to_json(line.betas)},
              {"x", to_json(line.x)},
              {"y", to_json(line.y)},
              {"z", to_json(line.z)},
              {"residual", residual}};
}

namespace {

nodal::NodalCandidate nodal_seed_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open seed file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("seed file: ") + e.what());
  }
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "ell" && key != "branch" && key != "c" && key != "p" && key != "s") {
      throw ParseError("seed file: unknown field '" + key + "'");
    }
  }
  nodal::NodalCandidate cand;
  cand.ell = j.at("ell").get<int>();
  cand.branch = complex_list_from_json(j.at("branch"));
  cand.c = complex_from_json(j.at("c"));
  cand.p = ComplexPoly(complex_list_from_json(j.at("p")));
  cand.s = complex_list_from_json(j.at("s"));
  cand.validate();
  return cand;
}

// default seed: monic p with unit constant term, double-root guesses at the
// midpoints of the closest root pairs of p^2 - 4q
nodal::NodalCandidate heuristic_seed(int ell, std::vector<Complex> branch) {
  nodal::NodalCandidate cand;
  cand.ell = ell;
  cand.branch = std::move(branch);
  cand.c = {1.0, 0.0};
  std::vector<Complex> pc(static_cast<size_t>(ell) + 1, Complex(0.0, 0.0));
  pc.front() = {1.0, 0.0};
  pc.back() = {1.0, 0.0};
  cand.p = ComplexPoly(std::move(pc));

  if (ell >= 2) {
    auto rts = roots(cand.r()).roots;
    std::vector<bool> used(rts.size(), false);
    for (int pick = 0; pick < ell - 1; ++pick) {
      double best = std::numeric_limits<double>::infinity();
      int bi = -1, bj = -1;
      for (size_t i = 0; i < rts.size(); ++i) {
        if (used[i]) continue;
        for (size_t j = i + 1; j < rts.size(); ++j) {
          if (used[j]) continue;
          const double d = std::abs(rts[i] - rts[j]);
          if (d < best) {
            best = d;
            bi = static_cast<int>(i);
            bj = static_cast<int>(j);
          }
        }
      }
      used[static_cast<size_t>(bi)] = used[static_cast<size_t>(bj)] = true;
      cand.s.push_back(0.5 * (rts[static_cast<size_t>(bi)] + rts[static_cast<size_t>(bj)]));
    }

    // place the constant term so r(s_1) = 0 holds at the seed:
    // (s^l + p0)^2 = 4 q(s) for the monic zero-filled p above
    const Complex s1 = cand.s.front();
    const Complex target = 4.0 * cand.q().eval(s1);
    const Complex base = std::pow(s1, ell);
    const Complex root = std::sqrt(target);
    const Complex p0 = (std::abs(-base + root) <= std::abs(-base - root)) ? -base + root
                                                                          : -base - root;
    std::vector<Complex> pc2 = cand.p.coeffs();
    pc2.front() = p0;
    cand.p = ComplexPoly(std::move(pc2));
  }
  return cand;
}

}  // namespace

Json run_nodal_cmd(int ell, const std::string& branch_csv,
                   const std::optional<std::string>& seed_file) {
  nodal::NodalCandidate seed;
  if (seed_file) {
    seed = nodal_seed_from_file(*seed_file);
  } else {
    if (branch_csv.empty()) throw ParseError("nodal: provide --branch or --seed");
    auto branch = parse_complex_csv(branch_csv);
    if (static_cast<int>(branch.size()) != 2 * ell) {
      throw ParseError("nodal: expected 2*ell branch points");
    }
    seed = heuristic_seed(ell, std::move(branch));
  }

  const auto sol = nodal::newton_solve(seed);
  const auto genus = nodal::genus_report(
      sol, picard::CurveConfig::make(picard::ConfigType::a_odd(sol.candidate.ell)));

  return Json{{"command", "nodal"},
              {"p", to_json(sol.candidate.p)},
              {"c", to_json(sol.candidate.c)},
              {"doubles", to_json(sol.candidate.s)},
              {"residual", sol.residual},
              {"node_count", sol.node_count},
              {"tangent_dim", sol.tangent_dim},
              {"genus", Json{{"arith", static_cast<long long>(genus.genus_arith)},
                             {"geom", static_cast<long long>(genus.genus_geom)}}}};
}

Json run_d4_cmd(const std::string& z_csv, const std::string& a_csv, const std::string& signs_csv,
                bool exhaustive, std::optional<int> solve_coeff) {
  const auto zc = parse_complex_csv(z_csv);
  if (zc.size() != 5) throw ParseError("d4: --z expects 5 coefficients c0..c4");
  const auto av = parse_double_csv(a_csv);
  if (av.size() != 4) throw ParseError("d4: --a expects 4 levels");
  const auto sv = parse_double_csv(signs_csv);
  if (sv.size() != 4) throw ParseError("d4: --signs expects 4 entries of +-1");
  std::array<double, 4> a{av[0], av[1], av[2], av[3]};
  std::array<int, 4> signs{};
  for (int i = 0; i < 4; ++i) {
    if (sv[static_cast<size_t>(i)] != 1.0 && sv[static_cast<size_t>(i)] != -1.0) {
      throw ParseError("d4: signs must be +1 or -1");
    }
    signs[static_cast<size_t>(i)] = static_cast<int>(sv[static_cast<size_t>(i)]);
  }

  const ComplexPoly z(zc);
  Json out{{"command", "d4"}};

  if (solve_coeff) {
    const auto res = elliptic::constraint_solve(z, *solve_coeff, a, signs, {0, 0, 0, 0});
    out["solved_z"] = to_json(res.z);
    out["iterations"] = res.iterations;
    out["residual"] = abel_residual_json(res.residual);
    const auto curve = elliptic::EllipticCurveData::make(res.z);
    out["periods"] = Json::array({to_json(curve.omega1()), to_json(curve.omega2())});
    out["zeros"] = Json::array();
    out["poles"] = Json::array();
    for (const auto& p : res.divisor.zeros) out["zeros"].push_back(curve_point_json(p));
    for (const auto& p : res.divisor.poles) out["poles"].push_back(curve_point_json(p));
    return out;
  }

  const auto curve = elliptic::EllipticCurveData::make(z);
  out["periods"] = Json::array({to_json(curve.omega1()), to_json(curve.omega2())});

  if (exhaustive) {
    const auto scan = elliptic::d4_exhaustive_scan(curve, a, signs);
    const auto& best = scan.front();
    const auto div = elliptic::d4_divisor_points(curve, a, signs, best.root_choice);
    out["residual"] = abel_residual_json(best.residual);
    out["selection"] = best.root_choice;
    out["zeros"] = Json::array();
    out["poles"] = Json::array();
    for (const auto& p : div.zeros) out["zeros"].push_back(curve_point_json(p));
    for (const auto& p : div.poles) out["poles"].push_back(curve_point_json(p));
    Json scores = Json::array();
    for (const auto& s : scan) {
      scores.push_back(Json{{"choice", s.root_choice},
                            {"lattice_distance", s.residual.lattice_distance}});
    }
    out["scores"] = scores;
    return out;
  }

  const auto div = elliptic::d4_divisor_points(curve, a, signs, {0, 0, 0, 0});
  const auto res = elliptic::principality_residual(curve, div.zeros, div.poles);
  out["residual"] = abel_residual_json(res);
  out["selection"] = div.root_choice;
  out["zeros"] = Json::array();
  out["poles"] = Json::array();
  for (const auto& p : div.zeros) out["zeros"].push_back(curve_point_json(p));
  for (const auto& p : div.poles) out["poles"].push_back(curve_point_json(p));
  return out;
}

namespace {

metrics::GridFunction grid_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open grid file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("grid file: ") + e.what());
  }
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "nx" && key != "ny" && key != "nt" && key != "hx" && key != "hy" &&
        key != "ht" && key != "values") {
      throw ParseError("grid file: unknown field '" + key + "'");
    }
  }
  metrics::GridFunction g;
  g.nx = j.at("nx").get<int>();
  g.ny = j.at("ny").get<int>();
  g.nt = j.at("nt").get<int>();
  g.hx = j.at("hx").get<double>();
  g.hy = j.at("hy").get<double>();
  g.ht = j.at("ht").get<double>();
  g.values = j.at("values").get<std::vector<double>>();
  if (g.values.size() != static_cast<size_t>(g.nx) * static_cast<size_t>(g.ny) *
                             static_cast<size_t>(g.nt)) {
    throw ParseError("grid file: values length does not match nx*ny*nt");
  }
  return g;
}

}  // namespace

Json run_metrics_cmd(const std::string& check, const std::optional<std::string>& grid_file,
                     double h) {
  using namespace ale::metrics;
  Json out{{"command", "metrics"}, {"check", check}};

  if (check == "eh-ricci") {
    double worst = 0.0;
    Json per_point = Json::array();
    for (double r : {1.3, 1.5, 1.8, 2.5, 4.0}) {
      const Point p{r, 1.0, 0.3, 0.7};
      const double m = max_abs(ricci_numeric(eh_metric_fn(), p, h));
      per_point.push_back(Json{{"r", r}, {"max_ricci", m}});
      worst = std::max(worst, m);
    }
    const Point p{1.5, 1.0, 0.3, 0.7};
    const double e1 = max_abs(ricci_raw(eh_metric_fn(), p, h));
    const double e2 = max_abs(ricci_raw(eh_metric_fn(), p, 0.5 * h));
    out["points"] = per_point;
    out["max_ricci"] = worst;
    out["convergence_order"] = std::log(e1 / e2) / std::log(2.0);
    out["pass"] = worst <= 1e-6;
    return out;
  }
  if (check == "moment") {
    double worst = 0.0;
    for (int i = 0; i <= 50; ++i) {
      const double r = 1.0 + 9.0 * i / 50.0 + 1e-9;
      worst = std::max(worst, std::abs(eh_sigma3_coeff(r) - moment_norm(r * r)));
    }
    out["max_deviation"] = worst;
    out["pass"] = worst <= 1e-13;
    return out;
  }
  if (check == "hyperbolic") {
    std::vector<double> samples;
    for (int i = 0; i < 10; ++i) samples.push_back(0.15 + 0.07 * i);
    const auto res = hyperbolic_check(samples, h > 0.0 ? std::min(h, 1e-3) : 1e-3);
    out["mean_curvature"] = res.mean_curvature;
    out["max_deviation"] = res.max_deviation;
    out["pass"] = res.max_deviation <= 1e-5;
    return out;
  }
  if (check == "weyl-form") {
    out["max_curl"] = weyl_form_check({1.5, 2.0, 3.0, 5.0, 10.0});
    const double integral = weyl_form_integral(2.0, 3.0);
    out["integral_2_3"] = integral;
    out["integral_error"] = std::abs(integral + std::log(8.0 / 3.0));
    out["pass"] = out["max_curl"].get<double>() <= 1e-15 &&
                  out["integral_error"].get<double>() <= 1e-10;
    return out;
  }
  if (check == "toda") {
    GridFunction grid;
    if (grid_file) {
      grid = grid_from_file(*grid_file);
    } else {
      grid = make_grid(9, 9, 9, {0.0, 0.0, 1.0}, {0.125, 0.125, 0.125},
                       [](double, double, double t) { return std::log(t); });
    }
    const auto res = toda_residual(grid);
    out["max_residual"] = res.max_abs;
    out["location"] = Json::array({res.ix, res.iy, res.it});
    out["pass"] = grid_file ? true : res.max_abs <= 1e-11;
    return out;
  }
  throw ParseError("metrics: unknown check '" + check +
                   "' (expected eh-ricci|moment|hyperbolic|weyl-form|toda)");
}

}  // namespace ale::cli
