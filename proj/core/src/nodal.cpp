#include "ale/nodal.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

#include "ale/errors.hpp"
#include "ale/roots.hpp"

namespace ale::nodal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ComplexPoly branch_product(const std::vector<Complex>& branch) {
  return ComplexPoly::from_roots(branch);
}

// real unknown vector layout: p coefficients, then c, then the s_j
int real_dim(int ell) { return 2 * (2 * ell + 1); }

std::vector<int> default_pins(int ell) {
  // Re c, Im c, Re p0
  const int c_re = 2 * (ell + 1);
  return {c_re, c_re + 1, 0};
}

Eigen::VectorXd pack(const NodalCandidate& cand) {
  Eigen::VectorXd v(real_dim(cand.ell));
  int at = 0;
  for (int m = 0; m <= cand.ell; ++m) {
    const Complex pm = cand.p.coeff(m);
    v(at++) = pm.real();
    v(at++) = pm.imag();
  }
  v(at++) = cand.c.real();
  v(at++) = cand.c.imag();
  for (const Complex& sj : cand.s) {
    v(at++) = sj.real();
    v(at++) = sj.imag();
  }
  return v;
}

NodalCandidate unpack(const NodalCandidate& proto, const Eigen::VectorXd& v) {
  NodalCandidate cand = proto;
  int at = 0;
  std::vector<Complex> pc(static_cast<size_t>(proto.ell) + 1);
  for (int m = 0; m <= proto.ell; ++m) {
    pc[static_cast<size_t>(m)] = Complex(v(at), v(at + 1));
    at += 2;
  }
  cand.p = ComplexPoly(std::move(pc));
  cand.c = Complex(v(at), v(at + 1));
  at += 2;
  for (size_t j = 0; j < cand.s.size(); ++j) {
    cand.s[j] = Complex(v(at), v(at + 1));
    at += 2;
  }
  return cand;
}

// complex constraint Jacobian, rows (r(s_j), r'(s_j)), columns (p_m, c, s_t)
Eigen::MatrixXcd complex_jacobian(const NodalCandidate& cand) {
  const int ell = cand.ell;
  const int rows = 2 * (ell - 1);
  const int cols = 2 * ell + 1;
  Eigen::MatrixXcd jac = Eigen::MatrixXcd::Zero(rows, cols);

  const ComplexPoly q0 = branch_product(cand.branch);
  const ComplexPoly dq0 = q0.derivative();
  const ComplexPoly dp = cand.p.derivative();
  const ComplexPoly r = cand.r();
  const ComplexPoly dr = r.derivative();
  const ComplexPoly ddr = dr.derivative();

  for (int j = 0; j < ell - 1; ++j) {
    const Complex sj = cand.s[static_cast<size_t>(j)];
    const Complex p_s = cand.p.eval(sj);
    const Complex dp_s = dp.eval(sj);

    Complex upow = 1.0;  // s_j^m
    for (int m = 0; m <= ell; ++m) {
      jac(2 * j, m) = 2.0 * p_s * upow;
      const Complex prev = (m == 0) ? Complex(0.0, 0.0)
                                    : std::pow(sj, m - 1) * static_cast<double>(m);
      jac(2 * j + 1, m) = 2.0 * dp_s * upow + 2.0 * p_s * prev;
      upow *= sj;
    }
    jac(2 * j, ell + 1) = -4.0 * q0.eval(sj);
    jac(2 * j + 1, ell + 1) = -4.0 * dq0.eval(sj);
    jac(2 * j, ell + 2 + j) = dr.eval(sj);
    jac(2 * j + 1, ell + 2 + j) = ddr.eval(sj);
  }
  return jac;
}

// real 2x-blowup of the holomorphic Jacobian
Eigen::MatrixXd realify(const Eigen::MatrixXcd& jc) {
  Eigen::MatrixXd jr(2 * jc.rows(), 2 * jc.cols());
  for (int i = 0; i < jc.rows(); ++i) {
    for (int j = 0; j < jc.cols(); ++j) {
      const Complex d = jc(i, j);
      jr(2 * i, 2 * j) = d.real();
      jr(2 * i, 2 * j + 1) = -d.imag();
      jr(2 * i + 1, 2 * j) = d.imag();
      jr(2 * i + 1, 2 * j + 1) = d.real();
    }
  }
  return jr;
}

Eigen::VectorXd realify(const std::vector<Complex>& g) {
  Eigen::VectorXd v(2 * static_cast<int>(g.size()));
  for (size_t i = 0; i < g.size(); ++i) {
    v(2 * static_cast<int>(i)) = g[i].real();
    v(2 * static_cast<int>(i) + 1) = g[i].imag();
  }
  return v;
}

struct KernelInfo {
  int dim;
  double gap;
};

KernelInfo kernel_of_jacobian(const NodalCandidate& cand, double rel_tol) {
  const int cols = 2 * cand.ell + 1;
  if (cand.ell == 1) return {cols, kInf};  // no constraints at all
  const Eigen::MatrixXcd jc = complex_jacobian(cand);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(jc);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  int kept = 0;
  double min_kept = kInf, max_discarded = 0.0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) >= rel_tol * smax && sv(i) > 0.0) {
      ++kept;
      min_kept = std::min(min_kept, sv(i));
    } else {
      max_discarded = std::max(max_discarded, sv(i));
    }
  }
  const double gap = (max_discarded > 0.0) ? min_kept / max_discarded : kInf;
  return {cols - kept, gap};
}

}  // namespace

ComplexPoly NodalCandidate::q() const {
  return ComplexPoly::from_roots(branch, c);
}

ComplexPoly NodalCandidate::r() const {
  return p * p - q() * Complex(4.0, 0.0);
}

void NodalCandidate::validate() const {
  if (ell < 1) throw Error("NodalCandidate: ell must be >= 1");
  if (static_cast<int>(branch.size()) != 2 * ell) {
    throw Error("NodalCandidate: expected 2*ell branch points");
  }
  for (size_t i = 0; i < branch.size(); ++i) {
    for (size_t j = i + 1; j < branch.size(); ++j) {
      if (branch[i] == branch[j]) throw Error("NodalCandidate: branch points collide");
    }
  }
  if (c == Complex(0.0, 0.0)) throw Error("NodalCandidate: c must be nonzero");
  if (p.degree() != ell) throw Error("NodalCandidate: p must have degree ell");
  if (static_cast<int>(s.size()) != ell - 1) {
    throw Error("NodalCandidate: expected ell-1 double-root locations");
  }
}

std::vector<Complex> constraint_system(const NodalCandidate& cand) {
  cand.validate();
  std::vector<Complex> g;
  if (cand.ell == 1) return g;  // no singularities required
  const ComplexPoly r = cand.r();
  const ComplexPoly dr = r.derivative();
  g.reserve(2 * cand.s.size());
  for (const Complex& sj : cand.s) {
    g.push_back(r.eval(sj));
    g.push_back(dr.eval(sj));
  }
  return g;
}

double constraint_residual(const NodalCandidate& cand) {
  const auto g = constraint_system(cand);
  const double scale = std::max(1.0, cand.r().max_coeff_magnitude());
  double m = 0.0;
  for (const Complex& v : g) m = std::max(m, std::abs(v));
  return m / scale;
}

NodalSolution newton_solve(const NodalCandidate& seed, const SolveOptions& opts) {
  seed.validate();
  NodalCandidate cand = seed;
  const int ell = cand.ell;

  if (ell >= 2) {
    const std::vector<int> pins = opts.pins.empty() ? default_pins(ell) : opts.pins;
    std::vector<bool> pinned(static_cast<size_t>(real_dim(ell)), false);
    for (int idx : pins) {
      if (idx < 0 || idx >= real_dim(ell)) throw Error("newton_solve: pin out of range");
      pinned[static_cast<size_t>(idx)] = true;
    }
    std::vector<int> free_idx;
    for (int i = 0; i < real_dim(ell); ++i) {
      if (!pinned[static_cast<size_t>(i)]) free_idx.push_back(i);
    }

    double res = constraint_residual(cand);
    int stalls = 0;
    int it = 0;
    for (; it < opts.max_iterations && res > opts.tol; ++it) {
      const auto g = constraint_system(cand);
      const Eigen::VectorXd rhs = realify(g);
      const Eigen::MatrixXd jr = realify(complex_jacobian(cand));

      Eigen::MatrixXd jfree(jr.rows(), static_cast<int>(free_idx.size()));
      for (size_t t = 0; t < free_idx.size(); ++t) jfree.col(static_cast<int>(t)) = jr.col(free_idx[t]);

      const Eigen::VectorXd step =
          jfree.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);

      const Eigen::VectorXd v0 = pack(cand);
      double lambda = 1.0;
      bool accepted = false;
      for (int half = 0; half < 12; ++half) {
        Eigen::VectorXd v = v0;
        for (size_t t = 0; t < free_idx.size(); ++t) {
          v(free_idx[t]) -= lambda * step(static_cast<int>(t));
        }
        const NodalCandidate trial = unpack(cand, v);
        if (trial.p.degree() == ell) {
          const double trial_res = constraint_residual(trial);
          if (trial_res < res) {
            cand = trial;
            res = trial_res;
            accepted = true;
            break;
          }
        }
        lambda *= 0.5;
      }
      if (!accepted) {
        if (++stalls >= 3) throw DivergenceError("newton_solve: line search stalled");
      } else {
        stalls = 0;
      }
    }
    if (res > opts.tol) {
      throw DivergenceError("newton_solve: iteration budget exhausted at residual " +
                            std::to_string(res));
    }
  }

  NodalSolution sol;
  sol.candidate = cand;
  sol.residual = constraint_residual(cand);

  // node certification: p^2 - 4q must carry exactly ell-1 double roots
  if (ell >= 2) {
    const auto clusters = double_root_clusters(cand.r(), opts.cluster_tol);
    if (!clusters.higher.empty()) {
      throw RankDeficientError("newton_solve: root cluster of size >= 3 (colliding nodes)");
    }
    if (static_cast<int>(clusters.doubles.size()) != ell - 1) {
      throw RankDeficientError("newton_solve: expected ell-1 double roots, found " +
                               std::to_string(clusters.doubles.size()));
    }
    sol.node_count = static_cast<int>(clusters.doubles.size());
  } else {
    sol.node_count = 0;
  }

  const KernelInfo kernel = kernel_of_jacobian(cand, opts.kernel_rel_tol);
  sol.tangent_dim = kernel.dim;
  sol.sv_gap = kernel.gap;
  if (sol.tangent_dim != 3) {
    throw RankDeficientError("newton_solve: constraint Jacobian kernel dimension " +
                             std::to_string(sol.tangent_dim) + " != 3");
  }
  return sol;
}

NodalSolution continue_branch(const NodalCandidate& start,
                              const std::vector<Complex>& target_branch, int steps,
                              const SolveOptions& opts) {
  if (target_branch.size() != start.branch.size()) {
    throw Error("continue_branch: branch count mismatch");
  }
  if (steps < 1) throw Error("continue_branch: steps must be >= 1");

  NodalCandidate cand = start;
  NodalSolution sol;
  for (int step = 1; step <= steps; ++step) {
    const double t = static_cast<double>(step) / steps;
    for (size_t i = 0; i < cand.branch.size(); ++i) {
      cand.branch[i] = (1.0 - t) * start.branch[i] + t * target_branch[i];
    }
    sol = newton_solve(cand, opts);
    cand = sol.candidate;
  }
  return sol;
}

NodalCandidate reverse_instance(const std::vector<Complex>& doubles,
                                const std::array<Complex, 3>& simple_quadratic,
                                const ComplexPoly& p) {
  const int ell = static_cast<int>(doubles.size()) + 1;
  if (p.degree() != ell) throw Error("reverse_instance: p must have degree " + std::to_string(ell));

  ComplexPoly r = ComplexPoly({simple_quadratic[0], simple_quadratic[1], simple_quadratic[2]});
  if (r.degree() != 2) throw Error("reverse_instance: simple factor must be a quadratic");
  for (const Complex& d : doubles) {
    const ComplexPoly lin = ComplexPoly::linear_factor(d);
    r = r * lin * lin;
  }

  const ComplexPoly q = (p * p - r) * Complex(0.25, 0.0);
  if (q.degree() != 2 * ell) {
    throw Error("reverse_instance: q degenerates; pick a different simple factor");
  }
  const RootSet rs = roots(q);
  for (size_t i = 0; i < rs.roots.size(); ++i) {
    for (size_t j = i + 1; j < rs.roots.size(); ++j) {
      if (std::abs(rs.roots[i] - rs.roots[j]) < 1e-8) {
        throw Error("reverse_instance: branch points collide; pick different data");
      }
    }
  }

  NodalCandidate cand;
  cand.ell = ell;
  cand.branch = rs.roots;
  cand.c = q.leading();
  cand.p = p;
  cand.s = doubles;
  cand.validate();
  return cand;
}

GenusReport genus_report(const NodalSolution& sol, const picard::CurveConfig& config) {
  const auto rep = picard::verify_theorem(config);
  GenusReport out;
  out.genus_arith = rep.genus_arith;
  out.genus_geom = rep.genus_arith - sol.node_count;
  out.pass = out.genus_geom == 0;
  return out;
}

}  // namespace ale::nodal
