#pragma once

#include <array>
#include <vector>

#include "ale/complex_poly.hpp"
#include "ale/picard.hpp"

namespace ale::nodal {

/// Candidate member of the hyperelliptic family w^2 + p(x) w + q(x) = 0 with
/// q(x) = c prod(x - a_i): degree-l polynomial p, multiplier c, and the
/// locations s_j where p^2 - 4q is required to have double zeros.
struct NodalCandidate {
  int ell = 1;
  std::vector<Complex> branch;  // 2l distinct branch points a_i
  Complex c{1.0, 0.0};
  ComplexPoly p;                // degree l
  std::vector<Complex> s;       // l-1 double-root locations

  ComplexPoly q() const;        // c prod(x - a_i)
  ComplexPoly r() const;        // p^2 - 4q
  void validate() const;
};

struct NodalSolution {
  NodalCandidate candidate;
  double residual = 0.0;
  int node_count = 0;
  int tangent_dim = 0;
  // smallest kept / largest discarded singular value; +inf when nothing is discarded
  double sv_gap = 0.0;
};

// (r(s_1), r'(s_1), ..., r(s_{l-1}), r'(s_{l-1})) with r = p^2 - 4q
std::vector<Complex> constraint_system(const NodalCandidate& cand);

// max |entry| of constraint_system scaled by max(1, max coeff magnitude of r)
double constraint_residual(const NodalCandidate& cand);

struct SolveOptions {
  double tol = 1e-10;
  int max_iterations = 100;
  double cluster_tol = 1e-6;     // node certification clustering tolerance
  double kernel_rel_tol = 1e-7;  // singular values below this * sigma_max count as kernel
  // gauge pins as indices into the real unknown vector
  // [Re p0, Im p0, ..., Re p_l, Im p_l, Re c, Im c, Re s_1, Im s_1, ...];
  // empty selects the default pins {Re c, Im c, Re p0}
  std::vector<int> pins;
};

/// Gauss-Newton on constraint_system with 3 pinned real gauge coordinates.
/// On success certifies the node count via double_root_clusters and the
/// 3-dimensional solution manifold via the kernel of the constraint Jacobian.
/// Throws DivergenceError / RankDeficientError.
NodalSolution newton_solve(const NodalCandidate& seed, const SolveOptions& opts = {});

// move the branch points linearly to target_branch over `steps` stages,
// re-solving at each stage from the previous solution
NodalSolution continue_branch(const NodalCandidate& start,
                              const std::vector<Complex>& target_branch, int steps,
                              const SolveOptions& opts = {});

/// Exact reverse-constructed instance: pick r = prod(x - d_j)^2 * simple(x)
/// with simple a quadratic (coefficients ascending), pick p of degree l, and
/// recover q = (p^2 - r)/4, branch = roots(q), c = leading(q).  Gives a
/// certified solution for any l without solving.
NodalCandidate reverse_instance(const std::vector<Complex>& doubles,
                                const std::array<Complex, 3>& simple_quadratic,
                                const ComplexPoly& p);

struct GenusReport {
  picard::Int genus_arith;
  picard::Int genus_geom;
  bool pass = false;  // genus_geom == 0: rational image of a twistor line
};

GenusReport genus_report(const NodalSolution& sol, const picard::CurveConfig& config);

}  // namespace ale::nodal
