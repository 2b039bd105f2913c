#pragma once

#include <utility>
#include <vector>

#include "ale/complex_poly.hpp"

namespace ale::twistor {

/// Parameters of a cyclic-type (A_k) twistor line: the real quadratic
/// z(u) = c u^2 + a u - conj(c), the scale A of x(u), and the k+1 distinct
/// real levels a_i entering x y = prod(z - a_i u).
struct AkParams {
  int k = 0;
  double a = 0.0;
  Complex c{1.0, 0.0};
  Complex scale_A{1.0, 0.0};
  std::vector<double> levels;  // k+1 distinct reals

  void validate() const;  // throws NonPositiveDiscriminantError / Error
};

/// The assembled line: polynomial triple (x, y, z) and the split roots.
struct TwistorLineAk {
  ComplexPoly z;  // degree 2
  ComplexPoly x;  // degree k+1
  ComplexPoly y;  // degree k+1
  std::vector<Complex> alphas;
  std::vector<Complex> betas;
};

// z(u) = c u^2 + a u - conj(c)
ComplexPoly real_quadratic(double a, Complex c);

// For each level a_i, the two roots of z - a_i u = c(u - alpha_i)(u - beta_i),
// split by the sign of the positive real square root of the discriminant
// (a - a_i)^2 + 4 c conj(c):
//   alpha_i = (-(a - a_i) + sqrt(D_i)) / (2c),  beta_i uses the minus branch.
std::pair<std::vector<Complex>, std::vector<Complex>> split_roots(const AkParams& params);

// x = A prod(u - alpha_i), y = (c^{k+1}/A) prod(u - beta_i), z as above.
TwistorLineAk build_line(const AkParams& params);

// assemble from explicit root splittings (build_line with roots swapped, etc.)
TwistorLineAk assemble_line(const AkParams& params,
                            std::vector<Complex> alphas,
                            std::vector<Complex> betas);

// max coefficient magnitude of x y - prod(z - a_i u), scaled by the max
// coefficient magnitude of prod(z - a_i u)
double residual_ak(const TwistorLineAk& line, const std::vector<double>& levels);

// Scaled max-coefficient residual of the rewritten D_k identity
//   z x^2 - (z y + u^k prod a_i)^2 + prod(z + a_i^2 u^2)
// for externally supplied candidate polynomials; evaluation only.
double residual_dk(const ComplexPoly& x, const ComplexPoly& y, const ComplexPoly& z,
                   const std::vector<double>& levels);

}  // namespace ale::twistor
