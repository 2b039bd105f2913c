#include "ale/twistor.hpp"

#include <algorithm>
#include <cmath>

#include "ale/errors.hpp"

namespace ale::twistor {

void AkParams::validate() const {
  if (k < 0) throw Error("AkParams: k must be >= 0");
  if (c == Complex(0.0, 0.0)) throw Error("AkParams: c must be nonzero");
  if (scale_A == Complex(0.0, 0.0)) throw Error("AkParams: A must be nonzero");
  if (static_cast<int>(levels.size()) != k + 1) {
    throw Error("AkParams: expected k+1 levels");
  }
  for (size_t i = 0; i < levels.size(); ++i) {
    for (size_t j = i + 1; j < levels.size(); ++j) {
      if (levels[i] == levels[j]) throw Error("AkParams: levels must be distinct");
    }
  }
  for (double ai : levels) {
    const double disc = (a - ai) * (a - ai) + 4.0 * std::norm(c);
    if (!(disc > 0.0)) {
      throw NonPositiveDiscriminantError("AkParams: discriminant not positive");
    }
  }
}

ComplexPoly real_quadratic(double a, Complex c) {
  return ComplexPoly({-std::conj(c), Complex(a, 0.0), c});
}

std::pair<std::vector<Complex>, std::vector<Complex>> split_roots(const AkParams& params) {
  params.validate();
  std::vector<Complex> alphas, betas;
  alphas.reserve(params.levels.size());
  betas.reserve(params.levels.size());
  for (double ai : params.levels) {
    const double b = params.a - ai;
    const double disc = b * b + 4.0 * std::norm(params.c);
    const double root = std::sqrt(disc);  // positive real branch
    alphas.push_back((Complex(-b + root, 0.0)) / (2.0 * params.c));
    betas.push_back((Complex(-b - root, 0.0)) / (2.0 * params.c));
  }
  return {std::move(alphas), std::move(betas)};
}

TwistorLineAk assemble_line(const AkParams& params,
                            std::vector<Complex> alphas,
                            std::vector<Complex> betas) {
  params.validate();
  TwistorLineAk line;
  line.z = real_quadratic(params.a, params.c);
  line.x = ComplexPoly::from_roots(alphas, params.scale_A);
  const Complex b_scale = std::pow(params.c, params.k + 1) / params.scale_A;
  line.y = ComplexPoly::from_roots(betas, b_scale);
  line.alphas = std::move(alphas);
  line.betas = std::move(betas);
  return line;
}

TwistorLineAk build_line(const AkParams& params) {
  auto [alphas, betas] = split_roots(params);
  return assemble_line(params, std::move(alphas), std::move(betas));
}

double residual_ak(const TwistorLineAk& line, const std::vector<double>& levels) {
  ComplexPoly rhs = ComplexPoly::constant({1.0, 0.0});
  for (double ai : levels) {
    rhs = rhs * (line.z - ComplexPoly({Complex(0.0, 0.0), Complex(ai, 0.0)}));
  }
  const ComplexPoly diff = line.x * line.y - rhs;
  const double scale = rhs.max_coeff_magnitude();
  if (scale == 0.0) return diff.max_coeff_magnitude() == 0.0 ? 0.0 : 1.0;
  return diff.max_coeff_magnitude() / scale;
}

double residual_dk(const ComplexPoly& x, const ComplexPoly& y, const ComplexPoly& z,
                   const std::vector<double>& levels) {
  const int k = static_cast<int>(levels.size());
  double prod_a = 1.0;
  for (double ai : levels) prod_a *= ai;

  // u^k * prod a_i
  std::vector<Complex> mono(static_cast<size_t>(k) + 1, Complex(0.0, 0.0));
  mono.back() = Complex(prod_a, 0.0);
  const ComplexPoly shift = ComplexPoly(std::move(mono));

  const ComplexPoly term1 = z * x * x;
  const ComplexPoly zy_shift = z * y + shift;
  const ComplexPoly term2 = zy_shift * zy_shift;
  ComplexPoly term3 = ComplexPoly::constant({1.0, 0.0});
  for (double ai : levels) {
    term3 = term3 * (z + ComplexPoly({Complex(0.0, 0.0), Complex(0.0, 0.0),
                                      Complex(ai * ai, 0.0)}));
  }

  const ComplexPoly expr = term1 - term2 + term3;
  const double scale = std::max({term1.max_coeff_magnitude(), term2.max_coeff_magnitude(),
                                 term3.max_coeff_magnitude()});
  if (scale == 0.0) return expr.max_coeff_magnitude() == 0.0 ? 0.0 : 1.0;
  return expr.max_coeff_magnitude() / scale;
}

}  // namespace ale::twistor
