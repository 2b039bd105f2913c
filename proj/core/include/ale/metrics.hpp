#pragma once

#include <functional>
#include <vector>

namespace ale::metrics {

using Point = std::vector<double>;
using SymMatrix = std::vector<std::vector<double>>;  // small dense symmetric
using MetricFn = std::function<SymMatrix(const Point&)>;

// Eguchi-Hanson metric in (r, theta, phi, psi) coordinates, expanded from the
// coframe (dr, sigma_1, sigma_2, sigma_3) with the Euler-angle realization
//   sigma_1 = cos(psi) dtheta + sin(psi) sin(theta) dphi
//   sigma_2 = -sin(psi) dtheta + cos(psi) sin(theta) dphi
//   sigma_3 = dpsi + cos(theta) dphi.
// Throws DomainError for r <= 1.
SymMatrix eh_metric(double r, double theta, double phi, double psi);
MetricFn eh_metric_fn();

// closed-form coframe coefficients, valid down to r = 1
double eh_sigma3_coeff(double r);   // (r^2/4)(1 - r^-4)
double eh_sphere_coeff(double r);   // r^2/4 on sigma_1^2 + sigma_2^2
double moment_norm(double t);       // (t - 1/t)/4, the squared Killing norm at t = r^2

// flat-cone comparison metric dr^2 + (r^2/4)(sigma_1^2+sigma_2^2+sigma_3^2)
SymMatrix flat_cone_metric(double r, double theta, double phi, double psi);

// round unit 3-sphere in Euler angles: (1/4)(sigma_1^2+sigma_2^2+sigma_3^2)
SymMatrix round_sphere_metric(double theta, double phi, double psi);
MetricFn round_sphere_metric_fn();

// hyperbolic rescaling of the quotient model, coordinates (rho, theta, phi):
//   rho^2/(1-rho^4)^2 (drho^2 + rho^2 (sigma_1^2+sigma_2^2)/4).
// Throws DomainError outside 0 < rho < 1.
SymMatrix hyperbolic_metric(double rho, double theta, double phi);
MetricFn hyperbolic_metric_fn();

// paired radial coordinate from 2 r^2 = rho^2 + rho^-2
double r_from_rho(double rho);

// Ricci tensor by two layers of central differences at step h (no
// extrapolation); useful for convergence-order measurements.
SymMatrix ricci_raw(const MetricFn& g, const Point& p, double h);

// Richardson-extrapolated Ricci over steps h and h/2
SymMatrix ricci_numeric(const MetricFn& g, const Point& p, double h);

double max_abs(const SymMatrix& m);

// sectional curvature of the coordinate 2-plane (i, j) at p
double sectional_curvature(const MetricFn& g, const Point& p, double h, int i, int j);

// Richardson-extrapolated sectional curvature over steps h and h/2
double sectional_curvature_extrapolated(const MetricFn& g, const Point& p, double h, int i, int j);

struct HyperbolicCheck {
  std::vector<double> curvatures;  // one entry per (sample, plane)
  double max_deviation = 0.0;      // spread around the common value
  double mean_curvature = 0.0;     // the measured constant
};

// sectional curvatures of the hyperbolic model over all coordinate planes at
// each sample; the constant is measured, not asserted
HyperbolicCheck hyperbolic_check(const std::vector<double>& rho_samples, double h);

// Weyl 1-form omega = -d log(t^2 - 1) = -(2t/(t^2-1)) dt for t > 1
double weyl_form_coefficient(double t);  // DomainError at t < 1 + 1e-6
// numeric curl of omega on a (t, s)-grid extension; identically zero
double weyl_form_check(const std::vector<double>& t_samples);
// line integral of omega from t0 to t1 (Gauss-Legendre)
double weyl_form_integral(double t0, double t1);

/// Scalar samples of u on a regular (x, y, t)-grid, at least 5 points per axis.
struct GridFunction {
  int nx = 0, ny = 0, nt = 0;
  double hx = 1.0, hy = 1.0, ht = 1.0;
  std::vector<double> values;  // index (ix*ny + iy)*nt + it

  double at(int ix, int iy, int it) const;
  double& at(int ix, int iy, int it);
};

GridFunction make_grid(int nx, int ny, int nt, const Point& origin,
                       const Point& spacing, const std::function<double(double, double, double)>& u);

struct TodaResidual {
  double max_abs = 0.0;
  int ix = 0, iy = 0, it = 0;  // location of the maximum
};

// max interior residual of u_xx + u_yy + (e^u)_tt by central second
// differences; throws GridTooSmallError below 5 points per axis
TodaResidual toda_residual(const GridFunction& u);

}  // namespace ale::metrics
