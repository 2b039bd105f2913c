#include "ale/metrics.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "ale/errors.hpp"

namespace ale::metrics {

namespace {

SymMatrix zeros(int n) { return SymMatrix(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0.0)); }

Eigen::MatrixXd to_eigen(const SymMatrix& m) {
  const int n = static_cast<int>(m.size());
  Eigen::MatrixXd e(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) e(i, j) = m[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  return e;
}

// d g_ij / d x^a by central differences
std::vector<SymMatrix> metric_derivatives(const MetricFn& g, const Point& p, double h) {
  const int n = static_cast<int>(p.size());
  std::vector<SymMatrix> dg(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) {
    Point pp = p, pm = p;
    pp[static_cast<size_t>(a)] += h;
    pm[static_cast<size_t>(a)] -= h;
    const SymMatrix gp = g(pp);
    const SymMatrix gm = g(pm);
    SymMatrix d = zeros(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        d[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            (gp[static_cast<size_t>(i)][static_cast<size_t>(j)] -
             gm[static_cast<size_t>(i)][static_cast<size_t>(j)]) /
            (2.0 * h);
      }
    }
    dg[static_cast<size_t>(a)] = std::move(d);
  }
  return dg;
}

// Gamma^a_{bc}
std::vector<SymMatrix> christoffel(const MetricFn& g, const Point& p, double h) {
  const int n = static_cast<int>(p.size());
  const Eigen::MatrixXd ginv = to_eigen(g(p)).inverse();
  const auto dg = metric_derivatives(g, p, h);
  std::vector<SymMatrix> gamma(static_cast<size_t>(n), zeros(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        double acc = 0.0;
        for (int d = 0; d < n; ++d) {
          acc += ginv(a, d) *
                 (dg[static_cast<size_t>(b)][static_cast<size_t>(d)][static_cast<size_t>(c)] +
                  dg[static_cast<size_t>(c)][static_cast<size_t>(b)][static_cast<size_t>(d)] -
                  dg[static_cast<size_t>(d)][static_cast<size_t>(b)][static_cast<size_t>(c)]);
        }
        gamma[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)] = 0.5 * acc;
      }
    }
  }
  return gamma;
}

// dGamma[d][a][b][c] = d/dx^d Gamma^a_{bc}
using Gamma = std::vector<SymMatrix>;

std::vector<Gamma> christoffel_derivatives(const MetricFn& g, const Point& p, double h) {
  const int n = static_cast<int>(p.size());
  std::vector<Gamma> out(static_cast<size_t>(n));
  for (int d = 0; d < n; ++d) {
    Point pp = p, pm = p;
    pp[static_cast<size_t>(d)] += h;
    pm[static_cast<size_t>(d)] -= h;
    const Gamma gp = christoffel(g, pp, h);
    const Gamma gm = christoffel(g, pm, h);
    Gamma diff(static_cast<size_t>(n), zeros(n));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) {
          diff[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)] =
              (gp[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)] -
               gm[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)]) /
              (2.0 * h);
        }
      }
    }
    out[static_cast<size_t>(d)] = std::move(diff);
  }
  return out;
}

// R^a_{bcd} = d_c Gamma^a_{db} - d_d Gamma^a_{cb} + G^a_{ce} G^e_{db} - G^a_{de} G^e_{cb}
double riemann_up(const Gamma& gamma, const std::vector<Gamma>& dgamma, int a, int b, int c, int d) {
  const int n = static_cast<int>(gamma.size());
  double acc = dgamma[static_cast<size_t>(c)][static_cast<size_t>(a)][static_cast<size_t>(d)][static_cast<size_t>(b)] -
               dgamma[static_cast<size_t>(d)][static_cast<size_t>(a)][static_cast<size_t>(c)][static_cast<size_t>(b)];
  for (int e = 0; e < n; ++e) {
    acc += gamma[static_cast<size_t>(a)][static_cast<size_t>(c)][static_cast<size_t>(e)] *
               gamma[static_cast<size_t>(e)][static_cast<size_t>(d)][static_cast<size_t>(b)] -
           gamma[static_cast<size_t>(a)][static_cast<size_t>(d)][static_cast<size_t>(e)] *
               gamma[static_cast<size_t>(e)][static_cast<size_t>(c)][static_cast<size_t>(b)];
  }
  return acc;
}

}  // namespace

SymMatrix eh_metric(double r, double theta, double phi, double psi) {
  (void)phi;
  (void)psi;
  if (!(r > 1.0)) throw DomainError("eh_metric: requires r > 1");
  const double delta = 1.0 - std::pow(1.0 / r, 4);
  const double quarter_r2 = r * r / 4.0;
  const double ct = std::cos(theta), st = std::sin(theta);

  SymMatrix g = zeros(4);
  g[0][0] = 1.0 / delta;
  g[1][1] = quarter_r2;                                    // dtheta^2
  g[2][2] = quarter_r2 * st * st + quarter_r2 * delta * ct * ct;
  g[3][3] = quarter_r2 * delta;                            // dpsi^2
  g[2][3] = g[3][2] = quarter_r2 * delta * ct;             // dphi dpsi
  return g;
}

MetricFn eh_metric_fn() {
  return [](const Point& p) { return eh_metric(p[0], p[1], p[2], p[3]); };
}

double eh_sigma3_coeff(double r) {
  if (!(r >= 1.0)) throw DomainError("eh_sigma3_coeff: requires r >= 1");
  return (r * r / 4.0) * (1.0 - std::pow(1.0 / r, 4));
}

double eh_sphere_coeff(double r) {
  if (!(r >= 1.0)) throw DomainError("eh_sphere_coeff: requires r >= 1");
  return r * r / 4.0;
}

double moment_norm(double t) { return (t - 1.0 / t) / 4.0; }

SymMatrix flat_cone_metric(double r, double theta, double phi, double psi) {
  (void)phi;
  (void)psi;
  const double quarter_r2 = r * r / 4.0;
  const double ct = std::cos(theta), st = std::sin(theta);
  SymMatrix g = zeros(4);
  g[0][0] = 1.0;
  g[1][1] = quarter_r2;
  g[2][2] = quarter_r2 * st * st + quarter_r2 * ct * ct;
  g[3][3] = quarter_r2;
  g[2][3] = g[3][2] = quarter_r2 * ct;
  return g;
}

SymMatrix round_sphere_metric(double theta, double phi, double psi) {
  (void)phi;
  (void)psi;
  const double ct = std::cos(theta), st = std::sin(theta);
  SymMatrix g = zeros(3);
  g[0][0] = 0.25;                         // dtheta^2
  g[1][1] = 0.25 * (st * st + ct * ct);   // dphi^2
  g[2][2] = 0.25;                         // dpsi^2
  g[1][2] = g[2][1] = 0.25 * ct;
  return g;
}

MetricFn round_sphere_metric_fn() {
  return [](const Point& p) { return round_sphere_metric(p[0], p[1], p[2]); };
}

SymMatrix hyperbolic_metric(double rho, double theta, double phi) {
  (void)phi;
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("hyperbolic_metric: requires 0 < rho < 1");
  const double denom = 1.0 - std::pow(rho, 4);
  const double conf = rho * rho / (denom * denom);
  const double st = std::sin(theta);
  SymMatrix g = zeros(3);
  g[0][0] = conf;
  g[1][1] = conf * rho * rho / 4.0;
  g[2][2] = conf * rho * rho / 4.0 * st * st;
  return g;
}

MetricFn hyperbolic_metric_fn() {
  return [](const Point& p) { return hyperbolic_metric(p[0], p[1], p[2]); };
}

double r_from_rho(double rho) {
  if (!(rho > 0.0)) throw DomainError("r_from_rho: requires rho > 0");
  return std::sqrt(0.5 * (rho * rho + 1.0 / (rho * rho)));
}

SymMatrix ricci_raw(const MetricFn& g, const Point& p, double h) {
  const int n = static_cast<int>(p.size());
  const Gamma gamma = christoffel(g, p, h);
  const auto dgamma = christoffel_derivatives(g, p, h);
  SymMatrix ric = zeros(n);
  for (int b = 0; b < n; ++b) {
    for (int d = 0; d < n; ++d) {
      double acc = 0.0;
      for (int a = 0; a < n; ++a) acc += riemann_up(gamma, dgamma, a, b, a, d);
      ric[static_cast<size_t>(b)][static_cast<size_t>(d)] = acc;
    }
  }
  return ric;
}

SymMatrix ricci_numeric(const MetricFn& g, const Point& p, double h) {
  const SymMatrix coarse = ricci_raw(g, p, h);
  const SymMatrix fine = ricci_raw(g, p, 0.5 * h);
  const int n = static_cast<int>(p.size());
  SymMatrix out = zeros(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          (4.0 * fine[static_cast<size_t>(i)][static_cast<size_t>(j)] -
           coarse[static_cast<size_t>(i)][static_cast<size_t>(j)]) /
          3.0;
    }
  }
  return out;
}

double max_abs(const SymMatrix& m) {
  double v = 0.0;
  for (const auto& row : m) {
    for (double x : row) v = std::max(v, std::abs(x));
  }
  return v;
}

double sectional_curvature(const MetricFn& g, const Point& p, double h, int i, int j) {
  const int n = static_cast<int>(p.size());
  if (i == j || i >= n || j >= n) throw std::invalid_argument("sectional_curvature: bad plane");
  const SymMatrix g0 = g(p);
  const Gamma gamma = christoffel(g, p, h);
  const auto dgamma = christoffel_derivatives(g, p, h);
  // lowered R_{ijij} = g_{ie} R^e_{jij}
  double lowered = 0.0;
  for (int e = 0; e < n; ++e) {
    lowered += g0[static_cast<size_t>(i)][static_cast<size_t>(e)] * riemann_up(gamma, dgamma, e, j, i, j);
  }
  const double gii = g0[static_cast<size_t>(i)][static_cast<size_t>(i)];
  const double gjj = g0[static_cast<size_t>(j)][static_cast<size_t>(j)];
  const double gij = g0[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return lowered / (gii * gjj - gij * gij);
}

double sectional_curvature_extrapolated(const MetricFn& g, const Point& p, double h, int i, int j) {
  const double coarse = sectional_curvature(g, p, h, i, j);
  const double fine = sectional_curvature(g, p, 0.5 * h, i, j);
  return (4.0 * fine - coarse) / 3.0;
}

HyperbolicCheck hyperbolic_check(const std::vector<double>& rho_samples, double h) {
  HyperbolicCheck out;
  const MetricFn g = hyperbolic_metric_fn();
  for (double rho : rho_samples) {
    if (!(rho > 0.05 && rho < 0.95)) {
      throw DomainError("hyperbolic_check: samples must stay away from rho in {0, 1}");
    }
    const Point p{rho, 1.1, 0.6};
    for (const auto& [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
      out.curvatures.push_back(sectional_curvature_extrapolated(g, p, h, i, j));
    }
  }
  double mean = 0.0;
  for (double k : out.curvatures) mean += k;
  mean /= static_cast<double>(out.curvatures.size());
  out.mean_curvature = mean;
  for (double k : out.curvatures) out.max_deviation = std::max(out.max_deviation, std::abs(k - mean));
  return out;
}

double weyl_form_coefficient(double t) {
  if (!(t >= 1.0 + 1e-6)) throw DomainError("weyl form: log singularity at t = 1");
  return -2.0 * t / (t * t - 1.0);
}

double weyl_form_check(const std::vector<double>& t_samples) {
  // omega = f(t) dt extended s-independently to a (t, s)-grid; the only
  // component of d(omega) is -df/ds, an exact difference of equal values
  double worst = 0.0;
  const double hs = 0.1;
  for (double t : t_samples) {
    const double up = weyl_form_coefficient(t);    // s + hs
    const double down = weyl_form_coefficient(t);  // s - hs
    worst = std::max(worst, std::abs((up - down) / (2.0 * hs)));
  }
  return worst;
}

double weyl_form_integral(double t0, double t1) {
  // 40-point Gauss-Legendre is far past 1e-10 for this smooth integrand
  static const double nodes[] = {
      -0.998237709710559, -0.990726238699457, -0.977259949983774, -0.957916819213792,
      -0.932812808278677, -0.902098806968874, -0.865959503212259, -0.824612230833312,
      -0.778305651426519, -0.727318255189927, -0.671956684614180, -0.612553889667980,
      -0.549467125095128, -0.483075801686179, -0.413779204371605, -0.341994090825758,
      -0.268152185007254, -0.192697580701371, -0.116084070675255, -0.038772417506051,
      0.038772417506051,  0.116084070675255,  0.192697580701371,  0.268152185007254,
      0.341994090825758,  0.413779204371605,  0.483075801686179,  0.549467125095128,
      0.612553889667980,  0.671956684614180,  0.727318255189927,  0.778305651426519,
      0.824612230833312,  0.865959503212259,  0.902098806968874,  0.932812808278677,
      0.957916819213792,  0.977259949983774,  0.990726238699457,  0.998237709710559};
  static const double weights[] = {
      0.004521277098533, 0.010498284531153, 0.016421058381908, 0.022245849194167,
      0.027937006980023, 0.033460195282548, 0.038782167974472, 0.043870908185673,
      0.048695807635072, 0.053227846983937, 0.057439769099392, 0.061306242492929,
      0.064804013456601, 0.067912045815234, 0.070611647391287, 0.072886582395804,
      0.074723169057968, 0.076110361900626, 0.077039818164248, 0.077505947978425,
      0.077505947978425, 0.077039818164248, 0.076110361900626, 0.074723169057968,
      0.072886582395804, 0.070611647391287, 0.067912045815234, 0.064804013456601,
      0.061306242492929, 0.057439769099392, 0.053227846983937, 0.048695807635072,
      0.043870908185673, 0.038782167974472, 0.033460195282548, 0.027937006980023,
      0.022245849194167, 0.016421058381908, 0.010498284531153, 0.004521277098533};
  const double mid = 0.5 * (t0 + t1);
  const double half = 0.5 * (t1 - t0);
  double acc = 0.0;
  for (int k = 0; k < 40; ++k) {
    acc += weights[k] * weyl_form_coefficient(mid + half * nodes[k]);
  }
  return acc * half;
}

double GridFunction::at(int ix, int iy, int it) const {
  return values[static_cast<size_t>((ix * ny + iy) * nt + it)];
}

double& GridFunction::at(int ix, int iy, int it) {
  return values[static_cast<size_t>((ix * ny + iy) * nt + it)];
}

GridFunction make_grid(int nx, int ny, int nt, const Point& origin, const Point& spacing,
                       const std::function<double(double, double, double)>& u) {
  GridFunction g;
  g.nx = nx;
  g.ny = ny;
  g.nt = nt;
  g.hx = spacing[0];
  g.hy = spacing[1];
  g.ht = spacing[2];
  g.values.resize(static_cast<size_t>(nx) * static_cast<size_t>(ny) * static_cast<size_t>(nt));
  for (int ix = 0; ix < nx; ++ix) {
    for (int iy = 0; iy < ny; ++iy) {
      for (int it = 0; it < nt; ++it) {
        g.at(ix, iy, it) = u(origin[0] + ix * g.hx, origin[1] + iy * g.hy, origin[2] + it * g.ht);
      }
    }
  }
  return g;
}

TodaResidual toda_residual(const GridFunction& u) {
  if (u.nx < 5 || u.ny < 5 || u.nt < 5) {
    throw GridTooSmallError("toda_residual: need at least 5 points per axis");
  }
  TodaResidual out;
  for (int ix = 1; ix < u.nx - 1; ++ix) {
    for (int iy = 1; iy < u.ny - 1; ++iy) {
      for (int it = 1; it < u.nt - 1; ++it) {
        const double uxx =
            (u.at(ix + 1, iy, it) - 2.0 * u.at(ix, iy, it) + u.at(ix - 1, iy, it)) / (u.hx * u.hx);
        const double uyy =
            (u.at(ix, iy + 1, it) - 2.0 * u.at(ix, iy, it) + u.at(ix, iy - 1, it)) / (u.hy * u.hy);
        const double ett = (std::exp(u.at(ix, iy, it + 1)) - 2.0 * std::exp(u.at(ix, iy, it)) +
                            std::exp(u.at(ix, iy, it - 1))) /
                           (u.ht * u.ht);
        const double res = std::abs(uxx + uyy + ett);
        if (res > out.max_abs) {
          out.max_abs = res;
          out.ix = ix;
          out.iy = iy;
          out.it = it;
        }
      }
    }
  }
  return out;
}

}  // namespace ale::metrics
