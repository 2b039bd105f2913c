#include "ale/roots.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ale/errors.hpp"

namespace ale {

namespace {

std::vector<Complex> companion_eigenvalues(const std::vector<Complex>& monic) {
  const int n = static_cast<int>(monic.size()) - 1;  // monic has n+1 entries
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -monic[static_cast<size_t>(i)];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(C, /*computeEigenvectors=*/false);
  std::vector<Complex> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = solver.eigenvalues()(i);
  return out;
}

// One simultaneous-Newton (Aberth-Ehrlich) sweep; returns the largest
// relative step taken.
double aberth_sweep(const ComplexPoly& p, const ComplexPoly& dp, std::vector<Complex>& z) {
  const size_t n = z.size();
  double max_step = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Complex pi = p.eval(z[i]);
    Complex dpi = dp.eval(z[i]);
    if (pi == Complex(0.0, 0.0)) continue;
    if (dpi == Complex(0.0, 0.0)) dpi = Complex(1e-300, 0.0);
    const Complex newton = pi / dpi;
    Complex repel(0.0, 0.0);
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const Complex d = z[i] - z[j];
      if (std::abs(d) > 1e-14 * (1.0 + std::abs(z[i]))) repel += 1.0 / d;
    }
    const Complex denom = 1.0 - newton * repel;
    const Complex w = (std::abs(denom) > 1e-300) ? newton / denom : newton;
    z[i] -= w;
    max_step = std::max(max_step, std::abs(w) / (1.0 + std::abs(z[i])));
  }
  return max_step;
}

using Partition = std::vector<std::vector<size_t>>;

Partition single_linkage(const std::vector<Complex>& pts, double tol) {
  const size_t n = pts.size();
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), size_t{0});
  auto find = [&](size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (std::abs(pts[i] - pts[j]) <= tol) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<size_t>> groups(n);
  for (size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
  Partition out;
  for (auto& g : groups) {
    if (!g.empty()) out.push_back(std::move(g));
  }
  for (auto& g : out) std::sort(g.begin(), g.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

RootSet roots(const ComplexPoly& p, const RootOptions& opts) {
  if (p.is_zero()) throw ZeroPolynomialError("roots: zero polynomial");
  const int n = p.degree();
  RootSet rs;
  if (n == 0) {
    rs.certified = true;
    return rs;
  }

  std::vector<Complex> monic(p.coeffs());
  const Complex lc = p.leading();
  for (Complex& c : monic) c /= lc;

  rs.roots = companion_eigenvalues(monic);

  const ComplexPoly dp = p.derivative();
  double step = 1.0;
  int it = 0;
  for (; it < opts.polish_iterations; ++it) {
    step = aberth_sweep(p, dp, rs.roots);
    if (step < 4.0 * std::numeric_limits<double>::epsilon()) break;
  }
  if (it == opts.polish_iterations && step > 1e-9) {
    throw NonConvergenceError("roots: Aberth polish exhausted its iteration budget");
  }

  const double scale = p.max_coeff_magnitude();
  rs.residuals.resize(rs.roots.size());
  bool ok = true;
  for (size_t i = 0; i < rs.roots.size(); ++i) {
    rs.residuals[i] = std::abs(p.eval(rs.roots[i])) / scale;
    ok = ok && rs.residuals[i] <= opts.certification_tol;
  }
  const ComplexPoly rebuilt = ComplexPoly::from_roots(rs.roots, lc);
  rs.reconstruction_error = coeff_distance(rebuilt, p) / scale;
  rs.certified = ok && rs.reconstruction_error <= opts.certification_tol;
  return rs;
}

Complex resultant(const ComplexPoly& p, const ComplexPoly& q) {
  if (p.is_zero() || q.is_zero()) return {0.0, 0.0};
  const int m = p.degree();
  const int n = q.degree();
  if (m == 0 && n == 0) return {1.0, 0.0};
  if (m == 0) return std::pow(p.coeff(0), n);
  if (n == 0) return std::pow(q.coeff(0), m);

  Eigen::MatrixXcd syl = Eigen::MatrixXcd::Zero(m + n, m + n);
  for (int row = 0; row < n; ++row) {
    for (int k = 0; k <= m; ++k) syl(row, row + k) = p.coeff(m - k);
  }
  for (int row = 0; row < m; ++row) {
    for (int k = 0; k <= n; ++k) syl(n + row, row + k) = q.coeff(n - k);
  }
  return Eigen::PartialPivLU<Eigen::MatrixXcd>(syl).determinant();
}

Complex discriminant(const ComplexPoly& p) {
  if (p.is_zero()) throw ZeroPolynomialError("discriminant: zero polynomial");
  const int n = p.degree();
  if (n < 1) throw ZeroPolynomialError("discriminant: constant polynomial");
  const Complex res = resultant(p, p.derivative());
  const double sign = (n * (n - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
  return sign * res / p.leading();
}

RootClusters double_root_clusters(const ComplexPoly& p, double tol, const RootOptions& opts) {
  if (p.degree() < 2) throw ZeroPolynomialError("double_root_clusters: degree < 2");
  const RootSet rs = roots(p, opts);

  const Partition tight = single_linkage(rs.roots, tol);
  const Partition loose = single_linkage(rs.roots, 2.0 * tol);
  if (tight != loose) {
    throw AmbiguousClusteringError(
        "double_root_clusters: partitions at tol and 2*tol disagree");
  }

  RootClusters out;
  for (const auto& group : tight) {
    Complex centroid(0.0, 0.0);
    for (size_t idx : group) centroid += rs.roots[idx];
    centroid /= static_cast<double>(group.size());
    if (group.size() == 1) {
      out.simples.push_back(rs.roots[group[0]]);
    } else if (group.size() == 2) {
      out.doubles.push_back(centroid);
    } else {
      std::vector<Complex> cluster;
      for (size_t idx : group) cluster.push_back(rs.roots[idx]);
      out.higher.push_back(std::move(cluster));
    }
  }
  return out;
}

}  // namespace ale
