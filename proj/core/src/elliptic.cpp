#include "ale/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "ale/errors.hpp"
#include "ale/roots.hpp"

namespace ale::elliptic {

namespace {

constexpr double kTiny = 1e-300;

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes on [-1, 1], cached per order.

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_rule(int order) {
  static std::map<int, GaussRule> cache;
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  GaussRule rule;
  rule.nodes.resize(static_cast<size_t>(order));
  rule.weights.resize(static_cast<size_t>(order));
  for (int i = 0; i < order; ++i) {
    // Newton from the Chebyshev estimate
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
      double p0 = 1.0, p1 = x;
      for (int n = 2; n <= order; ++n) {
        const double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[static_cast<size_t>(i)] = x;
    rule.weights[static_cast<size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(order, std::move(rule)).first->second;
}

// ---------------------------------------------------------------------------
// geometry helpers

double dist_point_segment(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 < kTiny) return std::abs(p - a);
  double t = ((p - a) * std::conj(ab)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

double min_dist_to_segment(const std::vector<Complex>& pts, Complex a, Complex b) {
  double d = std::numeric_limits<double>::infinity();
  for (const Complex& p : pts) d = std::min(d, dist_point_segment(p, a, b));
  return d;
}

// ---------------------------------------------------------------------------
// sheet-tracked integration of du/w along polylines

struct TrackState {
  Complex value{0.0, 0.0};
  Complex w;  // current tracked sheet value
};

Complex tracked_sqrt(Complex z_val, Complex w_prev) {
  const Complex s = std::sqrt(z_val);
  return (std::abs(s - w_prev) <= std::abs(s + w_prev)) ? s : -s;
}

// One straight segment; `branch` lists the points the integrand is singular at.
void integrate_segment(const ComplexPoly& z, const std::vector<Complex>& branch,
                       Complex a, Complex b, int order, int refine, TrackState& st) {
  const double len = std::abs(b - a);
  if (len == 0.0) return;
  const double d = min_dist_to_segment(branch, a, b);
  if (d < 1e-12 * (1.0 + len)) {
    throw PathThroughBranchPointError("integration path passes through a branch point");
  }
  int pieces = static_cast<int>(std::ceil(len / (0.25 * d)));
  pieces = std::clamp(pieces * refine, refine, 60000);

  const GaussRule& rule = gauss_rule(order);
  const Complex dir = b - a;
  for (int piece = 0; piece < pieces; ++piece) {
    const double t0 = static_cast<double>(piece) / pieces;
    const double t1 = static_cast<double>(piece + 1) / pieces;
    const double mid = 0.5 * (t0 + t1);
    const double half = 0.5 * (t1 - t0);
    for (int k = 0; k < order; ++k) {
      const double t = mid + half * rule.nodes[static_cast<size_t>(k)];
      const Complex u = a + t * dir;
      st.w = tracked_sqrt(z.eval(u), st.w);
      st.value += rule.weights[static_cast<size_t>(k)] * half * dir / st.w;
    }
    // re-anchor the sheet at the piece end
    st.w = tracked_sqrt(z.eval(a + t1 * dir), st.w);
  }
}

struct PathIntegral {
  Complex value;
  Complex w_end;
};

PathIntegral integrate_path(const ComplexPoly& z, const std::vector<Complex>& branch,
                            const std::vector<Complex>& vertices, Complex w_start,
                            int order, int refine) {
  TrackState st{{0.0, 0.0}, w_start};
  for (size_t i = 0; i + 1 < vertices.size(); ++i) {
    integrate_segment(z, branch, vertices[i], vertices[i + 1], order, refine, st);
  }
  return {st.value, st.w};
}

// doubled-resolution certification wrapper
PathIntegral certified_path(const ComplexPoly& z, const std::vector<Complex>& branch,
                            const std::vector<Complex>& vertices, Complex w_start,
                            const QuadratureOptions& opts) {
  const PathIntegral coarse = integrate_path(z, branch, vertices, w_start, opts.gauss_order, 1);
  if (!opts.certify) return coarse;
  const PathIntegral fine = integrate_path(z, branch, vertices, w_start, opts.gauss_order, 2);
  if (std::abs(coarse.value - fine.value) > opts.agree_tol * std::max(1.0, std::abs(fine.value))) {
    throw QuadratureNonConvergenceError("path integral did not settle under refinement");
  }
  return fine;
}

// closed stadium-shaped polyline around the segment [p, q] with the given margin
std::vector<Complex> stadium_loop(Complex p, Complex q, double margin) {
  const Complex dir = (q - p) / std::abs(q - p);
  std::vector<Complex> v;
  const int arc_steps = 10;
  for (int k = 0; k <= arc_steps; ++k) {  // half circle around q, -pi/2 .. pi/2
    const double th = -0.5 * std::numbers::pi + std::numbers::pi * k / arc_steps;
    v.push_back(q + margin * std::polar(1.0, th) * dir);
  }
  for (int k = 0; k <= arc_steps; ++k) {  // half circle around p, pi/2 .. 3pi/2
    const double th = 0.5 * std::numbers::pi + std::numbers::pi * k / arc_steps;
    v.push_back(p + margin * std::polar(1.0, th) * dir);
  }
  v.push_back(v.front());
  return v;
}

std::vector<Complex> circle_loop(Complex center, double radius, Complex start_dir) {
  std::vector<Complex> v;
  const int steps = 24;
  const Complex d0 = start_dir / std::abs(start_dir);
  for (int k = 0; k <= steps; ++k) {
    const double th = 2.0 * std::numbers::pi * k / steps;
    v.push_back(center + radius * std::polar(1.0, th) * d0);
  }
  return v;
}

// recursive midpoint-detour path planner
void plan_path_rec(const std::vector<Complex>& branch, Complex a, Complex b,
                   double clearance, int depth, std::vector<Complex>& out) {
  double worst = std::numeric_limits<double>::infinity();
  Complex worst_root;
  for (const Complex& r : branch) {
    const double d = dist_point_segment(r, a, b);
    if (d < worst) {
      worst = d;
      worst_root = r;
    }
  }
  if (worst >= clearance || depth <= 0) {
    if (worst < 1e-9 * (1.0 + std::abs(b - a))) {
      throw PathThroughBranchPointError("could not route the path away from a branch point");
    }
    out.push_back(b);
    return;
  }
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  double t = len2 < kTiny ? 0.5 : std::clamp(((worst_root - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  const Complex proj = a + t * ab;
  Complex away = proj - worst_root;
  if (std::abs(away) < kTiny) away = Complex(0.0, 1.0) * ab / std::abs(ab);
  const Complex waypoint = worst_root + (away / std::abs(away)) * (2.0 * clearance);
  plan_path_rec(branch, a, waypoint, clearance, depth - 1, out);
  plan_path_rec(branch, waypoint, b, clearance, depth - 1, out);
}

std::vector<Complex> plan_path(const std::vector<Complex>& branch, Complex a, Complex b,
                               double clearance) {
  std::vector<Complex> out{a};
  plan_path_rec(branch, a, b, clearance, 10, out);
  return out;
}

// ---------------------------------------------------------------------------
// lattice helpers

struct ReducedBasis {
  Complex v1, v2;
};

ReducedBasis lagrange_reduce(Complex a, Complex b) {
  for (int sweep = 0; sweep < 64; ++sweep) {
    if (std::abs(a) > std::abs(b)) std::swap(a, b);
    if (std::abs(a) < kTiny) break;
    const double mu = std::round((b * std::conj(a)).real() / std::norm(a));
    if (mu == 0.0) break;
    b -= mu * a;
  }
  if (std::abs(a) > std::abs(b)) std::swap(a, b);
  return {a, b};
}

double covering_radius_of(Complex v1, Complex v2) {
  // non-obtuse fundamental triangle of a reduced basis -> circumradius
  if ((v1 * std::conj(v2)).real() < 0.0) v2 = -v2;
  const double la = std::abs(v1), lb = std::abs(v2), lc = std::abs(v2 - v1);
  const double area = 0.5 * std::abs((std::conj(v1) * v2).imag());
  if (area < kTiny) return std::numeric_limits<double>::infinity();
  return la * lb * lc / (4.0 * area);
}

}  // namespace

double agm(double x, double y) {
  for (int i = 0; i < 64 && std::abs(x - y) > 1e-16 * (x + y); ++i) {
    const double a = 0.5 * (x + y);
    const double g = std::sqrt(x * y);
    x = a;
    y = g;
  }
  return 0.5 * (x + y);
}

double agm_K(double k) {
  if (!(k > 0.0 && k < 1.0)) throw Error("agm_K: modulus must lie in (0,1)");
  return std::numbers::pi / (2.0 * agm(1.0, std::sqrt(1.0 - k * k)));
}

EllipticCurveData EllipticCurveData::make(const ComplexPoly& z, const QuadratureOptions& opts) {
  EllipticCurveData curve;
  curve.z_ = z;
  curve.opts_ = opts;
  if (z.degree() != 4) throw Error("EllipticCurveData: z must be a quartic");

  const RootSet rs = roots(z);
  curve.roots_ = rs.roots;
  std::sort(curve.roots_.begin(), curve.roots_.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });

  double min_sep = std::numeric_limits<double>::infinity();
  double scale = 0.0;
  for (size_t i = 0; i < 4; ++i) {
    for (size_t j = i + 1; j < 4; ++j) {
      min_sep = std::min(min_sep, std::abs(curve.roots_[i] - curve.roots_[j]));
      scale = std::max(scale, std::abs(curve.roots_[i] - curve.roots_[j]));
    }
  }
  curve.scale_ = std::max(scale, 1e-3);
  if (min_sep <= 1e-8) {
    throw RootCollisionError("EllipticCurveData: branch points closer than 1e-8");
  }

  // branch cuts: minimal total pairing distance over the three matchings
  const std::array<std::array<int, 4>, 3> matchings = {{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
  double best = std::numeric_limits<double>::infinity();
  for (const auto& m : matchings) {
    const double total = std::abs(curve.roots_[m[0]] - curve.roots_[m[1]]) +
                         std::abs(curve.roots_[m[2]] - curve.roots_[m[3]]);
    if (total < best) {
      best = total;
      curve.cuts_[0] = {m[0], m[1]};
      curve.cuts_[1] = {m[2], m[3]};
    }
  }

  // loop A encircles the first cut
  const Complex c1a = curve.roots_[static_cast<size_t>(curve.cuts_[0].first)];
  const Complex c1b = curve.roots_[static_cast<size_t>(curve.cuts_[0].second)];
  const Complex c2a = curve.roots_[static_cast<size_t>(curve.cuts_[1].first)];
  const Complex c2b = curve.roots_[static_cast<size_t>(curve.cuts_[1].second)];

  auto loop_period = [&](Complex p, Complex q) {
    std::vector<Complex> others;
    for (const Complex& r : curve.roots_) {
      if (std::abs(r - p) > kTiny && std::abs(r - q) > kTiny) others.push_back(r);
    }
    const double margin = 0.45 * min_dist_to_segment(others, p, q);
    if (!(margin > 0.0)) throw RootCollisionError("period loop margin collapsed");
    const auto loop = stadium_loop(p, q, margin);
    const Complex w0 = std::sqrt(z.eval(loop.front()));
    const PathIntegral pi = certified_path(z, curve.roots_, loop, w0, opts);
    if (std::abs(pi.w_end - w0) > 1e-6 * (std::abs(w0) + 1.0)) {
      throw QuadratureNonConvergenceError("period loop failed to close on the same sheet");
    }
    return pi.value;
  };

  const Complex omega_a = loop_period(c1a, c1b);

  // loop B encircles the nearest endpoints of the two cuts
  Complex bb = c1a, cc = c2a;
  double d_best = std::numeric_limits<double>::infinity();
  for (const Complex& x : {c1a, c1b}) {
    for (const Complex& y : {c2a, c2b}) {
      if (std::abs(x - y) < d_best) {
        d_best = std::abs(x - y);
        bb = x;
        cc = y;
      }
    }
  }
  const Complex omega_b = loop_period(bb, cc);

  const ReducedBasis red = lagrange_reduce(omega_a, omega_b);
  Complex v1 = red.v1, v2 = red.v2;
  if (std::abs((std::conj(v1) * v2).imag()) < 1e-12 * std::abs(v1) * std::abs(v2)) {
    throw QuadratureNonConvergenceError("degenerate period lattice");
  }
  if ((std::conj(v1) * v2).imag() < 0.0) v2 = -v2;  // Im(v2/v1) > 0
  curve.omega1_ = v1;
  curve.omega2_ = v2;
  curve.covering_radius_ = covering_radius_of(v1, v2);

  // default basepoint east of every branch point, slightly off axis
  double xmax = -std::numeric_limits<double>::infinity();
  for (const Complex& r : curve.roots_) xmax = std::max(xmax, r.real());
  const Complex u0(xmax + 0.75 * curve.scale_ + 0.5, 0.13 * curve.scale_);
  curve.basepoint_ = CurvePoint::finite(u0, std::sqrt(z.eval(u0)));
  return curve;
}

std::pair<Complex, Complex> periods(const ComplexPoly& z, const QuadratureOptions& opts) {
  const EllipticCurveData curve = EllipticCurveData::make(z, opts);
  return {curve.omega1(), curve.omega2()};
}

Complex EllipticCurveData::nearest_lattice_point(Complex v) const {
  const double det = (std::conj(omega1_) * omega2_).imag();
  // coordinates of v in the (omega1, omega2) basis
  const double n_est = (std::conj(omega1_) * v).imag() / det;
  const double m_est = -(std::conj(omega2_) * v).imag() / det;
  Complex best{0.0, 0.0};
  double best_d = std::numeric_limits<double>::infinity();
  for (int dm = -2; dm <= 2; ++dm) {
    for (int dn = -2; dn <= 2; ++dn) {
      const double m = std::round(m_est) + dm;
      const double n = std::round(n_est) + dn;
      const Complex pt = m * omega1_ + n * omega2_;
      const double d = std::abs(v - pt);
      if (d < best_d) {
        best_d = d;
        best = pt;
      }
    }
  }
  return best;
}

double EllipticCurveData::lattice_distance(Complex v) const {
  return std::abs(v - nearest_lattice_point(v));
}

namespace {

// abel integral along a planned route; resolves the endpoint sheet, flipping
// via a loop around one branch point when the tracked sheet lands wrong
Complex abel_route(const EllipticCurveData& curve, const CurvePoint& target,
                   Complex forced_waypoint, bool use_waypoint) {
  const ComplexPoly& z = curve.z();
  const std::vector<Complex>& branch = curve.branch_points();
  const QuadratureOptions& opts = curve.options();
  const Complex u0 = curve.basepoint().u;
  const Complex w0 = curve.basepoint().w;
  const double clearance = 0.22 * [&] {
    double m = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < branch.size(); ++i) {
      for (size_t j = i + 1; j < branch.size(); ++j) {
        m = std::min(m, std::abs(branch[i] - branch[j]));
      }
    }
    return m;
  }();

  // finite leg destination: the target u, or a far point in v-space terms
  Complex u_far{0.0, 0.0};
  Complex dest;
  if (target.at_infinity) {
    Complex centroid{0.0, 0.0};
    for (const Complex& r : branch) centroid += r;
    centroid /= 4.0;
    double rad = 0.0;
    for (const Complex& r : branch) rad = std::max(rad, std::abs(r - centroid));
    Complex dir = u0 - centroid;
    if (std::abs(dir) < 1e-9) dir = Complex(1.0, 0.3);
    u_far = centroid + dir / std::abs(dir) * (8.0 * (rad + 1.0));
    dest = u_far;
  } else {
    dest = target.u;
  }

  std::vector<Complex> route;
  if (use_waypoint) {
    auto first = plan_path(branch, u0, forced_waypoint, clearance);
    auto second = plan_path(branch, forced_waypoint, dest, clearance);
    route = std::move(first);
    route.insert(route.end(), second.begin() + 1, second.end());
  } else {
    route = plan_path(branch, u0, dest, clearance);
  }

  const PathIntegral leg = certified_path(z, branch, route, w0, opts);
  Complex total = leg.value;
  Complex w_end = leg.w_end;

  int reached_sheet;
  if (target.at_infinity) {
    // tail in v = 1/u coordinates: integral of dv/sqrt(zrev(v)) from 1/u_far to 0
    std::vector<Complex> rev(5);
    for (int k = 0; k <= 4; ++k) rev[static_cast<size_t>(k)] = curve.z().coeff(4 - k);
    const ComplexPoly zrev{rev};
    std::vector<Complex> vbranch;
    for (const Complex& r : branch) vbranch.push_back(1.0 / r);
    const Complex v_start = 1.0 / u_far;
    const Complex wt_start = w_end * v_start * v_start;
    TrackState st{{0.0, 0.0}, wt_start};
    const int refine = 1;
    integrate_segment(zrev, vbranch, v_start, Complex(0.0, 0.0), opts.gauss_order, refine, st);
    total += st.value;
    const Complex s_inf = std::sqrt(zrev.eval({0.0, 0.0}));
    reached_sheet = (std::abs(st.w - s_inf) <= std::abs(st.w + s_inf)) ? +1 : -1;
    const int want = target.infinity_sheet >= 0 ? +1 : -1;
    if (reached_sheet == want) return total;
  } else {
    const double match_plus = std::abs(w_end - target.w);
    const double match_minus = std::abs(w_end + target.w);
    if (std::min(match_plus, match_minus) > 1e-6 * (1.0 + std::abs(target.w))) {
      throw QuadratureNonConvergenceError("sheet tracking lost along the Abel path");
    }
    if (match_plus <= match_minus) return total;
  }

  // wrong sheet: conjugating the start sheet flips the whole integral, and a
  // closed u-plane loop around one branch point connects the two lifts
  const Complex pivot = branch.front();
  double rad = std::numeric_limits<double>::infinity();
  for (size_t i = 1; i < branch.size(); ++i) rad = std::min(rad, std::abs(branch[i] - pivot));
  rad *= 0.4;
  std::vector<Complex> approach = plan_path(branch, u0, pivot + rad * Complex(1.0, 0.0), clearance);
  std::vector<Complex> loop = circle_loop(pivot, rad, Complex(1.0, 0.0));
  std::vector<Complex> flip_route = approach;
  flip_route.insert(flip_route.end(), loop.begin() + 1, loop.end());
  for (auto it = approach.rbegin() + 1; it != approach.rend(); ++it) flip_route.push_back(*it);
  const PathIntegral flip = certified_path(z, branch, flip_route, w0, opts);
  if (std::abs(flip.w_end + w0) > 1e-6 * (1.0 + std::abs(w0))) {
    throw QuadratureNonConvergenceError("sheet-flip loop failed to change sheet");
  }
  return flip.value - total;
}

void require_on_curve(const EllipticCurveData& curve, const CurvePoint& p) {
  if (p.at_infinity) return;
  const double scale = std::max(1.0, std::abs(curve.z().eval(p.u)));
  if (std::abs(p.w * p.w - curve.z().eval(p.u)) > 1e-8 * scale) {
    throw Error("CurvePoint does not satisfy w^2 = z(u)");
  }
}

}  // namespace

Complex abel_map(const EllipticCurveData& curve, const CurvePoint& P) {
  require_on_curve(curve, P);
  if (!P.at_infinity && std::abs(P.u - curve.basepoint().u) < 1e-14 &&
      std::abs(P.w - curve.basepoint().w) < 1e-14) {
    return {0.0, 0.0};
  }

  const Complex direct = abel_route(curve, P, {}, false);
  if (!curve.options().certify) return direct;

  // revalidate along a second homotopy class
  const Complex u0 = curve.basepoint().u;
  Complex span = (P.at_infinity ? u0 + Complex(1.0, 1.0) : P.u) - u0;
  if (std::abs(span) < 1e-9) span = Complex(1.0, 0.0);
  const Complex waypoint = u0 + 0.5 * span + Complex(0.0, 1.0) * span * (0.8 / std::abs(span)) *
                                                  curve.geometry_scale();
  const Complex alt = abel_route(curve, P, waypoint, true);
  if (curve.lattice_distance(direct - alt) > 1e-8 * std::max(1.0, std::abs(curve.omega2()))) {
    throw QuadratureNonConvergenceError("Abel map differs off-lattice between two paths");
  }
  return direct;
}

AbelResidual principality_residual(const EllipticCurveData& curve,
                                   const std::vector<CurvePoint>& zeros,
                                   const std::vector<CurvePoint>& poles) {
  if (zeros.size() != poles.size()) {
    throw Error("principality_residual: zeros and poles must pair up");
  }
  Complex total{0.0, 0.0};
  for (size_t i = 0; i < zeros.size(); ++i) {
    // coincident zero/pole entries cancel without any integration
    const CurvePoint& zp = zeros[i];
    const CurvePoint& qp = poles[i];
    const bool same = (zp.at_infinity && qp.at_infinity && zp.infinity_sheet == qp.infinity_sheet) ||
                      (!zp.at_infinity && !qp.at_infinity && zp.u == qp.u && zp.w == qp.w);
    if (same) continue;
    total += abel_map(curve, zp) - abel_map(curve, qp);
  }
  AbelResidual res;
  res.value = total;
  res.lattice_distance = curve.lattice_distance(total);
  res.normalized = res.lattice_distance / curve.covering_radius();
  return res;
}

std::vector<Complex> d4_candidate_roots(const ComplexPoly& z, double a_j) {
  if (a_j == 0.0) throw Error("d4_candidate_roots: levels must be nonzero");
  const ComplexPoly shifted =
      z + ComplexPoly({{0.0, 0.0}, {0.0, 0.0}, Complex(a_j * a_j, 0.0)});
  RootSet rs = roots(shifted);
  std::sort(rs.roots.begin(), rs.roots.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return rs.roots;
}

namespace {

CurvePoint d4_zero_point(double a_j, int sign, Complex u) {
  return CurvePoint::finite(u, Complex(0.0, 1.0) * static_cast<double>(sign) * a_j * u);
}

}  // namespace

D4Divisor d4_divisor_points(const EllipticCurveData& curve, const std::array<double, 4>& a,
                            const std::array<int, 4>& signs,
                            const std::array<int, 4>& root_choice) {
  D4Divisor div;
  div.root_choice = root_choice;
  for (int j = 0; j < 4; ++j) {
    const auto cand = d4_candidate_roots(curve.z(), a[static_cast<size_t>(j)]);
    const int idx = root_choice[static_cast<size_t>(j)];
    if (idx < 0 || idx >= static_cast<int>(cand.size())) {
      throw Error("d4_divisor_points: root choice out of range");
    }
    const Complex u = cand[static_cast<size_t>(idx)];
    const CurvePoint zp = d4_zero_point(a[static_cast<size_t>(j)], signs[static_cast<size_t>(j)], u);
    div.zeros.push_back(zp);
    div.poles.push_back(CurvePoint::finite(zp.u, -zp.w));
  }
  return div;
}

D4Divisor d4_divisor_points_near(const EllipticCurveData& curve, const std::array<double, 4>& a,
                                 const std::array<int, 4>& signs,
                                 const std::array<Complex, 4>& seed_u) {
  std::array<int, 4> choice{};
  for (int j = 0; j < 4; ++j) {
    const auto cand = d4_candidate_roots(curve.z(), a[static_cast<size_t>(j)]);
    int best = 0;
    for (int i = 1; i < static_cast<int>(cand.size()); ++i) {
      if (std::abs(cand[static_cast<size_t>(i)] - seed_u[static_cast<size_t>(j)]) <
          std::abs(cand[static_cast<size_t>(best)] - seed_u[static_cast<size_t>(j)])) {
        best = i;
      }
    }
    choice[static_cast<size_t>(j)] = best;
  }
  return d4_divisor_points(curve, a, signs, choice);
}

std::vector<ScoredSelection> d4_exhaustive_scan(const EllipticCurveData& curve,
                                                const std::array<double, 4>& a,
                                                const std::array<int, 4>& signs) {
  // abel difference of each (zero, conjugate pole) pair, per level and root
  std::array<std::array<Complex, 4>, 4> diff{};
  for (int j = 0; j < 4; ++j) {
    const auto cand = d4_candidate_roots(curve.z(), a[static_cast<size_t>(j)]);
    for (int i = 0; i < 4; ++i) {
      const CurvePoint zp =
          d4_zero_point(a[static_cast<size_t>(j)], signs[static_cast<size_t>(j)], cand[static_cast<size_t>(i)]);
      const CurvePoint qp = CurvePoint::finite(zp.u, -zp.w);
      diff[static_cast<size_t>(j)][static_cast<size_t>(i)] =
          abel_map(curve, zp) - abel_map(curve, qp);
    }
  }

  std::vector<ScoredSelection> out;
  out.reserve(256);
  for (int i0 = 0; i0 < 4; ++i0) {
    for (int i1 = 0; i1 < 4; ++i1) {
      for (int i2 = 0; i2 < 4; ++i2) {
        for (int i3 = 0; i3 < 4; ++i3) {
          const Complex total = diff[0][static_cast<size_t>(i0)] + diff[1][static_cast<size_t>(i1)] +
                                diff[2][static_cast<size_t>(i2)] + diff[3][static_cast<size_t>(i3)];
          ScoredSelection sel;
          sel.root_choice = {i0, i1, i2, i3};
          sel.residual.value = total;
          sel.residual.lattice_distance = curve.lattice_distance(total);
          sel.residual.normalized = sel.residual.lattice_distance / curve.covering_radius();
          out.push_back(sel);
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const ScoredSelection& x, const ScoredSelection& y) {
    return x.residual.lattice_distance < y.residual.lattice_distance;
  });
  return out;
}

ConstraintSolveResult constraint_solve(const ComplexPoly& z_seed, int free_coefficient_index,
                                       const std::array<double, 4>& a,
                                       const std::array<int, 4>& signs,
                                       const std::array<int, 4>& seed_choice,
                                       const ConstraintSolveOptions& opts) {
  if (free_coefficient_index < 0 || free_coefficient_index > 4) {
    throw Error("constraint_solve: free coefficient index must be 0..4");
  }

  std::vector<Complex> coeffs(5);
  for (int k = 0; k <= 4; ++k) coeffs[static_cast<size_t>(k)] = z_seed.coeff(k);

  std::array<Complex, 4> seed_u{};
  {
    const EllipticCurveData curve0 = EllipticCurveData::make(ComplexPoly(coeffs), opts.quad);
    const D4Divisor d0 = d4_divisor_points(curve0, a, signs, seed_choice);
    for (int j = 0; j < 4; ++j) seed_u[static_cast<size_t>(j)] = d0.zeros[static_cast<size_t>(j)].u;
  }

  auto evaluate = [&](const std::vector<Complex>& cs)
      -> std::tuple<AbelResidual, D4Divisor, EllipticCurveData> {
    EllipticCurveData curve = EllipticCurveData::make(ComplexPoly(cs), opts.quad);
    D4Divisor div = d4_divisor_points_near(curve, a, signs, seed_u);
    AbelResidual res = principality_residual(curve, div.zeros, div.poles);
    return {res, div, curve};
  };

  auto [res, div, curve] = evaluate(coeffs);
  int it = 0;
  int stalls = 0;
  for (; it < opts.max_iterations && res.lattice_distance > opts.target; ++it) {
    for (int j = 0; j < 4; ++j) seed_u[static_cast<size_t>(j)] = div.zeros[static_cast<size_t>(j)].u;

    const Complex center = coeffs[static_cast<size_t>(free_coefficient_index)];
    const double h = opts.fd_step * std::max(1.0, std::abs(center));

    // Newton runs on the reduced residual v - nearest(v): the lattice moves
    // with the coefficient, so the anchor drift must enter the derivative
    auto shifted_reduced = [&](Complex delta) {
      std::vector<Complex> cs = coeffs;
      cs[static_cast<size_t>(free_coefficient_index)] += delta;
      auto [r, d, c] = evaluate(cs);
      (void)d;
      return r.value - c.nearest_lattice_point(r.value);
    };
    // an anchor-index hop between the two evaluations shifts the difference
    // by a lattice vector; the true increment is O(h), so reduce it away
    Complex diff = shifted_reduced({h, 0.0}) - shifted_reduced({-h, 0.0});
    diff -= curve.nearest_lattice_point(diff);
    const Complex deriv = diff / (2.0 * h);
    if (std::abs(deriv) < kTiny) throw DivergenceError("constraint_solve: flat residual derivative");

    const Complex newton_step = -(res.value - curve.nearest_lattice_point(res.value)) / deriv;
    if (std::abs(newton_step) > 10.0 * (1.0 + std::abs(center))) {
      throw DivergenceError("constraint_solve: Newton step exploded");
    }

    double lambda = 1.0;
    bool accepted = false;
    for (int half = 0; half < 8; ++half) {
      std::vector<Complex> cs = coeffs;
      cs[static_cast<size_t>(free_coefficient_index)] += lambda * newton_step;
      try {
        auto [r, d, c] = evaluate(cs);
        if (r.lattice_distance < res.lattice_distance) {
          coeffs = std::move(cs);
          res = r;
          div = d;
          curve = std::move(c);
          accepted = true;
          break;
        }
      } catch (const Error&) {
        // step landed on an invalid curve; shrink
      }
      lambda *= 0.5;
    }
    if (!accepted && ++stalls >= 3) {
      throw DivergenceError("constraint_solve: damping stalled");
    }
    if (accepted) stalls = 0;
  }

  if (res.lattice_distance > opts.target) {
    throw DivergenceError("constraint_solve: iteration budget exhausted at distance " +
                          std::to_string(res.lattice_distance));
  }

  // recompute with certification enabled
  QuadratureOptions certified = opts.quad;
  certified.certify = true;
  EllipticCurveData final_curve = EllipticCurveData::make(ComplexPoly(coeffs), certified);
  D4Divisor final_div = d4_divisor_points_near(final_curve, a, signs, seed_u);
  ConstraintSolveResult out;
  out.z = ComplexPoly(coeffs);
  out.residual = principality_residual(final_curve, final_div.zeros, final_div.poles);
  out.divisor = final_div;
  out.iterations = it;
  return out;
}

}  // namespace ale::elliptic
