#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "ale/complex_poly.hpp"

namespace ale::elliptic {

/// Point on the curve w^2 = z(u).  The smooth model has two points over
/// u = infinity (deg z = 4), tagged by the sign of w/u^2 there.
struct CurvePoint {
  Complex u{0.0, 0.0};
  Complex w{0.0, 0.0};
  bool at_infinity = false;
  int infinity_sheet = +1;

  static CurvePoint finite(Complex u, Complex w) { return {u, w, false, +1}; }
  static CurvePoint infinity(int sheet) { return {{}, {}, true, sheet}; }
};

struct QuadratureOptions {
  int gauss_order = 12;
  double agree_tol = 1e-9;  // doubled-resolution agreement for certification
  bool certify = true;      // re-run checks (doubling, second homotopy class)
};

struct AbelResidual {
  Complex value{0.0, 0.0};
  double lattice_distance = 0.0;  // distance from value to the nearest lattice point
  double normalized = 0.0;        // lattice_distance / covering radius of the lattice
};

/// Quartic curve with its certified period lattice and Abel-map basepoint.
class EllipticCurveData {
public:
  // computes roots, branch cuts, both periods (certified by quadrature
  // doubling) and a default basepoint; throws RootCollisionError /
  // QuadratureNonConvergenceError
  static EllipticCurveData make(const ComplexPoly& z, const QuadratureOptions& opts = {});

  const ComplexPoly& z() const { return z_; }
  const std::vector<Complex>& branch_points() const { return roots_; }
  // reduced lattice basis, normalized so Im(omega2/omega1) > 0
  Complex omega1() const { return omega1_; }
  Complex omega2() const { return omega2_; }
  const CurvePoint& basepoint() const { return basepoint_; }
  double covering_radius() const { return covering_radius_; }
  double geometry_scale() const { return scale_; }
  const QuadratureOptions& options() const { return opts_; }

  Complex nearest_lattice_point(Complex v) const;
  double lattice_distance(Complex v) const;

private:
  ComplexPoly z_;
  std::vector<Complex> roots_;
  std::array<std::pair<int, int>, 2> cuts_{};
  Complex omega1_{0.0, 0.0};
  Complex omega2_{0.0, 0.0};
  CurvePoint basepoint_;
  double covering_radius_ = 0.0;
  double scale_ = 1.0;
  QuadratureOptions opts_;

  friend Complex abel_map(const EllipticCurveData&, const CurvePoint&);
  friend std::pair<Complex, Complex> raw_periods(const EllipticCurveData&);
};

// Two independent periods of du/w: loops around the two branch cuts chosen by
// minimal-distance root pairing.  Returns the reduced, orientation-normalized
// basis.
std::pair<Complex, Complex> periods(const ComplexPoly& z, const QuadratureOptions& opts = {});

// Abel-Jacobi integral of du/w from the basepoint to P with sheet tracking
// (single representative; reduce against the lattice as needed).  When
// opts.certify is set the value is revalidated along a second,
// homotopy-inequivalent path.  Throws PathThroughBranchPointError.
Complex abel_map(const EllipticCurveData& curve, const CurvePoint& P);

// Abel sum of the divisor  sum_i (zeros[i] - poles[i]); near-lattice values
// certify a principal divisor (Abel's theorem).
AbelResidual principality_residual(const EllipticCurveData& curve,
                                   const std::vector<CurvePoint>& zeros,
                                   const std::vector<CurvePoint>& poles);

/// Divisor candidates for the D_4 constraint: for level a_j the quartic
/// z(u) + a_j^2 u^2 = 0 has four roots; the chosen root u carries the zero
/// (u, +i s_j a_j u) and its hyperelliptic conjugate (u, -i s_j a_j u) as the
/// paired pole.
struct D4Divisor {
  std::vector<CurvePoint> zeros;
  std::vector<CurvePoint> poles;
  std::array<int, 4> root_choice{};  // index into the sorted roots, per level
};

// roots of z + a_j^2 u^2 sorted lexicographically by (Re, Im)
std::vector<Complex> d4_candidate_roots(const ComplexPoly& z, double a_j);

// explicit per-level root selection
D4Divisor d4_divisor_points(const EllipticCurveData& curve, const std::array<double, 4>& a,
                            const std::array<int, 4>& signs,
                            const std::array<int, 4>& root_choice);

// continuity selector: per level pick the candidate root nearest seed_u[j]
D4Divisor d4_divisor_points_near(const EllipticCurveData& curve,
                                 const std::array<double, 4>& a,
                                 const std::array<int, 4>& signs,
                                 const std::array<Complex, 4>& seed_u);

struct ScoredSelection {
  std::array<int, 4> root_choice{};
  AbelResidual residual;
};

// exhaustive mode: scores all 4^4 per-level root assignments, sorted by
// lattice distance (no canonical choice is asserted)
std::vector<ScoredSelection> d4_exhaustive_scan(const EllipticCurveData& curve,
                                                const std::array<double, 4>& a,
                                                const std::array<int, 4>& signs);

struct ConstraintSolveOptions {
  double target = 1e-8;    // lattice distance declaring the constraint restored
  int max_iterations = 30;
  double fd_step = 1e-6;   // numerical-derivative step on the free coefficient
  QuadratureOptions quad{12, 1e-9, false};  // certification re-enabled on the result
};

struct ConstraintSolveResult {
  ComplexPoly z;
  AbelResidual residual;
  D4Divisor divisor;
  int iterations = 0;
};

// Damped Newton on one complex coefficient of z, driving the principality
// residual of the selected D_4 divisor to the lattice.  Root selection follows
// the seed by continuity.  Throws DivergenceError.
ConstraintSolveResult constraint_solve(const ComplexPoly& z_seed, int free_coefficient_index,
                                       const std::array<double, 4>& a,
                                       const std::array<int, 4>& signs,
                                       const std::array<int, 4>& seed_choice,
                                       const ConstraintSolveOptions& opts = {});

// Sheet-tracked integral of du/w along a polyline, starting from the branch
// value w_start at the first vertex; returns {integral, w at the last vertex}.
std::pair<Complex, Complex> tracked_integral(const ComplexPoly& z,
                                             const std::vector<Complex>& path,
                                             Complex w_start, int gauss_order = 12);

// arithmetic-geometric mean of positive reals (independent oracle helper)
double agm(double x, double y);

// complete elliptic integral K as a function of the modulus k in (0,1),
// via the AGM: K(k) = pi / (2 agm(1, sqrt(1-k^2)))
double agm_K(double k);

}  // namespace ale::elliptic
