#pragma once

#include <vector>

#include "ale/complex_poly.hpp"

namespace ale {

struct RootOptions {
  // per-root residual bound |p(r)| / max|coeff| below which the set is certified
  double certification_tol = 1e-10;
  int polish_iterations = 120;
};

/// All complex roots of a polynomial, with multiplicity, plus the scaled
/// residuals |p(r_i)| / max|coeff| used for certification.
struct RootSet {
  std::vector<Complex> roots;
  std::vector<double> residuals;
  bool certified = false;
  double reconstruction_error = 0.0;  // coefficient mismatch of lc * prod(u - r_i)
};

// Companion-matrix eigenvalues refined by simultaneous (Aberth) Newton steps.
// Throws ZeroPolynomialError for the zero polynomial and NonConvergenceError
// when the polish stalls on an ill-conditioned input.
RootSet roots(const ComplexPoly& p, const RootOptions& opts = {});

// Sylvester-determinant resultant.  Res(u-2, u-5) = -3 under this convention.
Complex resultant(const ComplexPoly& p, const ComplexPoly& q);

// Resultant of p and p' normalized so that disc(u^2 + b u + c) = b^2 - 4c.
Complex discriminant(const ComplexPoly& p);

struct RootClusters {
  std::vector<Complex> doubles;               // centroids of size-2 clusters
  std::vector<Complex> simples;               // size-1 clusters
  std::vector<std::vector<Complex>> higher;   // clusters of size >= 3
};

// Partition the root multiset of p into clusters of diameter <= tol.  Raises
// AmbiguousClusteringError when the partitions at tol and 2*tol disagree,
// which signals the caller should tighten its solve before trusting counts.
RootClusters double_root_clusters(const ComplexPoly& p, double tol,
                                  const RootOptions& opts = {});

}  // namespace ale
