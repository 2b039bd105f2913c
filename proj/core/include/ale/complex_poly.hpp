#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace ale {

using Complex = std::complex<double>;

/// Univariate polynomial with complex coefficients, stored ascending:
/// coeffs()[k] multiplies u^k.  The zero polynomial has no coefficients;
/// any other polynomial keeps a nonzero leading coefficient.  Construction
/// strips exactly-zero leading coefficients only; nothing is rounded away
/// unless trim() is called with an explicit threshold.
class ComplexPoly {
public:
  ComplexPoly() = default;
  explicit ComplexPoly(std::vector<Complex> ascending_coeffs);
  ComplexPoly(std::initializer_list<Complex> ascending_coeffs);

  static ComplexPoly zero() { return ComplexPoly(); }
  static ComplexPoly constant(Complex c);
  // monic linear factor (u - root)
  static ComplexPoly linear_factor(Complex root);
  // scale * prod_i (u - roots[i])
  static ComplexPoly from_roots(const std::vector<Complex>& roots,
                                Complex scale = Complex(1.0, 0.0));

  bool is_zero() const { return coeffs_.empty(); }
  // degree of the zero polynomial is -1 by convention
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(int k) const;
  Complex leading() const;

  Complex eval(Complex u) const;
  ComplexPoly derivative() const;

  // largest coefficient magnitude (0 for the zero polynomial)
  double max_coeff_magnitude() const;

  // drop leading coefficients with magnitude <= threshold (explicit opt-in)
  ComplexPoly trimmed(double threshold) const;

  ComplexPoly operator+(const ComplexPoly& rhs) const;
  ComplexPoly operator-(const ComplexPoly& rhs) const;
  ComplexPoly operator*(const ComplexPoly& rhs) const;
  ComplexPoly operator*(Complex scalar) const;
  ComplexPoly operator-() const;

  bool operator==(const ComplexPoly& rhs) const { return coeffs_ == rhs.coeffs_; }

private:
  void strip_exact_zeros();
  std::vector<Complex> coeffs_;
};

inline ComplexPoly operator*(Complex scalar, const ComplexPoly& p) { return p * scalar; }

// max |a_k - b_k| over the union of coefficient ranges
double coeff_distance(const ComplexPoly& a, const ComplexPoly& b);

}  // namespace ale
