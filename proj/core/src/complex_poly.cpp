#include "ale/complex_poly.hpp"

#include <algorithm>
#include <cmath>

namespace ale {

ComplexPoly::ComplexPoly(std::vector<Complex> ascending_coeffs)
    : coeffs_(std::move(ascending_coeffs)) {
  strip_exact_zeros();
}

ComplexPoly::ComplexPoly(std::initializer_list<Complex> ascending_coeffs)
    : coeffs_(ascending_coeffs) {
  strip_exact_zeros();
}

void ComplexPoly::strip_exact_zeros() {
  while (!coeffs_.empty() && coeffs_.back() == Complex(0.0, 0.0)) {
    coeffs_.pop_back();
  }
}

ComplexPoly ComplexPoly::constant(Complex c) {
  return ComplexPoly(std::vector<Complex>{c});
}

ComplexPoly ComplexPoly::linear_factor(Complex root) {
  return ComplexPoly({-root, Complex(1.0, 0.0)});
}

ComplexPoly ComplexPoly::from_roots(const std::vector<Complex>& roots, Complex scale) {
  ComplexPoly p = constant(scale);
  for (const Complex& r : roots) p = p * linear_factor(r);
  return p;
}

Complex ComplexPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return {0.0, 0.0};
  return coeffs_[static_cast<size_t>(k)];
}

Complex ComplexPoly::leading() const {
  return coeffs_.empty() ? Complex(0.0, 0.0) : coeffs_.back();
}

Complex ComplexPoly::eval(Complex u) const {
  Complex acc(0.0, 0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
  return acc;
}

ComplexPoly ComplexPoly::derivative() const {
  if (coeffs_.size() <= 1) return zero();
  std::vector<Complex> d(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k) {
    d[k - 1] = coeffs_[k] * Complex(static_cast<double>(k), 0.0);
  }
  return ComplexPoly(std::move(d));
}

double ComplexPoly::max_coeff_magnitude() const {
  double m = 0.0;
  for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

ComplexPoly ComplexPoly::trimmed(double threshold) const {
  std::vector<Complex> c = coeffs_;
  while (!c.empty() && std::abs(c.back()) <= threshold) c.pop_back();
  return ComplexPoly(std::move(c));
}

ComplexPoly ComplexPoly::operator+(const ComplexPoly& rhs) const {
  std::vector<Complex> out(std::max(coeffs_.size(), rhs.coeffs_.size()), Complex(0.0, 0.0));
  for (size_t k = 0; k < coeffs_.size(); ++k) out[k] += coeffs_[k];
  for (size_t k = 0; k < rhs.coeffs_.size(); ++k) out[k] += rhs.coeffs_[k];
  return ComplexPoly(std::move(out));
}

ComplexPoly ComplexPoly::operator-(const ComplexPoly& rhs) const {
  std::vector<Complex> out(std::max(coeffs_.size(), rhs.coeffs_.size()), Complex(0.0, 0.0));
  for (size_t k = 0; k < coeffs_.size(); ++k) out[k] += coeffs_[k];
  for (size_t k = 0; k < rhs.coeffs_.size(); ++k) out[k] -= rhs.coeffs_[k];
  return ComplexPoly(std::move(out));
}

ComplexPoly ComplexPoly::operator*(const ComplexPoly& rhs) const {
  if (is_zero() || rhs.is_zero()) return zero();
  std::vector<Complex> out(coeffs_.size() + rhs.coeffs_.size() - 1, Complex(0.0, 0.0));
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    for (size_t j = 0; j < rhs.coeffs_.size(); ++j) {
      out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
  }
  return ComplexPoly(std::move(out));
}

ComplexPoly ComplexPoly::operator*(Complex scalar) const {
  std::vector<Complex> out = coeffs_;
  for (Complex& c : out) c *= scalar;
  return ComplexPoly(std::move(out));
}

ComplexPoly ComplexPoly::operator-() const {
  return (*this) * Complex(-1.0, 0.0);
}

double coeff_distance(const ComplexPoly& a, const ComplexPoly& b) {
  const int n = std::max(a.degree(), b.degree());
  double m = 0.0;
  for (int k = 0; k <= n; ++k) m = std::max(m, std::abs(a.coeff(k) - b.coeff(k)));
  return m;
}

}  // namespace ale
