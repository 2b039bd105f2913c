#pragma once

#include <json.hpp>

#include <complex>
#include <string>
#include <vector>

#include "ale/complex_poly.hpp"

namespace ale::cli {

using Json = nlohmann::json;

// complex values serialize as [re, im]
inline Json to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

inline Json to_json(const std::vector<Complex>& v) {
  Json arr = Json::array();
  for (const Complex& c : v) arr.push_back(to_json(c));
  return arr;
}

// polynomials serialize as ascending coefficient lists
inline Json to_json(const ComplexPoly& p) { return to_json(p.coeffs()); }

Complex complex_from_json(const Json& j);
std::vector<Complex> complex_list_from_json(const Json& j);

// parse "1.5", "2i", "1+2i", "-0.5-1e-3i" style literals
Complex parse_complex_literal(const std::string& text);

// parse "RE,IM"
Complex parse_complex_pair(const std::string& text);

}  // namespace ale::cli
