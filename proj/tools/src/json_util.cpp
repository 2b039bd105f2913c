#include "json_util.hpp"

#include <cstdlib>

#include "ale/errors.hpp"

namespace ale::cli {

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ParseError("expected a number or [re, im] pair, got " + j.dump());
}

std::vector<Complex> complex_list_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of complex values, got " + j.dump());
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const Json& item : j) out.push_back(complex_from_json(item));
  return out;
}

Complex parse_complex_literal(const std::string& text) {
  if (text.empty()) throw ParseError("empty complex literal");
  // pure imaginary shorthand
  const auto parse_double = [&](const std::string& s) -> double {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == nullptr || *end != '\0') throw ParseError("bad numeric literal '" + s + "'");
    return v;
  };
  if (text.back() == 'i' || text.back() == 'I' || text.back() == 'j') {
    const std::string body = text.substr(0, text.size() - 1);
    // split at the sign of the imaginary part (skip leading and exponent signs)
    for (size_t pos = body.size(); pos-- > 1;) {
      const char c = body[pos];
      if ((c == '+' || c == '-') && body[pos - 1] != 'e' && body[pos - 1] != 'E') {
        return {parse_double(body.substr(0, pos)), parse_double(body.substr(pos))};
      }
    }
    return {0.0, parse_double(body)};
  }
  return {parse_double(text), 0.0};
}

Complex parse_complex_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    // allow a bare real
    return parse_complex_literal(text);
  }
  char* end = nullptr;
  const double re = std::strtod(text.substr(0, comma).c_str(), &end);
  const std::string imag = text.substr(comma + 1);
  const double im = std::strtod(imag.c_str(), &end);
  return {re, im};
}

}  // namespace ale::cli
