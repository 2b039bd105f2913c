#include "ale/picard.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <json.hpp>

#include <algorithm>
#include <sstream>

#include "ale/errors.hpp"

namespace ale::picard {

using Rational = boost::multiprecision::cpp_rational;

std::string ConfigType::name() const {
  std::ostringstream os;
  switch (family) {
    case A: os << 'A'; break;
    case D: os << 'D'; break;
    case E: os << 'E'; break;
  }
  os << index;
  return os.str();
}

ConfigType parse_config_type(const std::string& text) {
  if (text.size() < 2) throw ParseError("config type: expected A<2l-1>, D<k>, or E<6|7|8>");
  const char fam = text[0];
  int idx = 0;
  try {
    size_t pos = 0;
    idx = std::stoi(text.substr(1), &pos);
    if (pos + 1 != text.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw ParseError("config type: bad index in '" + text + "'");
  }
  if (fam == 'A') {
    if (idx < 1 || idx % 2 == 0) throw ParseError("config type: A-series index must be odd (A(2l-1))");
    return ConfigType::a_odd((idx + 1) / 2);
  }
  if (fam == 'D') {
    if (idx < 4) throw ParseError("config type: D-series requires k >= 4");
    return ConfigType::d(idx);
  }
  if (fam == 'E') {
    if (idx < 6 || idx > 8) throw ParseError("config type: E-series index must be 6, 7 or 8");
    return ConfigType::e(idx);
  }
  throw ParseError("config type: unknown family '" + std::string(1, fam) + "'");
}

CurveConfig CurveConfig::make(ConfigType type) {
  CurveConfig cfg;
  cfg.type_ = type;
  switch (type.family) {
    case ConfigType::A: {
      const int ell = type.ell();
      if (ell < 1) throw UnsupportedTypeError("A-series requires l >= 1");
      cfg.names_ = {"C", "D1", "D2"};
      cfg.self_ = {0, -ell, -ell};
      cfg.adjacency_ = {{0, 1, 1}, {1, 0, 0}, {1, 0, 0}};
      cfg.gamma_order_ = 2 * ell;
      break;
    }
    case ConfigType::D: {
      const int k = type.index;
      if (k < 4) throw UnsupportedTypeError("D-series requires k >= 4");
      cfg.names_ = {"C", "E", "F", "G"};
      cfg.self_ = {-1, -(k - 2), -2, -2};
      cfg.adjacency_ = {{0, 1, 1, 1}, {1, 0, 0, 0}, {1, 0, 0, 0}, {1, 0, 0, 0}};
      cfg.gamma_order_ = 4 * (k - 2);
      break;
    }
    case ConfigType::E: {
      const int k = type.index;
      if (k < 6 || k > 8) throw UnsupportedTypeError("E-series index must be 6, 7 or 8");
      cfg.names_ = {"C", "E", "F", "G"};
      cfg.self_ = {-1, 3 - k, -2, -3};
      cfg.adjacency_ = {{0, 1, 1, 1}, {1, 0, 0, 0}, {1, 0, 0, 0}, {1, 0, 0, 0}};
      cfg.gamma_order_ = (k == 6) ? 24 : (k == 7) ? 48 : 120;
      break;
    }
  }
  return cfg;
}

size_t CurveConfig::curve_index(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw Error("unknown curve '" + name + "' in " + type_.name());
  return static_cast<size_t>(it - names_.begin());
}

std::vector<std::vector<Int>> CurveConfig::gram() const {
  const size_t n = names_.size();
  std::vector<std::vector<Int>> g(n, std::vector<Int>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    g[i][i] = self_[i];
    for (size_t j = 0; j < n; ++j) {
      if (i != j) g[i][j] = adjacency_[i][j];
    }
  }
  return g;
}

Int CurveConfig::pair(const DivisorClass& a, const DivisorClass& b) const {
  const auto g = gram();
  Int acc = 0;
  for (size_t i = 0; i < names_.size(); ++i) {
    for (size_t j = 0; j < names_.size(); ++j) {
      acc += a.coeffs[i] * g[i][j] * b.coeffs[j];
    }
  }
  return acc;
}

Int CurveConfig::canonical_pair(const DivisorClass& d) const {
  Int acc = 0;
  for (size_t i = 0; i < names_.size(); ++i) {
    acc += d.coeffs[i] * (Int(-2) - self_[i]);
  }
  return acc;
}

PicardLattice PicardLattice::plane() {
  PicardLattice lat;
  lat.basis_ = {"H"};
  lat.gram_ = {{1}};
  lat.canonical_ = {-3};
  return lat;
}

PicardLattice PicardLattice::ruled_surface(int ell) {
  PicardLattice lat;
  lat.basis_ = {"S", "Fib"};
  lat.gram_ = {{ell, 1}, {1, 0}};
  lat.canonical_ = {-2, ell - 2};
  return lat;
}

size_t PicardLattice::blow_up(const std::string& name) {
  const size_t n = basis_.size();
  basis_.push_back(name);
  for (auto& row : gram_) row.push_back(0);
  gram_.emplace_back(n + 1, Int(0));
  gram_[n][n] = -1;
  canonical_.push_back(1);
  return n;
}

size_t PicardLattice::basis_index(const std::string& name) const {
  const auto it = std::find(basis_.begin(), basis_.end(), name);
  if (it == basis_.end()) throw Error("unknown lattice basis class '" + name + "'");
  return static_cast<size_t>(it - basis_.begin());
}

Int PicardLattice::pair(const DivisorClass& a, const DivisorClass& b) const {
  Int acc = 0;
  for (size_t i = 0; i < basis_.size(); ++i) {
    for (size_t j = 0; j < basis_.size(); ++j) {
      acc += a.coeffs[i] * gram_[i][j] * b.coeffs[j];
    }
  }
  return acc;
}

Int PicardLattice::canonical_pair(const DivisorClass& d) const {
  DivisorClass k;
  k.coeffs = canonical_;
  return pair(k, d);
}

DivisorClass PicardLattice::basis_class(const std::string& name, Int c) const {
  DivisorClass d = zero_class();
  d.coeffs[basis_index(name)] = std::move(c);
  return d;
}

DivisorClass PicardLattice::zero_class() const {
  DivisorClass d;
  d.coeffs.assign(basis_.size(), 0);
  return d;
}

namespace {

DivisorClass add(const DivisorClass& a, const DivisorClass& b, Int sb = 1) {
  DivisorClass out = a;
  for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += sb * b.coeffs[i];
  return out;
}

}  // namespace

BlowupModel blowup_model(ConfigType type) {
  if (type.family == ConfigType::E) {
    throw UnsupportedTypeError(
        "E-series planar blow-up sequence is not pinned down; use CurveConfig");
  }

  BlowupModel model;
  if (type.family == ConfigType::D) {
    const int k = type.index;
    if (k < 4) throw UnsupportedTypeError("D-series requires k >= 4");
    // plane blown up at x, f, e_1..e_k, then at the point a infinitely near f
    // where the conic, the tangent line and the f-exceptional curve meet
    auto lat = PicardLattice::plane();
    lat.blow_up("X");
    lat.blow_up("Ff");
    for (int i = 1; i <= k; ++i) lat.blow_up("E" + std::to_string(i));
    lat.blow_up("C");

    const auto H = lat.basis_class("H");
    const auto X = lat.basis_class("X");
    const auto Ff = lat.basis_class("Ff");
    const auto C = lat.basis_class("C");

    auto E = add(H, H);  // conic: 2H
    for (int i = 1; i <= k; ++i) E = add(E, lat.basis_class("E" + std::to_string(i)), -1);
    E = add(E, Ff, -1);
    E = add(E, C, -1);

    auto G = add(H, X, -1);
    G = add(G, Ff, -1);
    G = add(G, C, -1);

    const auto F = add(Ff, C, -1);

    model.lattice = std::move(lat);
    model.curve_classes = {{"C", C}, {"E", E}, {"F", F}, {"G", G}};
    return model;
  }

  // A(2l-1): ruled surface P(O + O(l)) with 2l points on the zero section
  // blown up; C a fibre, D1 the infinity section, D2 the blown-up zero section
  const int ell = type.ell();
  if (ell < 1) throw UnsupportedTypeError("A-series requires l >= 1");
  auto lat = PicardLattice::ruled_surface(ell);
  for (int i = 1; i <= 2 * ell; ++i) lat.blow_up("B" + std::to_string(i));

  const auto S = lat.basis_class("S");
  const auto C = lat.basis_class("Fib");
  auto D1 = add(S, C, -ell);
  auto D2 = S;
  for (int i = 1; i <= 2 * ell; ++i) D2 = add(D2, lat.basis_class("B" + std::to_string(i)), -1);

  model.lattice = std::move(lat);
  model.curve_classes = {{"C", C}, {"D1", D1}, {"D2", D2}};
  return model;
}

DivisorClass solve_Q(const CurveConfig& config) {
  const size_t n = config.size();
  const auto gram = config.gram();

  // augmented rational system: gram * q = (2 on C, 0 elsewhere)
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) m[i][j] = Rational(gram[i][j]);
  }
  m[config.curve_index("C")][n] = 2;

  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) {
      throw SingularSystemError("solve_Q: degenerate intersection matrix for " +
                                config.type().name());
    }
    std::swap(m[col], m[pivot]);
    const Rational inv = Rational(1) / m[col][col];
    for (size_t j = col; j <= n; ++j) m[col][j] *= inv;
    for (size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const Rational factor = m[row][col];
      for (size_t j = col; j <= n; ++j) m[row][j] -= factor * m[col][j];
    }
  }

  DivisorClass q;
  q.coeffs.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const Rational& v = m[i][n];
    if (denominator(v) != 1) {
      throw NonIntegralSolutionError("solve_Q: rational solution is not integral for " +
                                     config.type().name());
    }
    q.coeffs[i] = numerator(v);
  }
  return q;
}

Pairings pairings(const CurveConfig& config, const DivisorClass& d) {
  return {config.pair(d, d), config.canonical_pair(d)};
}

TheoremReport verify_theorem(const CurveConfig& config) {
  TheoremReport rep;
  rep.type = config.type();
  rep.q = solve_Q(config);
  const auto pr = pairings(config, rep.q);
  rep.q_squared = pr.self;
  rep.kq = pr.canonical;
  rep.delta = config.gamma_order() / 2 - 1;
  rep.family_dim = rep.q_squared + 1 - 2 * rep.delta;
  rep.genus_arith = (rep.kq + rep.q_squared) / 2 + 1;
  rep.pass = rep.q_squared == config.gamma_order() && rep.kq == -4 &&
             rep.family_dim == 3 && rep.genus_arith == rep.delta;
  return rep;
}

std::string report_json(const TheoremReport& report) {
  nlohmann::json j;
  j["type"] = report.type.name();
  const auto names = CurveConfig::make(report.type).curve_names();
  for (size_t i = 0; i < names.size(); ++i) {
    j["Q"]["coeffs"][names[i]] = static_cast<long long>(report.q.coeffs[i]);
  }
  j["Q2"] = static_cast<long long>(report.q_squared);
  j["KQ"] = static_cast<long long>(report.kq);
  j["delta"] = static_cast<long long>(report.delta);
  j["family_dim"] = static_cast<long long>(report.family_dim);
  j["genus_arith"] = static_cast<long long>(report.genus_arith);
  j["pass"] = report.pass;
  return j.dump();
}

}  // namespace ale::picard
