#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string>
#include <vector>

namespace ale::picard {

using Int = boost::multiprecision::cpp_int;

/// ADE configuration label: A(2l-1), D(k) with k >= 4, E6/E7/E8.
struct ConfigType {
  enum Family { A, D, E } family;
  int index;  // 2l-1 for A, k for D, 6/7/8 for E

  static ConfigType a_odd(int ell) { return {A, 2 * ell - 1}; }
  static ConfigType d(int k) { return {D, k}; }
  static ConfigType e(int n) { return {E, n}; }

  int ell() const { return (index + 1) / 2; }  // A-series only
  std::string name() const;
};

// Parse "A3", "D5", "E8" style labels; throws ParseError on anything else.
ConfigType parse_config_type(const std::string& text);

/// Integer coefficient vector over an ordered curve/class basis.
struct DivisorClass {
  std::vector<Int> coeffs;

  bool operator==(const DivisorClass& rhs) const = default;
};

/// Named rational curves with their self-intersections and transverse
/// adjacency, plus the order of the associated binary polyhedral group.
class CurveConfig {
public:
  static CurveConfig make(ConfigType type);

  const ConfigType& type() const { return type_; }
  const std::vector<std::string>& curve_names() const { return names_; }
  const std::vector<Int>& self_intersections() const { return self_; }
  const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }
  Int gamma_order() const { return gamma_order_; }
  size_t size() const { return names_.size(); }
  size_t curve_index(const std::string& name) const;

  // full intersection matrix: diag(self) + adjacency
  std::vector<std::vector<Int>> gram() const;
  Int pair(const DivisorClass& a, const DivisorClass& b) const;
  // K.D extended linearly from adjunction K.C_i = -2 - C_i^2
  Int canonical_pair(const DivisorClass& d) const;

private:
  ConfigType type_{ConfigType::A, 1};
  std::vector<std::string> names_;
  std::vector<Int> self_;
  std::vector<std::vector<int>> adjacency_;
  Int gamma_order_;
};

/// Orthogonal-basis intersection lattice of an iterated point blow-up.
/// Infinitely-near points are handled by the caller subtracting the new
/// exceptional class from the strict transforms of curves through the point.
class PicardLattice {
public:
  // Picard lattice of P^2: basis {H}, H.H = 1, K = -3H
  static PicardLattice plane();
  // Picard lattice of the P^1-bundle P(O + O(ell)): basis {S, Fib} with
  // S.S = ell (zero section), Fib.Fib = 0, S.Fib = 1, K = -2S + (ell-2)Fib
  static PicardLattice ruled_surface(int ell);

  // append the exceptional class of one point blow-up; returns its basis index
  size_t blow_up(const std::string& name);

  const std::vector<std::string>& basis() const { return basis_; }
  size_t basis_index(const std::string& name) const;
  const std::vector<Int>& canonical() const { return canonical_; }

  Int pair(const DivisorClass& a, const DivisorClass& b) const;
  Int canonical_pair(const DivisorClass& d) const;

  // convenience: class with coefficient c on the named basis element
  DivisorClass basis_class(const std::string& name, Int c = 1) const;
  DivisorClass zero_class() const;

private:
  std::vector<std::string> basis_;
  std::vector<std::vector<Int>> gram_;
  std::vector<Int> canonical_;
};

/// Blow-up model of the compactified fibre surface: the lattice plus the
/// configuration curves as explicit classes.  Supported for D(k), k >= 4,
/// and A(2l-1), l >= 1; the E-series planar model is not pinned down enough
/// to construct, so it raises UnsupportedTypeError.
struct BlowupModel {
  PicardLattice lattice;
  std::map<std::string, DivisorClass> curve_classes;
};

BlowupModel blowup_model(ConfigType type);

// The unique integer class spanned by the configuration curves with
// Q.C = 2 and zero pairing against every other curve.
DivisorClass solve_Q(const CurveConfig& config);

struct Pairings {
  Int self;
  Int canonical;
};

Pairings pairings(const CurveConfig& config, const DivisorClass& d);

/// Verification ledger for one configuration: Q and the identities
/// Q^2 = |Gamma|, KQ = -4, node count, family dimension, arithmetic genus.
struct TheoremReport {
  ConfigType type;
  DivisorClass q;
  Int q_squared;
  Int kq;
  Int delta;       // |Gamma|/2 - 1
  Int family_dim;  // Q^2 + 1 - 2*delta
  Int genus_arith; // (KQ + Q^2)/2 + 1
  bool pass = false;
};

TheoremReport verify_theorem(const CurveConfig& config);

// report as a JSON document:
// {type, Q: {coeffs}, Q2, KQ, delta, family_dim, genus_arith, pass}
std::string report_json(const TheoremReport& report);

}  // namespace ale::picard
