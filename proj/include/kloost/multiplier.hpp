#pragma once

// Half-integral weight multiplier systems evaluated exactly as phases.

#include <iosfwd>
#include <string>
#include <string_view>

#include "kloost/exact_arith.hpp"

namespace kloost {

/// Integer matrix (a b; c d) with ad - bc = 1.
struct GammaMatrix {
  Int a = 1, b = 0, c = 0, d = 1;

  /// Validates the determinant.
  static GammaMatrix make(Int a, Int b, Int c, Int d);
  static GammaMatrix identity() { return {}; }
  static GammaMatrix translation(Int b = 1) { return {1, b, 0, 1}; }
  static GammaMatrix inversion() { return {0, -1, 1, 0}; }

  bool in_gamma0(Int level) const { return c % level == 0; }

  GammaMatrix operator-() const { return {-a, -b, -c, -d}; }
  friend GammaMatrix operator*(const GammaMatrix& x, const GammaMatrix& y);
  friend bool operator==(const GammaMatrix&, const GammaMatrix&) = default;
};

std::ostream& operator<<(std::ostream& os, const GammaMatrix& g);

enum class MultiplierBase { Eta, Theta, Psi };

/// A multiplier system nu on Gamma_0(level): optionally conjugated base
/// multiplier, optionally twisted by the real character d -> (D/d).
///
/// Weight and alpha are derived at construction: the twist flips the weight
/// sign when (D/-1) = -1, and alpha is fixed by e(-alpha) = nu(T).
class MultiplierSpec {
 public:
  static MultiplierSpec eta();
  static MultiplierSpec eta_bar();
  static MultiplierSpec theta();
  static MultiplierSpec theta_bar();
  static MultiplierSpec psi();
  static MultiplierSpec psi_bar();
  /// (d/3) * conj(nu_eta) on Gamma_0(3).
  static MultiplierSpec third_twist_eta_bar();
  /// (D/d) * base on Gamma_0(level). D must be a discriminant (0 or 1 mod 4)
  /// with |D| | level, and the base level must divide level.
  static MultiplierSpec quad_twist(const MultiplierSpec& base, Int discriminant, Int level);

  /// Accepts eta, etabar, theta, thetabar, psi, psibar, eta3bar, eta3 and the
  /// generic twist form "<base>:<D>:<level>", e.g. "theta:12:576".
  static MultiplierSpec parse(std::string_view name);

  MultiplierSpec conj() const;

  MultiplierBase base() const { return base_; }
  bool conjugated() const { return conjugate_; }
  Int twist() const { return twist_; }
  Int level() const { return level_; }
  const Rational& weight() const { return weight_; }
  const Rational& alpha() const { return alpha_; }
  /// Canonical identifier, stable across runs (used as cache key).
  std::string id() const;

  friend bool operator==(const MultiplierSpec& x, const MultiplierSpec& y) {
    return x.base_ == y.base_ && x.conjugate_ == y.conjugate_ && x.twist_ == y.twist_ && x.level_ == y.level_;
  }

 private:
  MultiplierSpec(MultiplierBase base, bool conjugate, Int twist, Int level);

  MultiplierBase base_;
  bool conjugate_;
  Int twist_;
  Int level_;
  Rational weight_;
  Rational alpha_;
};

/// nu_eta via e(-1/8) e^{-pi i s(d,c)} e((a+d)/(24c)). c = 0 uses nu(+-T^b);
/// c < 0 uses nu_eta(-g) = i nu_eta(g) for c > 0.
RationalPhase eval_eta_rademacher(const GammaMatrix& g);
/// Knopp's closed form with a Kronecker sign; c > 0 only.
RationalPhase eval_eta_knopp(const GammaMatrix& g);
/// nu_theta(g) = (c/d) eps_d^{-1} on Gamma_0(4).
RationalPhase eval_theta(const GammaMatrix& g);
/// psi(g) = e(c/8) (-1/d)^{c/2+1} conj(nu_eta(g)) on Gamma_0(2).
RationalPhase eval_psi(const GammaMatrix& g);

RationalPhase eval_multiplier(const MultiplierSpec& spec, const GammaMatrix& g);
Rational alpha_of(const MultiplierSpec& spec);

/// Consistency factor w_k(g1, g2) = j(g2,z)^k j(g1,g2 z)^k j(g1 g2,z)^{-k}.
/// Arguments are taken at z = i in long double and the total angle is rounded
/// to a multiple of 2 pi; throws std::runtime_error if the rounding margin is
/// not at least 1000 times the accumulated floating error.
RationalPhase cocycle_w(const GammaMatrix& g1, const GammaMatrix& g2, const Rational& k);

}  // namespace kloost
