#include "kloost/multiplier.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "kloost/dedekind.hpp"

namespace kloost {

GammaMatrix GammaMatrix::make(Int a, Int b, Int c, Int d) {
  if (checked_sub(checked_mul(a, d), checked_mul(b, c)) != 1)
    throw std::invalid_argument("GammaMatrix: determinant must be 1");
  return {a, b, c, d};
}

GammaMatrix operator*(const GammaMatrix& x, const GammaMatrix& y) {
  return {checked_add(checked_mul(x.a, y.a), checked_mul(x.b, y.c)),
          checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.d)),
          checked_add(checked_mul(x.c, y.a), checked_mul(x.d, y.c)),
          checked_add(checked_mul(x.c, y.b), checked_mul(x.d, y.d))};
}

std::ostream& operator<<(std::ostream& os, const GammaMatrix& g) {
  return os << "(" << g.a << "," << g.b << ";" << g.c << "," << g.d << ")";
}

// ---------------------------------------------------------------------------
// Base multipliers

RationalPhase eval_eta_rademacher(const GammaMatrix& g) {
  if (g.c == 0) {
    // g = +-T^b; nu(T^b) = e(b/24) and nu(-T^b) = nu(-I) nu(T^b) = -i e(b/24).
    if (g.d == 1) return RationalPhase(g.b, 24);
    return RationalPhase(-1, 4) + RationalPhase(-g.b, 24);
  }
  if (g.c < 0) return RationalPhase(1, 4) + eval_eta_rademacher(-g);
  // e(-1/8) e(-s/2) e((a+d)/(24c)) with s = k/(6c): numerator over 24c.
  Int k = dedekind_times_6c(g.d, g.c);
  Int num = checked_add(checked_sub(checked_mul(-3, g.c), checked_mul(2, k)), checked_add(g.a, g.d));
  return RationalPhase(num, checked_mul(24, g.c));
}

RationalPhase eval_eta_knopp(const GammaMatrix& g) {
  if (g.c <= 0) throw std::invalid_argument("eval_eta_knopp: requires c > 0");
  auto m24 = [](Int x) { return mod(x, 24); };
  const Int a = m24(g.a), b = m24(g.b), c = m24(g.c), d = m24(g.d);
  const Int c2m1 = m24(c * c - 1);
  Int num = m24(m24((a + d) * c) - m24(m24(b * d) * c2m1));
  int sign;
  if (g.c % 2 != 0) {
    sign = kronecker(g.d, g.c);
    num = m24(num - 3 * c);
  } else {
    sign = kronecker(g.c, g.d);
    num = m24(num + 3 * d - 3 - m24(3 * c * d));
  }
  return RationalPhase(num, 24) + RationalPhase::sign(sign);
}

RationalPhase eval_theta(const GammaMatrix& g) {
  if (g.c % 4 != 0) throw std::invalid_argument("eval_theta: requires 4 | c");
  return RationalPhase::sign(kronecker(g.c, g.d)) - epsilon_d(g.d);
}

RationalPhase eval_psi(const GammaMatrix& g) {
  if (g.c % 2 != 0) throw std::invalid_argument("eval_psi: requires 2 | c");
  RationalPhase p(g.c, 8);
  if (mod(g.c / 2 + 1, 2) == 1) p += RationalPhase::sign(kronecker(-1, g.d));
  return p - eval_eta_rademacher(g);
}

// ---------------------------------------------------------------------------
// MultiplierSpec

namespace {

Int base_level(MultiplierBase b) {
  switch (b) {
    case MultiplierBase::Eta:
      return 1;
    case MultiplierBase::Theta:
      return 4;
    case MultiplierBase::Psi:
      return 2;
  }
  return 1;
}

const char* base_name(MultiplierBase b) {
  switch (b) {
    case MultiplierBase::Eta:
      return "eta";
    case MultiplierBase::Theta:
      return "theta";
    case MultiplierBase::Psi:
      return "psi";
  }
  return "?";
}

RationalPhase eval_base(MultiplierBase b, const GammaMatrix& g) {
  switch (b) {
    case MultiplierBase::Eta:
      return eval_eta_rademacher(g);
    case MultiplierBase::Theta:
      return eval_theta(g);
    case MultiplierBase::Psi:
      return eval_psi(g);
  }
  return {};
}

}  // namespace

MultiplierSpec::MultiplierSpec(MultiplierBase base, bool conjugate, Int twist, Int level)
    : base_(base), conjugate_(conjugate), twist_(twist), level_(level) {
  if (level < 1 || level % base_level(base) != 0)
    throw std::invalid_argument("MultiplierSpec: level must be a multiple of the base level");
  if (twist != 0) {
    if (mod(twist, 4) > 1) throw std::invalid_argument("MultiplierSpec: twist must be a discriminant (0 or 1 mod 4)");
    if (level % std::llabs(twist) != 0)
      throw std::invalid_argument("MultiplierSpec: character modulus must divide the level");
  }
  weight_ = conjugate ? Rational(-1, 2) : Rational(1, 2);
  if (twist != 0 && kronecker(twist, -1) == -1) weight_ = -weight_;
  alpha_ = alpha_of(*this);
}

MultiplierSpec MultiplierSpec::eta() { return {MultiplierBase::Eta, false, 0, 1}; }
MultiplierSpec MultiplierSpec::eta_bar() { return {MultiplierBase::Eta, true, 0, 1}; }
MultiplierSpec MultiplierSpec::theta() { return {MultiplierBase::Theta, false, 0, 4}; }
MultiplierSpec MultiplierSpec::theta_bar() { return {MultiplierBase::Theta, true, 0, 4}; }
MultiplierSpec MultiplierSpec::psi() { return {MultiplierBase::Psi, false, 0, 2}; }
MultiplierSpec MultiplierSpec::psi_bar() { return {MultiplierBase::Psi, true, 0, 2}; }
MultiplierSpec MultiplierSpec::third_twist_eta_bar() { return {MultiplierBase::Eta, true, -3, 3}; }

MultiplierSpec MultiplierSpec::quad_twist(const MultiplierSpec& base, Int discriminant, Int level) {
  if (base.twist_ != 0) throw std::invalid_argument("quad_twist: base is already twisted");
  if (discriminant == 0) throw std::invalid_argument("quad_twist: discriminant must be non-zero");
  if (level % base.level_ != 0) throw std::invalid_argument("quad_twist: level must be a multiple of the base level");
  return {base.base_, base.conjugate_, discriminant, level};
}

MultiplierSpec MultiplierSpec::conj() const { return {base_, !conjugate_, twist_, level_}; }

std::string MultiplierSpec::id() const {
  std::string s = base_name(base_);
  if (conjugate_) s += "bar";
  if (twist_ != 0) s += ":" + std::to_string(twist_) + ":" + std::to_string(level_);
  return s;
}

MultiplierSpec MultiplierSpec::parse(std::string_view name) {
  auto plain = [](std::string_view n) -> MultiplierSpec {
    if (n == "eta") return eta();
    if (n == "etabar") return eta_bar();
    if (n == "theta") return theta();
    if (n == "thetabar") return theta_bar();
    if (n == "psi") return psi();
    if (n == "psibar") return psi_bar();
    if (n == "eta3bar") return third_twist_eta_bar();
    if (n == "eta3") return third_twist_eta_bar().conj();
    throw std::invalid_argument("unknown multiplier: " + std::string(n));
  };
  auto colon = name.find(':');
  if (colon == std::string_view::npos) return plain(name);
  auto colon2 = name.find(':', colon + 1);
  if (colon2 == std::string_view::npos) throw std::invalid_argument("twist form is <base>:<D>:<level>");
  MultiplierSpec base = plain(name.substr(0, colon));
  try {
    Int D = std::stoll(std::string(name.substr(colon + 1, colon2 - colon - 1)));
    Int N = std::stoll(std::string(name.substr(colon2 + 1)));
    return quad_twist(base, D, N);
  } catch (const std::logic_error& e) {
    throw std::invalid_argument("bad multiplier '" + std::string(name) + "': " + e.what());
  }
}

RationalPhase eval_multiplier(const MultiplierSpec& spec, const GammaMatrix& g) {
  if (!g.in_gamma0(spec.level()))
    throw std::invalid_argument("eval_multiplier: matrix not in Gamma_0(" + std::to_string(spec.level()) + ")");
  RationalPhase p = eval_base(spec.base(), g);
  if (spec.conjugated()) p = -p;
  if (spec.twist() != 0) {
    int chi = kronecker(spec.twist(), g.d);
    if (chi == 0) throw std::invalid_argument("eval_multiplier: character vanishes at d");
    p += RationalPhase::sign(chi);
  }
  return p;
}

Rational alpha_of(const MultiplierSpec& spec) {
  return (-eval_multiplier(spec, GammaMatrix::translation())).to_rational();
}

// ---------------------------------------------------------------------------
// Consistency factor

namespace {

// arg(x + i y) in (-pi, pi] for integers, exact on the real axis.
long double arg_of(__int128 x, __int128 y) {
  if (y == 0) return x > 0 ? 0.0L : std::numbers::pi_v<long double>;
  return std::atan2(static_cast<long double>(y), static_cast<long double>(x));
}

}  // namespace

RationalPhase cocycle_w(const GammaMatrix& g1, const GammaMatrix& g2, const Rational& k) {
  const GammaMatrix g12 = g1 * g2;
  // g2(i) = ((a c + b d) + i) / (c^2 + d^2), so c1 g2(i) + d1 has positive-scaled
  // real part c1 (a2 c2 + b2 d2) + d1 (c2^2 + d2^2) and imaginary part c1.
  const __int128 a2 = g2.a, b2 = g2.b, c2 = g2.c, d2 = g2.d;
  const __int128 re1 = g1.c * (a2 * c2 + b2 * d2) + g1.d * (c2 * c2 + d2 * d2);

  const long double t2 = arg_of(g2.d, g2.c);
  const long double t1 = arg_of(re1, g1.c);
  const long double t12 = arg_of(g12.d, g12.c);
  const long double two_pi = 2 * std::numbers::pi_v<long double>;
  const long double turns = (t2 + t1 - t12) / two_pi;
  const long double ell = std::nearbyint(turns);
  const long double err = 16 * std::numeric_limits<long double>::epsilon();
  const long double margin = 0.5L - std::fabs(turns - ell);
  if (margin <= 1000 * err) throw std::runtime_error("cocycle_w: rounding margin too small");

  Rational phase = k * static_cast<long>(ell);
  return RationalPhase(phase);
}

}  // namespace kloost
