#pragma once

#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace nc {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Reduced fraction num/den with den >= 1.
struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational reduced(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    return Rational{num, den};
  }

  friend bool operator==(const Rational&, const Rational&) = default;
};

/// e^{2 pi i j/q} with the exponent reduced mod q before evaluation, so each
/// distinct residue maps to one canonical floating-point value.
std::complex<double> root_of_unity(long long j, long long q);

/// Twist parameter theta of the relation u v = e^{2 pi i theta} v u.  When the
/// value is an exact fraction, `exact` carries it and phase evaluation goes
/// through integer arithmetic mod the denominator.
struct TorusParams {
  double theta = 0.0;
  std::optional<Rational> exact;

  static TorusParams real(double theta) { return TorusParams{theta, std::nullopt}; }

  static TorusParams rational(long long p, long long q) {
    Rational r = Rational::reduced(p, q);
    return TorusParams{static_cast<double>(r.num) / static_cast<double>(r.den), r};
  }

  friend bool operator==(const TorusParams& a, const TorusParams& b) {
    if (a.exact.has_value() != b.exact.has_value()) return false;
    if (a.exact) return *a.exact == *b.exact;
    return a.theta == b.theta;
  }
};

/// e^{2 pi i theta t}.  Rational theta reduces the integer exponent mod the
/// denominator first, so arbitrarily long products cannot accumulate drift.
std::complex<double> theta_phase(const TorusParams& params, long long t);

}  // namespace nc
