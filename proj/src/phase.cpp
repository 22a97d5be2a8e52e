#include "nc/phase.hpp"

#include <cmath>

namespace nc {

std::complex<double> root_of_unity(long long j, long long q) {
  if (q <= 0) throw std::invalid_argument("root_of_unity: order must be positive");
  long long m = j % q;
  if (m < 0) m += q;
  double angle = kTwoPi * static_cast<double>(m) / static_cast<double>(q);
  return {std::cos(angle), std::sin(angle)};
}

std::complex<double> theta_phase(const TorusParams& params, long long t) {
  if (params.exact) {
    const Rational& r = *params.exact;
    long long q = r.den;
    long long a = r.num % q;
    if (a < 0) a += q;
    long long b = t % q;
    if (b < 0) b += q;
    long long m = static_cast<long long>(
        (static_cast<__int128>(a) * static_cast<__int128>(b)) % q);
    return root_of_unity(m, q);
  }
  double angle = kTwoPi * params.theta * static_cast<double>(t);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace nc
