#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>

#include "nc/torus.hpp"

namespace nc {

/// Deterministic random source.  All draws go through explicit integer-to-real
/// conversions so a given seed yields the same sequence on every build of this
/// project, independent of standard-library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Independent per-trial stream derived from (seed, trial) by mixing, so
  /// parallel trial loops draw identical numbers in any execution order.
  static Rng for_trial(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t raw() { return eng_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller on the uniform stream.
  double normal();

  /// Uniform integer in [0, n).
  long long below(long long n) {
    return static_cast<long long>(eng_() % static_cast<std::uint64_t>(n));
  }

  /// Uniform point on the unit circle.
  std::complex<double> unit() {
    double a = kTwoPi * uniform();
    return {std::cos(a), std::sin(a)};
  }

  /// Independent real and imaginary parts uniform in [-1, 1).
  std::complex<double> box() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

 private:
  std::mt19937_64 eng_;
  std::optional<double> cached_normal_;
};

/// Random element with up to max_terms terms and exponents in
/// [-max_degree, max_degree].
TorusElement random_element(const TorusParams& params, long long max_degree,
                            long long max_terms, Rng& rng);

/// Haar-distributed unitary via QR of a complex Gaussian matrix with the
/// standard diagonal phase correction.
Eigen::MatrixXcd random_unitary(long long dim, Rng& rng);

}  // namespace nc
