#include "nc/rng.hpp"

#include <cmath>

namespace nc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng Rng::for_trial(std::uint64_t seed, std::uint64_t trial) {
  return Rng(splitmix64(splitmix64(seed) ^ (trial + 1)));
}

double Rng::normal() {
  if (cached_normal_) {
    double v = *cached_normal_;
    cached_normal_.reset();
    return v;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  cached_normal_ = r * std::sin(kTwoPi * u2);
  return r * std::cos(kTwoPi * u2);
}

TorusElement random_element(const TorusParams& params, long long max_degree,
                            long long max_terms, Rng& rng) {
  TorusElement out(params);
  long long n_terms = 1 + rng.below(max_terms);
  for (long long i = 0; i < n_terms; ++i) {
    long long r = rng.below(2 * max_degree + 1) - max_degree;
    long long s = rng.below(2 * max_degree + 1) - max_degree;
    out.add_term(Monomial{r, s}, rng.box());
  }
  return out;
}

Eigen::MatrixXcd random_unitary(long long dim, Rng& rng) {
  Eigen::MatrixXcd g(dim, dim);
  for (long long i = 0; i < dim; ++i) {
    for (long long j = 0; j < dim; ++j) {
      g(i, j) = std::complex<double>(rng.normal(), rng.normal());
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long long j = 0; j < dim; ++j) {
    std::complex<double> d = r(j, j);
    double a = std::abs(d);
    std::complex<double> phase = a > 0.0 ? d / a : std::complex<double>(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

}  // namespace nc
