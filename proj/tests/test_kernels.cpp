#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "nc/kernels.hpp"
#include "nc/partition.hpp"
#include "nc/rep.hpp"
#include "nc/rng.hpp"

using namespace nc;
using cplx = std::complex<double>;

namespace {

std::vector<double> random_samples(long long n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto& x : out) x = rng.uniform(-1.0, 1.0);
  return out;
}

/// Plain quadratic-time transform used as the independent reference.
std::vector<cplx> naive_dft(const std::vector<double>& samples, long long degree) {
  const long long N = static_cast<long long>(samples.size());
  std::vector<cplx> out;
  for (long long k = -degree; k <= degree; ++k) {
    cplx acc(0.0, 0.0);
    for (long long t = 0; t < N; ++t) {
      double angle = -kTwoPi * static_cast<double>(k) * static_cast<double>(t) /
                     static_cast<double>(N);
      acc += samples[static_cast<std::size_t>(t)] * cplx(std::cos(angle), std::sin(angle));
    }
    out.push_back(acc / static_cast<double>(N));
  }
  return out;
}

}  // namespace

TEST_CASE("truncated transforms recover the coefficients of a trigonometric polynomial") {
  const long long N = 256;
  std::vector<double> samples(N);
  // f = 0.5 + cos(3 psi) - 2 sin(5 psi); coefficients c_{+-3} = 1/2,
  // c_{+-5} = +- i, c_0 = 1/2.
  for (long long t = 0; t < N; ++t) {
    double psi = kTwoPi * static_cast<double>(t) / static_cast<double>(N);
    samples[static_cast<std::size_t>(t)] =
        0.5 + std::cos(3.0 * psi) - 2.0 * std::sin(5.0 * psi);
  }
  auto coeffs = dft_truncated(samples, 6);
  REQUIRE(coeffs.size() == 13);
  auto at = [&](long long k) { return coeffs[static_cast<std::size_t>(k + 6)]; };
  CHECK(std::abs(at(0) - cplx(0.5, 0.0)) < 1e-13);
  CHECK(std::abs(at(3) - cplx(0.5, 0.0)) < 1e-13);
  CHECK(std::abs(at(-3) - cplx(0.5, 0.0)) < 1e-13);
  CHECK(std::abs(at(5) - cplx(0.0, 1.0)) < 1e-13);
  CHECK(std::abs(at(-5) - cplx(0.0, -1.0)) < 1e-13);
  CHECK(std::abs(at(1)) < 1e-13);
  CHECK(std::abs(at(6)) < 1e-13);
}

TEST_CASE("truncated transforms match the quadratic reference on random data") {
  std::vector<double> samples = random_samples(200, 555);
  auto fast = dft_truncated(samples, 10);
  auto slow = naive_dft(samples, 10);
  REQUIRE(fast.size() == slow.size());
  for (std::size_t i = 0; i < fast.size(); ++i) {
    CHECK(std::abs(fast[i] - slow[i]) < 1e-12);
  }
}

TEST_CASE("both execution policies produce bit-identical transforms") {
  std::vector<double> samples = random_samples(1024, 777);
  auto serial = dft_truncated(samples, 32, ExecPolicy::Serial);
  auto parallel = dft_truncated(samples, 32, ExecPolicy::Parallel);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].real() == parallel[i].real());
    CHECK(serial[i].imag() == parallel[i].imag());
  }
}

TEST_CASE("partition kernels are bit-identical across execution policies") {
  PartitionOfUnity p = build_partition_of_unity(5, 1999);
  CHECK(partition_unit_residual(p.functions, ExecPolicy::Serial) ==
        partition_unit_residual(p.functions, ExecPolicy::Parallel));

  std::vector<std::size_t> pairing(p.functions.size());
  for (std::size_t i = 0; i < pairing.size(); ++i) {
    pairing[i] = (i + 2) % pairing.size();
  }
  CHECK(partition_pairing_residual(p.functions, pairing, ExecPolicy::Serial) ==
        partition_pairing_residual(p.functions, pairing, ExecPolicy::Parallel));

  PartitionOfUnity q = build_partition_of_unity(4, 2048);
  CHECK(partition_rotation_residual(q.functions, 512, ExecPolicy::Serial) ==
        partition_rotation_residual(q.functions, 512, ExecPolicy::Parallel));
}

TEST_CASE("winding increment sums are bit-identical across execution policies") {
  Rng rng(31337);
  std::vector<cplx> samples;
  for (int i = 0; i < 3000; ++i) samples.push_back(rng.unit());
  auto [sum_s, step_s] = winding_increments(samples, ExecPolicy::Serial);
  auto [sum_p, step_p] = winding_increments(samples, ExecPolicy::Parallel);
  CHECK(sum_s == sum_p);
  CHECK(step_s == step_p);
}

TEST_CASE("the random source is deterministic and well-ranged") {
  Rng a(12345);
  Rng b(12345);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.raw() == b.raw());
  }
  Rng c(1);
  for (int i = 0; i < 1000; ++i) {
    double x = c.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    long long k = c.below(7);
    CHECK(k >= 0);
    CHECK(k < 7);
    CHECK(std::abs(std::abs(c.unit()) - 1.0) < 1e-15);
  }
}

TEST_CASE("per-trial streams depend on the trial index but not on draw order") {
  Rng t0 = Rng::for_trial(42, 0);
  Rng t1 = Rng::for_trial(42, 1);
  Rng t0_again = Rng::for_trial(42, 0);
  bool all_same = true;
  for (int i = 0; i < 10; ++i) {
    double x = t0.uniform();
    double y = t1.uniform();
    CHECK(x == t0_again.uniform());
    if (x != y) all_same = false;
  }
  CHECK_FALSE(all_same);
}

TEST_CASE("random unitaries are unitary and seed-reproducible") {
  Rng rng(2024);
  Eigen::MatrixXcd U = random_unitary(9, rng);
  CHECK(unitarity_residual(U) < 1e-12);

  Rng again(2024);
  Eigen::MatrixXcd V = random_unitary(9, again);
  CHECK((U - V).norm() == 0.0);
}

TEST_CASE("random elements respect their degree and term budget") {
  TorusParams p = TorusParams::rational(1, 3);
  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    TorusElement a = random_element(p, 6, 8, rng);
    CHECK(a.degree() <= 6);
    CHECK(a.terms().size() <= 8);
    CHECK_FALSE(a.terms().empty());
  }
}

TEST_CASE("parallel availability is reported consistently") {
  // The call must be stable within a process whatever the build flavor.
  CHECK(parallel_available() == parallel_available());
}
