#include "nc/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "nc/phase.hpp"

namespace nc {

bool parallel_available() {
#ifdef NC_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

namespace {

std::vector<std::complex<double>> unit_circle_table(long long n) {
  std::vector<std::complex<double>> table(n);
  for (long long j = 0; j < n; ++j) table[j] = root_of_unity(j, n);
  return table;
}

std::complex<double> dft_coeff(const std::vector<double>& samples,
                               const std::vector<std::complex<double>>& table,
                               long long k) {
  const long long n = static_cast<long long>(samples.size());
  std::complex<double> acc(0.0, 0.0);
  for (long long t = 0; t < n; ++t) {
    long long idx = (-k * t) % n;
    if (idx < 0) idx += n;
    acc += samples[t] * table[idx];
  }
  return acc / static_cast<double>(n);
}

}  // namespace

std::vector<std::complex<double>> dft_truncated(const std::vector<double>& samples,
                                                long long max_degree,
                                                ExecPolicy policy) {
  if (samples.empty()) throw std::invalid_argument("dft_truncated: empty sample list");
  if (max_degree < 0) throw std::invalid_argument("dft_truncated: negative degree");
  const long long n = static_cast<long long>(samples.size());
  const auto table = unit_circle_table(n);
  std::vector<std::complex<double>> out(2 * max_degree + 1);
  if (policy == ExecPolicy::Parallel) {
#ifdef NC_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long k = -max_degree; k <= max_degree; ++k) {
      out[k + max_degree] = dft_coeff(samples, table, k);
    }
  } else {
    for (long long k = -max_degree; k <= max_degree; ++k) {
      out[k + max_degree] = dft_coeff(samples, table, k);
    }
  }
  return out;
}

namespace {

double unit_residual_at(const std::vector<std::vector<double>>& funcs, long long t) {
  double sum = 0.0;
  for (const auto& f : funcs) sum += f[t] * f[t];
  return std::abs(sum - 1.0);
}

double rotation_residual_at(const std::vector<std::vector<double>>& funcs,
                            long long shift, long long n, long long t) {
  long long rotated = (t - shift) % n;
  if (rotated < 0) rotated += n;
  double sum = 0.0;
  for (const auto& f : funcs) sum += f[t] * f[rotated];
  return std::abs(sum);
}

}  // namespace

double partition_unit_residual(const std::vector<std::vector<double>>& funcs,
                               ExecPolicy policy) {
  if (funcs.empty()) throw std::invalid_argument("partition_unit_residual: no functions");
  const long long n = static_cast<long long>(funcs.front().size());
  double worst = 0.0;
  if (policy == ExecPolicy::Parallel) {
#ifdef NC_HAVE_OPENMP
#pragma omp parallel for reduction(max : worst) schedule(static)
#endif
    for (long long t = 0; t < n; ++t) {
      worst = std::max(worst, unit_residual_at(funcs, t));
    }
  } else {
    for (long long t = 0; t < n; ++t) {
      worst = std::max(worst, unit_residual_at(funcs, t));
    }
  }
  return worst;
}

double partition_rotation_residual(const std::vector<std::vector<double>>& funcs,
                                   long long shift, ExecPolicy policy) {
  if (funcs.empty()) {
    throw std::invalid_argument("partition_rotation_residual: no functions");
  }
  const long long n = static_cast<long long>(funcs.front().size());
  double worst = 0.0;
  if (policy == ExecPolicy::Parallel) {
#ifdef NC_HAVE_OPENMP
#pragma omp parallel for reduction(max : worst) schedule(static)
#endif
    for (long long t = 0; t < n; ++t) {
      worst = std::max(worst, rotation_residual_at(funcs, shift, n, t));
    }
  } else {
    for (long long t = 0; t < n; ++t) {
      worst = std::max(worst, rotation_residual_at(funcs, shift, n, t));
    }
  }
  return worst;
}

double partition_pairing_residual(const std::vector<std::vector<double>>& funcs,
                                  const std::vector<std::size_t>& pairing,
                                  ExecPolicy policy) {
  if (funcs.empty()) {
    throw std::invalid_argument("partition_pairing_residual: no functions");
  }
  if (pairing.size() != funcs.size()) {
    throw std::invalid_argument("partition_pairing_residual: pairing size mismatch");
  }
  for (std::size_t p : pairing) {
    if (p >= funcs.size()) {
      throw std::invalid_argument("partition_pairing_residual: pairing index out of range");
    }
  }
  const long long n = static_cast<long long>(funcs.front().size());
  auto residual_at = [&](long long t) {
    double sum = 0.0;
    for (std::size_t i = 0; i < funcs.size(); ++i) sum += funcs[i][t] * funcs[pairing[i]][t];
    return std::abs(sum);
  };
  double worst = 0.0;
  if (policy == ExecPolicy::Parallel) {
#ifdef NC_HAVE_OPENMP
#pragma omp parallel for reduction(max : worst) schedule(static)
#endif
    for (long long t = 0; t < n; ++t) {
      worst = std::max(worst, residual_at(t));
    }
  } else {
    for (long long t = 0; t < n; ++t) {
      worst = std::max(worst, residual_at(t));
    }
  }
  return worst;
}

std::pair<double, double> winding_increments(
    const std::vector<std::complex<double>>& samples, ExecPolicy policy) {
  const long long n = static_cast<long long>(samples.size());
  if (n < 2) throw std::invalid_argument("winding_increments: need at least 2 samples");
  std::vector<double> steps(n);
  if (policy == ExecPolicy::Parallel) {
#ifdef NC_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long t = 0; t < n; ++t) {
      const std::complex<double> ratio = samples[(t + 1) % n] / samples[t];
      steps[t] = std::atan2(ratio.imag(), ratio.real());
    }
  } else {
    for (long long t = 0; t < n; ++t) {
      const std::complex<double> ratio = samples[(t + 1) % n] / samples[t];
      steps[t] = std::atan2(ratio.imag(), ratio.real());
    }
  }
  // Index-order accumulation keeps the sum bit-identical across policies.
  double sum = 0.0;
  double max_step = 0.0;
  for (long long t = 0; t < n; ++t) {
    sum += steps[t];
    max_step = std::max(max_step, std::abs(steps[t]));
  }
  return {sum, max_step};
}

}  // namespace nc
