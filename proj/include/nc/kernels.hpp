#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace nc {

/// Serial runs the plain reference loop; Parallel runs the OpenMP kernel.
/// Every kernel is written so both modes produce bit-identical output: work is
/// split into independent per-index writes and reductions either commute
/// exactly (max) or are replayed serially in index order (sums).
enum class ExecPolicy { Serial, Parallel };

bool parallel_available();

/// Truncated Fourier coefficients of a real grid function:
/// out[k + max_degree] = (1/N) sum_t samples[t] e^{-2 pi i k t / N}
/// for k = -max_degree .. max_degree, with phases drawn from one canonical
/// table of N-th roots of unity.
std::vector<std::complex<double>> dft_truncated(const std::vector<double>& samples,
                                                long long max_degree,
                                                ExecPolicy policy = ExecPolicy::Serial);

/// max_t |sum_i funcs[i][t]^2 - 1|
double partition_unit_residual(const std::vector<std::vector<double>>& funcs,
                               ExecPolicy policy = ExecPolicy::Serial);

/// max_t |sum_i funcs[i][t] * funcs[i][(t - shift) mod N]|
double partition_rotation_residual(const std::vector<std::vector<double>>& funcs,
                                   long long shift,
                                   ExecPolicy policy = ExecPolicy::Serial);

/// max_t |sum_i funcs[i][t] * funcs[pairing[i]][t]| — rotation residual for
/// families whose rotated members are other members of the same family, which
/// works on any grid (no divisibility requirement).
double partition_pairing_residual(const std::vector<std::vector<double>>& funcs,
                                  const std::vector<std::size_t>& pairing,
                                  ExecPolicy policy = ExecPolicy::Serial);

/// Principal-branch angle increments of a cyclic unit-modulus sample list:
/// returns (sum of increments accumulated in index order, max |increment|).
std::pair<double, double> winding_increments(
    const std::vector<std::complex<double>>& samples,
    ExecPolicy policy = ExecPolicy::Serial);

}  // namespace nc
