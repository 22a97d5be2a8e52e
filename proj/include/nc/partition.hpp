#pragma once

#include <vector>

#include "nc/kernels.hpp"
#include "nc/torus.hpp"

namespace nc {

/// 2 * n_sheets real continuous functions sampled on the uniform grid of the
/// covering circle, satisfying sum x_i^2 = 1 and sum x_i (g . x_i) = 0
/// pointwise for every nontrivial deck rotation g by 2 pi / n_sheets.
struct PartitionOfUnity {
  long long n_sheets = 1;
  long long grid_size = 0;
  std::vector<std::vector<double>> functions;
};

/// Builds the partition from one band-limited window pair and its n_sheets
/// translates by 2 pi / n_sheets, evaluated analytically at each grid point —
/// so the identities hold on any grid fine enough to resolve the windows
/// (grid_size > 2 * n_sheets), with no divisibility requirement.  A deck
/// rotation maps each translate onto another member of the family exactly.
PartitionOfUnity build_partition_of_unity(long long n_sheets, long long grid_size);

struct PartitionResiduals {
  /// max_t |sum_i x_i(t)^2 - 1|
  double unit = 0.0;
  /// max over nontrivial rotations g of max_t |sum_i x_i(t) (g . x_i)(t)|
  double rotation = 0.0;
};

PartitionResiduals partition_residuals(const PartitionOfUnity& p,
                                       ExecPolicy policy = ExecPolicy::Serial);

/// Finite system a_k, b_k realizing sum_k a_k b_k = 1 with the twisted
/// orthogonality sum_k a_k (g . b_k) = 0 for nontrivial deck elements.
struct ABSystem {
  CoveringSpec spec;
  std::vector<TorusElement> a_list;
  std::vector<TorusElement> b_list;
};

/// Pairs the u'-circle partition x (m sheets) with the v'-circle partition y
/// (n sheets): a_k = y_j x_i and b_k = x_i y_j over all index pairs, each
/// factor converted to a truncated Fourier Laurent polynomial in u' resp. v'.
ABSystem assemble_ab(const PartitionOfUnity& x, const PartitionOfUnity& y,
                     const CoveringSpec& spec, long long fourier_degree = 64,
                     ExecPolicy policy = ExecPolicy::Serial);

struct ABResiduals {
  /// coefficient distance of sum_k a_k b_k from 1
  double unit = 0.0;
  /// max over nontrivial g of the coefficient norm of sum_k a_k (g . b_k)
  double rotation = 0.0;
};

ABResiduals ab_residuals(const ABSystem& system);

}  // namespace nc
