#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nc/kernels.hpp"
#include "nc/rep.hpp"

namespace nc {

/// n-th root on the unit circle with the discontinuity placed at cut_angle:
/// e^{i psi} with psi in [cut_angle, cut_angle + 2 pi) maps to e^{i psi / n}.
struct RootBranch {
  long long n = 1;
  double cut_angle = 0.0;  // normalized to [0, 2 pi)
  /// Inputs with an eigenvalue closer than this (circular distance) to the
  /// cut are rejected.
  double cut_tolerance = kTwoPi * 1e-4;
};

RootBranch make_root_branch(long long n, double cut_angle,
                            double cut_tolerance = kTwoPi * 1e-4);

/// Raised when a spectral point sits inside the cut exclusion zone.
class branch_cut_error : public std::runtime_error {
 public:
  branch_cut_error(double angle, const std::string& what)
      : std::runtime_error(what), eigenvalue_angle_(angle) {}
  double eigenvalue_angle() const { return eigenvalue_angle_; }

 private:
  double eigenvalue_angle_;
};

/// Branch root of one unit-modulus scalar; throws branch_cut_error inside the
/// exclusion zone.
std::complex<double> branch_root_scalar(std::complex<double> z, const RootBranch& branch);

/// Eigenvalue angles of a unitary matrix, in [0, 2 pi), sorted ascending.
std::vector<double> unitary_eigen_angles(const Eigen::MatrixXcd& U);

/// Largest gap between circularly adjacent points of a sorted angle list
/// (2 pi for a single point).
double max_circular_gap(const std::vector<double>& sorted_angles);

/// max_circular_gap of the eigenvalue angles.
double spectrum_gap(const Eigen::MatrixXcd& U);

/// Midpoint of the largest spectral gap — the safest cut placement for U.
double place_cut_in_largest_gap(const Eigen::MatrixXcd& U);

/// phi(U) via the Schur eigenbasis with the branch applied to each
/// eigenvalue; phi(U)^n = U within 1e-10 for accepted inputs.
Eigen::MatrixXcd root_branch_apply(const Eigen::MatrixXcd& U, const RootBranch& branch);

/// Orthonormal family in the normalized trace inner product
/// <A, B> = tr(A^* B) / dim.
struct SpanBasis {
  long long dim = 0;
  std::vector<Eigen::MatrixXcd> vectors;
};

double trace_norm(const Eigen::MatrixXcd& M);

/// Modified Gram-Schmidt with a re-orthogonalization pass; generators whose
/// remainder falls below drop_tol are dependent and skipped.  Throws
/// std::runtime_error when the basis would exceed dim_cap.
SpanBasis orthonormalize(const std::vector<Eigen::MatrixXcd>& generators,
                         double drop_tol = 1e-10, long long dim_cap = 4096);

/// Trace-norm distance of M from the span: ||M - proj(M)||; 0 within 1e-10
/// means member.
double span_membership(const Eigen::MatrixXcd& M, const SpanBasis& basis);

struct MembershipEntry {
  long long power = 0;
  double distance = 0.0;
};

/// Matrix model of the algebra obtained by adjoining v to a represented base
/// algebra: the span of words v^i w and w v^i over base words w of length at
/// most word_length and 0 <= i < n.
struct ExtensionAlgebra {
  MatrixRep base_rep;
  Eigen::MatrixXcd v;
  long long n = 1;
  long long word_length = 4;
  SpanBasis base_basis;
  SpanBasis ext_basis;
  /// Distances of v^1 .. v^n to the base span; the n-th entry must be ~0.
  std::vector<MembershipEntry> membership;
};

ExtensionAlgebra build_extension(const MatrixRep& base_rep, const Eigen::MatrixXcd& v,
                                 long long n, long long word_length = 4,
                                 long long dim_cap = 4096);

/// Batch root verification over random unitaries with the cut placed in each
/// spectrum's largest gap.  Deterministic for a fixed seed under either
/// execution policy.
struct RootCheckReport {
  long long trials = 0;
  long long max_dim = 0;
  long long root_order = 1;
  double max_root_residual = 0.0;   // worst ||phi(U)^n - U||
  double max_unitarity = 0.0;       // worst ||phi(U)^* phi(U) - I||
  long long rejected = 0;           // inputs refused for cut proximity
};

RootCheckReport root_branch_batch_check(long long trials, long long max_dim,
                                        long long root_order, std::uint64_t seed,
                                        ExecPolicy policy = ExecPolicy::Serial);

/// The two-dimensional counterexample: the branch flip v -> -v is implemented
/// by a unitary conjugation, so the deck action fails to be strictly outer and
/// the extension is not a covering projection.
struct Su2Report {
  MatrixRep rep;                 // single generator image diag(1, -1)
  MatrixRep twisted;             // its flip diag(-1, 1)
  double twist_residual = 0.0;   // || rho_g(v) + rho(v) ||
  IntertwinerResult solver;      // solver outcome between the two reps
  Eigen::MatrixXcd witness;      // canonical intertwiner [[0,-1],[1,0]]
  double witness_residual = 0.0;
  double witness_unitarity = 0.0;
  long long intertwiner_space_dim = 0;
  long long base_dim = 0;        // span dimension of the base algebra
  long long ext_dim = 0;         // span dimension after adjoining v
  double membership_v = 0.0;     // distance of v to the base span
  double membership_v2 = 0.0;    // distance of v^2 to the base span
  bool strictly_outer = true;
  std::string verdict;
};

Su2Report su2_counterexample();

}  // namespace nc
