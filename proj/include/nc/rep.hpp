#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nc/group.hpp"
#include "nc/json_io.hpp"
#include "nc/torus.hpp"

namespace nc {

/// Largest singular value.
double operator_norm(const Eigen::MatrixXcd& M);

/// Operator norm of M^* M - I.
double unitarity_residual(const Eigen::MatrixXcd& M);

/// Finite-dimensional *-representation given by unitary generator images.
/// `gen_images` carries at least "u" (circle algebras) or "u" and "v" (torus
/// algebras); params is the twist of the represented relation.
struct MatrixRep {
  long long dim = 0;
  TorusParams params{};
  std::map<std::string, Eigen::MatrixXcd> gen_images;
  double relation_residual = 0.0;
};

/// Validates unitarity of every generator image (within 1e-10) and computes
/// the commutation residual ||rho(u)rho(v) - e^{2 pi i theta} rho(v)rho(u)||
/// when both torus generators are present.
MatrixRep make_rep(const TorusParams& params,
                   std::map<std::string, Eigen::MatrixXcd> gen_images);

/// Standard q-dimensional model of the rational torus algebra with
/// theta = p/q: u as the clock diag(omega^j), omega = e^{2 pi i p / q}, and
/// v as the cyclic shift e_j -> e_{j+1}.
MatrixRep clock_shift_rep(long long p, long long q);

/// Substitutes generator images into a normal-ordered element; negative powers
/// use adjoints.  Requires the twist of the element to match the rep modulo 1
/// within 1e-12, and a "v" image whenever a term has a nonzero v exponent.
Eigen::MatrixXcd evaluate(const MatrixRep& rep, const TorusElement& a);

/// rho_g = rho after the deck twist: the "u" image scaled by e^{2 pi i g.a/m}
/// and the "v" image by e^{2 pi i g.b/n}.
MatrixRep twisted_rep(const CoveringSpec& spec, GroupElement g, const MatrixRep& rep);

enum class IntertwinerStatus { UnitaryEquivalent, Inequivalent, Inconclusive };

const char* to_string(IntertwinerStatus status);

struct IntertwinerResult {
  IntertwinerStatus status = IntertwinerStatus::Inconclusive;
  std::optional<Eigen::MatrixXcd> witness;
  /// max over common generators x of ||W rho1(x) - rho2(x) W|| for the
  /// returned witness (best candidate seen when inconclusive, 0 when the
  /// solution space is trivial).
  double residual = 0.0;
  /// ||W^* W - I|| for the same matrix.
  double unitarity = 0.0;
  /// Dimension of the space of all (not necessarily unitary) solutions.
  long long null_dim = 0;
};

/// Solves W rho1(x) = rho2(x) W over all common generators x by a singular
/// value decomposition of the stacked Sylvester operators.  Returns
/// UnitaryEquivalent with a phase-canonical unitary witness when one exists in
/// the solution space, Inequivalent when the solution space is trivial, and
/// Inconclusive (with diagnostics) otherwise.
IntertwinerResult solve_intertwiner(const MatrixRep& rep1, const MatrixRep& rep2,
                                    double tol = 1e-8, std::uint64_t seed = 12345);

struct FreeActionEntry {
  GroupElement g;
  IntertwinerResult result;
  /// True when the twisted copy is unitarily equivalent to the original —
  /// the deck element fixes this representation class.
  bool fixed_point = false;
};

/// Runs the intertwiner probe against every nontrivial deck twist, in group
/// index order.
std::vector<FreeActionEntry> free_action_probe(const CoveringSpec& spec,
                                               const MatrixRep& rep);

/// Direct sum of all deck twists of one representation, together with the
/// block-permutation deck action on the summed space.
struct SumRep {
  CoveringSpec spec;
  long long base_dim = 0;
  /// Block-diagonal representation: block i carries the g_i-twist.
  MatrixRep rep;
  /// Permutation action by group index; satisfies perms[g] perms[h] =
  /// perms[g+h] and perms[g] rho(a) = rho(g.a) perms[g].
  std::vector<Eigen::MatrixXcd> perms;
};

SumRep equivariant_direct_sum(const MatrixRep& rep, const CoveringSpec& spec);

/// max over deck elements g of || P_g rho(a) - rho(g.a) P_g ||.
double sum_compatibility_residual(const SumRep& sum, const TorusElement& a);

/// Orthonormal basis (columns) of the joint fixed space of all permutation
/// matrices.
Eigen::MatrixXcd invariant_subspace_basis(const SumRep& sum);

struct InducedOperator {
  Eigen::MatrixXcd matrix;
  /// || (I - Q Q^*) rho(x) Q || — how far rho(x) moves the fixed space off
  /// itself; small only for invariant x.
  double closure_residual = 0.0;
};

InducedOperator induced_operator(const SumRep& sum, const Eigen::MatrixXcd& basis,
                                 const TorusElement& x);

/// Generator-level witness for the twisted-tensor equivalence
/// A_{1/q} (x) M_N  ~  A_{1/q + k/N} (x) M_N  (N = m n): builds the N x N
/// clock/shift pair U, V with U V = e^{2 pi i k/N} V U and checks that
/// A = rho''(u) (x) U^*, B = rho''(v) (x) V satisfy A B = e^{2 pi i / q} B A.
/// The pairing uses U^* because V twists U^* by the conjugate phase, which is
/// exactly what cancels the extra k/N in the second factor's twist.
struct MoritaReport {
  long long m = 1;
  long long n = 1;
  long long k = 0;
  long long q = 1;
  /// || U V - e^{2 pi i k / N} V U ||
  double twist_relation_residual = 0.0;
  /// || A B - e^{2 pi i / q} B A || for the tensor images above.
  double hom_residual = 0.0;
  /// Worst commutation residual of the two clock/shift factor reps.
  double base_residual = 0.0;
};

MoritaReport morita_twist_witness(long long m, long long n, long long k, long long q);

Json matrix_to_json(const Eigen::MatrixXcd& M);
Eigen::MatrixXcd matrix_from_json(const Json& j);

}  // namespace nc
