#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "nc/rng.hpp"
#include "nc/spectral.hpp"

using namespace nc;
using cplx = std::complex<double>;

namespace {

Eigen::MatrixXcd diag2(cplx a, cplx b) {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(2, 2);
  M(0, 0) = a;
  M(1, 1) = b;
  return M;
}

}  // namespace

TEST_CASE("branch roots of scalars live on the requested sheet") {
  // The sheet is [cut, cut + 2 pi): every root angle must fall inside
  // [cut / n, (cut + 2 pi) / n), and the n-th power must restore the input.
  Rng rng(199);
  for (int t = 0; t < 50; ++t) {
    RootBranch branch = make_root_branch(2 + rng.below(4), rng.uniform(0.0, kTwoPi));
    cplx z = rng.unit();
    cplx root;
    try {
      root = branch_root_scalar(z, branch);
    } catch (const branch_cut_error&) {
      continue;  // z happened to fall inside the exclusion zone
    }
    double angle = std::atan2(root.imag(), root.real());
    if (angle < 0.0) angle += kTwoPi;
    double lo = branch.cut_angle / static_cast<double>(branch.n);
    double hi = (branch.cut_angle + kTwoPi) / static_cast<double>(branch.n);
    CHECK(angle >= lo - 1e-12);
    CHECK(angle < hi + 1e-12);
    cplx power(1.0, 0.0);
    for (long long i = 0; i < branch.n; ++i) power *= root;
    CHECK(std::abs(power - z) < 1e-12);
  }

  // With the cut at pi the sheet is [pi, 3 pi); the angle of 1 lifts to 2 pi,
  // so its square root lands on -1 (still a square root of 1).
  RootBranch shifted = make_root_branch(2, 3.14159265358979323846);
  CHECK(std::abs(branch_root_scalar(cplx(1.0, 0.0), shifted) - cplx(-1.0, 0.0)) <
        1e-12);
}

TEST_CASE("a first root is the identity map") {
  Rng rng(201);
  RootBranch branch = make_root_branch(1, 2.0);
  for (int t = 0; t < 20; ++t) {
    cplx z = rng.unit();
    try {
      CHECK(std::abs(branch_root_scalar(z, branch) - z) < 1e-12);
    } catch (const branch_cut_error&) {
      continue;
    }
  }
}

TEST_CASE("cut angles are normalized into one turn") {
  RootBranch b = make_root_branch(2, -1.5707963267948966);  // -pi/2
  CHECK(b.cut_angle == doctest::Approx(3.0 * 1.5707963267948966).epsilon(1e-12));
  RootBranch c = make_root_branch(3, kTwoPi + 0.25);
  CHECK(c.cut_angle == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("the identity matrix has an exact scalar branch square root") {
  // On the sheet [pi, 3 pi) the root of 1 is -1, so the matrix root of the
  // identity is -I; it still squares back to the identity.
  RootBranch branch = make_root_branch(2, 3.14159265358979323846);
  Eigen::MatrixXcd I4 = Eigen::MatrixXcd::Identity(4, 4);
  Eigen::MatrixXcd R = root_branch_apply(I4, branch);
  CHECK(operator_norm(R + I4) < 1e-12);
  CHECK(operator_norm(R * R - I4) < 1e-12);
}

TEST_CASE("the flip matrix acquires an exact branch square root") {
  Eigen::MatrixXcd U = diag2(1.0, -1.0);
  RootBranch branch = make_root_branch(2, -1.5707963267948966);  // cut at 3 pi / 2
  Eigen::MatrixXcd V = root_branch_apply(U, branch);
  CHECK(operator_norm(V * V - U) < 1e-12);
  CHECK(unitarity_residual(V) < 1e-12);
}

TEST_CASE("random unitaries admit branch roots when the cut sits in a spectral gap") {
  Rng rng(211);
  for (int t = 0; t < 10; ++t) {
    long long dim = 2 + rng.below(7);  // up to 8
    Eigen::MatrixXcd U = random_unitary(dim, rng);
    RootBranch branch = make_root_branch(3, place_cut_in_largest_gap(U));
    Eigen::MatrixXcd V = root_branch_apply(U, branch);
    CHECK(operator_norm(V * V * V - U) < 1e-10);
    CHECK(unitarity_residual(V) < 1e-10);
  }
}

TEST_CASE("eigenvalues inside the cut exclusion zone are rejected with the angle") {
  RootBranch branch = make_root_branch(2, 0.0);
  double eps = branch.cut_tolerance * 0.5;
  Eigen::MatrixXcd U = diag2(std::polar(1.0, eps), cplx(0.0, 1.0));
  try {
    root_branch_apply(U, branch);
    FAIL("expected branch_cut_error");
  } catch (const branch_cut_error& e) {
    CHECK(std::abs(e.eigenvalue_angle() - eps) < 1e-9);
  }
}

TEST_CASE("branch roots commute with unitary conjugation") {
  Rng rng(223);
  for (int t = 0; t < 8; ++t) {
    Eigen::MatrixXcd U = random_unitary(6, rng);
    Eigen::MatrixXcd W = random_unitary(6, rng);
    RootBranch branch = make_root_branch(4, place_cut_in_largest_gap(U));
    Eigen::MatrixXcd lhs = root_branch_apply(W * U * W.adjoint(), branch);
    Eigen::MatrixXcd rhs = W * root_branch_apply(U, branch) * W.adjoint();
    CHECK(operator_norm(lhs - rhs) < 1e-9);
  }
}

TEST_CASE("changing the cut multiplies eigenvalue roots by roots of unity") {
  // On a diagonal unitary both branches act entrywise, so the two roots can
  // only differ by an n-th root of unity in each diagonal slot.
  const long long n = 3;
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(4, 4);
  std::vector<double> angles = {0.3, 1.7, 2.9, 5.1};
  for (int i = 0; i < 4; ++i) U(i, i) = std::polar(1.0, angles[i]);
  Eigen::MatrixXcd r1 = root_branch_apply(U, make_root_branch(n, 0.1));
  Eigen::MatrixXcd r2 = root_branch_apply(U, make_root_branch(n, 4.0));
  for (int i = 0; i < 4; ++i) {
    cplx ratio = r2(i, i) / r1(i, i);
    double best = 1e9;
    for (long long j = 0; j < n; ++j) {
      best = std::min(best, std::abs(ratio - root_of_unity(j, n)));
    }
    CHECK(best < 1e-10);
  }
}

TEST_CASE("batched root checks stay within tolerance and reject nothing") {
  RootCheckReport r = root_branch_batch_check(50, 16, 3, 20240817);
  CHECK(r.trials == 50);
  CHECK(r.max_root_residual < 1e-10);
  CHECK(r.max_unitarity < 1e-10);
  CHECK(r.rejected == 0);
}

TEST_CASE("batched root checks are bit-identical under both execution policies") {
  RootCheckReport serial = root_branch_batch_check(20, 12, 2, 7, ExecPolicy::Serial);
  RootCheckReport parallel = root_branch_batch_check(20, 12, 2, 7, ExecPolicy::Parallel);
  CHECK(serial.max_root_residual == parallel.max_root_residual);
  CHECK(serial.max_unitarity == parallel.max_unitarity);
  CHECK(serial.rejected == parallel.rejected);
}

TEST_CASE("spectral gaps measure the largest empty arc") {
  CHECK(spectrum_gap(Eigen::MatrixXcd::Identity(3, 3)) == doctest::Approx(kTwoPi));
  const long long q = 8;
  Eigen::MatrixXcd roots = Eigen::MatrixXcd::Zero(q, q);
  for (long long j = 0; j < q; ++j) roots(j, j) = root_of_unity(j, q);
  CHECK(spectrum_gap(roots) == doctest::Approx(kTwoPi / q).epsilon(1e-10));
}

TEST_CASE("the automatic cut lands midway inside the widest gap") {
  // diag(1, -1) has two gaps of width pi; ties keep the wrap-around gap from
  // pi back to 0, so the cut sits at its midpoint 3 pi / 2.
  CHECK(place_cut_in_largest_gap(diag2(1.0, -1.0)) ==
        doctest::Approx(4.71238898038468986).epsilon(1e-12));
  // A lone spectral point puts the cut diametrically opposite.
  Eigen::MatrixXcd one = Eigen::MatrixXcd::Identity(1, 1);
  CHECK(place_cut_in_largest_gap(one) == doctest::Approx(3.14159265358979323846));
}

TEST_CASE("orthonormalization drops dependent generators and enforces the cap") {
  Eigen::MatrixXcd I2 = Eigen::MatrixXcd::Identity(2, 2);
  Eigen::MatrixXcd X = diag2(1.0, -1.0);
  std::vector<Eigen::MatrixXcd> gens = {I2, X, I2 + X, 2.0 * X};
  SpanBasis basis = orthonormalize(gens);
  CHECK(basis.vectors.size() == 2);
  for (const auto& b1 : basis.vectors) {
    CHECK(trace_norm(b1) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(orthonormalize(gens, 1e-10, 1), std::runtime_error);
}

TEST_CASE("span membership separates members from orthogonal directions") {
  Eigen::MatrixXcd I2 = Eigen::MatrixXcd::Identity(2, 2);
  Eigen::MatrixXcd X = diag2(1.0, -1.0);
  SpanBasis basis = orthonormalize({I2, X});
  CHECK(span_membership(I2, basis) < 1e-12);
  CHECK(span_membership(diag2(3.0, 5.0), basis) < 1e-12);  // diagonal span
  Eigen::MatrixXcd off = Eigen::MatrixXcd::Zero(2, 2);
  off(0, 1) = 1.0;
  // ||off|| in trace norm is 1/sqrt(2); it is orthogonal to all diagonals.
  CHECK(span_membership(off, basis) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("adjoining an element already inside the algebra changes nothing") {
  // Clock alone on five points: words u^a with |a| <= 3 already span every
  // diagonal character, so adjoining u^2 cannot add a direction.
  const long long d = 5;
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(d, d);
  for (long long j = 0; j < d; ++j) U(j, j) = root_of_unity(j, d);
  MatrixRep rep = make_rep(TorusParams::rational(0, 1), {{"u", U}});
  ExtensionAlgebra ext = build_extension(rep, U * U, 2, 3);
  CHECK(ext.base_basis.vectors.size() == 5);
  CHECK(ext.ext_basis.vectors.size() == 5);
  for (const auto& entry : ext.membership) {
    CHECK(entry.distance < 1e-10);
  }
}

TEST_CASE("adjoining the halved-frequency symbol doubles the diagonal algebra") {
  // 16-point circle grid; the base symbol is the square of the fine symbol, so
  // base words only reach even frequencies and the fine symbol is orthogonal
  // to all of them.
  const long long points = 16;
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(points, points);
  for (long long t = 0; t < points; ++t) v(t, t) = root_of_unity(t, points);
  Eigen::MatrixXcd U = v * v;
  MatrixRep base = make_rep(TorusParams::rational(0, 1), {{"u", U}});

  ExtensionAlgebra ext = build_extension(base, v, 2, 3);
  CHECK(ext.base_basis.dim == points);
  CHECK(ext.base_basis.vectors.size() == 7);   // U^{-3} .. U^3
  CHECK(ext.ext_basis.vectors.size() == 14);   // plus v · U^{-3} .. v · U^3
  REQUIRE(ext.membership.size() == 2);
  CHECK(ext.membership[0].distance ==
        doctest::Approx(1.0).epsilon(1e-10));    // v is orthogonal to the base
  CHECK(ext.membership[1].distance < 1e-10);     // v^2 = U is not new
}

TEST_CASE("a branch root of the base symbol stays inside its function algebra") {
  // The root is a spectral function of U, so it lies in the span of all U
  // powers; only the frequency truncation can keep it slightly outside.  The
  // fine grid symbol, by contrast, separates points U cannot and stays at
  // distance one.  This is exactly why the deck phase v w^* matters: it ties
  // the function-algebra root to the genuinely new generator.
  const long long points = 16;
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(points, points);
  for (long long t = 0; t < points; ++t) v(t, t) = root_of_unity(t, points);
  Eigen::MatrixXcd U = v * v;
  RootBranch branch = make_root_branch(2, place_cut_in_largest_gap(U));
  Eigen::MatrixXcd w = root_branch_apply(U, branch);
  CHECK(operator_norm(w * w - U) < 1e-10);

  // U has order 8, so |a| <= 4 reaches every U power.
  std::vector<Eigen::MatrixXcd> gens;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(points, points);
  for (long long a = 0; a <= 4; ++a) {
    gens.push_back(p);
    if (a > 0) gens.push_back(p.adjoint());
    p = p * U;
  }
  SpanBasis full_u_algebra = orthonormalize(gens);
  CHECK(span_membership(w, full_u_algebra) < 1e-10);
  CHECK(span_membership(v, full_u_algebra) ==
        doctest::Approx(1.0).epsilon(1e-10));

  // The deck phase x = v w^* squares to the identity exactly.
  Eigen::MatrixXcd x = v * w.adjoint();
  CHECK(operator_norm(x * x - Eigen::MatrixXcd::Identity(points, points)) < 1e-12);
}

TEST_CASE("extension dimension is monotone in word length and stabilizes") {
  const long long points = 18;
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(points, points);
  for (long long t = 0; t < points; ++t) v(t, t) = root_of_unity(t, points);
  Eigen::MatrixXcd U = v * v * v;
  MatrixRep base = make_rep(TorusParams::rational(0, 1), {{"u", U}});

  std::vector<std::size_t> dims;
  for (long long L : {1LL, 2LL, 3LL, 4LL}) {
    dims.push_back(build_extension(base, v, 3, L).ext_basis.vectors.size());
  }
  // U has order 6 on this grid: frequencies 3a mod 18 fill up at |a| = 3 and
  // the extension tops out at the full diagonal algebra.
  CHECK(dims == std::vector<std::size_t>{9, 15, 18, 18});
  for (std::size_t i = 1; i < dims.size(); ++i) CHECK(dims[i] >= dims[i - 1]);
}

TEST_CASE("the two-dimensional counterexample is fully reproduced") {
  Su2Report report = su2_counterexample();

  // The deck flip negates the adjoined generator.
  CHECK(report.twist_residual < 1e-12);

  // The solver finds the conjugating unitary, so the flip is inner.
  CHECK(report.solver.status == IntertwinerStatus::UnitaryEquivalent);
  CHECK(report.witness_residual < 1e-10);
  CHECK(report.witness_unitarity < 1e-10);
  CHECK(report.intertwiner_space_dim == 2);

  // The canonical witness is the ninety-degree rotation.
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(2, 2);
  J(0, 1) = -1.0;
  J(1, 0) = 1.0;
  CHECK(operator_norm(report.witness - J) < 1e-12);

  // The adjoined generator sits outside the scalars, but its square falls in.
  CHECK(report.base_dim == 1);
  CHECK(report.ext_dim == 2);
  CHECK(report.membership_v > 0.5);
  CHECK(report.membership_v2 < 1e-10);

  CHECK_FALSE(report.strictly_outer);
  CHECK(report.verdict == "not strictly outer");
}
