#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "nc/rep.hpp"
#include "nc/rng.hpp"

using namespace nc;
using cplx = std::complex<double>;

namespace {

/// Greedy eigenvalue-multiset comparison with tolerance; adequate for the
/// small dimensions used here.
bool same_spectrum(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B,
                   double tol = 1e-8) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ea(A, false);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eb(B, false);
  std::vector<cplx> left(ea.eigenvalues().data(),
                         ea.eigenvalues().data() + ea.eigenvalues().size());
  std::vector<cplx> right(eb.eigenvalues().data(),
                          eb.eigenvalues().data() + eb.eigenvalues().size());
  if (left.size() != right.size()) return false;
  std::vector<bool> used(right.size(), false);
  for (const cplx& z : left) {
    bool matched = false;
    for (std::size_t i = 0; i < right.size(); ++i) {
      if (!used[i] && std::abs(z - right[i]) <= tol) {
        used[i] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

/// Spectral comparison of both generators and their product — the brute-force
/// equivalence oracle for small clock/shift models.
bool spectra_agree(const MatrixRep& r1, const MatrixRep& r2) {
  const TorusParams& p = r1.params;
  TorusElement u = TorusElement::u(p);
  TorusElement v = TorusElement::v(p);
  TorusElement uv = mul(u, v);
  for (const TorusElement* x : {&u, &v, &uv}) {
    if (!same_spectrum(evaluate(r1, *x), evaluate(r2, *x))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("operator norm and unitarity residual behave on simple matrices") {
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(2, 2);
  D(0, 0) = 3.0;
  D(1, 1) = 1.0;
  CHECK(operator_norm(D) == doctest::Approx(3.0).epsilon(1e-12));
  Eigen::MatrixXcd twice = 2.0 * Eigen::MatrixXcd::Identity(2, 2);
  CHECK(unitarity_residual(twice) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(unitarity_residual(Eigen::MatrixXcd::Identity(4, 4)) == 0.0);
}

TEST_CASE("representation construction validates its generator images") {
  Eigen::MatrixXcd not_unitary = 2.0 * Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(make_rep(TorusParams::rational(0, 1), {{"u", not_unitary}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_rep(TorusParams::rational(0, 1), {}), std::invalid_argument);
  Eigen::MatrixXcd id2 = Eigen::MatrixXcd::Identity(2, 2);
  Eigen::MatrixXcd id3 = Eigen::MatrixXcd::Identity(3, 3);
  CHECK_THROWS_AS(make_rep(TorusParams::rational(0, 1), {{"u", id2}, {"v", id3}}),
                  std::invalid_argument);
}

TEST_CASE("the one-dimensional clock/shift model is the trivial representation") {
  MatrixRep rep = clock_shift_rep(0, 1);
  CHECK(rep.dim == 1);
  CHECK(rep.gen_images.at("u")(0, 0) == cplx(1.0, 0.0));
  CHECK(rep.gen_images.at("v")(0, 0) == cplx(1.0, 0.0));
  CHECK(rep.relation_residual == 0.0);
}

TEST_CASE("clock and shift anticommute at twist one-half") {
  MatrixRep rep = clock_shift_rep(1, 2);
  const Eigen::MatrixXcd& U = rep.gen_images.at("u");
  const Eigen::MatrixXcd& V = rep.gen_images.at("v");
  CHECK(operator_norm(U * V + V * U) < 1e-12);
  CHECK(rep.relation_residual < 1e-12);
}

TEST_CASE("clock/shift models satisfy their commutation relation across sizes") {
  for (auto [p, q] : std::vector<std::pair<long long, long long>>{
           {1, 3}, {1, 5}, {2, 5}, {3, 8}, {1, 16}}) {
    CAPTURE(q);
    MatrixRep rep = clock_shift_rep(p, q);
    CHECK(rep.dim == q);
    CHECK(rep.relation_residual < 1e-12);
    const Eigen::MatrixXcd& U = rep.gen_images.at("u");
    const Eigen::MatrixXcd& V = rep.gen_images.at("v");
    cplx w = root_of_unity(p, q);
    CHECK(operator_norm(U * V - w * V * U) < 1e-12);
    CHECK(unitarity_residual(U) < 1e-12);
    CHECK(unitarity_residual(V) < 1e-12);
  }
}

TEST_CASE("evaluation maps the unit to the identity and respects products") {
  MatrixRep rep = clock_shift_rep(1, 5);
  TorusParams p = TorusParams::rational(1, 5);
  CHECK((evaluate(rep, TorusElement::one(p)) -
         Eigen::MatrixXcd::Identity(5, 5)).norm() == 0.0);

  Rng rng(157);
  for (int t = 0; t < 20; ++t) {
    TorusElement a = random_element(p, 4, 8, rng);
    TorusElement b = random_element(p, 4, 8, rng);
    Eigen::MatrixXcd lhs = evaluate(rep, mul(a, b));
    Eigen::MatrixXcd rhs = evaluate(rep, a) * evaluate(rep, b);
    CHECK(operator_norm(lhs - rhs) < 1e-10);
    CHECK(operator_norm(evaluate(rep, adjoint(a)) - evaluate(rep, a).adjoint()) < 1e-10);
  }
}

TEST_CASE("negative powers evaluate through adjoints of the generator images") {
  MatrixRep rep = clock_shift_rep(1, 4);
  TorusParams p = TorusParams::rational(1, 4);
  TorusElement ustar = adjoint(TorusElement::u(p));
  CHECK(operator_norm(evaluate(rep, ustar) -
                      rep.gen_images.at("u").adjoint()) < 1e-14);
}

TEST_CASE("the normalized matrix trace reproduces the canonical trace inside the window") {
  for (auto [p, q] : std::vector<std::pair<long long, long long>>{{1, 3}, {2, 5}, {1, 8}}) {
    MatrixRep rep = clock_shift_rep(p, q);
    TorusParams params = TorusParams::rational(p, q);
    for (long long r = -(q - 1); r < q; ++r) {
      for (long long s = -(q - 1); s < q; ++s) {
        TorusElement mono = TorusElement::monomial(params, r, s);
        cplx mat_trace = evaluate(rep, mono).trace() / static_cast<double>(q);
        CHECK(std::abs(mat_trace - trace_tau0(mono)) < 1e-12);
      }
    }
  }
}

TEST_CASE("evaluation rejects a twist mismatch and missing generator images") {
  MatrixRep rep = clock_shift_rep(1, 3);
  TorusElement other = TorusElement::u(TorusParams::rational(1, 5));
  CHECK_THROWS_AS(evaluate(rep, other), std::invalid_argument);

  MatrixRep circle = make_rep(TorusParams::rational(0, 1),
                              {{"u", Eigen::MatrixXcd::Identity(2, 2)}});
  TorusElement needs_v = TorusElement::v(TorusParams::rational(0, 1));
  CHECK_THROWS_AS(evaluate(circle, needs_v), std::invalid_argument);
}

TEST_CASE("deck twists scale generator images by sheet phases and keep the relation") {
  CoveringSpec spec(3, 2, 5, TorusParams::rational(1, 7));  // cover twist 6/7
  MatrixRep rep = clock_shift_rep(6, 7);
  MatrixRep same = twisted_rep(spec, group_element(spec, 0, 0), rep);
  CHECK(operator_norm(same.gen_images.at("u") - rep.gen_images.at("u")) == 0.0);
  CHECK(operator_norm(same.gen_images.at("v") - rep.gen_images.at("v")) == 0.0);

  MatrixRep tw = twisted_rep(spec, group_element(spec, 1, 0), rep);
  CHECK(operator_norm(tw.gen_images.at("u") -
                      root_of_unity(1, 3) * rep.gen_images.at("u")) < 1e-14);
  CHECK(operator_norm(tw.gen_images.at("v") - rep.gen_images.at("v")) == 0.0);
  CHECK(tw.relation_residual < 1e-12);

  // Twisting by g then h lands on the g + h twist.
  MatrixRep two_step =
      twisted_rep(spec, group_element(spec, 1, 1), twisted_rep(spec, group_element(spec, 2, 1), rep));
  MatrixRep one_step = twisted_rep(spec, group_element(spec, 0, 0), rep);
  CHECK(operator_norm(two_step.gen_images.at("u") - one_step.gen_images.at("u")) < 1e-14);
  CHECK(operator_norm(two_step.gen_images.at("v") - one_step.gen_images.at("v")) < 1e-14);
}

TEST_CASE("a representation intertwines itself with the identity witness") {
  MatrixRep rep = clock_shift_rep(1, 5);
  IntertwinerResult r = solve_intertwiner(rep, rep);
  CHECK(r.status == IntertwinerStatus::UnitaryEquivalent);
  REQUIRE(r.witness.has_value());
  CHECK(operator_norm(*r.witness - Eigen::MatrixXcd::Identity(5, 5)) < 1e-8);
  CHECK(r.residual < 1e-10);
  CHECK(r.unitarity < 1e-10);
}

TEST_CASE("the flip pair is intertwined by the ninety-degree rotation matrix") {
  Eigen::MatrixXcd flip = Eigen::MatrixXcd::Zero(2, 2);
  flip(0, 0) = 1.0;
  flip(1, 1) = -1.0;
  TorusParams p = TorusParams::rational(0, 1);
  MatrixRep r1 = make_rep(p, {{"v", flip}});
  MatrixRep r2 = make_rep(p, {{"v", Eigen::MatrixXcd(-flip)}});
  IntertwinerResult r = solve_intertwiner(r1, r2);
  CHECK(r.status == IntertwinerStatus::UnitaryEquivalent);
  REQUIRE(r.witness.has_value());

  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(2, 2);
  J(0, 1) = -1.0;
  J(1, 0) = 1.0;
  // Proportional to J up to a global phase: align the phase, then compare.
  cplx c = (J.adjoint() * *r.witness).trace() / 2.0;
  REQUIRE(std::abs(c) > 0.5);
  CHECK(operator_norm(*r.witness - (c / std::abs(c)) * J) < 1e-8);
}

TEST_CASE("distinct generator spectra force the inequivalent verdict") {
  // Scaling the clock by a phase that is not a power of its own eigenvalue
  // ratio changes the eigenvalue multiset, so no intertwiner can exist.
  CoveringSpec spec(3, 1, 0, TorusParams::rational(3, 5));  // cover twist 1/5
  MatrixRep rep = clock_shift_rep(1, 5);
  MatrixRep tw = twisted_rep(spec, group_element(spec, 1, 0), rep);
  CHECK_FALSE(spectra_agree(rep, tw));
  IntertwinerResult r = solve_intertwiner(rep, tw);
  CHECK(r.status == IntertwinerStatus::Inequivalent);
  CHECK(r.null_dim == 0);
}

TEST_CASE("clock-phase twists of a matching size are implemented by shift powers") {
  // When the twist phase is a power of the clock eigenvalue ratio, conjugation
  // by the shift realizes it, so the twisted copy is equivalent.
  CoveringSpec spec(3, 1, 1, TorusParams::rational(0, 1));  // cover twist 1/3
  MatrixRep rep = clock_shift_rep(1, 3);
  MatrixRep tw = twisted_rep(spec, group_element(spec, 1, 0), rep);
  CHECK(spectra_agree(rep, tw));
  IntertwinerResult r = solve_intertwiner(rep, tw);
  CHECK(r.status == IntertwinerStatus::UnitaryEquivalent);
  REQUIRE(r.witness.has_value());
  CHECK(r.residual < 1e-10);
}

TEST_CASE("the solver verdict agrees with the spectral oracle on small models") {
  struct Case {
    CoveringSpec spec;
    MatrixRep rep;
  };
  std::vector<Case> cases;
  cases.push_back({CoveringSpec(3, 1, 1, TorusParams::rational(0, 1)), clock_shift_rep(1, 3)});
  cases.push_back({CoveringSpec(4, 1, 1, TorusParams::rational(0, 1)), clock_shift_rep(1, 4)});
  cases.push_back({CoveringSpec(1, 5, 1, TorusParams::rational(0, 1)), clock_shift_rep(1, 5)});
  cases.push_back({CoveringSpec(3, 1, 0, TorusParams::rational(3, 5)), clock_shift_rep(1, 5)});
  cases.push_back({CoveringSpec(2, 1, 0, TorusParams::rational(2, 7)), clock_shift_rep(1, 7)});
  for (const Case& c : cases) {
    for (long long i = 1; i < c.spec.group_order(); ++i) {
      GroupElement g = group_from_index(c.spec, i);
      CAPTURE(c.rep.dim);
      CAPTURE(g.a);
      CAPTURE(g.b);
      MatrixRep tw = twisted_rep(c.spec, g, c.rep);
      bool oracle_equivalent = spectra_agree(c.rep, tw);
      IntertwinerResult r = solve_intertwiner(c.rep, tw);
      if (oracle_equivalent) {
        CHECK(r.status == IntertwinerStatus::UnitaryEquivalent);
      } else {
        CHECK(r.status == IntertwinerStatus::Inequivalent);
      }
    }
  }
}

TEST_CASE("the solver verdict is symmetric in its arguments") {
  CoveringSpec free_spec(3, 1, 0, TorusParams::rational(3, 5));
  MatrixRep rep = clock_shift_rep(1, 5);
  MatrixRep tw = twisted_rep(free_spec, group_element(free_spec, 1, 0), rep);
  CHECK(solve_intertwiner(rep, tw).status == solve_intertwiner(tw, rep).status);

  CoveringSpec fixed_spec(3, 1, 1, TorusParams::rational(0, 1));
  MatrixRep rep3 = clock_shift_rep(1, 3);
  MatrixRep tw3 = twisted_rep(fixed_spec, group_element(fixed_spec, 1, 0), rep3);
  CHECK(solve_intertwiner(rep3, tw3).status == solve_intertwiner(tw3, rep3).status);
}

TEST_CASE("the solver rejects dimension mismatches") {
  CHECK_THROWS_AS(solve_intertwiner(clock_shift_rep(1, 3), clock_shift_rep(1, 4)),
                  std::invalid_argument);
}

TEST_CASE("the free-action probe is empty for the trivial deck group") {
  CoveringSpec trivial(1, 1, 0, TorusParams::rational(1, 3));
  CHECK(free_action_probe(trivial, clock_shift_rep(1, 3)).empty());
}

TEST_CASE("the free-action probe flags the two-dimensional flip as a fixed point") {
  CoveringSpec spec(1, 2, 0, TorusParams::rational(0, 1));
  Eigen::MatrixXcd flip = Eigen::MatrixXcd::Zero(2, 2);
  flip(0, 0) = 1.0;
  flip(1, 1) = -1.0;
  MatrixRep rep = make_rep(TorusParams::rational(0, 1), {{"v", flip}});
  auto entries = free_action_probe(spec, rep);
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].g == GroupElement{0, 1});
  CHECK(entries[0].fixed_point);
  CHECK(entries[0].result.status == IntertwinerStatus::UnitaryEquivalent);
}

TEST_CASE("the free-action probe finds no fixed point when spectra rotate") {
  CoveringSpec spec(3, 1, 0, TorusParams::rational(3, 5));
  auto entries = free_action_probe(spec, clock_shift_rep(1, 5));
  REQUIRE(entries.size() == 2);
  for (const auto& e : entries) {
    CAPTURE(e.g.a);
    CHECK_FALSE(e.fixed_point);
    CHECK(e.result.status == IntertwinerStatus::Inequivalent);
  }
}

TEST_CASE("the equivariant direct sum collapses to the representation itself for one sheet") {
  CoveringSpec trivial(1, 1, 0, TorusParams::rational(1, 3));
  MatrixRep rep = clock_shift_rep(1, 3);
  SumRep sum = equivariant_direct_sum(rep, trivial);
  CHECK(sum.rep.dim == rep.dim);
  REQUIRE(sum.perms.size() == 1);
  CHECK(operator_norm(sum.perms[0] - Eigen::MatrixXcd::Identity(3, 3)) == 0.0);
  Eigen::MatrixXcd basis = invariant_subspace_basis(sum);
  CHECK(basis.cols() == rep.dim);

  TorusElement a = TorusElement::u(TorusParams::rational(1, 3));
  InducedOperator ind = induced_operator(sum, basis, a);
  CHECK(ind.closure_residual < 1e-12);
  CHECK(std::abs(ind.matrix.trace() - evaluate(rep, a).trace()) < 1e-12);
}

TEST_CASE("the four-sheet direct sum carries a consistent block permutation action") {
  CoveringSpec spec(2, 2, 1, TorusParams::rational(1, 3));  // cover twist 1/3
  MatrixRep rep = clock_shift_rep(1, 3);
  SumRep sum = equivariant_direct_sum(rep, spec);
  CHECK(sum.base_dim == 3);
  CHECK(sum.rep.dim == 12);
  REQUIRE(sum.perms.size() == 4);

  // The permutation blocks represent the deck group.
  for (long long i = 0; i < 4; ++i) {
    for (long long j = 0; j < 4; ++j) {
      GroupElement g = group_from_index(spec, i);
      GroupElement h = group_from_index(spec, j);
      long long ij = group_index(spec, group_add(spec, g, h));
      CHECK(operator_norm(sum.perms[i] * sum.perms[j] - sum.perms[ij]) < 1e-12);
    }
  }

  // Compatibility of the permutation action with the summed representation.
  Rng rng(163);
  for (int t = 0; t < 10; ++t) {
    TorusElement a = random_element(spec.cover(), 4, 8, rng);
    CHECK(sum_compatibility_residual(sum, a) < 1e-12);
  }
}

TEST_CASE("the invariant subspace has the base dimension and induces the base trace") {
  CoveringSpec spec(2, 2, 1, TorusParams::rational(1, 3));
  MatrixRep rep = clock_shift_rep(1, 3);
  SumRep sum = equivariant_direct_sum(rep, spec);
  Eigen::MatrixXcd basis = invariant_subspace_basis(sum);
  CHECK(basis.cols() == rep.dim);
  CHECK(operator_norm(Eigen::MatrixXcd(basis.adjoint() * basis) -
                      Eigen::MatrixXcd::Identity(rep.dim, rep.dim)) < 1e-12);

  Rng rng(167);
  for (int t = 0; t < 8; ++t) {
    TorusElement base = random_element(spec.base, 3, 6, rng);
    TorusElement x = embed_cover(spec, base);
    InducedOperator ind = induced_operator(sum, basis, x);
    CHECK(ind.closure_residual < 1e-10);
    // On the fixed space every block acts as the untwisted representation, so
    // the induced trace matches it (a basis-independent identity).
    CHECK(std::abs(ind.matrix.trace() - evaluate(rep, x).trace()) < 1e-10);
  }

  // Eigenvalue multisets also agree for the embedded generator.
  TorusElement xu = embed_cover(spec, TorusElement::u(spec.base));
  InducedOperator ind_u = induced_operator(sum, basis, xu);
  CHECK(same_spectrum(ind_u.matrix, evaluate(rep, xu)));
}

TEST_CASE("non-invariant elements move the fixed space off itself") {
  CoveringSpec spec(2, 2, 1, TorusParams::rational(1, 3));
  SumRep sum = equivariant_direct_sum(clock_shift_rep(1, 3), spec);
  Eigen::MatrixXcd basis = invariant_subspace_basis(sum);
  TorusElement uprime = TorusElement::u(spec.cover());
  InducedOperator ind = induced_operator(sum, basis, uprime);
  CHECK(ind.closure_residual > 0.5);
}

TEST_CASE("the twisted tensor witness cancels the extra twist exactly") {
  MoritaReport zero = morita_twist_witness(2, 2, 0, 8);
  CHECK(zero.twist_relation_residual < 1e-12);  // U and V commute at k = 0
  CHECK(zero.hom_residual < 1e-12);

  MoritaReport small = morita_twist_witness(2, 2, 1, 8);
  CHECK(small.twist_relation_residual < 1e-10);
  CHECK(small.hom_residual < 1e-10);
  CHECK(small.base_residual < 1e-12);

  MoritaReport mixed = morita_twist_witness(2, 3, 5, 12);
  CHECK(mixed.twist_relation_residual < 1e-10);
  CHECK(mixed.hom_residual < 1e-10);
  CHECK(mixed.base_residual < 1e-12);
}

TEST_CASE("the twisted tensor witness validates its arguments") {
  CHECK_THROWS_AS(morita_twist_witness(0, 2, 1, 8), std::invalid_argument);
  CHECK_THROWS_AS(morita_twist_witness(2, 2, -1, 8), std::invalid_argument);
  CHECK_THROWS_AS(morita_twist_witness(2, 2, 1, 0), std::invalid_argument);
}

TEST_CASE("intertwiner status values render as stable strings") {
  CHECK(std::string(to_string(IntertwinerStatus::UnitaryEquivalent)) ==
        "unitary_equivalent");
  CHECK(std::string(to_string(IntertwinerStatus::Inequivalent)) == "inequivalent");
  CHECK(std::string(to_string(IntertwinerStatus::Inconclusive)) == "inconclusive");
}
