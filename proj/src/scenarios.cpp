#include "nc/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "nc/galois.hpp"
#include "nc/group.hpp"
#include "nc/partition.hpp"
#include "nc/rep.hpp"
#include "nc/rng.hpp"
#include "nc/spectral.hpp"
#include "nc/torus.hpp"
#include "nc/winding.hpp"

namespace nc {

namespace {

long long parse_ll(const std::string& scenario, const std::string& key,
                   const std::string& value) {
  try {
    std::size_t pos = 0;
    long long out = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return out;
  } catch (const std::exception&) {
    throw std::invalid_argument(scenario + ": parameter '" + key +
                                "' must be an integer, got '" + value + "'");
  }
}

/// Twist values accept "[p,q]", "p/q", or a plain decimal.
TorusParams parse_theta(const std::string& scenario, const std::string& key,
                        const std::string& value) {
  try {
    if (!value.empty() && value.front() == '[') {
      Json j = Json::parse(value);
      if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
          !j[1].is_number_integer()) {
        throw std::invalid_argument("expected [p, q]");
      }
      return TorusParams::rational(j[0].get<long long>(), j[1].get<long long>());
    }
    std::size_t slash = value.find('/');
    if (slash != std::string::npos) {
      std::size_t pos = 0;
      long long p = std::stoll(value.substr(0, slash), &pos);
      if (pos != slash) throw std::invalid_argument("bad numerator");
      std::string den = value.substr(slash + 1);
      long long q = std::stoll(den, &pos);
      if (pos != den.size()) throw std::invalid_argument("bad denominator");
      return TorusParams::rational(p, q);
    }
    std::size_t pos = 0;
    double d = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return TorusParams::real(d);
  } catch (const std::exception&) {
    throw std::invalid_argument(scenario + ": parameter '" + key +
                                "' must be a twist ([p,q], p/q, or decimal), got '" +
                                value + "'");
  }
}

std::string frac_string(long long num, long long den) {
  Rational r = Rational::reduced(num, den);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

Eigen::MatrixXcd matrix_pow(const Eigen::MatrixXcd& M, long long e) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(M.rows(), M.cols());
  Eigen::MatrixXcd base = e >= 0 ? M : Eigen::MatrixXcd(M.adjoint());
  long long count = e >= 0 ? e : -e;
  for (long long i = 0; i < count; ++i) out = out * base;
  return out;
}

/// Mutable state threaded through one scenario run: resolved configuration in,
/// checks and payload out.
struct Ctx {
  std::string scenario;
  std::map<std::string, std::string> params;
  std::map<std::string, double> tols;
  std::uint64_t seed = 0;
  ExecPolicy policy = ExecPolicy::Serial;
  bool dump_witness = false;

  std::vector<ScenarioCheck> checks;
  Json extra = Json::object();

  const std::string& str(const std::string& key) const { return params.at(key); }
  long long ll(const std::string& key) const {
    return parse_ll(scenario, key, params.at(key));
  }
  TorusParams theta(const std::string& key) const {
    return parse_theta(scenario, key, params.at(key));
  }
  double tol(const std::string& label) const {
    auto it = tols.find(label);
    if (it == tols.end()) {
      throw std::logic_error(scenario + ": check '" + label +
                             "' has no registered tolerance");
    }
    return it->second;
  }
  void upper(const std::string& label, double value) {
    double t = tol(label);
    checks.push_back({label, value, t, "upper", value <= t});
  }
  void lower(const std::string& label, double value) {
    double t = tol(label);
    checks.push_back({label, value, t, "lower", value >= t});
  }
  void equal(const std::string& label, double value, double expected) {
    checks.push_back({label, value, expected, "equal", value == expected});
  }
};

/// True when every already-recorded check with one of the given labels passed.
bool checks_pass(const Ctx& ctx, std::initializer_list<const char*> labels) {
  for (const char* label : labels) {
    for (const auto& c : ctx.checks) {
      if (c.label == label && !c.pass) return false;
    }
  }
  return true;
}

Json membership_json(const ExtensionAlgebra& ext) {
  Json out = Json::object();
  out["dims"] = {{"base", static_cast<long long>(ext.base_basis.vectors.size())},
                 {"extension", static_cast<long long>(ext.ext_basis.vectors.size())}};
  Json table = Json::array();
  for (const auto& entry : ext.membership) {
    table.push_back({{"power", entry.power}, {"distance", entry.distance}});
  }
  out["membership"] = table;
  return out;
}

// ---------------------------------------------------------------------------
// verify-torus-cover
// ---------------------------------------------------------------------------

void run_verify_torus_cover(Ctx& ctx) {
  const long long m = ctx.ll("m");
  const long long n = ctx.ll("n");
  const long long k = ctx.ll("k");
  const TorusParams base = ctx.theta("theta");
  const long long truncation = ctx.ll("truncation");
  const long long trials = ctx.ll("trials");
  const long long grid = ctx.ll("grid");
  const long long degree = ctx.ll("fourier-degree");
  if (truncation < 1 || trials < 1) {
    throw std::invalid_argument(
        "verify-torus-cover: truncation and trials must be positive");
  }
  CoveringSpec spec(m, n, k, base);

  GaloisReport galois = verify_galois(spec, truncation, trials, ctx.seed,
                                      ctx.tol("residual_forward"), ctx.policy);
  ctx.upper("residual_forward", galois.max_residual_forward);
  ctx.upper("residual_inverse", galois.max_residual_inverse);
  ctx.equal("module_rank", static_cast<double>(galois.rank),
            static_cast<double>(m * n));

  PartitionOfUnity px = build_partition_of_unity(m, grid);
  PartitionOfUnity py = build_partition_of_unity(n, grid);
  ABSystem ab = assemble_ab(px, py, spec, degree, ctx.policy);
  ABResiduals abr = ab_residuals(ab);
  ctx.upper("ab_unit", abr.unit);
  ctx.upper("ab_rotation", abr.rotation);

  ctx.extra["covering"] = spec_to_json(spec);
  ctx.extra["group_order"] = m * n;
  ctx.extra["ab_system_size"] = static_cast<long long>(ab.a_list.size());
}

// ---------------------------------------------------------------------------
// circle-cover
// ---------------------------------------------------------------------------

void run_circle_cover(Ctx& ctx) {
  const long long sheets = ctx.ll("sheets");
  const long long grid = ctx.ll("grid");
  const long long samples = ctx.ll("samples");
  const long long points = ctx.ll("points");
  const long long word_length = ctx.ll("word-length");
  if (sheets < 2) throw std::invalid_argument("circle-cover: sheets must be at least 2");
  if (points < 1 || word_length < 1) {
    throw std::invalid_argument("circle-cover: points and word-length must be positive");
  }
  const long long span = 2 * word_length + 1;
  if (points < sheets * span) {
    throw std::invalid_argument(
        "circle-cover: need points >= sheets * (2 * word-length + 1) so the "
        "extension span stays alias-free; raise points");
  }

  PartitionOfUnity p = build_partition_of_unity(sheets, grid);
  PartitionResiduals pres = partition_residuals(p, ctx.policy);
  ctx.upper("partition_unit", pres.unit);
  ctx.upper("partition_rotation", pres.rotation);

  ctx.equal("winding", static_cast<double>(phi_K_of_cover(sheets, samples, ctx.policy)),
            static_cast<double>(sheets));

  // Model on the covering circle sampled at `points` grid points: the cover
  // coordinate v is the plain grid symbol and the base coordinate is its
  // sheets-th power.
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(points, points);
  for (long long t = 0; t < points; ++t) v(t, t) = root_of_unity(t, points);
  Eigen::MatrixXcd U = matrix_pow(v, sheets);
  MatrixRep base = make_rep(TorusParams::rational(0, 1), {{"u", U}});

  RootBranch branch = make_root_branch(sheets, place_cut_in_largest_gap(U));
  Eigen::MatrixXcd w = root_branch_apply(U, branch);
  ctx.upper("root_residual", operator_norm(matrix_pow(w, sheets) - U));

  // The branch root is a function of the base coordinate, so it can differ
  // from the geometric section v only by a diagonal deck phase whose
  // sheets-th power is the identity.
  Eigen::MatrixXcd x = v * w.adjoint();
  ctx.upper("branch_twist",
            operator_norm(matrix_pow(x, sheets) -
                          Eigen::MatrixXcd::Identity(points, points)));

  ExtensionAlgebra ext = build_extension(base, v, sheets, word_length);
  const long long base_dim = static_cast<long long>(ext.base_basis.vectors.size());
  const long long ext_dim = static_cast<long long>(ext.ext_basis.vectors.size());
  ctx.equal("base_dim", static_cast<double>(base_dim), static_cast<double>(span));
  ctx.equal("ext_dim", static_cast<double>(ext_dim),
            static_cast<double>(sheets * span));

  double member_out = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < ext.membership.size(); ++i) {
    member_out = std::min(member_out, ext.membership[i].distance);
  }
  ctx.lower("member_out", member_out);
  ctx.upper("member_in", ext.membership.back().distance);

  Json extension = membership_json(ext);
  bool genuine = checks_pass(ctx, {"member_out", "member_in"});
  extension["verdict"] =
      genuine ? "covering coordinate adjoins a genuine root of the base coordinate"
              : "membership pattern violated";
  ctx.extra["extension"] = extension;
  ctx.extra["model_dim"] = points;
}

// ---------------------------------------------------------------------------
// torus-extension
// ---------------------------------------------------------------------------

void run_torus_extension(Ctx& ctx) {
  const long long m = ctx.ll("m");
  const long long n = ctx.ll("n");
  const long long k = ctx.ll("k");
  const TorusParams base_theta = ctx.theta("theta");
  const long long word_length = ctx.ll("word-length");
  if (m < 2) {
    throw std::invalid_argument(
        "torus-extension: m (the adjoined root order) must be at least 2");
  }
  if (word_length < 1) {
    throw std::invalid_argument("torus-extension: word-length must be positive");
  }
  CoveringSpec spec(m, n, k, base_theta);
  TorusParams cover = spec.cover();
  if (!cover.exact.has_value()) {
    throw std::invalid_argument(
        "torus-extension: the covering twist must be exactly rational for the "
        "finite-dimensional model; pass theta as [p,q] or p/q");
  }
  const long long qprime = cover.exact->den;
  if (qprime % m != 0) {
    throw std::invalid_argument(
        "torus-extension: the covering twist denominator must be a multiple of m, "
        "otherwise the finite model identifies low powers of the adjoined root with "
        "base elements; choose theta or k so that m divides the reduced denominator");
  }

  MatrixRep cover_rep = clock_shift_rep(cover.exact->num, qprime);
  const Eigen::MatrixXcd& Uc = cover_rep.gen_images.at("u");
  const Eigen::MatrixXcd& Vc = cover_rep.gen_images.at("v");
  Eigen::MatrixXcd Ub = matrix_pow(Uc, m);
  Eigen::MatrixXcd Vb = matrix_pow(Vc, n);
  MatrixRep base = make_rep(base_theta, {{"u", Ub}, {"v", Vb}});
  ctx.upper("hom", base.relation_residual);

  RootBranch branch = make_root_branch(m, place_cut_in_largest_gap(Ub));
  Eigen::MatrixXcd w = root_branch_apply(Ub, branch);
  ctx.upper("root_residual", operator_norm(matrix_pow(w, m) - Ub));

  // The branch root and the covering generator differ by a diagonal deck
  // phase: their ratio is an m-th root of the identity.
  Eigen::MatrixXcd x = w * Uc.adjoint();
  ctx.upper("branch_twist",
            operator_norm(matrix_pow(x, m) -
                          Eigen::MatrixXcd::Identity(qprime, qprime)));

  ExtensionAlgebra ext = build_extension(base, Uc, m, word_length);
  const long long base_dim = static_cast<long long>(ext.base_basis.vectors.size());
  const long long ext_dim = static_cast<long long>(ext.ext_basis.vectors.size());
  double member_out = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < ext.membership.size(); ++i) {
    member_out = std::min(member_out, ext.membership[i].distance);
  }
  ctx.lower("member_out", member_out);
  ctx.upper("member_in", ext.membership.back().distance);
  ctx.lower("extension_grows", static_cast<double>(ext_dim - base_dim));

  Json extension = membership_json(ext);
  bool genuine = checks_pass(ctx, {"member_out", "member_in"});
  extension["verdict"] =
      genuine ? "covering generator adjoins a genuine root of the base generator"
              : "membership pattern violated";
  ctx.extra["extension"] = extension;
  ctx.extra["covering"] = spec_to_json(spec);
  ctx.extra["model_dim"] = qprime;
}

// ---------------------------------------------------------------------------
// su2-counterexample
// ---------------------------------------------------------------------------

void run_su2_counterexample(Ctx& ctx) {
  Su2Report report = su2_counterexample();
  ctx.upper("twist_residual", report.twist_residual);
  ctx.equal("equivalent",
            report.solver.status == IntertwinerStatus::UnitaryEquivalent ? 1.0 : 0.0,
            1.0);
  ctx.upper("witness_residual", report.witness_residual);

  // Phase-align the solver's witness with the canonical off-diagonal unitary.
  double alignment = 1e9;
  if (report.solver.witness.has_value()) {
    const Eigen::MatrixXcd& W = *report.solver.witness;
    std::complex<double> c = (report.witness.adjoint() * W).trace() / 2.0;
    if (std::abs(c) > 1e-12) {
      alignment = operator_norm(W - (c / std::abs(c)) * report.witness);
    }
  }
  ctx.upper("witness_alignment", alignment);

  ctx.equal("intertwiner_dim", static_cast<double>(report.intertwiner_space_dim), 2.0);
  ctx.lower("member_out", report.membership_v);
  ctx.upper("member_in", report.membership_v2);
  ctx.equal("not_strictly_outer", report.strictly_outer ? 0.0 : 1.0, 1.0);

  ctx.extra["witness"] = matrix_to_json(report.witness);
  if (ctx.dump_witness && report.solver.witness.has_value()) {
    ctx.extra["solver_witness"] = matrix_to_json(*report.solver.witness);
  }
  ctx.extra["dims"] = {{"base", report.base_dim}, {"extension", report.ext_dim}};
  ctx.extra["verdict"] = report.verdict;
  ctx.extra["conclusion"] =
      "the branch flip is implemented by a unitary, so this extension is not a "
      "noncommutative covering projection";
}

// ---------------------------------------------------------------------------
// mapping-cone
// ---------------------------------------------------------------------------

void run_mapping_cone(Ctx& ctx) {
  const long long n = ctx.ll("n");
  const long long truncation = ctx.ll("truncation");
  const long long samples = ctx.ll("samples");
  const std::string loop_file = ctx.str("loop-file");
  if (n < 2) throw std::invalid_argument("mapping-cone: n must be at least 2");
  if (truncation < n) {
    throw std::invalid_argument("mapping-cone: truncation must be at least n");
  }

  SampledLoop loop;
  if (loop_file.empty()) {
    loop = generator_loop(samples);
  } else {
    std::ifstream in(loop_file);
    if (!in) {
      throw std::invalid_argument("mapping-cone: cannot open loop file '" +
                                  loop_file + "'");
    }
    try {
      loop = loop_from_json(Json::parse(in));
    } catch (const std::exception& e) {
      throw std::invalid_argument("mapping-cone: bad loop file '" + loop_file +
                                  "': " + e.what());
    }
  }

  long long w = 0;
  long long wn = 0;
  long long cls = 0;
  try {
    w = winding_number(loop, ctx.policy);
    wn = winding_number(power_loop(loop, n), ctx.policy);
    cls = cone_class(loop, n, ctx.policy);
  } catch (const aliasing_error& e) {
    throw std::invalid_argument(
        std::string("mapping-cone: loop samples are too coarse to wind safely: ") +
        e.what());
  }
  ctx.equal("cover_multiplies_winding", static_cast<double>(wn),
            static_cast<double>(n * w));
  ctx.equal("cone_class", static_cast<double>(cls),
            static_cast<double>(((w % n) + n) % n));

  const TorusParams circle = TorusParams::rational(0, 1);
  double member_out = std::numeric_limits<double>::infinity();
  for (long long i = 1; i < n; ++i) {
    member_out = std::min(
        member_out,
        circle_span_distance(TorusElement::monomial(circle, i, 0), n, truncation));
  }
  ctx.lower("member_out", member_out);
  ctx.upper("member_in",
            circle_span_distance(TorusElement::monomial(circle, n, 0), n, truncation));

  // A path that wanders freely for t > 0 but lands in the n-th power span at
  // the boundary.
  std::vector<TorusElement> t_samples;
  t_samples.push_back(TorusElement::monomial(circle, n, 0));
  t_samples.push_back(add(TorusElement::monomial(circle, n, 0),
                          scale(0.5, TorusElement::u(circle))));
  t_samples.push_back(TorusElement::u(circle));
  t_samples.push_back(TorusElement::one(circle));
  ConePath path = make_cone_path(n, std::move(t_samples));
  ConeMembership cm = cone_membership(path, truncation, ctx.tol("boundary_member"));
  ctx.upper("boundary_member", cm.distance);
  ctx.equal("boundary_is_member", cm.member ? 1.0 : 0.0, 1.0);

  long long mismatches = 0;
  Json table = Json::array();
  for (long long ww = 0; ww <= 7; ++ww) {
    SampledLoop powered = power_loop(generator_loop(samples), ww);
    for (long long nn = 2; nn <= 4; ++nn) {
      long long got = cone_class(powered, nn, ctx.policy);
      long long expect = ww % nn;
      if (got != expect) ++mismatches;
      table.push_back({{"winding", ww}, {"n", nn}, {"class", got}});
    }
  }
  ctx.equal("cone_table_mismatches", static_cast<double>(mismatches), 0.0);

  ctx.extra["loop_winding"] = w;
  ctx.extra["covered_winding"] = wn;
  ctx.extra["cone_class"] = cls;
  ctx.extra["cone_table"] = table;
  ctx.extra["loop_samples"] = static_cast<long long>(loop.samples.size());
}

// ---------------------------------------------------------------------------
// morita-twist
// ---------------------------------------------------------------------------

void run_morita_twist(Ctx& ctx) {
  const long long m = ctx.ll("m");
  const long long n = ctx.ll("n");
  const long long k = ctx.ll("k");
  const long long q = ctx.ll("q");
  if (m < 1 || n < 1 || m * n < 2) {
    throw std::invalid_argument(
        "morita-twist: m and n must be positive with m * n >= 2");
  }
  if (q < 2) throw std::invalid_argument("morita-twist: q must be at least 2");

  MoritaReport report = morita_twist_witness(m, n, k, q);
  ctx.upper("twist_relation", report.twist_relation_residual);
  ctx.upper("hom", report.hom_residual);
  ctx.upper("base", report.base_residual);

  const long long N = m * n;
  ctx.extra["matrix_factor"] = N;
  ctx.extra["theta_prime"] = frac_string(1, q);
  ctx.extra["theta_twisted"] = frac_string(N + k * q, q * N);
}

// ---------------------------------------------------------------------------
// rep-suite
// ---------------------------------------------------------------------------

void run_rep_suite(Ctx& ctx) {
  const long long p = ctx.ll("p");
  const long long q = ctx.ll("q");
  const long long m = ctx.ll("m");
  const long long n = ctx.ll("n");
  const long long k = ctx.ll("k");
  const TorusParams base_theta = ctx.theta("theta");
  const long long trials = ctx.ll("trials");
  const long long degree = ctx.ll("degree");
  if (q < 2) throw std::invalid_argument("rep-suite: q must be at least 2");
  if (trials < 1 || degree < 1) {
    throw std::invalid_argument("rep-suite: trials and degree must be positive");
  }

  MatrixRep rep = clock_shift_rep(p, q);
  ctx.upper("relation", rep.relation_residual);

  double trace_mismatch = 0.0;
  for (long long r = -(q - 1); r <= q - 1; ++r) {
    for (long long s = -(q - 1); s <= q - 1; ++s) {
      Eigen::MatrixXcd M = evaluate(rep, TorusElement::monomial(rep.params, r, s));
      std::complex<double> tr = M.trace() / static_cast<double>(q);
      std::complex<double> expect = (r == 0 && s == 0) ? 1.0 : 0.0;
      trace_mismatch = std::max(trace_mismatch, std::abs(tr - expect));
    }
  }
  ctx.upper("trace_match", trace_mismatch);

  double hom = 0.0;
  for (long long t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(ctx.seed, static_cast<std::uint64_t>(t));
    TorusElement a = random_element(rep.params, degree, 6, rng);
    TorusElement b = random_element(rep.params, degree, 6, rng);
    hom = std::max(hom, operator_norm(evaluate(rep, mul(a, b)) -
                                      evaluate(rep, a) * evaluate(rep, b)));
    hom = std::max(hom, operator_norm(evaluate(rep, adjoint(a)) -
                                      evaluate(rep, a).adjoint().eval()));
  }
  ctx.upper("evaluate_hom", hom);

  CoveringSpec spec(m, n, k, base_theta);
  TorusParams cover = spec.cover();
  if (!cover.exact.has_value()) {
    throw std::invalid_argument(
        "rep-suite: the covering twist must be exactly rational; pass theta as "
        "[p,q] or p/q");
  }
  MatrixRep cover_rep = clock_shift_rep(cover.exact->num, cover.exact->den);
  const long long order = spec.group_order();

  double law = 0.0;
  for (long long gi = 0; gi < order; ++gi) {
    for (long long hi = 0; hi < order; ++hi) {
      GroupElement g = group_from_index(spec, gi);
      GroupElement h = group_from_index(spec, hi);
      MatrixRep twice = twisted_rep(spec, g, twisted_rep(spec, h, cover_rep));
      MatrixRep once = twisted_rep(spec, group_add(spec, g, h), cover_rep);
      for (const char* gen : {"u", "v"}) {
        law = std::max(law, operator_norm(twice.gen_images.at(gen) -
                                          once.gen_images.at(gen)));
      }
    }
  }
  ctx.upper("twist_group_law", law);

  IntertwinerResult self = solve_intertwiner(cover_rep, cover_rep, 1e-8, ctx.seed);
  ctx.equal("self_intertwiner",
            self.status == IntertwinerStatus::UnitaryEquivalent ? 1.0 : 0.0, 1.0);
  double self_alignment = 1e9;
  if (self.witness.has_value()) {
    self_alignment = operator_norm(
        *self.witness - Eigen::MatrixXcd::Identity(cover_rep.dim, cover_rep.dim));
  }
  ctx.upper("self_witness_alignment", self_alignment);
  if (ctx.dump_witness && self.witness.has_value()) {
    ctx.extra["self_witness"] = matrix_to_json(*self.witness);
  }

  auto probe = free_action_probe(spec, cover_rep);
  long long fixed = 0;
  for (const auto& entry : probe) {
    if (entry.fixed_point) ++fixed;
  }
  ctx.equal("fixed_points", static_cast<double>(fixed), 0.0);

  SumRep sum = equivariant_direct_sum(cover_rep, spec);
  double perm_law = 0.0;
  for (long long gi = 0; gi < order; ++gi) {
    for (long long hi = 0; hi < order; ++hi) {
      GroupElement g = group_from_index(spec, gi);
      GroupElement h = group_from_index(spec, hi);
      long long sum_index = group_index(spec, group_add(spec, g, h));
      perm_law = std::max(
          perm_law,
          operator_norm(sum.perms[static_cast<std::size_t>(gi)] *
                            sum.perms[static_cast<std::size_t>(hi)] -
                        sum.perms[static_cast<std::size_t>(sum_index)]));
    }
  }
  ctx.upper("perm_product", perm_law);

  double compat = 0.0;
  for (long long t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(ctx.seed, 1000 + static_cast<std::uint64_t>(t));
    TorusElement a = random_element(cover_rep.params, degree, 6, rng);
    compat = std::max(compat, sum_compatibility_residual(sum, a));
  }
  ctx.upper("sum_compat", compat);

  Eigen::MatrixXcd Q = invariant_subspace_basis(sum);
  ctx.equal("invariant_dim", static_cast<double>(Q.cols()),
            static_cast<double>(cover_rep.dim));

  double closure = 0.0;
  double trace_diff = 0.0;
  const long long induced_trials = std::min<long long>(trials, 8);
  for (long long t = 0; t < induced_trials; ++t) {
    Rng rng = Rng::for_trial(ctx.seed, 2000 + static_cast<std::uint64_t>(t));
    TorusElement base_elem = random_element(spec.base, degree, 6, rng);
    TorusElement x = embed_cover(spec, base_elem);
    InducedOperator op = induced_operator(sum, Q, x);
    closure = std::max(closure, op.closure_residual);
    trace_diff = std::max(trace_diff, std::abs(op.matrix.trace() -
                                               evaluate(cover_rep, x).trace()));
  }
  ctx.upper("induced_closure", closure);
  ctx.upper("induced_trace", trace_diff);

  ctx.extra["covering"] = spec_to_json(spec);
  ctx.extra["clock_dim"] = q;
  ctx.extra["cover_rep_dim"] = cover_rep.dim;
  ctx.extra["sum_dim"] = sum.rep.dim;
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

struct ScenarioDef {
  ScenarioInfo info;
  void (*run)(Ctx&) = nullptr;
};

std::vector<ScenarioDef> build_registry() {
  std::vector<ScenarioDef> defs;

  defs.push_back({{"verify-torus-cover",
                   "Canonical map round trip, free-module rank, and the a/b "
                   "system for one twisted-torus cover.",
                   {{"m", "2"},
                    {"n", "2"},
                    {"k", "1"},
                    {"theta", "[1,3]"},
                    {"truncation", "6"},
                    {"trials", "20"},
                    {"grid", "2048"},
                    {"fourier-degree", "64"}},
                   {{"residual_forward", 1e-10},
                    {"residual_inverse", 1e-10},
                    {"ab_unit", 1e-6},
                    {"ab_rotation", 1e-6}}},
                  &run_verify_torus_cover});

  defs.push_back({{"circle-cover",
                   "Partition-of-unity identities, covering winding, and the "
                   "branch-root extension for the n-fold circle cover.",
                   {{"sheets", "3"},
                    {"grid", "2048"},
                    {"samples", "4096"},
                    {"points", "64"},
                    {"word-length", "4"}},
                   {{"partition_unit", 1e-10},
                    {"partition_rotation", 1e-10},
                    {"root_residual", 1e-10},
                    {"branch_twist", 1e-10},
                    {"member_out", 0.5},
                    {"member_in", 1e-8}}},
                  &run_circle_cover});

  defs.push_back({{"torus-extension",
                   "Adjoins a branch root of the base generator inside a "
                   "rational torus model and compares it with the covering "
                   "generator.",
                   {{"m", "2"},
                    {"n", "2"},
                    {"k", "0"},
                    {"theta", "[1,3]"},
                    {"word-length", "4"}},
                   {{"hom", 1e-10},
                    {"root_residual", 1e-10},
                    {"branch_twist", 1e-10},
                    {"member_out", 0.1},
                    {"member_in", 1e-8},
                    {"extension_grows", 1.0}}},
                  &run_torus_extension});

  defs.push_back({{"su2-counterexample",
                   "Two-dimensional branch-flip extension whose deck action is "
                   "implemented by a unitary: not a covering projection.",
                   {},
                   {{"twist_residual", 1e-12},
                    {"witness_residual", 1e-10},
                    {"witness_alignment", 1e-8},
                    {"member_out", 0.5},
                    {"member_in", 1e-8}}},
                  &run_su2_counterexample});

  defs.push_back({{"mapping-cone",
                   "Boundary membership and mod-n winding bookkeeping for the "
                   "n-fold circle cover's mapping cone.",
                   {{"n", "3"},
                    {"truncation", "64"},
                    {"samples", "4096"},
                    {"loop-file", ""}},
                   {{"member_out", 0.5},
                    {"member_in", 1e-8},
                    {"boundary_member", 1e-8}}},
                  &run_mapping_cone});

  defs.push_back({{"morita-twist",
                   "Generator-level witness for the matrix-amplified "
                   "equivalence between differently twisted covers.",
                   {{"m", "2"}, {"n", "2"}, {"k", "1"}, {"q", "8"}},
                   {{"twist_relation", 1e-10}, {"hom", 1e-10}, {"base", 1e-12}}},
                  &run_morita_twist});

  defs.push_back({{"rep-suite",
                   "Representation-layer invariants: relations, traces, deck "
                   "twists, intertwiners, and the equivariant direct sum.",
                   {{"p", "1"},
                    {"q", "8"},
                    {"m", "2"},
                    {"n", "2"},
                    {"k", "1"},
                    {"theta", "[1,3]"},
                    {"trials", "20"},
                    {"degree", "4"}},
                   {{"relation", 1e-12},
                    {"trace_match", 1e-12},
                    {"evaluate_hom", 1e-10},
                    {"twist_group_law", 1e-12},
                    {"self_witness_alignment", 1e-8},
                    {"perm_product", 1e-12},
                    {"sum_compat", 1e-10},
                    {"induced_closure", 1e-10},
                    {"induced_trace", 1e-10}}},
                  &run_rep_suite});

  return defs;
}

const std::vector<ScenarioDef>& registry() {
  static const std::vector<ScenarioDef> defs = build_registry();
  return defs;
}

const ScenarioDef& find_def(const std::string& name) {
  for (const auto& def : registry()) {
    if (def.info.name == name) return def;
  }
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

const std::vector<ScenarioInfo>& list_scenarios() {
  static const std::vector<ScenarioInfo> infos = [] {
    std::vector<ScenarioInfo> out;
    for (const auto& def : registry()) out.push_back(def.info);
    return out;
  }();
  return infos;
}

const ScenarioInfo& scenario_info(const std::string& name) {
  return find_def(name).info;
}

ScenarioReport run_scenario(const ScenarioConfig& config) {
  const ScenarioDef& def = find_def(config.name);

  Ctx ctx;
  ctx.scenario = config.name;
  ctx.params = def.info.parameter_defaults;
  for (const auto& [key, value] : config.parameters) {
    auto it = ctx.params.find(key);
    if (it == ctx.params.end()) {
      throw std::invalid_argument("unknown parameter '" + key + "' for scenario '" +
                                  config.name + "'");
    }
    it->second = value;
  }
  ctx.tols = def.info.tolerance_defaults;
  for (const auto& [label, value] : config.tolerances) {
    auto it = ctx.tols.find(label);
    if (it == ctx.tols.end()) {
      throw std::invalid_argument("unknown tolerance label '" + label +
                                  "' for scenario '" + config.name + "'");
    }
    it->second = value;
  }
  ctx.seed = config.seed;
  ctx.policy = config.policy;
  ctx.dump_witness = config.dump_witness;

  auto start = std::chrono::steady_clock::now();
  def.run(ctx);
  auto stop = std::chrono::steady_clock::now();

  ScenarioReport report;
  report.name = config.name;
  report.parameters = ctx.params;
  report.tolerances = ctx.tols;
  report.seed = ctx.seed;
  report.policy = ctx.policy;
  report.dump_witness = ctx.dump_witness;
  report.checks = std::move(ctx.checks);
  report.extra = std::move(ctx.extra);
  report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                            [](const ScenarioCheck& c) { return c.pass; });
  report.duration_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  return report;
}

Json report_to_json(const ScenarioReport& report) {
  Json j = Json::object();
  j["scenario"] = report.name;
  Json config = Json::object();
  Json params = Json::object();
  for (const auto& [key, value] : report.parameters) params[key] = value;
  config["parameters"] = params;
  Json tols = Json::object();
  for (const auto& [label, value] : report.tolerances) tols[label] = value;
  config["tolerances"] = tols;
  config["seed"] = report.seed;
  config["policy"] = report.policy == ExecPolicy::Parallel ? "parallel" : "serial";
  config["dump_witness"] = report.dump_witness;
  j["config"] = config;
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"label", c.label},
                      {"value", c.value},
                      {"threshold", c.threshold},
                      {"kind", c.kind},
                      {"pass", c.pass}});
  }
  j["checks"] = checks;
  j["pass"] = report.pass;
  j["extra"] = report.extra;
  j["duration_ms"] = report.duration_ms;
  return j;
}

std::string report_to_text(const ScenarioReport& report) {
  std::ostringstream os;
  os << "scenario: " << report.name << "\n";
  os << "seed: " << report.seed << "   policy: "
     << (report.policy == ExecPolicy::Parallel ? "parallel" : "serial") << "\n";
  if (!report.parameters.empty()) {
    os << "parameters:";
    for (const auto& [key, value] : report.parameters) {
      os << " " << key << "=" << (value.empty() ? "''" : value);
    }
    os << "\n";
  }
  for (const auto& c : report.checks) {
    const char* op = c.kind == "upper" ? "<=" : (c.kind == "lower" ? ">=" : "==");
    os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << std::left << std::setw(26)
       << c.label << std::right << " " << std::setw(14) << format_value(c.value)
       << " " << op << " " << format_value(c.threshold) << "\n";
  }
  os << "overall: " << (report.pass ? "PASS" : "FAIL") << " ("
     << format_value(report.duration_ms) << " ms)\n";
  return os.str();
}

}  // namespace nc
