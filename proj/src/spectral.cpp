#include "nc/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "nc/rng.hpp"

namespace nc {

namespace {

constexpr double kSpectralUnitaryTol = 1e-8;

void require_unitary(const Eigen::MatrixXcd& U, const char* who) {
  if (U.rows() != U.cols() || U.rows() == 0) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square and nonempty");
  }
  if (unitarity_residual(U) > kSpectralUnitaryTol) {
    throw std::invalid_argument(std::string(who) + ": matrix is not unitary");
  }
}

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& M, long long e) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(M.rows(), M.cols());
  for (long long i = 0; i < e; ++i) out = out * M;
  return out;
}

std::complex<double> trace_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  // tr(a* b) as an entrywise sum; avoids forming the d x d product.
  return a.conjugate().cwiseProduct(b).sum() / static_cast<double>(a.rows());
}

}  // namespace

RootBranch make_root_branch(long long n, double cut_angle, double cut_tolerance) {
  if (n < 1) throw std::invalid_argument("make_root_branch: order must be positive");
  if (!(cut_tolerance > 0.0)) {
    throw std::invalid_argument("make_root_branch: cut tolerance must be positive");
  }
  RootBranch branch;
  branch.n = n;
  branch.cut_angle = wrap_angle(cut_angle);
  branch.cut_tolerance = cut_tolerance;
  return branch;
}

std::complex<double> branch_root_scalar(std::complex<double> z, const RootBranch& branch) {
  double mod = std::abs(z);
  if (std::abs(mod - 1.0) > kSpectralUnitaryTol) {
    throw std::invalid_argument("branch_root_scalar: input is not unit-modulus");
  }
  double raw = std::atan2(z.imag(), z.real());
  double offset = wrap_angle(raw - branch.cut_angle);
  double circ = std::min(offset, kTwoPi - offset);
  if (circ < branch.cut_tolerance) {
    throw branch_cut_error(raw, "branch root: spectral point at angle " +
                                    std::to_string(raw) + " lies within " +
                                    std::to_string(branch.cut_tolerance) +
                                    " of the cut");
  }
  double lifted = branch.cut_angle + offset;
  double root_angle = lifted / static_cast<double>(branch.n);
  return {std::cos(root_angle), std::sin(root_angle)};
}

std::vector<double> unitary_eigen_angles(const Eigen::MatrixXcd& U) {
  require_unitary(U, "unitary_eigen_angles");
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(U, /*computeU=*/false);
  std::vector<double> angles;
  angles.reserve(static_cast<std::size_t>(U.rows()));
  for (Eigen::Index i = 0; i < U.rows(); ++i) {
    std::complex<double> lambda = schur.matrixT()(i, i);
    angles.push_back(wrap_angle(std::atan2(lambda.imag(), lambda.real())));
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

double max_circular_gap(const std::vector<double>& sorted_angles) {
  if (sorted_angles.empty()) {
    throw std::invalid_argument("max_circular_gap: empty angle list");
  }
  const std::size_t k = sorted_angles.size();
  if (k == 1) return kTwoPi;
  double best = sorted_angles.front() + kTwoPi - sorted_angles.back();
  for (std::size_t i = 0; i + 1 < k; ++i) {
    best = std::max(best, sorted_angles[i + 1] - sorted_angles[i]);
  }
  return best;
}

double spectrum_gap(const Eigen::MatrixXcd& U) {
  return max_circular_gap(unitary_eigen_angles(U));
}

double place_cut_in_largest_gap(const Eigen::MatrixXcd& U) {
  std::vector<double> angles = unitary_eigen_angles(U);
  const std::size_t k = angles.size();
  if (k == 1) return wrap_angle(angles[0] + kTwoPi / 2.0);
  double best_gap = angles.front() + kTwoPi - angles.back();
  double best_start = angles.back();
  for (std::size_t i = 0; i + 1 < k; ++i) {
    double gap = angles[i + 1] - angles[i];
    if (gap > best_gap) {
      best_gap = gap;
      best_start = angles[i];
    }
  }
  return wrap_angle(best_start + best_gap / 2.0);
}

Eigen::MatrixXcd root_branch_apply(const Eigen::MatrixXcd& U, const RootBranch& branch) {
  require_unitary(U, "root_branch_apply");
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(U, /*computeU=*/true);
  const Eigen::Index d = U.rows();
  Eigen::VectorXcd roots(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    roots(i) = branch_root_scalar(schur.matrixT()(i, i), branch);
  }
  return schur.matrixU() * roots.asDiagonal() * schur.matrixU().adjoint();
}

double trace_norm(const Eigen::MatrixXcd& M) {
  if (M.rows() != M.cols() || M.rows() == 0) {
    throw std::invalid_argument("trace_norm: matrix must be square and nonempty");
  }
  double sq = M.squaredNorm() / static_cast<double>(M.rows());
  return std::sqrt(std::max(0.0, sq));
}

SpanBasis orthonormalize(const std::vector<Eigen::MatrixXcd>& generators,
                         double drop_tol, long long dim_cap) {
  if (generators.empty()) {
    throw std::invalid_argument("orthonormalize: need at least one generator");
  }
  const Eigen::Index d = generators.front().rows();
  SpanBasis basis;
  basis.dim = d;
  for (const auto& g : generators) {
    if (g.rows() != d || g.cols() != d) {
      throw std::invalid_argument("orthonormalize: mixed matrix sizes");
    }
    Eigen::MatrixXcd w = g;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis.vectors) {
        w -= trace_inner(b, w) * b;
      }
    }
    double nrm = trace_norm(w);
    if (nrm > drop_tol) {
      if (static_cast<long long>(basis.vectors.size()) >= dim_cap) {
        throw std::runtime_error("orthonormalize: basis exceeds the dimension cap");
      }
      basis.vectors.push_back(w / nrm);
    }
  }
  return basis;
}

double span_membership(const Eigen::MatrixXcd& M, const SpanBasis& basis) {
  if (M.rows() != basis.dim || M.cols() != basis.dim) {
    throw std::invalid_argument("span_membership: matrix size does not match the basis");
  }
  Eigen::MatrixXcd r = M;
  for (const auto& b : basis.vectors) {
    r -= trace_inner(b, r) * b;
  }
  return trace_norm(r);
}

ExtensionAlgebra build_extension(const MatrixRep& base_rep, const Eigen::MatrixXcd& v,
                                 long long n, long long word_length, long long dim_cap) {
  if (n < 1) throw std::invalid_argument("build_extension: order must be positive");
  if (word_length < 0) {
    throw std::invalid_argument("build_extension: negative word length");
  }
  if (v.rows() != base_rep.dim || v.cols() != base_rep.dim) {
    throw std::invalid_argument("build_extension: adjoined matrix size mismatch");
  }
  require_unitary(v, "build_extension");

  const Eigen::Index d = base_rep.dim;
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  std::vector<Eigen::MatrixXcd> alphabet;
  for (const auto& [name, M] : base_rep.gen_images) {
    (void)name;
    alphabet.push_back(M);
    alphabet.push_back(M.adjoint());
  }
  std::vector<Eigen::MatrixXcd> words{id};
  std::vector<Eigen::MatrixXcd> frontier{id};
  for (long long len = 1; len <= word_length; ++len) {
    std::vector<Eigen::MatrixXcd> next;
    next.reserve(frontier.size() * alphabet.size());
    for (const auto& w : frontier) {
      for (const auto& a : alphabet) {
        next.push_back(w * a);
      }
    }
    words.insert(words.end(), next.begin(), next.end());
    frontier = std::move(next);
  }

  ExtensionAlgebra ext;
  ext.base_rep = base_rep;
  ext.v = v;
  ext.n = n;
  ext.word_length = word_length;
  ext.base_basis = orthonormalize(words, 1e-10, dim_cap);

  std::vector<Eigen::MatrixXcd> vpow{id};
  for (long long i = 1; i < n; ++i) vpow.push_back(vpow.back() * v);
  std::vector<Eigen::MatrixXcd> ext_words;
  ext_words.reserve(2 * vpow.size() * words.size());
  for (const auto& p : vpow) {
    for (const auto& w : words) {
      ext_words.push_back(p * w);
      ext_words.push_back(w * p);
    }
  }
  ext.ext_basis = orthonormalize(ext_words, 1e-10, dim_cap);

  Eigen::MatrixXcd acc = id;
  for (long long p = 1; p <= n; ++p) {
    acc = acc * v;
    ext.membership.push_back({p, span_membership(acc, ext.base_basis)});
  }
  return ext;
}

namespace {

struct RootTrialOutcome {
  double residual = 0.0;
  double unitarity = 0.0;
  bool rejected = false;
};

RootTrialOutcome root_trial(long long max_dim, long long root_order,
                            std::uint64_t seed, long long trial) {
  Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(trial));
  long long dim = 1 + rng.below(max_dim);
  Eigen::MatrixXcd u = random_unitary(dim, rng);
  RootBranch branch = make_root_branch(root_order, place_cut_in_largest_gap(u));
  RootTrialOutcome out;
  try {
    Eigen::MatrixXcd v = root_branch_apply(u, branch);
    out.residual = operator_norm(matrix_power(v, root_order) - u);
    out.unitarity = unitarity_residual(v);
  } catch (const branch_cut_error&) {
    out.rejected = true;
  }
  return out;
}

}  // namespace

RootCheckReport root_branch_batch_check(long long trials, long long max_dim,
                                        long long root_order, std::uint64_t seed,
                                        ExecPolicy policy) {
  if (trials < 1 || max_dim < 1) {
    throw std::invalid_argument("root_branch_batch_check: need positive trials and dim");
  }
  std::vector<RootTrialOutcome> outcomes(static_cast<std::size_t>(trials));
  if (policy == ExecPolicy::Parallel) {
#ifdef NC_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long t = 0; t < trials; ++t) {
      outcomes[static_cast<std::size_t>(t)] = root_trial(max_dim, root_order, seed, t);
    }
  } else {
    for (long long t = 0; t < trials; ++t) {
      outcomes[static_cast<std::size_t>(t)] = root_trial(max_dim, root_order, seed, t);
    }
  }
  RootCheckReport report;
  report.trials = trials;
  report.max_dim = max_dim;
  report.root_order = root_order;
  for (const auto& o : outcomes) {
    if (o.rejected) {
      ++report.rejected;
    } else {
      report.max_root_residual = std::max(report.max_root_residual, o.residual);
      report.max_unitarity = std::max(report.max_unitarity, o.unitarity);
    }
  }
  return report;
}

Su2Report su2_counterexample() {
  TorusParams params = TorusParams::rational(0, 1);
  Eigen::MatrixXcd flip(2, 2);
  flip << 1.0, 0.0, 0.0, -1.0;

  Su2Report report;
  report.rep = make_rep(params, {{"v", flip}});
  CoveringSpec spec(1, 2, 0, params);
  GroupElement g = group_element(spec, 0, 1);
  report.twisted = twisted_rep(spec, g, report.rep);
  report.twist_residual = operator_norm(report.twisted.gen_images.at("v") +
                                        report.rep.gen_images.at("v"));
  report.solver = solve_intertwiner(report.rep, report.twisted);
  report.intertwiner_space_dim = report.solver.null_dim;

  Eigen::MatrixXcd canonical(2, 2);
  canonical << 0.0, -1.0, 1.0, 0.0;
  report.witness = canonical;
  report.witness_residual =
      operator_norm(canonical * report.rep.gen_images.at("v") -
                    report.twisted.gen_images.at("v") * canonical);
  report.witness_unitarity = unitarity_residual(canonical);

  // Base algebra generated by v^2 = I: the scalars.  Adjoining v doubles the
  // span and v itself stays at full distance from it.
  MatrixRep scalars = make_rep(params, {{"u", Eigen::MatrixXcd::Identity(2, 2)}});
  ExtensionAlgebra ext = build_extension(scalars, flip, 2, 4);
  report.base_dim = static_cast<long long>(ext.base_basis.vectors.size());
  report.ext_dim = static_cast<long long>(ext.ext_basis.vectors.size());
  report.membership_v = ext.membership.at(0).distance;
  report.membership_v2 = ext.membership.at(1).distance;

  report.strictly_outer =
      report.solver.status != IntertwinerStatus::UnitaryEquivalent;
  report.verdict = report.strictly_outer ? "strictly outer" : "not strictly outer";
  return report;
}

}  // namespace nc
