#include "nc/rep.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "nc/rng.hpp"

namespace nc {

double operator_norm(const Eigen::MatrixXcd& M) {
  if (M.rows() == 0 || M.cols() == 0) return 0.0;
  // The Gram route is exact in the relevant regime: the eigensolver's backward
  // error is relative to the Gram matrix's own scale, so tiny residual
  // matrices still come out with full relative accuracy.
  Eigen::MatrixXcd gram = M.adjoint() * M;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  double top = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, top));
}

double unitarity_residual(const Eigen::MatrixXcd& M) {
  if (M.rows() != M.cols()) {
    throw std::invalid_argument("unitarity_residual: matrix not square");
  }
  return operator_norm(M.adjoint() * M -
                       Eigen::MatrixXcd::Identity(M.rows(), M.cols()));
}

namespace {

constexpr double kUnitaryTol = 1e-10;

bool theta_matches_mod1(const TorusParams& a, const TorusParams& b) {
  double d = a.theta - b.theta;
  return std::abs(d - std::round(d)) <= 1e-12;
}

/// Powers of one unitary generator image over a contiguous exponent range;
/// negative exponents use the adjoint.
std::map<long long, Eigen::MatrixXcd> power_table(const Eigen::MatrixXcd& gen,
                                                  long long lo, long long hi) {
  std::map<long long, Eigen::MatrixXcd> table;
  table[0] = Eigen::MatrixXcd::Identity(gen.rows(), gen.cols());
  for (long long e = 1; e <= hi; ++e) table[e] = table[e - 1] * gen;
  if (lo < 0) {
    Eigen::MatrixXcd inv = gen.adjoint();
    for (long long e = -1; e >= lo; --e) table[e] = table[e + 1] * inv;
  }
  return table;
}

Eigen::MatrixXcd shift_matrix(long long q) {
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(q, q);
  for (long long j = 0; j < q; ++j) v((j + 1) % q, j) = 1.0;
  return v;
}

}  // namespace

MatrixRep make_rep(const TorusParams& params,
                   std::map<std::string, Eigen::MatrixXcd> gen_images) {
  if (gen_images.empty()) {
    throw std::invalid_argument("make_rep: no generator images");
  }
  long long dim = gen_images.begin()->second.rows();
  for (const auto& [name, M] : gen_images) {
    if (M.rows() != dim || M.cols() != dim) {
      throw std::invalid_argument("make_rep: generator images must be square and equal-sized");
    }
    if (unitarity_residual(M) > kUnitaryTol) {
      throw std::invalid_argument("make_rep: generator image '" + name +
                                  "' is not unitary within 1e-10");
    }
  }
  MatrixRep rep;
  rep.dim = dim;
  rep.params = params;
  rep.gen_images = std::move(gen_images);
  auto u = rep.gen_images.find("u");
  auto v = rep.gen_images.find("v");
  if (u != rep.gen_images.end() && v != rep.gen_images.end()) {
    std::complex<double> phase = theta_phase(params, 1);
    rep.relation_residual = operator_norm(u->second * v->second -
                                          phase * (v->second * u->second));
  }
  return rep;
}

MatrixRep clock_shift_rep(long long p, long long q) {
  if (q < 1) throw std::invalid_argument("clock_shift_rep: q must be positive");
  Eigen::MatrixXcd clock = Eigen::MatrixXcd::Zero(q, q);
  for (long long j = 0; j < q; ++j) clock(j, j) = root_of_unity(p * j, q);
  std::map<std::string, Eigen::MatrixXcd> gens;
  gens["u"] = clock;
  gens["v"] = shift_matrix(q);
  return make_rep(TorusParams::rational(p, q), std::move(gens));
}

Eigen::MatrixXcd evaluate(const MatrixRep& rep, const TorusElement& a) {
  if (!theta_matches_mod1(rep.params, a.params())) {
    throw std::invalid_argument("evaluate: twist parameter mismatch (mod 1)");
  }
  long long rlo = 0, rhi = 0, slo = 0, shi = 0;
  for (const auto& [mono, c] : a.terms()) {
    (void)c;
    rlo = std::min(rlo, mono.r);
    rhi = std::max(rhi, mono.r);
    slo = std::min(slo, mono.s);
    shi = std::max(shi, mono.s);
  }
  auto u = rep.gen_images.find("u");
  auto v = rep.gen_images.find("v");
  if ((rlo != 0 || rhi != 0) && u == rep.gen_images.end()) {
    throw std::invalid_argument("evaluate: element uses u but the rep has no 'u' image");
  }
  if ((slo != 0 || shi != 0) && v == rep.gen_images.end()) {
    throw std::invalid_argument("evaluate: element uses v but the rep has no 'v' image");
  }
  const long long d = rep.dim;
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  std::map<long long, Eigen::MatrixXcd> up =
      (u != rep.gen_images.end()) ? power_table(u->second, rlo, rhi)
                                  : std::map<long long, Eigen::MatrixXcd>{{0, id}};
  std::map<long long, Eigen::MatrixXcd> vp =
      (v != rep.gen_images.end()) ? power_table(v->second, slo, shi)
                                  : std::map<long long, Eigen::MatrixXcd>{{0, id}};
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& [mono, c] : a.terms()) {
    acc += c * (up.at(mono.r) * vp.at(mono.s));
  }
  return acc;
}

MatrixRep twisted_rep(const CoveringSpec& spec, GroupElement g, const MatrixRep& rep) {
  if (!theta_matches_mod1(rep.params, TorusParams::real(spec.cover().theta))) {
    throw std::invalid_argument("twisted_rep: rep does not carry the covering twist");
  }
  std::map<std::string, Eigen::MatrixXcd> gens;
  for (const auto& [name, M] : rep.gen_images) {
    long long r = (name == "u") ? 1 : 0;
    long long s = (name == "v") ? 1 : 0;
    gens[name] = character(spec, g, r, s) * M;
  }
  return make_rep(rep.params, std::move(gens));
}

const char* to_string(IntertwinerStatus status) {
  switch (status) {
    case IntertwinerStatus::UnitaryEquivalent:
      return "unitary_equivalent";
    case IntertwinerStatus::Inequivalent:
      return "inequivalent";
    case IntertwinerStatus::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

namespace {

Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, long long d) {
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), d, d);
}

/// Divides by the phase of the largest-magnitude entry (first in row-major
/// order on ties), making the witness deterministic up to data.
Eigen::MatrixXcd phase_canonical(const Eigen::MatrixXcd& W) {
  double best = -1.0;
  std::complex<double> pivot(1.0, 0.0);
  for (Eigen::Index r = 0; r < W.rows(); ++r) {
    for (Eigen::Index c = 0; c < W.cols(); ++c) {
      double mag = std::abs(W(r, c));
      if (mag > best) {
        best = mag;
        pivot = W(r, c);
      }
    }
  }
  if (best <= 0.0) return W;
  return W * (std::abs(pivot) / pivot);
}

}  // namespace

IntertwinerResult solve_intertwiner(const MatrixRep& rep1, const MatrixRep& rep2,
                                    double tol, std::uint64_t seed) {
  if (rep1.dim != rep2.dim) {
    throw std::invalid_argument("solve_intertwiner: dimension mismatch");
  }
  const long long d = rep1.dim;
  std::vector<std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd>> pairs;
  for (const auto& [name, A] : rep1.gen_images) {
    auto it = rep2.gen_images.find(name);
    if (it != rep2.gen_images.end()) pairs.emplace_back(A, it->second);
  }
  if (pairs.empty()) {
    throw std::invalid_argument("solve_intertwiner: no common generators");
  }

  const long long D = d * d;
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  Eigen::MatrixXcd stacked(static_cast<long long>(pairs.size()) * D, D);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    // Column-major vec: vec(W A - B W) = (A^T kron I - I kron B) vec(W).
    stacked.block(static_cast<long long>(i) * D, 0, D, D) =
        Eigen::kroneckerProduct(pairs[i].first.transpose(), id) -
        Eigen::kroneckerProduct(id, pairs[i].second);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  double cutoff = 1e-9 * sigma_max;
  std::vector<Eigen::Index> null_cols;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) <= cutoff) null_cols.push_back(i);
  }

  IntertwinerResult result;
  result.null_dim = static_cast<long long>(null_cols.size());
  if (null_cols.empty()) {
    result.status = IntertwinerStatus::Inequivalent;
    return result;
  }

  std::vector<Eigen::MatrixXcd> candidates;
  for (Eigen::Index i : null_cols) {
    candidates.push_back(unvec(svd.matrixV().col(i), d));
  }
  if (null_cols.size() > 1) {
    Rng rng(seed);
    Eigen::MatrixXcd combo = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t i = 0; i < null_cols.size(); ++i) {
      combo += std::complex<double>(rng.normal(), rng.normal()) * candidates[i];
    }
    candidates.push_back(combo);
  }
  const std::size_t base_count = candidates.size();
  for (std::size_t i = 0; i < base_count; ++i) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> polar(candidates[i],
                                             Eigen::ComputeThinU | Eigen::ComputeThinV);
    candidates.push_back(polar.matrixU() * polar.matrixV().adjoint());
  }

  auto intertwine_residual = [&](const Eigen::MatrixXcd& W) {
    double r = 0.0;
    for (const auto& [A, B] : pairs) r = std::max(r, operator_norm(W * A - B * W));
    return r;
  };

  double best_score = std::numeric_limits<double>::infinity();
  for (const auto& cand : candidates) {
    double scale2 = (cand.adjoint() * cand).trace().real() / static_cast<double>(d);
    if (scale2 < 1e-30) continue;
    Eigen::MatrixXcd w = cand / std::sqrt(scale2);
    double unit = unitarity_residual(w);
    double res = intertwine_residual(w);
    if (unit <= tol && res <= tol) {
      result.status = IntertwinerStatus::UnitaryEquivalent;
      result.witness = phase_canonical(w);
      result.residual = res;
      result.unitarity = unit;
      return result;
    }
    double score = std::max(unit, res);
    if (score < best_score) {
      best_score = score;
      result.residual = res;
      result.unitarity = unit;
    }
  }
  result.status = IntertwinerStatus::Inconclusive;
  return result;
}

std::vector<FreeActionEntry> free_action_probe(const CoveringSpec& spec,
                                               const MatrixRep& rep) {
  std::vector<FreeActionEntry> out;
  for (long long gi = 1; gi < spec.group_order(); ++gi) {
    GroupElement g = group_from_index(spec, gi);
    FreeActionEntry entry;
    entry.g = g;
    entry.result = solve_intertwiner(rep, twisted_rep(spec, g, rep));
    entry.fixed_point = entry.result.status == IntertwinerStatus::UnitaryEquivalent;
    out.push_back(std::move(entry));
  }
  return out;
}

SumRep equivariant_direct_sum(const MatrixRep& rep, const CoveringSpec& spec) {
  if (!theta_matches_mod1(rep.params, TorusParams::real(spec.cover().theta))) {
    throw std::invalid_argument(
        "equivariant_direct_sum: rep does not carry the covering twist");
  }
  const long long order = spec.group_order();
  const long long d = rep.dim;
  const long long total = order * d;
  std::map<std::string, Eigen::MatrixXcd> gens;
  for (const auto& [name, M] : rep.gen_images) {
    long long r = (name == "u") ? 1 : 0;
    long long s = (name == "v") ? 1 : 0;
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(total, total);
    for (long long gi = 0; gi < order; ++gi) {
      GroupElement g = group_from_index(spec, gi);
      big.block(gi * d, gi * d, d, d) = character(spec, g, r, s) * M;
    }
    gens[name] = big;
  }
  SumRep sum;
  sum.spec = spec;
  sum.base_dim = d;
  sum.rep = make_rep(rep.params, std::move(gens));
  sum.perms.reserve(static_cast<std::size_t>(order));
  for (long long gi = 0; gi < order; ++gi) {
    GroupElement g = group_from_index(spec, gi);
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(total, total);
    for (long long i = 0; i < order; ++i) {
      GroupElement gi_elem = group_from_index(spec, i);
      long long j = group_index(spec, group_add(spec, gi_elem, g));
      p.block(i * d, j * d, d, d) = Eigen::MatrixXcd::Identity(d, d);
    }
    sum.perms.push_back(std::move(p));
  }
  return sum;
}

double sum_compatibility_residual(const SumRep& sum, const TorusElement& a) {
  Eigen::MatrixXcd m = evaluate(sum.rep, a);
  double out = 0.0;
  for (long long gi = 0; gi < sum.spec.group_order(); ++gi) {
    GroupElement g = group_from_index(sum.spec, gi);
    Eigen::MatrixXcd moved = evaluate(sum.rep, act(sum.spec, g, a));
    const Eigen::MatrixXcd& p = sum.perms[static_cast<std::size_t>(gi)];
    out = std::max(out, operator_norm(p * m - moved * p));
  }
  return out;
}

Eigen::MatrixXcd invariant_subspace_basis(const SumRep& sum) {
  const long long total = sum.rep.dim;
  std::vector<long long> gen_indices;
  if (sum.spec.m > 1) gen_indices.push_back(group_index(sum.spec, GroupElement{1, 0}));
  if (sum.spec.n > 1) gen_indices.push_back(group_index(sum.spec, GroupElement{0, 1}));
  if (gen_indices.empty()) {
    return Eigen::MatrixXcd::Identity(total, total);
  }
  Eigen::MatrixXcd stacked(static_cast<long long>(gen_indices.size()) * total, total);
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(total, total);
  for (std::size_t i = 0; i < gen_indices.size(); ++i) {
    stacked.block(static_cast<long long>(i) * total, 0, total, total) =
        sum.perms[static_cast<std::size_t>(gen_indices[i])] - id;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  double cutoff = sigma.size() > 0 ? 1e-9 * sigma(0) : 0.0;
  std::vector<Eigen::Index> null_cols;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) <= cutoff) null_cols.push_back(i);
  }
  Eigen::MatrixXcd basis(total, static_cast<long long>(null_cols.size()));
  for (std::size_t i = 0; i < null_cols.size(); ++i) {
    basis.col(static_cast<long long>(i)) = svd.matrixV().col(null_cols[i]);
  }
  return basis;
}

InducedOperator induced_operator(const SumRep& sum, const Eigen::MatrixXcd& basis,
                                 const TorusElement& x) {
  Eigen::MatrixXcd m = evaluate(sum.rep, x);
  InducedOperator out;
  out.matrix = basis.adjoint() * m * basis;
  out.closure_residual = operator_norm(m * basis - basis * out.matrix);
  return out;
}

MoritaReport morita_twist_witness(long long m, long long n, long long k, long long q) {
  if (m < 1 || n < 1 || q < 1 || k < 0) {
    throw std::invalid_argument("morita_twist_witness: need m, n, q >= 1 and k >= 0");
  }
  const long long big = m * n;
  Eigen::MatrixXcd clock = Eigen::MatrixXcd::Zero(big, big);
  for (long long j = 0; j < big; ++j) clock(j, j) = root_of_unity(k * j, big);
  Eigen::MatrixXcd shift = shift_matrix(big);

  MoritaReport report;
  report.m = m;
  report.n = n;
  report.k = k;
  report.q = q;
  report.twist_relation_residual =
      operator_norm(clock * shift - root_of_unity(k, big) * (shift * clock));

  MatrixRep base_rep = clock_shift_rep(1, q);
  MatrixRep twisted = clock_shift_rep(big + k * q, q * big);
  report.base_residual =
      std::max(base_rep.relation_residual, twisted.relation_residual);

  // A B = e^{2 pi i (1/q + k/N)} (v'' (x) V)(u'' (x) U^*) picks up the
  // conjugate twist e^{-2 pi i k/N} from V moving past U^*, leaving exactly
  // the base phase e^{2 pi i / q}.
  Eigen::MatrixXcd a =
      Eigen::kroneckerProduct(twisted.gen_images.at("u"), clock.adjoint().eval());
  Eigen::MatrixXcd b = Eigen::kroneckerProduct(twisted.gen_images.at("v"), shift);
  report.hom_residual = operator_norm(a * b - root_of_unity(1, q) * (b * a));
  return report;
}

Json matrix_to_json(const Eigen::MatrixXcd& M) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) {
      row.push_back(Json::array({M(r, c).real(), M(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument("matrix_from_json: expected a nonempty array of rows");
  }
  const long long rows = static_cast<long long>(j.size());
  const long long cols = static_cast<long long>(j.at(0).size());
  Eigen::MatrixXcd out(rows, cols);
  for (long long r = 0; r < rows; ++r) {
    const Json& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<long long>(row.size()) != cols) {
      throw std::invalid_argument("matrix_from_json: ragged rows");
    }
    for (long long c = 0; c < cols; ++c) {
      const Json& cell = row.at(static_cast<std::size_t>(c));
      if (!cell.is_array() || cell.size() != 2) {
        throw std::invalid_argument("matrix_from_json: entries must be [re, im]");
      }
      out(r, c) = std::complex<double>(cell.at(0).get<double>(),
                                       cell.at(1).get<double>());
    }
  }
  return out;
}

}  // namespace nc
