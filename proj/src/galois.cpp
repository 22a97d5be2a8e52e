#include "nc/galois.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>

#include "nc/rng.hpp"

namespace nc {

TorusElement basis_monomial(const CoveringSpec& spec, long long r, long long s) {
  return TorusElement::monomial(spec.cover(), r, s);
}

EquivariantMap zero_map(const CoveringSpec& spec) {
  EquivariantMap phi{spec, {}};
  phi.values.assign(static_cast<std::size_t>(spec.group_order()),
                    TorusElement::zero(spec.cover()));
  return phi;
}

TensorElement zero_tensor(const CoveringSpec& spec) {
  TensorElement x{spec, {}};
  x.components.assign(static_cast<std::size_t>(spec.group_order()),
                      TorusElement::zero(spec.cover()));
  return x;
}

namespace {

void require_tensor_shape(const TensorElement& x) {
  if (static_cast<long long>(x.components.size()) != x.spec.group_order()) {
    throw std::invalid_argument("TensorElement: wrong component count");
  }
}

void require_map_shape(const EquivariantMap& phi) {
  if (static_cast<long long>(phi.values.size()) != phi.spec.group_order()) {
    throw std::invalid_argument("EquivariantMap: wrong value count");
  }
}

}  // namespace

EquivariantMap can_apply(const TensorElement& x) {
  require_tensor_shape(x);
  const CoveringSpec& spec = x.spec;
  EquivariantMap phi = zero_map(spec);
  for (long long gi = 0; gi < spec.group_order(); ++gi) {
    GroupElement g = group_from_index(spec, gi);
    TorusElement acc = TorusElement::zero(spec.cover());
    for (long long r = 0; r < spec.m; ++r) {
      for (long long s = 0; s < spec.n; ++s) {
        const TorusElement& comp = x.components[static_cast<std::size_t>(r * spec.n + s)];
        if (comp.is_zero()) continue;
        acc = add(acc, mul(comp, act(spec, g, basis_monomial(spec, r, s))));
      }
    }
    phi.values[static_cast<std::size_t>(gi)] = acc;
  }
  return phi;
}

TensorElement can_invert(const EquivariantMap& phi, double check_tol) {
  require_map_shape(phi);
  const CoveringSpec& spec = phi.spec;
  const double inv_order = 1.0 / static_cast<double>(spec.group_order());
  TensorElement x = zero_tensor(spec);
  for (long long r = 0; r < spec.m; ++r) {
    for (long long s = 0; s < spec.n; ++s) {
      TorusElement y = TorusElement::zero(spec.cover());
      for (long long gi = 0; gi < spec.group_order(); ++gi) {
        GroupElement g = group_from_index(spec, gi);
        std::complex<double> w = std::conj(character(spec, g, r, s)) * inv_order;
        y = add(y, scale(w, phi.values[static_cast<std::size_t>(gi)]));
      }
      x.components[static_cast<std::size_t>(r * spec.n + s)] =
          mul(y, adjoint(basis_monomial(spec, r, s)));
    }
  }
  if (check_tol >= 0.0) {
    double residual = map_distance(phi, can_apply(x));
    if (residual > check_tol) {
      throw std::domain_error("can_invert: round-trip residual " +
                              std::to_string(residual) + " exceeds tolerance");
    }
  }
  return x;
}

double map_distance(const EquivariantMap& a, const EquivariantMap& b) {
  require_map_shape(a);
  require_map_shape(b);
  if (!(a.spec == b.spec)) {
    throw std::invalid_argument("map_distance: mismatched covering data");
  }
  double out = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    out = std::max(out, distance(a.values[i], b.values[i]));
  }
  return out;
}

double tensor_distance(const TensorElement& a, const TensorElement& b) {
  require_tensor_shape(a);
  require_tensor_shape(b);
  if (!(a.spec == b.spec)) {
    throw std::invalid_argument("tensor_distance: mismatched covering data");
  }
  double out = 0.0;
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    out = std::max(out, distance(a.components[i], b.components[i]));
  }
  return out;
}

EquivariantMap map_add(const EquivariantMap& a, const EquivariantMap& b) {
  require_map_shape(a);
  require_map_shape(b);
  if (!(a.spec == b.spec)) {
    throw std::invalid_argument("map_add: mismatched covering data");
  }
  EquivariantMap out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = add(out.values[i], b.values[i]);
  }
  return out;
}

TensorElement tensor_add(const TensorElement& a, const TensorElement& b) {
  require_tensor_shape(a);
  require_tensor_shape(b);
  if (!(a.spec == b.spec)) {
    throw std::invalid_argument("tensor_add: mismatched covering data");
  }
  TensorElement out = a;
  for (std::size_t i = 0; i < out.components.size(); ++i) {
    out.components[i] = add(out.components[i], b.components[i]);
  }
  return out;
}

TensorElement module_decompose(const CoveringSpec& spec, const TorusElement& a) {
  if (!(a.params() == spec.cover())) {
    throw std::invalid_argument("module_decompose: element does not carry the covering twist");
  }
  TensorElement x = zero_tensor(spec);
  const TorusParams cover = spec.cover();
  for (const auto& [mono, c] : a.terms()) {
    long long r = mono.r % spec.m;
    if (r < 0) r += spec.m;
    long long s = mono.s % spec.n;
    if (s < 0) s += spec.n;
    long long i = (mono.r - r) / spec.m;
    long long j = (mono.s - s) / spec.n;
    // c u'^R v'^S = [c e^{2 pi i theta' (n j) r} u'^{m i} v'^{n j}] (u'^r v'^s):
    // commuting v'^{n j} past u'^r costs the conjugate phase.
    std::complex<double> coeff = c * theta_phase(cover, spec.n * j * r);
    x.components[static_cast<std::size_t>(r * spec.n + s)].add_term(
        Monomial{spec.m * i, spec.n * j}, coeff);
  }
  return x;
}

TorusElement module_reassemble(const TensorElement& x) {
  require_tensor_shape(x);
  const CoveringSpec& spec = x.spec;
  TorusElement out = TorusElement::zero(spec.cover());
  for (long long r = 0; r < spec.m; ++r) {
    for (long long s = 0; s < spec.n; ++s) {
      const TorusElement& comp = x.components[static_cast<std::size_t>(r * spec.n + s)];
      if (comp.is_zero()) continue;
      out = add(out, mul(comp, basis_monomial(spec, r, s)));
    }
  }
  return out;
}

long long character_matrix_rank(const CoveringSpec& spec, double rel_tol) {
  const long long order = spec.group_order();
  Eigen::MatrixXcd mat(order, order);
  for (long long gi = 0; gi < order; ++gi) {
    GroupElement g = group_from_index(spec, gi);
    for (long long r = 0; r < spec.m; ++r) {
      for (long long s = 0; s < spec.n; ++s) {
        mat(gi, r * spec.n + s) = character(spec, g, r, s);
      }
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(mat);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0) return 0;
  double cutoff = rel_tol * sigma(0);
  long long rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) ++rank;
  }
  return rank;
}

namespace {

constexpr long long kVerifyMaxTerms = 8;

/// One round trip in each direction from the trial's private stream.
std::pair<double, double> verify_trial(const CoveringSpec& spec, long long truncation,
                                       std::uint64_t seed, long long trial) {
  Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(trial));

  TensorElement x = zero_tensor(spec);
  for (long long idx = 0; idx < spec.group_order(); ++idx) {
    x.components[static_cast<std::size_t>(idx)] = embed_cover(
        spec, random_element(spec.base, truncation, kVerifyMaxTerms, rng));
  }
  double forward = tensor_distance(x, can_invert(can_apply(x), -1.0));

  EquivariantMap phi = zero_map(spec);
  for (long long idx = 0; idx < spec.group_order(); ++idx) {
    phi.values[static_cast<std::size_t>(idx)] =
        random_element(spec.cover(), truncation, kVerifyMaxTerms, rng);
  }
  double inverse = map_distance(phi, can_apply(can_invert(phi, -1.0)));

  return {forward, inverse};
}

}  // namespace

GaloisReport verify_galois(const CoveringSpec& spec, long long truncation,
                           long long trials, std::uint64_t seed, double tolerance,
                           ExecPolicy policy) {
  if (trials < 1) throw std::invalid_argument("verify_galois: need at least one trial");
  std::vector<double> forward(static_cast<std::size_t>(trials), 0.0);
  std::vector<double> inverse(static_cast<std::size_t>(trials), 0.0);
  if (policy == ExecPolicy::Parallel) {
#ifdef NC_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long t = 0; t < trials; ++t) {
      auto [f, i] = verify_trial(spec, truncation, seed, t);
      forward[static_cast<std::size_t>(t)] = f;
      inverse[static_cast<std::size_t>(t)] = i;
    }
  } else {
    for (long long t = 0; t < trials; ++t) {
      auto [f, i] = verify_trial(spec, truncation, seed, t);
      forward[static_cast<std::size_t>(t)] = f;
      inverse[static_cast<std::size_t>(t)] = i;
    }
  }
  GaloisReport report;
  report.spec = spec;
  report.rank = character_matrix_rank(spec);
  report.max_residual_forward = *std::max_element(forward.begin(), forward.end());
  report.max_residual_inverse = *std::max_element(inverse.begin(), inverse.end());
  report.tolerance = tolerance;
  report.pass = report.rank == spec.group_order() &&
                report.max_residual_forward < tolerance &&
                report.max_residual_inverse < tolerance;
  return report;
}

}  // namespace nc
