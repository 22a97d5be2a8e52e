#include "nc/partition.hpp"

#include <cmath>
#include <stdexcept>

#include "nc/group.hpp"
#include "nc/phase.hpp"

namespace nc {

namespace {

/// Band-limited window pair whose n cyclic translates form the partition.
/// The pair is chosen so that every discrete frequency class mod n carries
/// total squared weight exactly 1/n; the translate identities
/// sum_a w(psi - 2 pi a / n)^2 = 1 (over both windows) and the vanishing of
/// every nontrivially rotated cross sum then hold as trigonometric identities,
/// not just approximately.  Highest frequency is n, so any Fourier truncation
/// at degree >= n captures the windows exactly.
void window_pair(long long n, double psi, double& w1, double& w2) {
  const double inv = 1.0 / static_cast<double>(n);
  if (n % 2 == 0) {
    const long long half = n / 2;
    double acc = 1.0;
    for (long long j = 1; j < half; ++j) acc += 2.0 * std::cos(static_cast<double>(j) * psi);
    acc += std::cos(static_cast<double>(half) * psi);
    w1 = acc * inv;
    w2 = std::sin(static_cast<double>(half) * psi) * inv;
  } else {
    double acc = std::cos(static_cast<double>(n) * psi);
    for (long long j = 1; j <= (n - 1) / 2; ++j) {
      acc += 2.0 * std::cos(static_cast<double>(j) * psi);
    }
    w1 = acc * inv;
    w2 = std::sin(static_cast<double>(n) * psi) * inv;
  }
}

/// Truncated Fourier synthesis of a sampled function as a Laurent polynomial
/// in one of the two generators (u' when `first_generator`, else v').  The
/// windows are band-limited, so every coefficient beyond their bandwidth is
/// rounding noise; coefficients twelve orders below the largest one are
/// dropped, which keeps the synthesized polynomials as sparse as the windows
/// themselves instead of quadratically inflating every later product.
TorusElement fourier_element(const std::vector<double>& samples, const TorusParams& params,
                             bool first_generator, long long degree, ExecPolicy policy) {
  auto coeffs = dft_truncated(samples, degree, policy);
  double cmax = 0.0;
  for (const auto& c : coeffs) cmax = std::max(cmax, std::abs(c));
  const double drop = cmax * 1e-12;
  TorusElement out(params);
  for (long long k = -degree; k <= degree; ++k) {
    std::complex<double> c = coeffs[static_cast<std::size_t>(k + degree)];
    if (std::abs(c) <= drop) continue;
    if (first_generator) {
      out.add_term(Monomial{k, 0}, c);
    } else {
      out.add_term(Monomial{0, k}, c);
    }
  }
  return out;
}

}  // namespace

PartitionOfUnity build_partition_of_unity(long long n_sheets, long long grid_size) {
  if (n_sheets < 1) {
    throw std::invalid_argument("build_partition_of_unity: n_sheets must be positive");
  }
  if (grid_size <= 2 * n_sheets) {
    throw std::invalid_argument(
        "build_partition_of_unity: grid_size must exceed 2 * n_sheets to resolve the windows");
  }
  PartitionOfUnity p;
  p.n_sheets = n_sheets;
  p.grid_size = grid_size;
  p.functions.assign(static_cast<std::size_t>(2 * n_sheets),
                     std::vector<double>(static_cast<std::size_t>(grid_size)));
  for (long long a = 0; a < n_sheets; ++a) {
    const double offset = kTwoPi * static_cast<double>(a) / static_cast<double>(n_sheets);
    for (long long t = 0; t < grid_size; ++t) {
      double psi = kTwoPi * static_cast<double>(t) / static_cast<double>(grid_size);
      double w1 = 0.0, w2 = 0.0;
      window_pair(n_sheets, psi - offset, w1, w2);
      p.functions[static_cast<std::size_t>(2 * a)][static_cast<std::size_t>(t)] = w1;
      p.functions[static_cast<std::size_t>(2 * a + 1)][static_cast<std::size_t>(t)] = w2;
    }
  }
  return p;
}

namespace {

/// Rotating by l sheets sends translate a of each window onto translate
/// (a + l) mod n of the same window.
std::vector<std::size_t> rotation_pairing(long long n_sheets, long long l) {
  std::vector<std::size_t> pairing(static_cast<std::size_t>(2 * n_sheets));
  for (long long a = 0; a < n_sheets; ++a) {
    long long b = (a + l) % n_sheets;
    pairing[static_cast<std::size_t>(2 * a)] = static_cast<std::size_t>(2 * b);
    pairing[static_cast<std::size_t>(2 * a + 1)] = static_cast<std::size_t>(2 * b + 1);
  }
  return pairing;
}

}  // namespace

PartitionResiduals partition_residuals(const PartitionOfUnity& p, ExecPolicy policy) {
  PartitionResiduals out;
  out.unit = partition_unit_residual(p.functions, policy);
  for (long long l = 1; l < p.n_sheets; ++l) {
    out.rotation = std::max(out.rotation, partition_pairing_residual(
                                              p.functions, rotation_pairing(p.n_sheets, l),
                                              policy));
  }
  return out;
}

ABSystem assemble_ab(const PartitionOfUnity& x, const PartitionOfUnity& y,
                     const CoveringSpec& spec, long long fourier_degree,
                     ExecPolicy policy) {
  if (x.n_sheets != spec.m || y.n_sheets != spec.n) {
    throw std::invalid_argument(
        "assemble_ab: partitions must match the sheet counts m and n");
  }
  if (fourier_degree < std::max(spec.m, spec.n)) {
    throw std::invalid_argument(
        "assemble_ab: Fourier degree below the window bandwidth");
  }
  const TorusParams cover = spec.cover();
  std::vector<TorusElement> xs;
  xs.reserve(x.functions.size());
  for (const auto& f : x.functions) {
    xs.push_back(fourier_element(f, cover, true, fourier_degree, policy));
  }
  std::vector<TorusElement> ys;
  ys.reserve(y.functions.size());
  for (const auto& f : y.functions) {
    ys.push_back(fourier_element(f, cover, false, fourier_degree, policy));
  }
  ABSystem system;
  system.spec = spec;
  for (const auto& yj : ys) {
    for (const auto& xi : xs) {
      system.a_list.push_back(mul(yj, xi));
      system.b_list.push_back(mul(xi, yj));
    }
  }
  return system;
}

ABResiduals ab_residuals(const ABSystem& system) {
  if (system.a_list.size() != system.b_list.size()) {
    throw std::invalid_argument("ab_residuals: list lengths differ");
  }
  const CoveringSpec& spec = system.spec;
  const TorusParams cover = spec.cover();
  ABResiduals out;
  for (long long gi = 0; gi < spec.group_order(); ++gi) {
    GroupElement g = group_from_index(spec, gi);
    TorusElement acc = TorusElement::zero(cover);
    for (std::size_t k = 0; k < system.a_list.size(); ++k) {
      acc = add(acc, mul(system.a_list[k], act(spec, g, system.b_list[k])));
    }
    if (group_is_identity(g)) {
      out.unit = distance(acc, TorusElement::one(cover));
    } else {
      out.rotation = std::max(out.rotation, coeff_norm(acc));
    }
  }
  return out;
}

}  // namespace nc
