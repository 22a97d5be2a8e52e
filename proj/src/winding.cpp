#include "nc/winding.hpp"

#include <algorithm>
#include <cmath>

#include "nc/phase.hpp"
#include "nc/spectral.hpp"

namespace nc {

namespace {

constexpr long long kMinSamples = 16;
constexpr double kModulusTol = 1e-8;
constexpr double kPi = kTwoPi / 2.0;

std::complex<double> unit_pow(std::complex<double> z, long long n) {
  std::complex<double> base = n >= 0 ? z : std::conj(z);
  long long e = n >= 0 ? n : -n;
  std::complex<double> acc(1.0, 0.0);
  for (long long i = 0; i < e; ++i) acc *= base;
  return acc;
}

}  // namespace

SampledLoop make_loop(std::vector<std::complex<double>> samples) {
  if (static_cast<long long>(samples.size()) < kMinSamples) {
    throw std::invalid_argument("make_loop: need at least 16 samples");
  }
  for (const auto& z : samples) {
    if (std::abs(std::abs(z) - 1.0) > kModulusTol) {
      throw std::invalid_argument("make_loop: samples must have unit modulus");
    }
  }
  return SampledLoop{std::move(samples)};
}

SampledLoop generator_loop(long long samples) {
  if (samples < kMinSamples) {
    throw std::invalid_argument("generator_loop: need at least 16 samples");
  }
  std::vector<std::complex<double>> out(static_cast<std::size_t>(samples));
  for (long long t = 0; t < samples; ++t) {
    out[static_cast<std::size_t>(t)] = root_of_unity(t, samples);
  }
  return SampledLoop{std::move(out)};
}

SampledLoop constant_loop(std::complex<double> z, long long samples) {
  if (samples < kMinSamples) {
    throw std::invalid_argument("constant_loop: need at least 16 samples");
  }
  if (std::abs(std::abs(z) - 1.0) > kModulusTol) {
    throw std::invalid_argument("constant_loop: value must have unit modulus");
  }
  return SampledLoop{std::vector<std::complex<double>>(
      static_cast<std::size_t>(samples), z)};
}

SampledLoop power_loop(const SampledLoop& loop, long long n) {
  SampledLoop out;
  out.samples.reserve(loop.samples.size());
  for (const auto& z : loop.samples) out.samples.push_back(unit_pow(z, n));
  return out;
}

SampledLoop product_loop(const SampledLoop& a, const SampledLoop& b) {
  if (a.samples.size() != b.samples.size()) {
    throw std::invalid_argument("product_loop: sample counts differ");
  }
  SampledLoop out;
  out.samples.reserve(a.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    out.samples.push_back(a.samples[i] * b.samples[i]);
  }
  return out;
}

WindingDetail winding_detail(const SampledLoop& loop, ExecPolicy policy) {
  if (loop.samples.empty()) {
    throw std::invalid_argument("winding_detail: empty loop");
  }
  auto [sum, max_step] = winding_increments(loop.samples, policy);
  if (max_step > kPi - 1e-9) {
    throw aliasing_error(max_step,
                         "winding: consecutive step of " + std::to_string(max_step) +
                             " rad is inside the unwrap ambiguity zone");
  }
  WindingDetail detail;
  detail.angle_sum = sum;
  detail.max_step = max_step;
  double turns = sum / kTwoPi;
  detail.winding = std::llround(turns);
  detail.round_defect = std::abs(turns - static_cast<double>(detail.winding));
  return detail;
}

long long winding_number(const SampledLoop& loop, ExecPolicy policy) {
  return winding_detail(loop, policy).winding;
}

long long phi_K_of_cover(long long n, long long samples, ExecPolicy policy) {
  if (n < 1) throw std::invalid_argument("phi_K_of_cover: n must be positive");
  if (samples < kMinSamples * n) {
    throw std::invalid_argument("phi_K_of_cover: need at least 16 n samples");
  }
  return winding_number(power_loop(generator_loop(samples), n), policy);
}

long long cone_class(const SampledLoop& loop, long long n, ExecPolicy policy) {
  if (n < 1) throw std::invalid_argument("cone_class: n must be positive");
  long long w = winding_number(loop, policy) % n;
  if (w < 0) w += n;
  return w;
}

double loop_spectrum_gap(const SampledLoop& loop) {
  if (loop.samples.empty()) {
    throw std::invalid_argument("loop_spectrum_gap: empty loop");
  }
  std::vector<double> angles;
  angles.reserve(loop.samples.size());
  for (const auto& z : loop.samples) {
    double a = std::atan2(z.imag(), z.real());
    if (a < 0.0) a += kTwoPi;
    angles.push_back(a);
  }
  std::sort(angles.begin(), angles.end());
  return max_circular_gap(angles);
}

double circle_span_distance(const TorusElement& a, long long n, long long truncation) {
  if (n < 1) throw std::invalid_argument("circle_span_distance: n must be positive");
  if (truncation < 0) {
    throw std::invalid_argument("circle_span_distance: negative truncation");
  }
  double off2 = 0.0;
  for (const auto& [mono, c] : a.terms()) {
    if (mono.s != 0) {
      throw std::invalid_argument(
          "circle_span_distance: element is not a one-variable circle element");
    }
    bool in_span = (mono.r % n == 0) && (std::llabs(mono.r) <= truncation);
    if (!in_span) off2 += std::norm(c);
  }
  return std::sqrt(off2);
}

ConePath make_cone_path(long long n, std::vector<TorusElement> t_samples) {
  if (n < 1) throw std::invalid_argument("make_cone_path: n must be positive");
  if (t_samples.empty()) {
    throw std::invalid_argument("make_cone_path: need at least the t = 0 sample");
  }
  for (std::size_t i = 1; i < t_samples.size(); ++i) {
    require_same_params(t_samples[0], t_samples[i]);
  }
  return ConePath{n, std::move(t_samples)};
}

ConeMembership cone_membership(const ConePath& path, long long truncation, double tol) {
  ConeMembership out;
  out.distance = circle_span_distance(path.t_samples.front(), path.n, truncation);
  out.member = out.distance < tol;
  return out;
}

Json loop_to_json(const SampledLoop& loop) {
  Json arr = Json::array();
  for (const auto& z : loop.samples) {
    arr.push_back(Json::array({z.real(), z.imag()}));
  }
  return arr;
}

SampledLoop loop_from_json(const Json& j) {
  if (!j.is_array()) {
    throw std::invalid_argument("loop_from_json: expected an array of [re, im]");
  }
  std::vector<std::complex<double>> samples;
  samples.reserve(j.size());
  for (const auto& cell : j) {
    if (!cell.is_array() || cell.size() != 2) {
      throw std::invalid_argument("loop_from_json: entries must be [re, im]");
    }
    samples.emplace_back(cell.at(0).get<double>(), cell.at(1).get<double>());
  }
  return make_loop(std::move(samples));
}

}  // namespace nc
