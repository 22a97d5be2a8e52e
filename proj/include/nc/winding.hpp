#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nc/json_io.hpp"
#include "nc/kernels.hpp"
#include "nc/torus.hpp"

namespace nc {

/// Cyclic list of unit-modulus samples of a circle-valued loop; at least 16
/// samples, and admissible only while consecutive angular steps stay strictly
/// below pi.
struct SampledLoop {
  std::vector<std::complex<double>> samples;
};

/// Raised when a consecutive angular step reaches the unwrap ambiguity zone.
class aliasing_error : public std::runtime_error {
 public:
  aliasing_error(double max_step, const std::string& what)
      : std::runtime_error(what), max_step_(max_step) {}
  double max_step() const { return max_step_; }

 private:
  double max_step_;
};

/// Validates modulus (within 1e-8) and minimum length 16.
SampledLoop make_loop(std::vector<std::complex<double>> samples);

/// z(t) = e^{2 pi i t / samples} on the uniform grid, via canonical roots of
/// unity.
SampledLoop generator_loop(long long samples);

SampledLoop constant_loop(std::complex<double> z, long long samples);

/// Pointwise integer power — the image of the loop under u -> u^n; negative n
/// uses conjugates.
SampledLoop power_loop(const SampledLoop& loop, long long n);

/// Pointwise product; lengths must agree.
SampledLoop product_loop(const SampledLoop& a, const SampledLoop& b);

struct WindingDetail {
  long long winding = 0;
  double angle_sum = 0.0;     // total lifted angle, index-order accumulation
  double max_step = 0.0;      // largest |increment| seen
  double round_defect = 0.0;  // |angle_sum / 2 pi - winding|
};

/// Principal-branch winding computation; throws aliasing_error (with the step
/// reported) instead of silently unwrapping ambiguous jumps.
WindingDetail winding_detail(const SampledLoop& loop,
                             ExecPolicy policy = ExecPolicy::Serial);

long long winding_number(const SampledLoop& loop,
                         ExecPolicy policy = ExecPolicy::Serial);

/// Winding of the generator loop pushed through the n-fold circle cover
/// u -> u^n; equals n.  Requires samples >= 16 n.
long long phi_K_of_cover(long long n, long long samples,
                         ExecPolicy policy = ExecPolicy::Serial);

/// winding_number(loop) reduced into [0, n) — the class of the loop in the
/// Z_n bookkeeping of the n-fold cover's mapping cone.
long long cone_class(const SampledLoop& loop, long long n,
                     ExecPolicy policy = ExecPolicy::Serial);

/// Largest circular gap between sample angles (proxy for spectral fill).
double loop_spectrum_gap(const SampledLoop& loop);

/// Coefficient-space distance of a one-variable Laurent polynomial in u from
/// span{u^{k n} : |k n| <= truncation}.  Elements with any v power are
/// rejected.
double circle_span_distance(const TorusElement& a, long long n, long long truncation);

/// Path model of a mapping-cone element: only the boundary sample at t = 0 is
/// constrained (it must land in the subalgebra generated by u^n).
struct ConePath {
  long long n = 1;
  std::vector<TorusElement> t_samples;
};

ConePath make_cone_path(long long n, std::vector<TorusElement> t_samples);

struct ConeMembership {
  double distance = 0.0;
  bool member = false;
};

/// Boundary-condition check: distance of the t = 0 sample from the u^n span.
ConeMembership cone_membership(const ConePath& path, long long truncation = 64,
                               double tol = 1e-8);

Json loop_to_json(const SampledLoop& loop);
SampledLoop loop_from_json(const Json& j);

}  // namespace nc
