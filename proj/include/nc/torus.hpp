#pragma once

#include <compare>
#include <complex>
#include <map>

#include "nc/phase.hpp"

namespace nc {

/// Exponent pair of a normal-ordered monomial u^r v^s.
struct Monomial {
  long long r = 0;
  long long s = 0;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Finite twisted Laurent polynomial sum c_{rs} u^r v^s over a fixed twist
/// parameter.  Terms are kept in normal order (all u powers to the left) under
/// the relation u v = e^{2 pi i theta} v u, and coefficients that are exactly
/// zero are never stored.
class TorusElement {
 public:
  using Coeff = std::complex<double>;
  using TermMap = std::map<Monomial, Coeff>;

  TorusElement() = default;
  explicit TorusElement(TorusParams params) : params_(params) {}

  static TorusElement zero(const TorusParams& p) { return TorusElement(p); }
  static TorusElement one(const TorusParams& p) { return monomial(p, 0, 0, 1.0); }
  static TorusElement u(const TorusParams& p) { return monomial(p, 1, 0, 1.0); }
  static TorusElement v(const TorusParams& p) { return monomial(p, 0, 1, 1.0); }
  static TorusElement monomial(const TorusParams& p, long long r, long long s,
                               Coeff c = Coeff(1.0, 0.0));

  const TorusParams& params() const { return params_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Coeff coeff(const Monomial& m) const;

  /// Accumulates c onto the coefficient of m, pruning exact zeros.
  void add_term(const Monomial& m, Coeff c);

  /// Largest max(|r|, |s|) over stored terms; 0 for the zero element.
  long long degree() const;

 private:
  TorusParams params_{};
  TermMap terms_;
};

/// Throws std::invalid_argument when the two elements carry different twist
/// parameters.
void require_same_params(const TorusElement& a, const TorusElement& b);

TorusElement add(const TorusElement& a, const TorusElement& b);
TorusElement sub(const TorusElement& a, const TorusElement& b);
TorusElement scale(std::complex<double> c, const TorusElement& a);

/// Normal-ordered product: on monomials,
/// (u^r v^s)(u^p v^q) = e^{-2 pi i theta s p} u^{r+p} v^{s+q}.
TorusElement mul(const TorusElement& a, const TorusElement& b);

/// Conjugate-linear involution with (u^r v^s)^* = e^{-2 pi i theta r s} u^{-r} v^{-s}.
TorusElement adjoint(const TorusElement& a);

/// Coefficient of u^0 v^0.
std::complex<double> trace_tau0(const TorusElement& a);

/// sqrt(trace_tau0(a^* a)).
double l2_norm(const TorusElement& a);

/// Euclidean norm of the coefficient vector (equal to l2_norm up to rounding).
double coeff_norm(const TorusElement& a);

/// coeff_norm(a - b).
double distance(const TorusElement& a, const TorusElement& b);

/// Per-coefficient comparison over the union of supports; requires equal
/// parameters.
bool approx_equal(const TorusElement& a, const TorusElement& b, double eps = 1e-12);

/// Data of one covering embedding: u -> u'^m, v -> v'^n with twist
/// theta' = (theta + k)/(mn) upstairs and deck group Z_m x Z_n.
struct CoveringSpec {
  long long m = 1;
  long long n = 1;
  long long k = 0;
  TorusParams base{};

  CoveringSpec() = default;
  CoveringSpec(long long m, long long n, long long k, TorusParams base);

  /// Twist parameter (theta + k)/(mn) of the covering algebra, exact when the
  /// base parameter is exact.
  TorusParams cover() const;

  long long group_order() const { return m * n; }

  friend bool operator==(const CoveringSpec& a, const CoveringSpec& b) {
    return a.m == b.m && a.n == b.n && a.k == b.k && a.base == b.base;
  }
};

/// Pushes a base element through the covering embedding: term (r, s) lands on
/// (m r, n s) with an unchanged coefficient (the re-normal-ordering phase is an
/// integer power of e^{2 pi i k} and drops out).
TorusElement embed_cover(const CoveringSpec& spec, const TorusElement& a);

/// True when every term of the cover element has m | r and n | s.
bool in_embedded_image(const CoveringSpec& spec, const TorusElement& a);

/// Inverse of embed_cover on its image; throws std::invalid_argument off it.
TorusElement pullback_cover(const CoveringSpec& spec, const TorusElement& a);

}  // namespace nc
