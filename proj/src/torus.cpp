#include "nc/torus.hpp"

#include <algorithm>
#include <cmath>

namespace nc {

TorusElement TorusElement::monomial(const TorusParams& p, long long r, long long s,
                                    Coeff c) {
  TorusElement e(p);
  e.add_term(Monomial{r, s}, c);
  return e;
}

TorusElement::Coeff TorusElement::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Coeff(0.0, 0.0) : it->second;
}

void TorusElement::add_term(const Monomial& m, Coeff c) {
  if (c == Coeff(0.0, 0.0)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Coeff(0.0, 0.0)) terms_.erase(it);
  }
}

long long TorusElement::degree() const {
  long long d = 0;
  for (const auto& [m, c] : terms_) {
    d = std::max({d, std::llabs(m.r), std::llabs(m.s)});
  }
  return d;
}

void require_same_params(const TorusElement& a, const TorusElement& b) {
  if (!(a.params() == b.params())) {
    throw std::invalid_argument("torus elements carry different twist parameters");
  }
}

TorusElement add(const TorusElement& a, const TorusElement& b) {
  require_same_params(a, b);
  TorusElement out = a;
  for (const auto& [m, c] : b.terms()) out.add_term(m, c);
  return out;
}

TorusElement sub(const TorusElement& a, const TorusElement& b) {
  require_same_params(a, b);
  TorusElement out = a;
  for (const auto& [m, c] : b.terms()) out.add_term(m, -c);
  return out;
}

TorusElement scale(std::complex<double> c, const TorusElement& a) {
  TorusElement out(a.params());
  if (c == std::complex<double>(0.0, 0.0)) return out;
  for (const auto& [m, coeff] : a.terms()) out.add_term(m, c * coeff);
  return out;
}

TorusElement mul(const TorusElement& a, const TorusElement& b) {
  require_same_params(a, b);
  TorusElement out(a.params());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      std::complex<double> phase = theta_phase(a.params(), -ma.s * mb.r);
      out.add_term(Monomial{ma.r + mb.r, ma.s + mb.s}, ca * cb * phase);
    }
  }
  return out;
}

TorusElement adjoint(const TorusElement& a) {
  TorusElement out(a.params());
  for (const auto& [m, c] : a.terms()) {
    std::complex<double> phase = theta_phase(a.params(), -m.r * m.s);
    out.add_term(Monomial{-m.r, -m.s}, std::conj(c) * phase);
  }
  return out;
}

std::complex<double> trace_tau0(const TorusElement& a) {
  return a.coeff(Monomial{0, 0});
}

double l2_norm(const TorusElement& a) {
  std::complex<double> t = trace_tau0(mul(adjoint(a), a));
  double re = t.real();
  return re > 0.0 ? std::sqrt(re) : 0.0;
}

double coeff_norm(const TorusElement& a) {
  double sum = 0.0;
  for (const auto& [m, c] : a.terms()) sum += std::norm(c);
  return std::sqrt(sum);
}

double distance(const TorusElement& a, const TorusElement& b) {
  return coeff_norm(sub(a, b));
}

bool approx_equal(const TorusElement& a, const TorusElement& b, double eps) {
  if (!(a.params() == b.params())) return false;
  TorusElement d = sub(a, b);
  for (const auto& [m, c] : d.terms()) {
    if (std::abs(c) > eps) return false;
  }
  return true;
}

CoveringSpec::CoveringSpec(long long m_, long long n_, long long k_, TorusParams base_)
    : m(m_), n(n_), k(k_), base(base_) {
  if (m < 1 || n < 1) throw std::invalid_argument("CoveringSpec: m and n must be >= 1");
  if (k < 0 || k >= m * n) {
    throw std::invalid_argument("CoveringSpec: k must satisfy 0 <= k < m n");
  }
}

TorusParams CoveringSpec::cover() const {
  if (base.exact) {
    const Rational& r = *base.exact;
    return TorusParams::rational(r.num + k * r.den, r.den * m * n);
  }
  return TorusParams::real((base.theta + static_cast<double>(k)) /
                           static_cast<double>(m * n));
}

TorusElement embed_cover(const CoveringSpec& spec, const TorusElement& a) {
  if (!(a.params() == spec.base)) {
    throw std::invalid_argument("embed_cover: element does not carry the base twist");
  }
  TorusElement out(spec.cover());
  for (const auto& [m, c] : a.terms()) {
    out.add_term(Monomial{spec.m * m.r, spec.n * m.s}, c);
  }
  return out;
}

bool in_embedded_image(const CoveringSpec& spec, const TorusElement& a) {
  if (!(a.params() == spec.cover())) return false;
  for (const auto& [m, c] : a.terms()) {
    if (m.r % spec.m != 0 || m.s % spec.n != 0) return false;
  }
  return true;
}

TorusElement pullback_cover(const CoveringSpec& spec, const TorusElement& a) {
  if (!in_embedded_image(spec, a)) {
    throw std::invalid_argument("pullback_cover: element is not in the embedded image");
  }
  TorusElement out(spec.base);
  for (const auto& [m, c] : a.terms()) {
    out.add_term(Monomial{m.r / spec.m, m.s / spec.n}, c);
  }
  return out;
}

}  // namespace nc
