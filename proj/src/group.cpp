#include "nc/group.hpp"

namespace nc {

namespace {

long long wrap(long long x, long long mod) {
  long long r = x % mod;
  return r < 0 ? r + mod : r;
}

void require_cover_params(const CoveringSpec& spec, const TorusElement& a,
                          const char* where) {
  if (!(a.params() == spec.cover())) {
    throw std::invalid_argument(std::string(where) +
                                ": element does not carry the covering twist");
  }
}

}  // namespace

GroupElement group_element(const CoveringSpec& spec, long long a, long long b) {
  return GroupElement{wrap(a, spec.m), wrap(b, spec.n)};
}

long long group_index(const CoveringSpec& spec, const GroupElement& g) {
  return g.a * spec.n + g.b;
}

GroupElement group_from_index(const CoveringSpec& spec, long long index) {
  if (index < 0 || index >= spec.group_order()) {
    throw std::invalid_argument("group_from_index: index out of range");
  }
  return GroupElement{index / spec.n, index % spec.n};
}

GroupElement group_add(const CoveringSpec& spec, GroupElement g, GroupElement h) {
  return group_element(spec, g.a + h.a, g.b + h.b);
}

GroupElement group_negate(const CoveringSpec& spec, GroupElement g) {
  return group_element(spec, -g.a, -g.b);
}

std::complex<double> character(const CoveringSpec& spec, GroupElement g, long long r,
                               long long s) {
  return root_of_unity(g.a * r * spec.n + g.b * s * spec.m, spec.m * spec.n);
}

TorusElement act(const CoveringSpec& spec, GroupElement g, const TorusElement& a) {
  require_cover_params(spec, a, "act");
  TorusElement out(a.params());
  for (const auto& [m, c] : a.terms()) {
    out.add_term(m, c * character(spec, g, m.r, m.s));
  }
  return out;
}

TorusElement project_invariant(const CoveringSpec& spec, const TorusElement& a) {
  require_cover_params(spec, a, "project_invariant");
  TorusElement out(a.params());
  for (const auto& [m, c] : a.terms()) {
    if (m.r % spec.m == 0 && m.s % spec.n == 0) out.add_term(m, c);
  }
  return out;
}

TorusElement group_average(const CoveringSpec& spec, const TorusElement& a) {
  require_cover_params(spec, a, "group_average");
  TorusElement sum(a.params());
  for (long long i = 0; i < spec.group_order(); ++i) {
    sum = add(sum, act(spec, group_from_index(spec, i), a));
  }
  return scale(1.0 / static_cast<double>(spec.group_order()), sum);
}

}  // namespace nc
