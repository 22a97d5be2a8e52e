#pragma once

#include "nc/torus.hpp"

namespace nc {

/// Element (a, b) of the deck group Z_m x Z_n, stored with 0 <= a < m and
/// 0 <= b < n.
struct GroupElement {
  long long a = 0;
  long long b = 0;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

GroupElement group_element(const CoveringSpec& spec, long long a, long long b);
long long group_index(const CoveringSpec& spec, const GroupElement& g);
GroupElement group_from_index(const CoveringSpec& spec, long long index);
GroupElement group_add(const CoveringSpec& spec, GroupElement g, GroupElement h);
GroupElement group_negate(const CoveringSpec& spec, GroupElement g);
inline bool group_is_identity(const GroupElement& g) { return g.a == 0 && g.b == 0; }

/// chi_{rs}(g) = e^{2 pi i (g.a r / m + g.b s / n)}, evaluated exactly as one
/// mn-th root of unity.
std::complex<double> character(const CoveringSpec& spec, GroupElement g, long long r,
                               long long s);

/// Deck action on the covering algebra: u' -> e^{2 pi i / m} u',
/// v' -> e^{2 pi i / n} v'.  The element must carry the covering twist.
TorusElement act(const CoveringSpec& spec, GroupElement g, const TorusElement& a);

/// Invariant part: the sub-sum of terms with m | r and n | s.
TorusElement project_invariant(const CoveringSpec& spec, const TorusElement& a);

/// |G|^{-1} sum_g act(g, a) — the averaging formula project_invariant must
/// agree with; kept as an independent cross-check.
TorusElement group_average(const CoveringSpec& spec, const TorusElement& a);

}  // namespace nc
