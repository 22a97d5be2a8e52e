#pragma once

#include <cstdint>
#include <vector>

#include "nc/group.hpp"
#include "nc/kernels.hpp"

namespace nc {

/// Total map from the deck group to the covering algebra, indexed by
/// group_index.
struct EquivariantMap {
  CoveringSpec spec;
  std::vector<TorusElement> values;
};

/// Element sum_{0<=r<m, 0<=s<n} a_{rs} (x) u'^r v'^s of the balanced tensor
/// square, stored by its coordinates over the free right-module basis
/// u'^r v'^s; component index is r*n + s.
struct TensorElement {
  CoveringSpec spec;
  std::vector<TorusElement> components;
};

/// u'^r v'^s as a covering-algebra element.
TorusElement basis_monomial(const CoveringSpec& spec, long long r, long long s);

EquivariantMap zero_map(const CoveringSpec& spec);
TensorElement zero_tensor(const CoveringSpec& spec);

/// The forward map x = sum a_{rs} (x) u'^r v'^s  |->
/// (g |-> sum a_{rs} * (g . u'^r v'^s)).
EquivariantMap can_apply(const TensorElement& x);

/// Character inversion over the abelian deck group: the (r, s) component is
/// [ |G|^{-1} sum_g conj(chi_{rs}(g)) phi(g) ] * (u'^r v'^s)^*.
/// With check_tol >= 0 the round trip is re-applied and a residual above
/// check_tol throws std::domain_error.
TensorElement can_invert(const EquivariantMap& phi, double check_tol = 1e-10);

double map_distance(const EquivariantMap& a, const EquivariantMap& b);
double tensor_distance(const TensorElement& a, const TensorElement& b);

EquivariantMap map_add(const EquivariantMap& a, const EquivariantMap& b);
TensorElement tensor_add(const TensorElement& a, const TensorElement& b);

/// Coordinates of a covering-algebra element over the free-module basis:
/// a = sum_{rs} a_{rs} u'^r v'^s with every a_{rs} in the embedded base
/// algebra.  Exact and unique.
TensorElement module_decompose(const CoveringSpec& spec, const TorusElement& a);

/// sum_{rs} components[rs] * u'^r v'^s — the reassembly the decomposition must
/// invert.
TorusElement module_reassemble(const TensorElement& x);

/// Numerical rank of the |G| x |G| character matrix [chi_{rs}(g)]; equals the
/// free-module rank when the basis monomials are independent.
long long character_matrix_rank(const CoveringSpec& spec, double rel_tol = 1e-9);

struct GaloisReport {
  CoveringSpec spec;
  long long rank = 0;
  double max_residual_forward = 0.0;
  double max_residual_inverse = 0.0;
  double tolerance = 1e-10;
  bool pass = false;
};

/// Round-trip verification over `trials` random inputs of degree <= truncation
/// in both directions, plus the free-module rank.  Deterministic for a fixed
/// seed under either execution policy.
GaloisReport verify_galois(const CoveringSpec& spec, long long truncation,
                           long long trials, std::uint64_t seed,
                           double tolerance = 1e-10,
                           ExecPolicy policy = ExecPolicy::Serial);

}  // namespace nc
