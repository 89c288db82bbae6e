#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dcw/pi_scalar.hpp"

namespace dcw {

/// The compact groups the engine knows about.  Structure constants carry the
/// 2*pi factors of the period-one exponential-coordinate normalization:
/// [xi_i, xi_j] = a * eps_{ijk} xi_k with a = 4*pi for SU(2), 2*pi for SO(3),
/// and everything abelian for U(1) and the 2-torus.
enum class GroupKind { U1, Torus2, SU2, SO3 };

struct LieAlgebraSpec {
	GroupKind kind;
	int dim = 0;                                       // m: number of generators
	std::vector<std::vector<std::vector<PiScalar>>> f; // f[a][b][c] = f^c_{ab}
	std::vector<std::vector<PiScalar>> metric;         // ad-invariant inner product (identity basis)
	PiScalar a_const;        // bracket scale: [xi_i,xi_j] = a eps_{ijk} xi_k
	PiScalar group_volume;   // Haar volume in the induced metric
	PiScalar torus_volume;   // volume of the maximal torus
	int b_const = 1;         // rotation speed of the coadjoint sphere per period of exp(t xi_1)
	int c_const = 1;         // c = a * group_volume
	int torus_rank = 0;      // rank of the chosen maximal torus (generator indices 0..rank-1)

	std::string name() const;
	bool abelian() const { return kind == GroupKind::U1 || kind == GroupKind::Torus2; }

	/// [x,y]^c = f^c_{ab} x^a y^b for coefficient vectors
	std::vector<PiScalar> bracket(std::span<const PiScalar> x, std::span<const PiScalar> y) const;
};

/// Construct the tables for one of the supported kinds.  The structure
/// constants, metric, volumes and the b/c constants are pinned here and
/// cross-checked by the test suite (antisymmetry, Jacobi, ad-invariance of
/// the metric, and c = a * volume).
LieAlgebraSpec build_lie_algebra(GroupKind kind);

/// Throws std::invalid_argument for names outside {U1, Torus2, SU2, SO3}.
LieAlgebraSpec build_lie_algebra(std::string_view kind_name);

std::optional<GroupKind> group_kind_from_name(std::string_view name);
std::string group_kind_name(GroupKind kind);

}  // namespace dcw
