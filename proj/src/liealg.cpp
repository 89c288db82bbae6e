#include "dcw/liealg.hpp"

#include <stdexcept>

namespace dcw {

namespace {

int epsilon3(int i, int j, int k) {
	if (i == j || j == k || i == k) return 0;
	// parity of the permutation (i j k) of (0 1 2)
	int inv = (i > j) + (i > k) + (j > k);
	return (inv % 2 == 0) ? 1 : -1;
}

LieAlgebraSpec make(GroupKind kind, int dim, const PiScalar& a, const PiScalar& vol,
                    const PiScalar& torus_vol, int b, int c, int torus_rank) {
	LieAlgebraSpec s;
	s.kind = kind;
	s.dim = dim;
	s.a_const = a;
	s.group_volume = vol;
	s.torus_volume = torus_vol;
	s.b_const = b;
	s.c_const = c;
	s.torus_rank = torus_rank;
	s.f.assign(static_cast<size_t>(dim),
	           std::vector<std::vector<PiScalar>>(static_cast<size_t>(dim),
	                                              std::vector<PiScalar>(static_cast<size_t>(dim))));
	if (!a.is_zero())
		for (int i = 0; i < dim; ++i)
			for (int j = 0; j < dim; ++j)
				for (int k = 0; k < dim; ++k)
					if (int e = epsilon3(i, j, k); e != 0)
						s.f[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)] =
						    PiScalar(e) * a;
	s.metric.assign(static_cast<size_t>(dim), std::vector<PiScalar>(static_cast<size_t>(dim)));
	for (int i = 0; i < dim; ++i) s.metric[static_cast<size_t>(i)][static_cast<size_t>(i)] = PiScalar(1);
	return s;
}

}  // namespace

std::string LieAlgebraSpec::name() const { return group_kind_name(kind); }

std::vector<PiScalar> LieAlgebraSpec::bracket(std::span<const PiScalar> x,
                                              std::span<const PiScalar> y) const {
	if (static_cast<int>(x.size()) != dim || static_cast<int>(y.size()) != dim)
		throw std::invalid_argument("bracket: coefficient vector size does not match algebra dimension");
	std::vector<PiScalar> out(static_cast<size_t>(dim));
	for (int a = 0; a < dim; ++a)
		for (int b = 0; b < dim; ++b) {
			const PiScalar& xa = x[static_cast<size_t>(a)];
			const PiScalar& yb = y[static_cast<size_t>(b)];
			if (xa.is_zero() || yb.is_zero()) continue;
			for (int c = 0; c < dim; ++c) {
				const PiScalar& fc = f[static_cast<size_t>(a)][static_cast<size_t>(b)][static_cast<size_t>(c)];
				if (!fc.is_zero()) out[static_cast<size_t>(c)] += fc * xa * yb;
			}
		}
	return out;
}

LieAlgebraSpec build_lie_algebra(GroupKind kind) {
	switch (kind) {
		case GroupKind::U1:
			// volume 1 in the period-one normalization; a = 0, c = a*vol = 0
			return make(GroupKind::U1, 1, PiScalar(0), PiScalar(1), PiScalar(1), 1, 0, 1);
		case GroupKind::Torus2:
			return make(GroupKind::Torus2, 2, PiScalar(0), PiScalar(1), PiScalar(1), 1, 0, 2);
		case GroupKind::SU2:
			// S^3 of radius 1/(2 pi): vol = 2 pi^2 (1/2pi)^3 = 1/(4 pi); c = 4pi * vol = 1
			return make(GroupKind::SU2, 3, PiScalar::pi(1, 4), PiScalar::pi(-1, Rational(1, 4)),
			            PiScalar(1), 2, 1, 1);
		case GroupKind::SO3:
			// SU(2)/{+-1}: half the volume in a metric scaled so a = 2 pi; vol = 1/pi, c = 2
			return make(GroupKind::SO3, 3, PiScalar::pi(1, 2), PiScalar::pi(-1, Rational(1)),
			            PiScalar(1), 1, 2, 1);
	}
	throw std::invalid_argument("build_lie_algebra: unsupported group kind");
}

LieAlgebraSpec build_lie_algebra(std::string_view kind_name) {
	auto k = group_kind_from_name(kind_name);
	if (!k)
		throw std::invalid_argument("build_lie_algebra: unsupported group kind '" + std::string(kind_name) +
		                            "' (expected U1, Torus2, SU2 or SO3)");
	return build_lie_algebra(*k);
}

std::optional<GroupKind> group_kind_from_name(std::string_view name) {
	if (name == "U1") return GroupKind::U1;
	if (name == "Torus2") return GroupKind::Torus2;
	if (name == "SU2") return GroupKind::SU2;
	if (name == "SO3") return GroupKind::SO3;
	return std::nullopt;
}

std::string group_kind_name(GroupKind kind) {
	switch (kind) {
		case GroupKind::U1: return "U1";
		case GroupKind::Torus2: return "Torus2";
		case GroupKind::SU2: return "SU2";
		case GroupKind::SO3: return "SO3";
	}
	return "?";
}

}  // namespace dcw
