#include <doctest.h>

#include <vector>

#include "dcw/liealg.hpp"
#include "dcw/rng.hpp"

using namespace dcw;

namespace {

std::vector<PiScalar> basis_vec(int dim, int a) {
	std::vector<PiScalar> v(static_cast<size_t>(dim));
	v[static_cast<size_t>(a)] = PiScalar(1);
	return v;
}

std::vector<PiScalar> random_vec(const LieAlgebraSpec& g, Rng& rng) {
	std::vector<PiScalar> v(static_cast<size_t>(g.dim));
	for (auto& c : v) c = PiScalar(rng.rational());
	return v;
}

std::vector<PiScalar> add(const std::vector<PiScalar>& x, const std::vector<PiScalar>& y) {
	std::vector<PiScalar> r = x;
	for (size_t i = 0; i < r.size(); ++i) r[i] += y[i];
	return r;
}

bool all_zero(const std::vector<PiScalar>& v) {
	for (const auto& c : v)
		if (!c.is_zero()) return false;
	return true;
}

}  // namespace

TEST_CASE("constants table") {
	auto u1 = build_lie_algebra(GroupKind::U1);
	CHECK(u1.dim == 1);
	CHECK(u1.a_const.is_zero());
	CHECK(u1.group_volume == PiScalar(1));
	CHECK(u1.c_const == 0);

	auto t2 = build_lie_algebra(GroupKind::Torus2);
	CHECK(t2.dim == 2);
	CHECK(t2.abelian());

	auto su2 = build_lie_algebra(GroupKind::SU2);
	CHECK(su2.dim == 3);
	CHECK(su2.a_const == PiScalar::pi(1, Rational(4)));
	CHECK(su2.group_volume == PiScalar::pi(-1, Rational(1, 4)));
	CHECK(su2.b_const == 2);
	CHECK(su2.c_const == 1);
	CHECK(su2.f[0][1][2] == PiScalar::pi(1, Rational(4)));  // [xi_1, xi_2] = 4 pi xi_3
	CHECK(su2.f[1][0][2] == PiScalar::pi(1, Rational(-4)));

	auto so3 = build_lie_algebra(GroupKind::SO3);
	CHECK(so3.a_const == PiScalar::pi(1, Rational(2)));
	CHECK(so3.group_volume == PiScalar::pi(-1));
	CHECK(so3.b_const == 1);
	CHECK(so3.c_const == 2);
}

TEST_CASE("c = a * volume for every kind") {
	for (auto kind : {GroupKind::U1, GroupKind::Torus2, GroupKind::SU2, GroupKind::SO3}) {
		auto g = build_lie_algebra(kind);
		CHECK(g.a_const * g.group_volume == PiScalar(g.c_const));
	}
}

TEST_CASE("structure constants: antisymmetry and metric ad-invariance") {
	for (auto kind : {GroupKind::U1, GroupKind::Torus2, GroupKind::SU2, GroupKind::SO3}) {
		auto g = build_lie_algebra(kind);
		for (int a = 0; a < g.dim; ++a)
			for (int b = 0; b < g.dim; ++b)
				for (int c = 0; c < g.dim; ++c) {
					auto fabc = g.f[a][b][c];
					CHECK(fabc == -g.f[b][a][c]);
				}
		// <[x_a, x_b], x_c> + <x_b, [x_a, x_c]> = 0 with the identity metric:
		// f^c_{ab} + f^b_{ac} = 0
		for (int a = 0; a < g.dim; ++a)
			for (int b = 0; b < g.dim; ++b)
				for (int c = 0; c < g.dim; ++c) CHECK((g.f[a][b][c] + g.f[a][c][b]).is_zero());
	}
}

TEST_CASE("bracket examples") {
	auto su2 = build_lie_algebra(GroupKind::SU2);
	auto z = su2.bracket(basis_vec(3, 0), basis_vec(3, 1));
	CHECK(z[0].is_zero());
	CHECK(z[1].is_zero());
	CHECK(z[2] == PiScalar::pi(1, Rational(4)));

	auto so3 = build_lie_algebra(GroupKind::SO3);
	auto w = so3.bracket(basis_vec(3, 1), basis_vec(3, 2));
	CHECK(w[0] == PiScalar::pi(1, Rational(2)));

	auto u1 = build_lie_algebra(GroupKind::U1);
	CHECK(all_zero(u1.bracket(basis_vec(1, 0), basis_vec(1, 0))));
}

TEST_CASE("bracket is alternating and bilinear on random vectors") {
	Rng rng(7);
	for (auto kind : {GroupKind::SU2, GroupKind::SO3}) {
		auto g = build_lie_algebra(kind);
		for (int trial = 0; trial < 10; ++trial) {
			auto x = random_vec(g, rng), y = random_vec(g, rng);
			CHECK(all_zero(g.bracket(x, x)));
			auto xy = g.bracket(x, y), yx = g.bracket(y, x);
			CHECK(all_zero(add(xy, yx)));
		}
	}
}

TEST_CASE("Jacobi identity on 50 random triples, exact") {
	Rng rng(11);
	for (auto kind : {GroupKind::U1, GroupKind::Torus2, GroupKind::SU2, GroupKind::SO3}) {
		auto g = build_lie_algebra(kind);
		for (int trial = 0; trial < 50; ++trial) {
			auto x = random_vec(g, rng), y = random_vec(g, rng), z = random_vec(g, rng);
			auto j = add(add(g.bracket(x, g.bracket(y, z)), g.bracket(y, g.bracket(z, x))),
			             g.bracket(z, g.bracket(x, y)));
			CHECK(all_zero(j));
		}
	}
}

TEST_CASE("errors") {
	CHECK_THROWS_AS(build_lie_algebra("SU3"), std::invalid_argument);
	auto su2 = build_lie_algebra(GroupKind::SU2);
	std::vector<PiScalar> bad(2);
	CHECK_THROWS_AS(su2.bracket(bad, bad), std::invalid_argument);
	CHECK(build_lie_algebra("SO3").name() == "SO3");
}
