#include <doctest.h>

#include <vector>

#include "dcw/weil.hpp"

using namespace dcw;

namespace {

const std::vector<GroupKind> kAllKinds = {GroupKind::U1, GroupKind::Torus2, GroupKind::SU2,
                                          GroupKind::SO3};

}  // namespace

TEST_CASE("generator differentials and printing") {
	auto su2 = build_lie_algebra(GroupKind::SU2);
	auto t1 = WeilElement::theta(&su2, 0);
	// d theta^1 = -4 pi theta^2 theta^3 + Theta^1
	CHECK(weil_d(t1).str() == "-4*pi*t2^t3 + T1");
	auto T1 = WeilElement::big_theta(&su2, 0);
	// d Theta^1 = -4 pi (theta^2 Theta^3 - theta^3 Theta^2)
	auto expect = WeilElement::theta(&su2, 1) * WeilElement::big_theta(&su2, 2) *
	                  PiScalar::pi(1, Rational(-4)) +
	              WeilElement::theta(&su2, 2) * WeilElement::big_theta(&su2, 1) *
	                  PiScalar::pi(1, Rational(4));
	CHECK(weil_d(T1) == expect);

	auto u1 = build_lie_algebra(GroupKind::U1);
	CHECK(weil_d(WeilElement::theta(&u1, 0)) == WeilElement::big_theta(&u1, 0));
	CHECK(weil_d(WeilElement::big_theta(&u1, 0)).is_zero());
}

TEST_CASE("contraction and Lie derivative on generators") {
	auto su2 = build_lie_algebra(GroupKind::SU2);
	auto t2 = WeilElement::theta(&su2, 1);
	CHECK(weil_contract(1, t2) == WeilElement::constant(&su2, PiScalar(1)));
	CHECK(weil_contract(0, t2).is_zero());
	CHECK(weil_contract(0, WeilElement::big_theta(&su2, 0)).is_zero());
	// L_1 theta^2 = -f^2_{13} theta^3 = +4 pi theta^3  (f^2_{13} = -4 pi)
	CHECK(weil_lie(0, t2) == WeilElement::theta(&su2, 2) * PiScalar::pi(1, Rational(4)));
}

TEST_CASE("d squared vanishes exactly on 100 random elements per algebra") {
	for (auto kind : kAllKinds) {
		auto g = build_lie_algebra(kind);
		Rng rng(100 + static_cast<uint64_t>(kind));
		for (int trial = 0; trial < 100; ++trial) {
			auto x = random_weil_element(&g, rng);
			CHECK(weil_d(weil_d(x)).is_zero());
		}
	}
}

TEST_CASE("homotopy identity L_a = d i_a + i_a d exactly") {
	for (auto kind : kAllKinds) {
		auto g = build_lie_algebra(kind);
		Rng rng(200 + static_cast<uint64_t>(kind));
		for (int trial = 0; trial < 100; ++trial) {
			auto x = random_weil_element(&g, rng);
			for (int a = 0; a < g.dim; ++a) {
				auto lhs = weil_lie(a, x);
				auto rhs = weil_d(weil_contract(a, x)) + weil_contract(a, weil_d(x));
				CHECK(lhs == rhs);
			}
		}
	}
}

TEST_CASE("graded commutativity and contraction anticommutation") {
	for (auto kind : kAllKinds) {
		auto g = build_lie_algebra(kind);
		Rng rng(300 + static_cast<uint64_t>(kind));
		for (int trial = 0; trial < 40; ++trial) {
			int p = static_cast<int>(rng.integer(0, 4));
			int q = static_cast<int>(rng.integer(0, 4));
			auto x = random_weil_homogeneous(&g, rng, p);
			auto y = random_weil_homogeneous(&g, rng, q);
			auto xy = x * y, yx = y * x;
			if (p * q % 2 == 1) yx = -yx;
			CHECK(xy == yx);

			auto z = random_weil_element(&g, rng);
			for (int a = 0; a < g.dim; ++a)
				for (int b = 0; b < g.dim; ++b)
					CHECK(weil_contract(a, weil_contract(b, z)) ==
					      -weil_contract(b, weil_contract(a, z)));
		}
	}
}

TEST_CASE("d is an odd derivation") {
	for (auto kind : kAllKinds) {
		auto g = build_lie_algebra(kind);
		Rng rng(400 + static_cast<uint64_t>(kind));
		for (int trial = 0; trial < 25; ++trial) {
			int p = static_cast<int>(rng.integer(0, 3));
			auto x = random_weil_homogeneous(&g, rng, p);
			auto y = random_weil_element(&g, rng);
			auto lhs = weil_d(x * y);
			auto rhs = weil_d(x) * y + (p % 2 == 0 ? x * weil_d(y) : -(x * weil_d(y)));
			CHECK(lhs == rhs);
		}
	}
}

TEST_CASE("invariant polynomial spaces: dimensions and the Casimir") {
	for (auto kind : {GroupKind::SU2, GroupKind::SO3}) {
		auto g = build_lie_algebra(kind);
		CHECK(invariant_polynomials(&g, 1).empty());
		CHECK(invariant_polynomials(&g, 3).empty());
		auto inv2 = invariant_polynomials(&g, 2);
		REQUIRE(inv2.size() == 1);
		// proportional to Theta1^2 + Theta2^2 + Theta3^2
		auto cas = WeilElement::big_theta(&g, 0).pow(2) + WeilElement::big_theta(&g, 1).pow(2) +
		           WeilElement::big_theta(&g, 2).pow(2);
		auto lead = inv2[0].terms().begin()->second;
		CHECK(inv2[0] == cas * lead);
		// exact invariance, not just membership claims
		for (int a = 0; a < 3; ++a) CHECK(weil_lie(a, inv2[0]).is_zero());
	}
	auto u1 = build_lie_algebra(GroupKind::U1);
	for (int q = 0; q <= 3; ++q) CHECK(invariant_polynomials(&u1, q).size() == 1);
	auto t2 = build_lie_algebra(GroupKind::Torus2);
	for (int q = 0; q <= 3; ++q)
		CHECK(invariant_polynomials(&t2, q).size() == static_cast<size_t>(q + 1));
}

TEST_CASE("basic subcomplex pieces") {
	auto su2 = build_lie_algebra(GroupKind::SU2);
	CHECK(basic_basis(&su2, 1).empty());
	CHECK(basic_basis(&su2, 2).empty());
	CHECK(basic_basis(&su2, 3).empty());
	auto b4 = basic_basis(&su2, 4);
	REQUIRE(b4.size() == 1);
	CHECK(b4[0].is_symmetric());
	for (int a = 0; a < 3; ++a) {
		CHECK(weil_contract(a, b4[0]).is_zero());
		CHECK(weil_lie(a, b4[0]).is_zero());
	}
	// basic elements are closed under d (in fact d kills invariant polynomials)
	CHECK(weil_d(b4[0]).is_zero());

	auto u1 = build_lie_algebra(GroupKind::U1);
	CHECK(basic_basis(&u1, 1).empty());
	auto u2 = basic_basis(&u1, 2);
	REQUIRE(u2.size() == 1);
	CHECK(u2[0] == WeilElement::big_theta(&u1, 0) * u2[0].terms().begin()->second);
}

TEST_CASE("d vanishes on invariant polynomials") {
	for (auto kind : kAllKinds) {
		auto g = build_lie_algebra(kind);
		for (int q = 1; q <= 3; ++q)
			for (const auto& F : invariant_polynomials(&g, q)) CHECK(weil_d(F).is_zero());
	}
}

TEST_CASE("symmetrized structure-constant identity for invariant polynomials") {
	// For invariant F of degree q: symmetrizing  sum_p f^p_{b c} a_{p i_2 ... i_q}
	// over (c, i_2, ..., i_q) gives zero, for every b.  Checked by explicit
	// symmetrization over all index tuples.
	for (auto kind : {GroupKind::SU2, GroupKind::SO3}) {
		auto g = build_lie_algebra(kind);
		for (int q = 2; q <= 3; ++q) {
			for (const auto& F : invariant_polynomials(&g, q)) {
				for (int b = 0; b < g.dim; ++b) {
					// enumerate all tuples (j_1,...,j_q) and symmetrize explicitly
					std::vector<int> tuple(static_cast<size_t>(q), 0);
					bool all_ok = true;
					auto advance = [&]() {
						for (size_t i = 0; i < tuple.size(); ++i) {
							if (++tuple[i] < g.dim) return true;
							tuple[i] = 0;
						}
						return false;
					};
					do {
						// symmetrization over the q slots of  T_{b; c, i_2..i_q}
						// reduces to averaging over which slot holds c
						PiScalar sym_sum;
						for (size_t slot = 0; slot < tuple.size(); ++slot) {
							int c = tuple[slot];
							std::vector<int> rest;
							for (size_t i = 0; i < tuple.size(); ++i)
								if (i != slot) rest.push_back(tuple[i]);
							for (int p = 0; p < g.dim; ++p) {
								const auto& f = g.f[static_cast<size_t>(b)][static_cast<size_t>(c)]
								                   [static_cast<size_t>(p)];
								if (f.is_zero()) continue;
								std::vector<int> idx = rest;
								idx.push_back(p);
								sym_sum += f * symmetric_coefficient(F, idx);
							}
						}
						if (!sym_sum.is_zero()) all_ok = false;
					} while (advance());
					CHECK(all_ok);
				}
			}
		}
	}
}

TEST_CASE("symmetric coefficient extraction") {
	auto su2 = build_lie_algebra(GroupKind::SU2);
	auto x = WeilElement::big_theta(&su2, 0) * WeilElement::big_theta(&su2, 1);  // T1*T2
	CHECK(symmetric_coefficient(x, {0, 1}) == PiScalar(Rational(1, 2)));
	CHECK(symmetric_coefficient(x, {1, 0}) == PiScalar(Rational(1, 2)));
	auto y = WeilElement::big_theta(&su2, 0).pow(2);
	CHECK(symmetric_coefficient(y, {0, 0}) == PiScalar(1));
	CHECK_THROWS_AS(symmetric_coefficient(WeilElement::theta(&su2, 0), {0}), std::invalid_argument);
}

TEST_CASE("mixing algebras is rejected") {
	auto su2 = build_lie_algebra(GroupKind::SU2);
	auto so3 = build_lie_algebra(GroupKind::SO3);
	auto x = WeilElement::theta(&su2, 0);
	auto y = WeilElement::theta(&so3, 0);
	CHECK_THROWS_AS(x * y, std::invalid_argument);
	CHECK_THROWS_AS(x + y, std::invalid_argument);
}
