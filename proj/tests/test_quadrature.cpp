#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dcw/parser.hpp"
#include "dcw/quadrature.hpp"

using dcw::gauss_legendre;
using dcw::integrate_box;

TEST_CASE("gauss-legendre nodes and weights") {
	for (int n : {1, 2, 5, 16, 48}) {
		const auto& q = gauss_legendre(n);
		double wsum = 0;
		for (int k = 0; k < n; ++k) {
			wsum += q.weights[static_cast<size_t>(k)];
			// symmetry
			CHECK(q.nodes[static_cast<size_t>(k)] ==
				  doctest::Approx(-q.nodes[static_cast<size_t>(n - 1 - k)]).epsilon(1e-14));
			if (k > 0) CHECK(q.nodes[static_cast<size_t>(k)] > q.nodes[static_cast<size_t>(k - 1)]);
		}
		CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
	}
	// n-point rule integrates monomials up to degree 2n-1 exactly.
	for (int n : {2, 4, 7}) {
		const auto& q = gauss_legendre(n);
		for (int deg = 0; deg <= 2 * n - 1; ++deg) {
			double s = 0;
			for (int k = 0; k < n; ++k)
				s += q.weights[static_cast<size_t>(k)] *
					 std::pow(q.nodes[static_cast<size_t>(k)], deg);
			const double exact = (deg % 2 == 0) ? 2.0 / (deg + 1) : 0.0;
			CHECK(s == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
		}
	}
	CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("box integrals of known functions") {
	const std::vector<std::string> names{"x", "y", "z"};
	const auto p = [&](std::string_view s) { return dcw::parse_scalar_expr(s, names); };

	const std::vector<double> lo1{0}, hi1{std::numbers::pi};
	CHECK(integrate_box(p("sin(x)"), lo1, hi1, 24) == doctest::Approx(2.0).epsilon(1e-14));

	const std::vector<double> lo2{0, 0}, hi2{1, 1};
	CHECK(integrate_box(p("x*y^2"), lo2, hi2, 12) == doctest::Approx(1.0 / 6).epsilon(1e-14));

	const std::vector<double> lo3{0, 0, 0}, hi3{1, 1, 1};
	const double e1 = std::numbers::e - 1;
	CHECK(integrate_box(p("exp(x + y + z)"), lo3, hi3, 16) ==
		  doctest::Approx(e1 * e1 * e1).epsilon(1e-13));

	// Zero-dimensional boxes evaluate the integrand once.
	CHECK(integrate_box([](std::span<const double>) { return 7.5; }, {}, {}, 8) == 7.5);

	// A bump integrand converges: refining the rule moves the value by little.
	const auto cut = p("bump(x*x + y*y; 9/100, 49/100)");
	const std::vector<double> blo{-1, -1}, bhi{1, 1};
	const double c24 = integrate_box(cut, blo, bhi, 24);
	const double c48 = integrate_box(cut, blo, bhi, 48);
	CHECK(std::abs(c24 - c48) < 2e-4);
	const auto est = dcw::integrate_box_refined(
		[&](std::span<const double> at) { return cut.eval(at); }, blo, bhi, 48);
	CHECK(est.value == doctest::Approx(c48));
	CHECK(std::abs(est.value - c24) <= 10 * est.error + 1e-12);
}
