#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "dcw/expr.hpp"
#include "dcw/parser.hpp"
#include "dcw/rng.hpp"

using dcw::Expr;
using dcw::ParseError;
using dcw::PiScalar;
using dcw::Rational;

namespace {

double eval2(const Expr& e, double x, double y) {
	const double c[2] = {x, y};
	return e.eval(c);
}

// Central finite difference of e along coordinate k.
double fd(const Expr& e, std::vector<double> at, int k, double h = 1e-5) {
	auto hi = at, lo = at;
	hi[k] += h;
	lo[k] -= h;
	return (e.eval(hi) - e.eval(lo)) / (2 * h);
}

}  // namespace

TEST_CASE("expr folding rules") {
	const Expr x = Expr::coord(0);
	const Expr y = Expr::coord(1);
	const Expr zero;
	const Expr one = Expr::rational(1);

	CHECK(zero.is_zero());
	CHECK(Expr::constant(PiScalar{0}).is_zero());
	CHECK(Expr::rational(0).is_zero());
	CHECK(one.is_one());

	CHECK(Expr::same_tree(x + zero, x));
	CHECK(Expr::same_tree(zero + x, x));
	CHECK(Expr::same_tree(one * x, x));
	CHECK(Expr::same_tree(x * one, x));
	CHECK((zero * x).is_zero());
	CHECK((x * zero).is_zero());
	CHECK((x - x).is_zero());
	CHECK(Expr::same_tree(-(-x), x));
	CHECK(Expr::same_tree(Expr::pow(x, 1), x));
	CHECK(Expr::pow(x, 0).is_one());
	CHECK(Expr::sin(zero).is_zero());
	CHECK(Expr::cos(zero).is_one());
	CHECK(Expr::exp(zero).is_one());
	CHECK(Expr::sqrt(zero).is_zero());

	// Structurally equal trees built twice compare equal; different ones do not.
	CHECK(Expr::same_tree(Expr::sin(x) + Expr::cos(y), Expr::sin(x) + Expr::cos(y)));
	CHECK(!Expr::same_tree(Expr::sin(x) + Expr::cos(y), Expr::sin(y) + Expr::cos(y)));

	// Constant arithmetic stays exact.
	const auto v = (Expr::rational(2, 3) * Expr::rational(9, 4)).const_value();
	REQUIRE(v.has_value());
	CHECK(*v == PiScalar::frac(3, 2));
	const auto w = (Expr::pi() * Expr::pi()).const_value();
	REQUIRE(w.has_value());
	CHECK(*w == PiScalar::pi(2, 1));

	CHECK_THROWS_AS(x / zero, std::domain_error);
	CHECK_THROWS_AS(Expr::pow(zero, -1), std::domain_error);
}

TEST_CASE("expr evaluation matches libm") {
	const Expr x = Expr::coord(0);
	const Expr y = Expr::coord(1);
	const Expr e = Expr::pow(x, 2) * Expr::sin(y) + Expr::exp(x) / Expr::rational(3) +
				   Expr::sqrt(Expr::rational(1) + y * y);
	dcw::Rng rng{7};
	for (int i = 0; i < 20; ++i) {
		const double a = rng.real(-2, 2), b = rng.real(-2, 2);
		const double want = a * a * std::sin(b) + std::exp(a) / 3 + std::sqrt(1 + b * b);
		CHECK(eval2(e, a, b) == doctest::Approx(want).epsilon(1e-14));
	}
}

TEST_CASE("expr symbolic derivatives agree with finite differences") {
	const Expr x = Expr::coord(0);
	const Expr y = Expr::coord(1);

	// Hand-checked cases first.
	const Expr cube = Expr::pow(x, 3);
	CHECK(eval2(cube.derivative(0), 2, 0) == doctest::Approx(12.0));
	const Expr quot = x / y;
	CHECK(eval2(quot.derivative(1), 3, 2) == doctest::Approx(-0.75));
	const Expr chain = Expr::sin(x * x);
	CHECK(eval2(chain.derivative(0), 1.3, 0) ==
		  doctest::Approx(2 * 1.3 * std::cos(1.3 * 1.3)).epsilon(1e-13));

	// A messier expression, against central differences.
	const Expr e = Expr::exp(Expr::sin(x) * y) + Expr::sqrt(Expr::rational(2) + x * x) / (y * y + Expr::rational(1)) -
				   Expr::pow(x + y, 4);
	dcw::Rng rng{11};
	for (int i = 0; i < 10; ++i) {
		std::vector<double> at{rng.real(-1, 1), rng.real(-1, 1)};
		for (int k = 0; k < 2; ++k) {
			const double sym = e.derivative(k).eval(at);
			CHECK(sym == doctest::Approx(fd(e, at, k)).epsilon(1e-6));
		}
	}

	// Mixed partials commute.
	const Expr dxy = e.derivative(0).derivative(1);
	const Expr dyx = e.derivative(1).derivative(0);
	for (int i = 0; i < 5; ++i) {
		std::vector<double> at{rng.real(-1, 1), rng.real(-1, 1)};
		CHECK(dxy.eval(at) == doctest::Approx(dyx.eval(at)).epsilon(1e-12));
	}
}

TEST_CASE("expr exact evaluation over rationals") {
	const Expr x = Expr::coord(0);
	const Expr y = Expr::coord(1);
	const Expr poly = Expr::pi() * Expr::pow(x, 2) * y - Expr::rational(7, 3) * y + Expr::rational(1, 2);
	const Rational at[2] = {Rational(1, 2), Rational(4, 3)};
	const auto v = poly.eval_exact(at);
	REQUIRE(v.has_value());
	// pi*(1/4)*(4/3) - (7/3)*(4/3) + 1/2 = pi/3 - 28/9 + 1/2 = pi/3 - 47/18.
	CHECK(*v == PiScalar::pi(1, Rational(1, 3)) + PiScalar::frac(-47, 18));

	// Rational division works when the denominator lands in the ring's units.
	const auto q = (x / y).eval_exact(at);
	REQUIRE(q.has_value());
	CHECK(*q == PiScalar::frac(3, 8));

	// Transcendental nodes refuse exact evaluation.
	CHECK(!Expr::sin(x).eval_exact(at).has_value());
	CHECK(!Expr::sqrt(x).eval_exact(at).has_value());
	// Division by pi + 1 leaves the monomial units.
	const Expr bad = x / (Expr::pi() + Expr::rational(1));
	CHECK(!bad.eval_exact(at).has_value());
}

TEST_CASE("smooth step and bump windows") {
	// The step is 0 left of the window, 1 right of it, and 1/2 at the midpoint.
	CHECK(dcw::smooth_step_deriv(0, -1.0) == 0.0);
	CHECK(dcw::smooth_step_deriv(0, 0.0) == 0.0);
	CHECK(dcw::smooth_step_deriv(0, 0.0005) == 0.0);
	CHECK(dcw::smooth_step_deriv(0, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
	CHECK(dcw::smooth_step_deriv(0, 0.9999) == 1.0);
	CHECK(dcw::smooth_step_deriv(0, 2.0) == 1.0);
	CHECK(dcw::smooth_step_deriv(1, -1.0) == 0.0);
	CHECK(dcw::smooth_step_deriv(1, 2.0) == 0.0);
	CHECK(dcw::smooth_step_deriv(3, 2.0) == 0.0);

	// Monotone on the interior.
	double prev = -1;
	for (int i = 1; i < 40; ++i) {
		const double s = dcw::smooth_step_deriv(0, i / 40.0);
		CHECK(s >= prev);
		prev = s;
	}

	// Step derivatives agree with finite differences of the step.
	for (double t : {0.15, 0.3, 0.5, 0.7, 0.85}) {
		const double h = 1e-6;
		const double want =
			(dcw::smooth_step_deriv(0, t + h) - dcw::smooth_step_deriv(0, t - h)) / (2 * h);
		CHECK(dcw::smooth_step_deriv(1, t) == doctest::Approx(want).epsilon(1e-6));
		const double want2 =
			(dcw::smooth_step_deriv(1, t + h) - dcw::smooth_step_deriv(1, t - h)) / (2 * h);
		CHECK(dcw::smooth_step_deriv(2, t) == doctest::Approx(want2).epsilon(1e-5));
	}

	// The step flattens to machine zero well inside the guard band, so the
	// clamped tails glue on smoothly.
	CHECK(dcw::smooth_step_deriv(0, 0.002) < 1e-200);
	CHECK(std::abs(1 - dcw::smooth_step_deriv(0, 0.998)) < 1e-200);

	const Expr x = Expr::coord(0);
	const Expr y = Expr::coord(1);
	const Expr b = Expr::bump(x, PiScalar::frac(1, 4), PiScalar::frac(1, 2));
	CHECK(eval2(b, 0.1, 0) == 0.0);
	CHECK(eval2(b, 0.375, 0) == doctest::Approx(0.5).epsilon(1e-15));
	CHECK(eval2(b, 0.9, 0) == 1.0);

	// Chain rule through a radial argument, against finite differences.
	const Expr r2 = x * x + y * y;
	const Expr cut = Expr::bump(r2, PiScalar::frac(9, 100), PiScalar::frac(49, 100));
	dcw::Rng rng{23};
	for (int i = 0; i < 20; ++i) {
		std::vector<double> at{rng.real(-0.8, 0.8), rng.real(-0.8, 0.8)};
		for (int k = 0; k < 2; ++k)
			CHECK(cut.derivative(k).eval(at) ==
				  doctest::Approx(fd(cut, at, k)).epsilon(1e-5).scale(1.0));
	}
	// Second derivative via a second symbolic pass.
	const Expr d2 = cut.derivative(0).derivative(0);
	for (double t : {0.35, 0.45, 0.55, 0.65}) {
		const double h = 1e-4;
		std::vector<double> hi{t + h, 0.1}, mid{t, 0.1}, lo{t - h, 0.1};
		const double want = (cut.eval(hi) - 2 * cut.eval(mid) + cut.eval(lo)) / (h * h);
		CHECK(d2.eval(mid) == doctest::Approx(want).epsilon(1e-3).scale(1.0));
	}
}

TEST_CASE("expr substitution") {
	const Expr x = Expr::coord(0);
	const Expr y = Expr::coord(1);
	const Expr e = Expr::sin(x) * y + Expr::pow(y, 2);
	const std::vector<Expr> repl{y * y, x + Expr::rational(1)};
	const Expr s = e.substitute(repl);
	dcw::Rng rng{5};
	for (int i = 0; i < 10; ++i) {
		const double a = rng.real(-1, 1), b = rng.real(-1, 1);
		const double want = std::sin(b * b) * (a + 1) + (a + 1) * (a + 1);
		CHECK(eval2(s, a, b) == doctest::Approx(want).epsilon(1e-14));
	}
}

TEST_CASE("parser precedence and literals") {
	const std::vector<std::string> names{"x", "y"};
	const auto p = [&](std::string_view t) { return dcw::parse_scalar_expr(t, names); };

	CHECK(eval2(p("2 + 3*4"), 0, 0) == 14.0);
	CHECK(eval2(p("-x^2"), 2, 0) == -4.0);
	CHECK(eval2(p("(0 - x)^2"), 2, 0) == 4.0);
	CHECK(eval2(p("2*-3"), 0, 0) == -6.0);
	CHECK(eval2(p("x - -y"), 1, 2) == 3.0);
	CHECK(eval2(p("1 - 2 - 3"), 0, 0) == -4.0);
	CHECK(eval2(p("12/3/2"), 0, 0) == 2.0);
	CHECK(eval2(p("x^-2"), 2, 0) == 0.25);
	CHECK(eval2(p("2*x^2"), 3, 0) == 18.0);

	// Literals are exact rationals.
	const auto half = p("1/2").const_value();
	REQUIRE(half.has_value());
	CHECK(*half == PiScalar::frac(1, 2));
	const auto dec = p("1.25").const_value();
	REQUIRE(dec.has_value());
	CHECK(*dec == PiScalar::frac(5, 4));
	const auto tau = p("2*pi").const_value();
	REQUIRE(tau.has_value());
	CHECK(*tau == PiScalar::pi(1, 2));

	// Function calls; bump accepts ';' or ',' separators.
	CHECK(eval2(p("sin(x)*cos(y)"), 0.3, 0.4) ==
		  doctest::Approx(std::sin(0.3) * std::cos(0.4)).epsilon(1e-15));
	const Expr b1 = p("bump(x*x + y*y; 9/100, 49/100)");
	const Expr b2 = p("bump(x*x + y*y, 9/100, 49/100)");
	CHECK(Expr::same_tree(b1, b2));
	CHECK(eval2(b1, 0.1, 0.1) == 0.0);
	CHECK(eval2(b1, 0.7, 0.3) == 1.0);
}

TEST_CASE("parser reports positioned errors") {
	const std::vector<std::string> names{"x", "y"};
	const auto msg = [&](std::string_view t) {
		try {
			dcw::parse_scalar_expr(t, names);
		} catch (const ParseError& e) {
			return std::string(e.what());
		}
		return std::string("(no error)");
	};

	CHECK(msg("x + z").find("unknown identifier 'z'") != std::string::npos);
	CHECK(msg("x + z").find("x, y") != std::string::npos);
	CHECK(msg("x + z").find("column 5") != std::string::npos);
	CHECK(msg("(x + y").find("expected ')'") != std::string::npos);
	CHECK(msg("x +").find("end of input") != std::string::npos);
	CHECK(msg("x @ y").find("unexpected character '@'") != std::string::npos);
	CHECK(msg("x ^ y").find("integer exponent") != std::string::npos);
	CHECK(msg("x ^ (1/2)").find("integer exponent") != std::string::npos);
	CHECK(msg("sin(x, y)").find("sin expects 1 argument") != std::string::npos);
	CHECK(msg("foo(x)").find("unknown function 'foo'") != std::string::npos);
	CHECK(msg("bump(x; 1/2, 1/4)").find("r0 < r1") != std::string::npos);
	CHECK(msg("bump(x; pi, 4)").find("rational") != std::string::npos);
	CHECK(msg("bump(x; y, 1)").find("constant") != std::string::npos);
	CHECK(msg("1/0").find("division by the constant zero") != std::string::npos);
	CHECK(msg("x y").find("after complete expression") != std::string::npos);
}

TEST_CASE("printer output reparses to the same function") {
	const std::vector<std::string> names{"x", "y"};
	const auto p = [&](std::string_view t) { return dcw::parse_scalar_expr(t, names); };
	const std::vector<std::string> sources{
		"x^2 - 3*x*y + y^2",
		"sin(x)*cos(y) + exp(0 - x*x)",
		"sqrt(1 + x^2)/(2 + y^2)",
		"bump(x*x + y*y; 9/100, 49/100)*pi",
		"-x^3 + 2/3*y - 1.5",
		"(x + y)^4/(1 + x^2)",
	};
	dcw::Rng rng{31};
	for (const auto& src : sources) {
		const Expr e = p(src);
		const Expr back = p(e.str(names));
		for (int i = 0; i < 10; ++i) {
			std::vector<double> at{rng.real(-0.9, 0.9), rng.real(-0.9, 0.9)};
			const double a = e.eval(at), b = back.eval(at);
			CHECK(a == doctest::Approx(b).epsilon(1e-14).scale(1.0));
		}
	}
}
