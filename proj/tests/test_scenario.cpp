#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "dcw/scenario.hpp"

using dcw::Chart;
using dcw::DForm;
using dcw::Expr;
using dcw::Region;
using dcw::Scenario;

namespace {

const double kPi = std::numbers::pi;

void expect_parse_error(const std::string& text, const std::string& fragment) {
	try {
		dcw::parse_scenario(text);
		FAIL("expected a parse error mentioning '", fragment, "'");
	} catch (const dcw::ScenarioParseError& e) {
		std::string msg = e.what();
		INFO("message: ", msg);
		CHECK(msg.find(fragment) != std::string::npos);
	}
}

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
	size_t pos = text.find(from);
	REQUIRE(pos != std::string::npos);
	return text.replace(pos, from.size(), to);
}

const dcw::CheckResult& find_check(const dcw::Report& rep, const std::string& tail) {
	for (const auto& c : rep.checks)
		if (c.id.size() >= tail.size() && c.id.compare(c.id.size() - tail.size(), tail.size(), tail) == 0)
			return c;
	FAIL("no check with id suffix '", tail, "'");
	static dcw::CheckResult dummy;
	return dummy;
}

}  // namespace

TEST_CASE("scenario parser diagnostics") {
	expect_parse_error("x = 1\n", "outside any section");
	expect_parse_error("[chart:D]\n", "[scenario] section must come first");
	expect_parse_error("[scenario]\nname = t\n[chart:D]\n", "group must be declared");
	expect_parse_error("[scenario]\nname = t\ngroup = U5\n", "unsupported group kind");
	expect_parse_error("[scenario]\ngroup = U1\n", "must set 'name'");
	expect_parse_error(
		"[scenario]\nname = t\ngroup = U1\n[field:0:D]\nvalue = 1\n", "unknown chart 'D'");
	expect_parse_error(
		"[scenario]\nname = t\ngroup = U1\n[field:3:Q]\nvalue = 1\n", "outside 0..0");
	expect_parse_error(
		"[scenario]\nname = t\ngroup = U1\n[chart:D]\ncoords = x, y\n[chart:D]\n",
		"duplicate chart");
	expect_parse_error(
		"[scenario]\nname = t\ngroup = U1\n[chart:D]\ncoords = x, 2y\n", "bad coordinate name");
	expect_parse_error(
		"[scenario]\nname = t\ngroup = U1\n[chart:D]\ncoords = x\nsample_lo = 0, 1\n",
		"expected 1 entries, got 2");
	expect_parse_error(
		"[scenario]\nname = t\ngroup = U1\n[chart:D]\ncoords = x\n[field:0:D]\nvalue = q\n",
		"unknown identifier");
	expect_parse_error("[scenario]\nname = t\ngroup = U1\n[chart:D]\ncoords = x\norient = 2\n",
					   "orientation must be +1 or -1");
	expect_parse_error(
		"[scenario]\nname = t\ngroup = U1\n[chart:D]\ncoords = x\n[metric:D]\nrow1 = 1\n",
		"order row0, row1");
	expect_parse_error(
		"[scenario]\nname = t\ngroup = U1\n[chart:D]\ncoords = x\n[region:r]\npiece = D | s | 0, 1 | s | 1\nbad\n",
		"expected 'key = value'");
	expect_parse_error(
		"[scenario]\nname = t\ngroup = U1\n[chart:D]\ncoords = x\n[fixed:p]\nmu = pi\n",
		"expected a rational constant");
	expect_parse_error("[scenario]\nname = t\ngroup = U1\n[chart:D]\ncoords = x\n"
					   "[cutoff:D]\nvalue = bump(x; 1/4\n",
					   "expected ')'");
	expect_parse_error(
		"[scenario]\nname = t\ngroup = U1\n[chart:D]\ncoords = x\nsample_lo = (1, 2\n",
		"unbalanced");
	// Line numbers point at the offending line.
	try {
		dcw::parse_scenario("[scenario]\nname = t\ngroup = U1\n[chart:D]\ncoords = x,\n");
		FAIL("expected a parse error");
	} catch (const dcw::ScenarioParseError& e) {
		CHECK(e.line == 5);
		CHECK(std::string(e.what()).find("line 5") != std::string::npos);
	}
}

TEST_CASE("catalog loads and cross-references resolve") {
	auto names = dcw::catalog_names();
	REQUIRE(names.size() == 9);
	CHECK(names.front() == "disk_1");
	CHECK(names.back() == "triangle_fp_scalene");
	CHECK_THROWS_AS((void)dcw::load_scenario("nope"), std::invalid_argument);

	for (const auto& name : names) {
		CAPTURE(name);
		Scenario s = dcw::load_scenario(name);
		CHECK(s.name == name);
		CHECK(!s.source.empty());
	}

	Scenario tri = dcw::load_scenario("triangle_fp_scalene");
	CHECK(tri.extras.at("radii") == "2, 3/2, 1");
	CHECK(tri.extras.at("oracle_lhs") == "1");
	REQUIRE(tri.fixed.size() == 8);
	const auto* pmm = tri.fixed_component("pmm");
	REQUIRE(pmm != nullptr);
	CHECK(pmm->mu == dcw::Rational(-1, 2));
	CHECK(pmm->label == "minus");
	CHECK(pmm->weights == std::vector<int>{1, -1, -1});

	Scenario ds = dcw::load_scenario("disk_sphere");
	CHECK(ds.algebra.dim == 1);
	CHECK(ds.charts.size() == 2);
	CHECK(ds.transitions.size() == 1);
	CHECK(ds.region("boundary")->pieces.size() == 2);
	CHECK(ds.fixed_component("pole_s")->weights == std::vector<int>{1, -1});
}

TEST_CASE("catalog scenarios pass validation") {
	for (const auto& name : dcw::catalog_names()) {
		CAPTURE(name);
		Scenario s = dcw::load_scenario(name);
		dcw::Report rep = dcw::validate_scenario(s, 0, 100);
		for (const auto& c : rep.checks) {
			CAPTURE(c.id);
			CAPTURE(c.residual);
			CHECK(c.pass);
		}
		CHECK(rep.all_pass());
	}
}

TEST_CASE("validation catches corrupted scenario data") {
	// Wrong linearization weight at the fixed point.
	{
		Scenario s = dcw::parse_scenario(
			replace_once(dcw::catalog_text("disk_1"), "weights = 1", "weights = 2"));
		auto rep = dcw::validate_scenario(s, 0, 20);
		CHECK(!find_check(rep, "fixed.weights").pass);
	}
	// Field that fails the bracket realization (flip one sphere generator).
	{
		Scenario s = dcw::parse_scenario(replace_once(dcw::catalog_text("sphere_so3"),
													  "value = 2*pi*a*b, pi*(1 - a^2 + b^2)",
													  "value = -2*pi*a*b, -pi*(1 - a^2 + b^2)"));
		auto rep = dcw::validate_scenario(s, 0, 20);
		CHECK(!find_check(rep, "fields.bracket").pass);
	}
	// Metric that the action does not preserve.
	{
		Scenario s = dcw::parse_scenario(
			replace_once(dcw::catalog_text("disk_1"), "row0 = 1, 0", "row0 = 1 + x, 0"));
		auto rep = dcw::validate_scenario(s, 0, 20);
		CHECK(!find_check(rep, "metric.invariant").pass);
	}
	// Structural: field count mismatch is reported, numeric checks skipped.
	{
		Scenario s = dcw::parse_scenario(
			"[scenario]\nname = t\ngroup = SU2\n[chart:D]\ncoords = x\n"
			"sample_lo = 0\nsample_hi = 1\n[field:0:D]\nvalue = x\n");
		auto rep = dcw::validate_scenario(s, 0, 5);
		REQUIRE(rep.checks.size() == 1);
		CHECK(!rep.checks.front().pass);
		CHECK(rep.checks.front().statement.find("field component count") != std::string::npos);
	}
}

TEST_CASE("region integration: disk area and boundary circulation") {
	Scenario s = dcw::load_scenario("disk_1");
	const int dim = 2;

	auto area = dcw::integrate_region(
		s, s.region_or_throw("interior"),
		[&](const Chart&) { return DForm::monomial(dim, 0b11, Expr::rational(1)); }, 24);
	CHECK(area.value == doctest::Approx(kPi).epsilon(1e-10));
	CHECK(std::fabs(area.value - kPi) <= area.error + 1e-10);

	// Stokes: the circulation of (x dy - y dx)/2 along the boundary is the area.
	DForm circ(dim);
	circ += DForm::monomial(dim, 0b10, Expr::div(Expr::coord(0), Expr::rational(2)));
	circ -= DForm::monomial(dim, 0b01, Expr::div(Expr::coord(1), Expr::rational(2)));
	auto circulation = dcw::integrate_region(
		s, s.region_or_throw("boundary"), [&](const Chart&) { return circ; }, 24);
	CHECK(circulation.value == doctest::Approx(kPi).epsilon(1e-10));

	// Flipping the orientation of every piece negates the integral.
	Region flipped = s.region_or_throw("interior");
	for (auto& p : flipped.pieces) p.orient = -p.orient;
	auto neg = dcw::integrate_region(
		s, flipped, [&](const Chart&) { return DForm::monomial(dim, 0b11, Expr::rational(1)); },
		24);
	CHECK(neg.value == doctest::Approx(-kPi).epsilon(1e-10));
}

TEST_CASE("region integration: sphere area with the inward form") {
	// The sphere charts are negatively oriented relative to their coordinates;
	// the inward round form integrates to +4 pi over the oriented sphere.
	Scenario s = dcw::load_scenario("sphere_so3");
	auto form = [](const Chart&) {
		Expr rho = Expr::pow(Expr::coord(0), 2) + Expr::pow(Expr::coord(1), 2);
		Expr coeff = Expr::rational(-4) / Expr::pow(Expr::rational(1) + rho, 2);
		return DForm::monomial(2, 0b11, coeff);
	};
	auto area = dcw::integrate_region(s, s.region_or_throw("interior"), form, 32);
	CHECK(area.value == doctest::Approx(4 * kPi).epsilon(1e-9));
}

TEST_CASE("region integration: product and quaternion boundary volumes") {
	// Disk x sphere: dx^dy wedge the round form integrates to pi * 4 pi.
	{
		Scenario s = dcw::load_scenario("disk_sphere");
		auto form = [](const Chart&) {
			Expr rho = Expr::pow(Expr::coord(2), 2) + Expr::pow(Expr::coord(3), 2);
			Expr coeff = Expr::rational(4) / Expr::pow(Expr::rational(1) + rho, 2);
			return DForm::monomial(4, 0b1111, coeff);
		};
		auto vol = dcw::integrate_region(s, s.region_or_throw("interior"), form, 20);
		CHECK(vol.value == doctest::Approx(4 * kPi * kPi).epsilon(1e-8));
	}
	// The outward-first orientation of the quaternion boundary sphere: the
	// contraction of the volume form with the outward radius integrates to
	// the positive three-sphere volume 2 pi^2.
	{
		Scenario s = dcw::load_scenario("quat_ball");
		auto form = [](const Chart&) {
			std::vector<Expr> radial(4);
			for (int i = 0; i < 4; ++i) radial[i] = Expr::coord(i);
			return DForm::monomial(4, 0b1111, Expr::rational(1)).contract(radial);
		};
		auto vol = dcw::integrate_region(s, s.region_or_throw("boundary"), form, 16);
		CHECK(vol.value == doctest::Approx(2 * kPi * kPi).epsilon(1e-9));
	}
}

TEST_CASE("circle averaging: invariant forms come back unchanged") {
	Scenario s = dcw::load_scenario("disk_2");
	const Chart& c = s.charts.front();
	Expr r2 = Expr::pow(Expr::coord(0), 2) + Expr::pow(Expr::coord(1), 2);
	DForm inv = DForm::monomial(2, 0b11, Expr::sin(r2));
	DForm out = dcw::average_over_circle(c, inv);
	CHECK(DForm::same(out, inv));
}

TEST_CASE("circle averaging: non-invariant form averages to its invariant part") {
	Scenario s = dcw::load_scenario("disk_1");
	const Chart& c = s.charts.front();
	DForm xdx = DForm::monomial(2, 0b01, Expr::coord(0));
	DForm avg = dcw::average_over_circle(c, xdx);
	// The rotation average of x dx is (x dx + y dy)/2.
	dcw::Rng rng(7);
	for (int k = 0; k < 20; ++k) {
		double x = rng.real(-0.7, 0.7), y = rng.real(-0.7, 0.7);
		std::vector<double> p{x, y};
		CHECK(avg.eval(0b01, p) == doctest::Approx(x / 2).epsilon(1e-9));
		CHECK(avg.eval(0b10, p) == doctest::Approx(y / 2).epsilon(1e-9));
	}
}
