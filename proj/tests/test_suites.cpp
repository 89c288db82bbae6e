#include <doctest.h>

#include <stdexcept>
#include <string>

#include "dcw/suites.hpp"

using namespace dcw;

TEST_CASE("suite registry and config validation") {
	const auto& names = suite_names();
	REQUIRE(names.size() == 6);
	CHECK(names[0] == "weil");
	CHECK(names[1] == "cartan");
	CHECK(names[2] == "dcw");
	CHECK(names[3] == "kalkman");
	CHECK(names[4] == "nonabelian");
	CHECK(names[5] == "residue");

	CHECK_THROWS_AS(run_suite("nonesuch"), std::invalid_argument);
	SuiteConfig bad;
	bad.quad_order = 1;
	CHECK_THROWS_AS(run_suite("all", bad), std::invalid_argument);
	bad = SuiteConfig{};
	bad.tolerance_scale = 0;
	CHECK_THROWS_AS(run_suite("weil", bad), std::invalid_argument);
}

TEST_CASE("exact suites pass and ignore the tolerance scale") {
	SuiteConfig cfg;
	cfg.tolerance_scale = 1e-30;
	Report rep = run_suite("residue", cfg);
	CHECK(rep.checks.size() == 3);
	CHECK(rep.all_pass());
	for (const auto& c : rep.checks) CHECK(c.exact);

	Report weil = run_suite("weil", cfg);
	CHECK(weil.checks.size() == 5);
	CHECK(weil.all_pass());
	CHECK(weil.checks.front().id == "weil.d_squared");
}

TEST_CASE("numeric suites respect the tolerance scale") {
	SuiteConfig cfg;
	cfg.quad_order = 8;
	cfg.tolerance_scale = 1e-20;
	Report rep = run_suite("kalkman", cfg);
	CHECK(!rep.all_pass());
	CHECK(rep.failures() > 0);
	for (const auto& c : rep.checks) CHECK(!c.exact);
}

TEST_CASE("suite reports are deterministic for a fixed config") {
	SuiteConfig cfg;
	cfg.quad_order = 12;
	Report a = run_suite("kalkman", cfg);
	Report b = run_suite("kalkman", cfg);
	REQUIRE(a.checks.size() == b.checks.size());
	for (size_t i = 0; i < a.checks.size(); ++i) {
		CHECK(a.checks[i].id == b.checks[i].id);
		CHECK(a.checks[i].pass == b.checks[i].pass);
		CHECK(a.checks[i].residual == b.checks[i].residual);
		CHECK(a.checks[i].tolerance == b.checks[i].tolerance);
		CHECK(a.checks[i].lhs == b.checks[i].lhs);
		CHECK(a.checks[i].rhs == b.checks[i].rhs);
	}
	CHECK(a.all_pass());
}
