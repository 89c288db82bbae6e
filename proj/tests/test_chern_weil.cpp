#include <doctest.h>

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "dcw/chern_weil.hpp"
#include "dcw/parser.hpp"

using namespace dcw;

namespace {

double dform_max(const DForm& w, const std::vector<std::vector<double>>& pts) {
	double worst = 0;
	for (const auto& [mask, c] : w.components())
		for (const auto& p : pts) worst = std::max(worst, std::fabs(c.eval(p)));
	return worst;
}

double dform_distance(const DForm& a, const DForm& b, const std::vector<std::vector<double>>& pts) {
	std::set<uint32_t> masks;
	for (const auto& [m, c] : a.components()) masks.insert(m);
	for (const auto& [m, c] : b.components()) masks.insert(m);
	double worst = 0;
	for (uint32_t m : masks)
		for (const auto& p : pts) worst = std::max(worst, std::fabs(a.eval(m, p) - b.eval(m, p)));
	return worst;
}

// max residual of the two connection axioms over the free sample points
double connection_residual(const GConnection& conn, const Chart& chart,
						   const std::vector<std::vector<double>>& pts) {
	const LieAlgebraSpec& alg = *conn.alg;
	double worst = 0;
	for (int a = 0; a < alg.dim; ++a) {
		for (int b = 0; b < alg.dim; ++b) {
			DForm c = conn.comp[static_cast<size_t>(a)];
			DForm delta = c.contract(chart.fields[static_cast<size_t>(b)]) -
						  DForm::scalar(conn.dim, Expr::rational(a == b ? 1 : 0));
			worst = std::max(worst, dform_max(delta, pts));
			DForm equiv = conn.comp[static_cast<size_t>(a)].lie(chart.fields[static_cast<size_t>(b)]);
			for (int cc = 0; cc < alg.dim; ++cc) {
				const PiScalar& f =
					alg.f[static_cast<size_t>(b)][static_cast<size_t>(cc)][static_cast<size_t>(a)];
				if (!f.is_zero()) equiv += Expr::constant(f) * conn.comp[static_cast<size_t>(cc)];
			}
			worst = std::max(worst, dform_max(equiv, pts));
		}
	}
	return worst;
}

std::vector<EqForm> invariant_family(const Scenario& s, const Chart& c) {
	auto P = [&](const std::string& t) { return parse_scalar_expr(t, c.coords); };
	const int m = s.algebra.dim, n = c.dim();
	std::vector<EqForm> out;
	if (s.name.rfind("disk_", 0) == 0 && n == 2) {
		Expr rho = P("x^2 + y^2");
		out.push_back(EqForm::wrap(m, DForm::scalar(2, Expr::rational(1) + rho)));
		out.push_back(EqForm::wrap(m, DForm::scalar(2, rho).d()));
		out.push_back(EqForm::wrap(m, DForm::monomial(2, 0b1u, P("-y")) +
									  DForm::monomial(2, 0b10u, P("x"))));
		out.push_back(EqForm::wrap(m, rho * DForm::monomial(2, 0b11u, Expr::rational(1))));
		out.push_back(EqForm::term(m, {1}, DForm::scalar(2, rho)));
	} else if (s.name == "disk_sphere") {
		Expr r1 = P("x^2 + y^2"), r2 = P("a^2 + b^2");
		out.push_back(EqForm::wrap(m, DForm::scalar(4, Expr::rational(1) + r1 * r2)));
		out.push_back(EqForm::wrap(m, DForm::scalar(4, r1).d()));
		out.push_back(EqForm::wrap(m, DForm::monomial(4, 0b1u, P("-y")) +
									  DForm::monomial(4, 0b10u, P("x"))));
		out.push_back(EqForm::wrap(m, DForm::monomial(4, 0b100u, P("-b")) +
									  DForm::monomial(4, 0b1000u, P("a"))));
		out.push_back(EqForm::wrap(m, r2 * DForm::monomial(4, 0b11u, Expr::rational(1))));
		out.push_back(EqForm::wrap(m, DForm::monomial(4, 0b1100u, P("4/(1 + a^2 + b^2)^2"))));
		out.push_back(EqForm::term(m, {1}, DForm::scalar(4, r2)));
	} else if (s.name == "quat_ball") {
		Expr r2 = P("x0^2 + x1^2 + x2^2 + x3^2");
		DForm vol = DForm::monomial(4, 0b1111u, Expr::rational(1));
		EqForm cas(m, 4), xi(m, 4);
		for (int a = 0; a < m; ++a) {
			std::vector<int> e(static_cast<size_t>(m), 0);
			e[static_cast<size_t>(a)] = 2;
			cas += EqForm::term(m, e, DForm::scalar(4, Expr::rational(1)));
			e[static_cast<size_t>(a)] = 1;
			xi += EqForm::term(m, e,
							   ((Expr::rational(1) + r2) * vol).contract(c.fields[static_cast<size_t>(a)]));
		}
		out.push_back(EqForm::wrap(m, DForm::scalar(4, Expr::rational(1) + r2)));
		out.push_back(EqForm::wrap(m, DForm::scalar(4, r2).d()));
		out.push_back(EqForm::wrap(m, r2 * vol));
		out.push_back(cas);
		out.push_back(xi);
		out.push_back(cas * EqForm::wrap(m, DForm::scalar(4, r2)));
	}
	return out;
}

EqForm random_combo(const std::vector<EqForm>& basis, Rng& rng) {
	EqForm out(basis.front().nvars(), basis.front().dim());
	bool any = false;
	for (const auto& b : basis) {
		Rational q = rng.rational(3, 2);
		if (q == 0) continue;
		any = true;
		out += Expr::constant(PiScalar(q)) * b;
	}
	if (!any) out += basis.front();
	return out;
}

WeilElement casimir_of(const LieAlgebraSpec* alg) {
	auto basis = invariant_polynomials(alg, 2);
	REQUIRE(!basis.empty());
	return basis.front();
}

}  // namespace

TEST_CASE("metric connection on the rotating disks") {
	for (long m = 1; m <= 3; ++m) {
		CAPTURE(m);
		Scenario s = load_scenario("disk_" + std::to_string(m));
		const Chart& c = s.charts.front();
		GConnection conn = metric_connection(s.algebra, c);
		REQUIRE(conn.comp.size() == 1);

		Rng rng(3);
		auto pts = sample_points_free(c, 60, rng, 1.0 / 16);
		CHECK(connection_residual(conn, c, pts) < 1e-9);

		// omega = d phi / (2 pi m)
		DForm expected = DForm::monomial(2, 0b1u, parse_scalar_expr(
							 "-y/(" + std::to_string(2 * m) + "*pi*(x^2 + y^2))", c.coords)) +
						 DForm::monomial(2, 0b10u, parse_scalar_expr(
							 "x/(" + std::to_string(2 * m) + "*pi*(x^2 + y^2))", c.coords));
		CHECK(dform_distance(conn.comp[0], expected, pts) < 1e-12);

		// the Gram determinant guards the fixed point
		std::vector<double> origin = {0.0, 0.0}, ok = {0.5, 0.1};
		CHECK_THROWS_AS(conn.require_regular(origin), std::domain_error);
		CHECK_NOTHROW(conn.require_regular(ok));
		try {
			conn.require_regular(origin);
		} catch (const std::domain_error& e) {
			CHECK(std::string(e.what()).find("singular at (0, 0)") != std::string::npos);
		}
	}
}

TEST_CASE("metric connection on the quaternionic ball and the product") {
	for (const char* name : {"quat_ball", "disk_sphere"}) {
		CAPTURE(name);
		Scenario s = load_scenario(name);
		const Chart& c = s.charts.front();
		GConnection conn = metric_connection(s.algebra, c);
		Rng rng(5);
		auto pts = sample_points_free(c, 100, rng, 1.0 / 16);
		CHECK(connection_residual(conn, c, pts) < 1e-9);
		for (const auto& p : pts) CHECK_NOTHROW(conn.require_regular(p));
	}
	// a chart without all generators realized is rejected
	Scenario d = load_scenario("disk_1");
	Scenario q = load_scenario("quat_ball");
	CHECK_THROWS_AS(metric_connection(q.algebra, d.charts.front()), std::invalid_argument);
}

TEST_CASE("degenerate curvature: structural endpoints") {
	SUBCASE("f identically 0 gives the polynomial generators") {
		for (const char* name : {"disk_1", "quat_ball"}) {
			Scenario s = load_scenario(name);
			const Chart& c = s.charts.front();
			GConnection conn = metric_connection(s.algebra, c);
			GEqCurv curv = degenerate_curvature(conn, Expr());
			for (int a = 0; a < s.algebra.dim; ++a) {
				CHECK(curv.omega_f[static_cast<size_t>(a)].is_zero());
				CHECK(EqForm::same(curv.comp[static_cast<size_t>(a)],
								   EqForm::theta(s.algebra.dim, c.dim(), a)));
			}
		}
	}
	SUBCASE("f identically 1 gives the ordinary curvature with no polynomial part") {
		Scenario s = load_scenario("disk_1");
		const Chart& c = s.charts.front();
		GConnection conn = metric_connection(s.algebra, c);
		GEqCurv curv = degenerate_curvature(conn, Expr::rational(1));
		CHECK(EqForm::same(curv.comp[0], EqForm::wrap(1, conn.comp[0].d())));
	}
}

TEST_CASE("curvature structure identity and Casimir consequences") {
	// D Omega_f = [Omega_f, omega_f]; 2 F([Omega,omega_f], Omega) = 0; and the
	// polarized transfer q(q-1)F(alpha,[Omega,omega_f],...) = qF([alpha,omega_f],...)
	for (const char* name : {"disk_1", "disk_2", "disk_3", "disk_sphere", "quat_ball"}) {
		CAPTURE(name);
		Scenario s = load_scenario(name);
		const Chart& c = s.charts.front();
		const int m = s.algebra.dim, n = c.dim();
		GConnection conn = metric_connection(s.algebra, c);
		GEqCurv curv = degenerate_curvature(conn, c.cutoff);
		Rng rng(9);
		auto pts = sample_points_free(c, 100, rng, 1.0 / 16);

		std::vector<EqForm> omega_wrapped;
		for (const DForm& w : curv.omega_f) omega_wrapped.push_back(EqForm::wrap(m, w));
		std::vector<EqForm> bracket = g_bracket(s.algebra, curv.comp, omega_wrapped);

		EqForm pairing22(m, n);
		for (int a = 0; a < m; ++a) {
			EqForm lhs = cartan_d(curv.comp[static_cast<size_t>(a)], c.fields);
			CHECK(eq_distance(lhs, bracket[static_cast<size_t>(a)], pts) < 1e-9);
			pairing22 += bracket[static_cast<size_t>(a)] * curv.comp[static_cast<size_t>(a)];
		}
		CHECK(eq_distance(Expr::rational(2) * pairing22, EqForm(m, n), pts) < 1e-9);

		// with in-order wedge evaluation the polarized transfer reads
		// q(q-1)F(alpha,[omega_f,Omega],Omega,...) = qF([alpha,omega_f],Omega,...)
		for (int trial = 0; trial < 3; ++trial) {
			std::vector<EqForm> alpha;
			for (int a = 0; a < m; ++a) alpha.push_back(random_eq_form(m, n, 1, rng));
			std::vector<EqForm> ba = g_bracket(s.algebra, alpha, omega_wrapped);
			EqForm lhs(m, n), rhs(m, n);
			for (int a = 0; a < m; ++a) {
				lhs += alpha[static_cast<size_t>(a)] * bracket[static_cast<size_t>(a)];
				rhs += ba[static_cast<size_t>(a)] * curv.comp[static_cast<size_t>(a)];
			}
			CHECK(eq_distance(Expr::rational(2) * lhs, Expr::rational(-2) * rhs, pts) < 1e-9);
		}
	}
}

TEST_CASE("degenerate Chern-Weil images") {
	SUBCASE("rotating disk, F = Theta") {
		Scenario s = load_scenario("disk_1");
		const Chart& c = s.charts.front();
		GConnection conn = metric_connection(s.algebra, c);
		GEqCurv curv = degenerate_curvature(conn, c.cutoff);
		EqForm img = apply_cw_f(WeilElement::big_theta(&s.algebra, 0), curv);
		EqForm expected = EqForm::wrap(1, (c.cutoff * conn.comp[0]).d()) +
						  EqForm::term(1, {1}, DForm::scalar(2, Expr::rational(1) - c.cutoff));
		Rng rng(13);
		auto pts = sample_points_free(c, 50, rng, 1.0 / 16);
		CHECK(eq_distance(img, expected, pts) < 1e-12);
	}

	SUBCASE("constants map to themselves") {
		Scenario s = load_scenario("quat_ball");
		GConnection conn = metric_connection(s.algebra, s.charts.front());
		GEqCurv curv = degenerate_curvature(conn, s.charts.front().cutoff);
		EqForm one = apply_cw_f(WeilElement::constant(&s.algebra, PiScalar(1)), curv);
		CHECK(EqForm::same(one, EqForm::wrap(3, DForm::scalar(4, Expr::rational(1)))));
	}

	SUBCASE("non-invariant or odd input is rejected") {
		Scenario s = load_scenario("quat_ball");
		GConnection conn = metric_connection(s.algebra, s.charts.front());
		GEqCurv curv = degenerate_curvature(conn, s.charts.front().cutoff);
		CHECK_THROWS_AS(apply_cw_f(WeilElement::big_theta(&s.algebra, 0), curv),
						std::invalid_argument);
		CHECK_THROWS_AS(apply_cw_f(WeilElement::theta(&s.algebra, 0), curv), std::invalid_argument);
		CHECK_THROWS_AS(inject_polynomial(WeilElement::theta(&s.algebra, 0), 4),
						std::invalid_argument);
	}

	SUBCASE("closedness of the Casimir image") {
		for (const char* name : {"disk_1", "disk_sphere", "quat_ball"}) {
			CAPTURE(name);
			Scenario s = load_scenario(name);
			const Chart& c = s.charts.front();
			GConnection conn = metric_connection(s.algebra, c);
			GEqCurv curv = degenerate_curvature(conn, c.cutoff);
			EqForm img = apply_cw_f(casimir_of(&s.algebra), curv);
			Rng rng(17);
			auto pts = sample_points_free(c, 100, rng, 1.0 / 16);
			CHECK(eq_distance(cartan_d(img, c.fields), EqForm(s.algebra.dim, c.dim()), pts) < 1e-9);
		}
	}
}

TEST_CASE("chain map r_f") {
	SUBCASE("f identically 0 is the identity, tree for tree") {
		for (const char* name : {"disk_1", "quat_ball"}) {
			CAPTURE(name);
			Scenario s = load_scenario(name);
			const Chart& c = s.charts.front();
			const int m = s.algebra.dim, n = c.dim();
			GConnection conn = metric_connection(s.algebra, c);
			GEqCurv curv = degenerate_curvature(conn, Expr());
			Rng rng(19);
			for (int k = 0; k < 5; ++k) {
				EqForm alpha = random_eq_form(m, n, static_cast<int>(rng.integer(1, 4)), rng);
				CHECK(EqForm::same(apply_r_f(alpha, curv, c.fields), alpha));
			}
		}
	}

	SUBCASE("polynomial injection factors the Chern-Weil map, tree for tree") {
		Scenario s = load_scenario("quat_ball");
		const Chart& c = s.charts.front();
		GConnection conn = metric_connection(s.algebra, c);
		GEqCurv curv = degenerate_curvature(conn, c.cutoff);
		WeilElement cas = casimir_of(&s.algebra);
		CHECK(EqForm::same(apply_cw_f(cas, curv),
						   apply_r_f(inject_polynomial(cas, c.dim()), curv, c.fields)));

		Scenario d = load_scenario("disk_1");
		const Chart& dc = d.charts.front();
		GConnection dconn = metric_connection(d.algebra, dc);
		GEqCurv dcurv = degenerate_curvature(dconn, dc.cutoff);
		WeilElement theta2 = WeilElement::big_theta(&d.algebra, 0).pow(2);
		CHECK(EqForm::same(apply_cw_f(theta2, dcurv),
						   apply_r_f(inject_polynomial(theta2, 2), dcurv, dc.fields)));
	}

	SUBCASE("output is basic where the cut-off is 1, and r is idempotent there") {
		for (const char* name : {"disk_1", "quat_ball"}) {
			CAPTURE(name);
			Scenario s = load_scenario(name);
			const Chart& c = s.charts.front();
			const int m = s.algebra.dim;
			GConnection conn = metric_connection(s.algebra, c);
			GEqCurv curv = degenerate_curvature(conn, c.cutoff);
			Rng rng(23);
			// the cut-off reaches 1 where the indicator passes 49/100
			auto pts = sample_points_free(c, 40, rng, 0.5);
			auto family = invariant_family(s, c);
			for (int k = 0; k < 5; ++k) {
				EqForm alpha = random_combo(family, rng);
				EqForm r = apply_r_f(alpha, curv, c.fields);
				for (const auto& [e, w] : r.terms()) {
					bool has_theta = false;
					for (int v : e) has_theta = has_theta || v != 0;
					if (has_theta) CHECK(dform_max(w, pts) < 1e-9);
				}
				for (int a = 0; a < m; ++a) {
					EqForm horiz(m, c.dim());
					for (const auto& [e, w] : r.terms())
						horiz += EqForm::term(m, e, w.contract(c.fields[static_cast<size_t>(a)]));
					CHECK(eq_distance(horiz, EqForm(m, c.dim()), pts) < 1e-9);
				}
				CHECK(eq_distance(apply_r_f(r, curv, c.fields), r, pts) < 1e-9);
			}
		}
	}

	SUBCASE("commutation with the Cartan differential") {
		for (const char* name : {"disk_1", "disk_sphere", "quat_ball"}) {
			CAPTURE(name);
			Scenario s = load_scenario(name);
			const Chart& c = s.charts.front();
			GConnection conn = metric_connection(s.algebra, c);
			GEqCurv curv = degenerate_curvature(conn, c.cutoff);
			Rng rng(29);
			auto pts = sample_points_free(c, 100, rng, 1.0 / 16);
			auto family = invariant_family(s, c);
			for (int k = 0; k < 5; ++k) {
				EqForm alpha = random_combo(family, rng);
				EqForm lhs = cartan_d(apply_r_f(alpha, curv, c.fields), c.fields);
				EqForm rhs = apply_r_f(cartan_d(alpha, c.fields), curv, c.fields);
				CHECK(eq_distance(lhs, rhs, pts) < 1e-9);
			}
		}
	}

	SUBCASE("ingredient counts are validated") {
		Scenario s = load_scenario("quat_ball");
		const Chart& c = s.charts.front();
		GConnection conn = metric_connection(s.algebra, c);
		GEqCurv curv = degenerate_curvature(conn, c.cutoff);
		EqForm alpha = EqForm::wrap(1, DForm::scalar(4, Expr::rational(1)));
		CHECK_THROWS_AS(apply_r_f(alpha, curv, c.fields), std::invalid_argument);
	}
}
