#include "dcw/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcw/chern_weil.hpp"
#include "dcw/localize.hpp"
#include "dcw/parser.hpp"
#include "dcw/scenario.hpp"
#include "dcw/weil.hpp"

namespace dcw {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct SuiteContext {
	SuiteConfig cfg;

	double tol(double base) const { return base * cfg.tolerance_scale; }
	uint64_t seed(uint64_t salt) const { return cfg.seed * 0x9e3779b97f4a7c15ull + salt; }
};

struct Timer {
	std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

	double lap() {
		auto t1 = std::chrono::steady_clock::now();
		double s = std::chrono::duration<double>(t1 - t0).count();
		t0 = t1;
		return s;
	}
};

void add_timed(Report& rep, CheckResult c, Timer& t) {
	c.seconds = t.lap();
	rep.add(std::move(c));
}

double dform_max(const DForm& w, const std::vector<std::vector<double>>& pts) {
	double worst = 0;
	for (const auto& [mask, c] : w.components())
		for (const auto& p : pts) worst = std::max(worst, std::fabs(c.eval(p)));
	return worst;
}

// max residual of the two connection axioms over the sample points
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

// equivariant area form of the coadjoint sphere in a stereographic chart
EqForm sphere_equivariant_area(const LieAlgebraSpec& alg, const Chart& c, bool north) {
	const std::vector<std::string>& n = c.coords;
	auto P = [&](const std::string& t) { return parse_scalar_expr(t, n); };
	const std::string r = "(" + n[0] + "^2 + " + n[1] + "^2)";
	const std::string flip = north ? "" : "-";
	Expr xs[3] = {
		P(flip + "(1 - " + r + ")/(1 + " + r + ")"),
		P("2*" + n[0] + "/(1 + " + r + ")"),
		P(flip + "2*" + n[1] + "/(1 + " + r + ")"),
	};
	EqForm out = EqForm::wrap(3, DForm::monomial(2, 0b11u, P("-4/(1 + " + r + ")^2")));
	for (int a = 0; a < 3; ++a) {
		std::vector<int> e(3, 0);
		e[static_cast<size_t>(a)] = 1;
		out += EqForm::term(3, e, DForm::scalar(2, Expr::constant(alg.a_const) * xs[a]));
	}
	return out;
}

EqForm casimir_theta(int nvars, int chart_dim) {
	EqForm out(nvars, chart_dim);
	for (int a = 0; a < nvars; ++a) {
		std::vector<int> e(static_cast<size_t>(nvars), 0);
		e[static_cast<size_t>(a)] = 2;
		out += EqForm::term(nvars, e, DForm::scalar(chart_dim, Expr::rational(1)));
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

// a basis of invariant equivariant forms adapted to each catalog scenario
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

WeilElement casimir_of(const LieAlgebraSpec* alg) {
	auto basis = invariant_polynomials(alg, 2);
	if (basis.empty()) throw std::logic_error("no degree-2 invariant polynomial");
	return basis.front();
}

// horizontal equivariant perturbation of the quaternionic connection
GConnection perturbed_quat(const GConnection& conn, const Chart& c) {
	auto P = [&](const std::string& t) { return parse_scalar_expr(t, c.coords); };
	std::vector<Expr> h = {P("x0^2 + x1^2 - x2^2 - x3^2"), P("2*(x1*x2 - x0*x3)"),
						   P("2*(x0*x2 + x1*x3)")};
	DForm dr2 = DForm::scalar(4, P("x0^2 + x1^2 + x2^2 + x3^2")).d();
	GConnection out = conn;
	for (size_t a = 0; a < 3; ++a)
		out.comp[a] += Expr::rational(1, 10) * h[a] * dr2;
	return out;
}

// the T-equivariant area form of the sphere factor pulled back to the product
EqForm product_area_form(const Chart& c) {
	auto P = [&](const std::string& t) { return parse_scalar_expr(t, c.coords); };
	DForm v = DForm::monomial(4, 0b1100u, P("-4/(1 + a^2 + b^2)^2"));
	return EqForm::wrap(1, v) + EqForm::term(1, {1}, DForm::scalar(4, P("-4*pi/(1 + a^2 + b^2)")));
}

std::vector<EqForm> product_family(const Chart& c) {
	auto P = [&](const std::string& t) { return parse_scalar_expr(t, c.coords); };
	std::vector<EqForm> out;
	out.push_back(EqForm::wrap(1, DForm::scalar(4, P("1 + (x^2 + y^2)*(a^2 + b^2)"))));
	out.push_back(EqForm::wrap(1, DForm::scalar(4, P("x^2 + y^2")).d()));
	out.push_back(EqForm::wrap(1, DForm::monomial(4, 0b1u, P("-y")) +
								  DForm::monomial(4, 0b10u, P("x"))));
	out.push_back(EqForm::wrap(1, DForm::monomial(4, 0b1100u, P("a^2 + b^2"))));
	out.push_back(EqForm::term(1, {1}, DForm::scalar(4, P("a^2 + b^2"))));
	return out;
}

// ---------------------------------------------------------------- weil -----

Report weil_suite(const SuiteContext& ctx) {
	Report rep;
	Timer t;
	const std::vector<GroupKind> kinds = {GroupKind::U1, GroupKind::Torus2, GroupKind::SU2,
										  GroupKind::SO3};

	{
		bool ok = true;
		for (auto kind : kinds) {
			auto g = build_lie_algebra(kind);
			Rng rng(ctx.seed(100 + static_cast<uint64_t>(kind)));
			for (int trial = 0; trial < 100; ++trial)
				ok = ok && weil_d(weil_d(random_weil_element(&g, rng))).is_zero();
		}
		add_timed(rep,
				  check_exact("weil.d_squared",
							  "the Weil differential squares to zero on 100 random elements "
							  "per group",
							  ok),
				  t);
	}
	{
		bool ok = true;
		for (auto kind : kinds) {
			auto g = build_lie_algebra(kind);
			Rng rng(ctx.seed(200 + static_cast<uint64_t>(kind)));
			for (int trial = 0; trial < 100; ++trial) {
				auto x = random_weil_element(&g, rng);
				for (int a = 0; a < g.dim; ++a) {
					auto rhs = weil_d(weil_contract(a, x)) + weil_contract(a, weil_d(x));
					ok = ok && weil_lie(a, x) == rhs;
				}
			}
		}
		add_timed(rep,
				  check_exact("weil.cartan_homotopy",
							  "the Lie derivative is the anticommutator of the differential "
							  "with the contraction",
							  ok),
				  t);
	}
	{
		bool ok = true;
		for (auto kind : kinds) {
			auto g = build_lie_algebra(kind);
			Rng rng(ctx.seed(300 + static_cast<uint64_t>(kind)));
			for (int trial = 0; trial < 40; ++trial) {
				int p = static_cast<int>(rng.integer(0, 4));
				int q = static_cast<int>(rng.integer(0, 4));
				auto x = random_weil_homogeneous(&g, rng, p);
				auto y = random_weil_homogeneous(&g, rng, q);
				auto yx = y * x;
				if (p * q % 2 == 1) yx = -yx;
				ok = ok && x * y == yx;
				auto z = random_weil_element(&g, rng);
				for (int a = 0; a < g.dim; ++a)
					for (int b = 0; b < g.dim; ++b)
						ok = ok && weil_contract(a, weil_contract(b, z)) ==
									   -weil_contract(b, weil_contract(a, z));
			}
		}
		add_timed(rep,
				  check_exact("weil.graded_commutativity",
							  "products graded-commute and contractions anticommute", ok),
				  t);
	}
	{
		bool ok = true;
		for (auto kind : kinds) {
			auto g = build_lie_algebra(kind);
			Rng rng(ctx.seed(400 + static_cast<uint64_t>(kind)));
			for (int trial = 0; trial < 25; ++trial) {
				int p = static_cast<int>(rng.integer(0, 3));
				auto x = random_weil_homogeneous(&g, rng, p);
				auto y = random_weil_element(&g, rng);
				auto rhs = weil_d(x) * y + (p % 2 == 0 ? x * weil_d(y) : -(x * weil_d(y)));
				ok = ok && weil_d(x * y) == rhs;
			}
		}
		add_timed(rep,
				  check_exact("weil.odd_derivation",
							  "the Weil differential is an odd derivation of the product", ok),
				  t);
	}
	{
		bool ok = true;
		for (auto kind : {GroupKind::SU2, GroupKind::SO3}) {
			auto g = build_lie_algebra(kind);
			ok = ok && invariant_polynomials(&g, 1).empty();
			ok = ok && invariant_polynomials(&g, 3).empty();
			auto inv2 = invariant_polynomials(&g, 2);
			if (inv2.size() != 1) {
				ok = false;
				continue;
			}
			auto cas = WeilElement::big_theta(&g, 0).pow(2) + WeilElement::big_theta(&g, 1).pow(2) +
					   WeilElement::big_theta(&g, 2).pow(2);
			auto lead = inv2[0].terms().begin()->second;
			ok = ok && inv2[0] == cas * lead;
			for (int a = 0; a < 3; ++a) ok = ok && weil_lie(a, inv2[0]).is_zero();
		}
		add_timed(rep,
				  check_exact("weil.invariant_polynomials",
							  "the degree-2 invariants of su(2) and so(3) form the Casimir "
							  "line and the odd degrees vanish",
							  ok),
				  t);
	}
	return rep;
}

// -------------------------------------------------------------- cartan -----

Report cartan_suite(const SuiteContext& ctx) {
	Report rep;
	Timer t;

	for (const char* name : {"sphere_so3", "sphere_su2"}) {
		Scenario s = load_scenario(name);

		{
			// 10 random invariant forms per chart, 20 per scenario
			double worst = 0;
			Rng rng(ctx.seed(11));
			for (const Chart& c : s.charts) {
				auto pts = sample_points(c, 50, rng);
				EqForm vg = sphere_equivariant_area(s.algebra, c, c.name == "N");
				EqForm cas = casimir_theta(3, 2);
				EqForm unit = EqForm::wrap(3, DForm::scalar(2, Expr::rational(1)));
				std::vector<EqForm> basis = {unit, vg, vg * vg, cas, cas * vg, cas * cas};
				for (int k = 0; k < 10; ++k) {
					EqForm alpha = random_combo(basis, rng);
					EqForm dd = cartan_d(cartan_d(alpha, c.fields), c.fields);
					worst = std::max(worst, eq_distance(dd, EqForm(3, 2), pts));
				}
			}
			add_timed(rep,
					  check_residual(std::string("cartan.d_squared.") + name,
									 "the Cartan differential squares to zero on random "
									 "invariant forms",
									 worst, ctx.tol(1e-10)),
					  t);
		}
		{
			// coefficient identities of D-closed invariant forms
			double worst_d = 0, worst_lie = 0;
			Rng rng(ctx.seed(13));
			for (const Chart& c : s.charts) {
				auto pts = sample_points(c, 40, rng);
				EqForm vg = sphere_equivariant_area(s.algebra, c, c.name == "N");
				for (const EqForm& alpha : {vg, vg * vg}) {
					std::set<std::vector<int>> keys;
					for (const auto& [e, w] : alpha.terms()) {
						keys.insert(e);
						for (int a = 0; a < 3; ++a)
							for (int b = 0; b < 3; ++b) {
								std::vector<int> j = e;
								++j[static_cast<size_t>(a)];
								if (j[static_cast<size_t>(b)] >= 1) {
									std::vector<int> j2 = j;
									--j2[static_cast<size_t>(b)];
									keys.insert(j2);
								}
								keys.insert(j);
							}
					}
					for (const auto& J : keys) {
						DForm lhs = alpha.coefficient(J).d();
						DForm rhs(2);
						for (int a = 0; a < 3; ++a) {
							if (J[static_cast<size_t>(a)] < 1) continue;
							std::vector<int> Jm = J;
							--Jm[static_cast<size_t>(a)];
							rhs += alpha.coefficient(Jm).contract(c.fields[static_cast<size_t>(a)]);
						}
						worst_d = std::max(worst_d, dform_max(lhs - rhs, pts));

						for (int b = 0; b < 3; ++b) {
							DForm lhs4 = alpha.coefficient(J).lie(c.fields[static_cast<size_t>(b)]);
							DForm rhs4(2);
							for (int a = 0; a < 3; ++a) {
								if (J[static_cast<size_t>(a)] < 1) continue;
								for (int cc = 0; cc < 3; ++cc) {
									const PiScalar& f = s.algebra.f[static_cast<size_t>(b)]
															[static_cast<size_t>(a)]
															[static_cast<size_t>(cc)];
									if (f.is_zero()) continue;
									std::vector<int> Jp = J;
									++Jp[static_cast<size_t>(cc)];
									--Jp[static_cast<size_t>(a)];
									long mult =
										J[static_cast<size_t>(cc)] + 1 - (cc == a ? 1 : 0);
									rhs4 += Expr::constant(PiScalar(mult) * f) *
											alpha.coefficient(Jp);
								}
							}
							worst_lie = std::max(worst_lie, dform_max(lhs4 - rhs4, pts));
						}
					}
				}
			}
			add_timed(rep,
					  check_residual(std::string("cartan.closed_coefficients.") + name,
									 "coefficients of closed invariant forms are contracted "
									 "exterior derivatives of their predecessors",
									 worst_d, ctx.tol(1e-9)),
					  t);
			add_timed(rep,
					  check_residual(std::string("cartan.invariant_coefficients.") + name,
									 "Lie derivatives of the coefficients follow the structure "
									 "constants",
									 worst_lie, ctx.tol(1e-9)),
					  t);
		}
		{
			// torus projection intertwines the differentials
			double worst = 0;
			Rng rng(ctx.seed(23));
			for (const Chart& c : s.charts) {
				auto pts = sample_points(c, 30, rng);
				EqForm vg = sphere_equivariant_area(s.algebra, c, c.name == "N");
				EqForm cas = casimir_theta(3, 2);
				EqForm unit = EqForm::wrap(3, DForm::scalar(2, Expr::rational(1)));
				std::vector<EqForm> basis = {unit, vg, vg * vg, cas, cas * vg};
				std::span<const std::vector<Expr>> torus_field(c.fields.data(), 1);
				for (int k = 0; k < 10; ++k) {
					EqForm alpha = random_combo(basis, rng);
					EqForm lhs = project_to_torus(cartan_d(alpha, c.fields), s.algebra, c);
					EqForm rhs = cartan_d(project_to_torus(alpha, s.algebra, c), torus_field);
					worst = std::max(worst, eq_distance(lhs, rhs, pts));
				}
			}
			add_timed(rep,
					  check_residual(std::string("cartan.torus_chain.") + name,
									 "projection to the torus model intertwines the Cartan "
									 "differentials",
									 worst, ctx.tol(1e-9)),
					  t);
		}
		{
			// the extended area form is closed in the torus model
			double worst = 0;
			Rng rng(ctx.seed(27));
			for (const Chart& c : s.charts) {
				const std::vector<std::string>& n = c.coords;
				auto P = [&](const std::string& txt) { return parse_scalar_expr(txt, n); };
				const std::string r = "(" + n[0] + "^2 + " + n[1] + "^2)";
				const std::string flip = c.name == "N" ? "" : "-";
				Expr h = P("2*pi*(1 + " + std::to_string(s.algebra.b_const) + "*" + flip +
						   "(1 - " + r + ")/(1 + " + r + "))");
				EqForm beta =
					EqForm::wrap(1, DForm::monomial(2, 0b11u, P("-4/(1 + " + r + ")^2")));
				beta += EqForm::term(1, {1}, DForm::scalar(2, h));
				std::span<const std::vector<Expr>> torus_field(c.fields.data(), 1);
				worst = std::max(worst, eq_distance(cartan_d(beta, torus_field), EqForm(1, 2),
													sample_points(c, 100, rng)));
			}
			add_timed(rep,
					  check_residual(std::string("cartan.torus_area.") + name,
									 "the torus differential annihilates the moment-extended "
									 "area form",
									 worst, ctx.tol(1e-10)),
					  t);
		}
	}

	{
		// the quaternionic ball: D^2 = 0 and the chain property
		Scenario s = load_scenario("quat_ball");
		const Chart& c = s.charts.front();
		auto family = invariant_family(s, c);
		Rng rng(ctx.seed(29));
		auto pts = sample_points(c, 30, rng);
		std::span<const std::vector<Expr>> torus_field(c.fields.data(), 1);
		double worst_dd = 0, worst_chain = 0;
		for (int k = 0; k < 20; ++k) {
			EqForm alpha = random_combo(family, rng);
			EqForm dd = cartan_d(cartan_d(alpha, c.fields), c.fields);
			worst_dd = std::max(worst_dd, eq_distance(dd, EqForm(3, 4), pts));
			EqForm lhs = project_to_torus(cartan_d(alpha, c.fields), s.algebra, c);
			EqForm rhs = cartan_d(project_to_torus(alpha, s.algebra, c), torus_field);
			worst_chain = std::max(worst_chain, eq_distance(lhs, rhs, pts));
		}
		add_timed(rep,
				  check_residual("cartan.d_squared.quat_ball",
								 "the Cartan differential squares to zero on random invariant "
								 "forms",
								 worst_dd, ctx.tol(1e-10)),
				  t);
		add_timed(rep,
				  check_residual("cartan.torus_chain.quat_ball",
								 "projection to the torus model intertwines the Cartan "
								 "differentials",
								 worst_chain, ctx.tol(1e-9)),
				  t);
	}

	{
		// the extended disk area forms are closed in the torus model
		double worst = 0;
		Rng rng(ctx.seed(31));
		for (int m : {1, 2, 3}) {
			Scenario s = load_scenario("disk_" + std::to_string(m));
			const Chart& c = s.charts.front();
			Expr h = parse_scalar_expr("-" + std::to_string(m) + "*pi*(x^2 + y^2)", c.coords);
			EqForm beta = EqForm::wrap(1, DForm::monomial(2, 0b11u, Expr::rational(1)));
			beta += EqForm::term(1, {1}, DForm::scalar(2, h));
			worst = std::max(worst, eq_distance(cartan_d(beta, c.fields), EqForm(1, 2),
												sample_points(c, 50, rng)));
		}
		add_timed(rep,
				  check_residual("cartan.torus_area.disks",
								 "the torus differential annihilates the moment-extended disk "
								 "area forms",
								 worst, ctx.tol(1e-10)),
				  t);
	}

	return rep;
}

// ----------------------------------------------------------------- dcw -----

Report dcw_suite(const SuiteContext& ctx) {
	Report rep;
	Timer t;

	for (const char* name : {"disk_2", "disk_sphere", "quat_ball"}) {
		Scenario s = load_scenario(name);
		const Chart& c = s.charts.front();
		const int m = s.algebra.dim, n = c.dim();
		GConnection conn = metric_connection(s.algebra, c);
		GEqCurv curv = degenerate_curvature(conn, c.cutoff);
		Rng rng(ctx.seed(9));
		auto pts = sample_points_free(c, 100, rng, 1.0 / 16);

		add_timed(rep,
				  check_residual(std::string("dcw.connection.") + name,
								 "the metric connection satisfies the projection and "
								 "equivariance axioms",
								 connection_residual(conn, c, pts), ctx.tol(1e-9)),
				  t);

		std::vector<EqForm> omega_wrapped;
		for (const DForm& w : curv.omega_f) omega_wrapped.push_back(EqForm::wrap(m, w));
		std::vector<EqForm> bracket = g_bracket(s.algebra, curv.comp, omega_wrapped);

		{
			double worst = 0;
			EqForm pairing(m, n);
			for (int a = 0; a < m; ++a) {
				EqForm lhs = cartan_d(curv.comp[static_cast<size_t>(a)], c.fields);
				worst = std::max(worst,
								 eq_distance(lhs, bracket[static_cast<size_t>(a)], pts));
				pairing += bracket[static_cast<size_t>(a)] * curv.comp[static_cast<size_t>(a)];
			}
			add_timed(rep,
					  check_residual(std::string("dcw.curvature_structure.") + name,
									 "the degenerate curvature satisfies the curvature "
									 "structure identity",
									 worst, ctx.tol(1e-9)),
					  t);
			add_timed(rep,
					  check_residual(std::string("dcw.casimir_pairing.") + name,
									 "the Casimir pairing of the curvature with its structure "
									 "bracket vanishes",
									 eq_distance(Expr::rational(2) * pairing, EqForm(m, n), pts),
									 ctx.tol(1e-9)),
					  t);
		}
		{
			double worst = 0;
			for (int trial = 0; trial < 3; ++trial) {
				std::vector<EqForm> alpha;
				for (int a = 0; a < m; ++a) alpha.push_back(random_eq_form(m, n, 1, rng));
				std::vector<EqForm> ba = g_bracket(s.algebra, alpha, omega_wrapped);
				EqForm lhs(m, n), rhs(m, n);
				for (int a = 0; a < m; ++a) {
					lhs += alpha[static_cast<size_t>(a)] * bracket[static_cast<size_t>(a)];
					rhs += ba[static_cast<size_t>(a)] * curv.comp[static_cast<size_t>(a)];
				}
				worst = std::max(worst, eq_distance(Expr::rational(2) * lhs,
													Expr::rational(-2) * rhs, pts));
			}
			add_timed(rep,
					  check_residual(std::string("dcw.polarized_transfer.") + name,
									 "the bracket transfers through the polarized Casimir "
									 "pairing",
									 worst, ctx.tol(1e-9)),
					  t);
		}
		add_timed(rep,
				  check_residual(std::string("dcw.cw_closed.") + name,
								 "the Chern-Weil image of the Casimir is equivariantly closed",
								 eq_distance(cartan_d(apply_cw_f(casimir_of(&s.algebra), curv),
													  c.fields),
											 EqForm(m, n), pts),
								 ctx.tol(1e-9)),
				  t);
		{
			double worst = 0;
			auto family = invariant_family(s, c);
			for (int k = 0; k < 5; ++k) {
				EqForm alpha = random_combo(family, rng);
				EqForm lhs = cartan_d(apply_r_f(alpha, curv, c.fields), c.fields);
				EqForm rhs = apply_r_f(cartan_d(alpha, c.fields), curv, c.fields);
				worst = std::max(worst, eq_distance(lhs, rhs, pts));
			}
			add_timed(rep,
					  check_residual(std::string("dcw.chain_commutation.") + name,
									 "the chain map commutes with the Cartan differential",
									 worst, ctx.tol(1e-9)),
					  t);
		}
	}

	{
		// zero cutoff: the chain map is the identity, tree for tree
		bool ok = true;
		for (const char* name : {"disk_1", "quat_ball"}) {
			Scenario s = load_scenario(name);
			const Chart& c = s.charts.front();
			const int m = s.algebra.dim, n = c.dim();
			GConnection conn = metric_connection(s.algebra, c);
			GEqCurv curv = degenerate_curvature(conn, Expr());
			Rng rng(ctx.seed(19));
			for (int k = 0; k < 5; ++k) {
				EqForm alpha = random_eq_form(m, n, static_cast<int>(rng.integer(1, 4)), rng);
				ok = ok && EqForm::same(apply_r_f(alpha, curv, c.fields), alpha);
			}
		}
		add_timed(rep,
				  check_exact("dcw.chain_identity_zero_cutoff",
							  "with vanishing cutoff the chain map is the identity, tree for "
							  "tree",
							  ok),
				  t);
	}
	{
		// CW_f factors through polynomial injection, tree for tree
		Scenario s = load_scenario("quat_ball");
		const Chart& c = s.charts.front();
		GConnection conn = metric_connection(s.algebra, c);
		GEqCurv curv = degenerate_curvature(conn, c.cutoff);
		WeilElement cas = casimir_of(&s.algebra);
		bool ok = EqForm::same(apply_cw_f(cas, curv),
							   apply_r_f(inject_polynomial(cas, c.dim()), curv, c.fields));

		Scenario d = load_scenario("disk_1");
		const Chart& dc = d.charts.front();
		GConnection dconn = metric_connection(d.algebra, dc);
		GEqCurv dcurv = degenerate_curvature(dconn, dc.cutoff);
		WeilElement theta2 = WeilElement::big_theta(&d.algebra, 0).pow(2);
		ok = ok && EqForm::same(apply_cw_f(theta2, dcurv),
								apply_r_f(inject_polynomial(theta2, 2), dcurv, dc.fields));
		add_timed(rep,
				  check_exact("dcw.cw_factorization",
							  "the Chern-Weil map is the chain map composed with polynomial "
							  "injection, tree for tree",
							  ok),
				  t);
	}
	{
		// where the cutoff is 1 the output is basic and the map idempotent
		double worst = 0;
		for (const char* name : {"disk_1", "quat_ball"}) {
			Scenario s = load_scenario(name);
			const Chart& c = s.charts.front();
			const int m = s.algebra.dim;
			GConnection conn = metric_connection(s.algebra, c);
			GEqCurv curv = degenerate_curvature(conn, c.cutoff);
			Rng rng(ctx.seed(23));
			auto pts = sample_points_free(c, 40, rng, 0.5);
			auto family = invariant_family(s, c);
			for (int k = 0; k < 5; ++k) {
				EqForm alpha = random_combo(family, rng);
				EqForm r = apply_r_f(alpha, curv, c.fields);
				for (const auto& [e, w] : r.terms()) {
					bool has_theta = false;
					for (int v : e) has_theta = has_theta || v != 0;
					if (has_theta) worst = std::max(worst, dform_max(w, pts));
				}
				for (int a = 0; a < m; ++a) {
					EqForm horiz(m, c.dim());
					for (const auto& [e, w] : r.terms())
						horiz += EqForm::term(m, e, w.contract(c.fields[static_cast<size_t>(a)]));
					worst = std::max(worst, eq_distance(horiz, EqForm(m, c.dim()), pts));
				}
				worst = std::max(worst, eq_distance(apply_r_f(r, curv, c.fields), r, pts));
			}
		}
		add_timed(rep,
				  check_residual("dcw.chain_basic_range",
								 "on the cutoff plateau the chain map lands in basic forms and "
								 "is idempotent",
								 worst, ctx.tol(1e-9)),
				  t);
	}

	{
		// transgression along the connection and cutoff paths for the circle
		Scenario s = load_scenario("disk_1");
		const Chart& c = s.charts.front();
		GConnection conn = metric_connection(s.algebra, c);
		Rng rng(ctx.seed(31));
		auto pts = sample_points_free(c, 80, rng, 1.0 / 16);
		WeilElement theta = WeilElement::big_theta(&s.algebra, 0);

		GConnection pert = conn;
		pert.comp[0] += DForm::scalar(2, parse_scalar_expr("(x^2 + y^2)^2", c.coords)).d();
		double worst = 0;
		for (const WeilElement& F : {theta, theta.pow(2)}) {
			EqForm T = transgress_invariant_poly(conn, pert, c.cutoff, F);
			EqForm delta = apply_cw_f(F, degenerate_curvature(pert, c.cutoff)) -
						   apply_cw_f(F, degenerate_curvature(conn, c.cutoff));
			worst = std::max(worst, eq_distance(cartan_d(T, c.fields), delta, pts));
		}
		add_timed(rep,
				  check_residual("dcw.transgression_connections.disk_1",
								 "transgression solves the difference equation along a "
								 "connection path",
								 worst, ctx.tol(1e-6)),
				  t);

		worst = 0;
		for (const WeilElement& F : {theta, theta.pow(2)}) {
			EqForm T = transgress_invariant_poly_cutoff(conn, c.cutoff, c.cutoff_alt, F);
			EqForm delta = apply_cw_f(F, degenerate_curvature(conn, c.cutoff_alt)) -
						   apply_cw_f(F, degenerate_curvature(conn, c.cutoff));
			worst = std::max(worst, eq_distance(cartan_d(T, c.fields), delta, pts));
		}
		add_timed(rep,
				  check_residual("dcw.transgression_cutoffs.disk_1",
								 "transgression solves the difference equation along a cutoff "
								 "path",
								 worst, ctx.tol(1e-6)),
				  t);
	}
	{
		// the same paths for su(2) with the Casimir
		Scenario s = load_scenario("quat_ball");
		const Chart& c = s.charts.front();
		GConnection conn = metric_connection(s.algebra, c);
		Rng rng(ctx.seed(37));
		auto pts = sample_points_free(c, 60, rng, 1.0 / 16);
		WeilElement cas = casimir_of(&s.algebra);

		GConnection pert = perturbed_quat(conn, c);
		EqForm T = transgress_invariant_poly(conn, pert, c.cutoff, cas);
		EqForm delta = apply_cw_f(cas, degenerate_curvature(pert, c.cutoff)) -
					   apply_cw_f(cas, degenerate_curvature(conn, c.cutoff));
		add_timed(rep,
				  check_residual("dcw.transgression_connections.quat_ball",
								 "transgression solves the difference equation along a "
								 "connection path",
								 eq_distance(cartan_d(T, c.fields), delta, pts), ctx.tol(1e-6)),
				  t);

		EqForm Tc = transgress_invariant_poly_cutoff(conn, c.cutoff, c.cutoff_alt, cas);
		EqForm deltac = apply_cw_f(cas, degenerate_curvature(conn, c.cutoff_alt)) -
						apply_cw_f(cas, degenerate_curvature(conn, c.cutoff));
		add_timed(rep,
				  check_residual("dcw.transgression_cutoffs.quat_ball",
								 "transgression solves the difference equation along a cutoff "
								 "path",
								 eq_distance(cartan_d(Tc, c.fields), deltac, pts),
								 ctx.tol(1e-6)),
				  t);
	}
	{
		// homotopy identity of the form-level transgression on the product
		Scenario s = load_scenario("disk_sphere");
		const Chart& c = s.charts.front();
		GConnection conn = metric_connection(s.algebra, c);
		GConnection pert = conn;
		pert.comp[0] +=
			DForm::scalar(4, parse_scalar_expr("(x^2 + y^2)*(a^2 + b^2)", c.coords)).d();
		Rng rng(ctx.seed(41));
		auto pts = sample_points_free(c, 60, rng, 1.0 / 16);

		GEqCurv curv0 = degenerate_curvature(conn, c.cutoff);
		GEqCurv curv1 = degenerate_curvature(pert, c.cutoff);
		double worst = 0;
		auto probe = [&](const EqForm& alpha) {
			EqForm T = transgress_form(conn, pert, c.cutoff, alpha, c.fields);
			EqForm lhs = cartan_d(T, c.fields) +
						 transgress_form(conn, pert, c.cutoff, cartan_d(alpha, c.fields),
										 c.fields);
			EqForm rhs = apply_r_f(alpha, curv1, c.fields) - apply_r_f(alpha, curv0, c.fields);
			worst = std::max(worst, eq_distance(lhs, rhs, pts));
		};
		probe(product_area_form(c));
		auto family = product_family(c);
		for (int k = 0; k < 3; ++k) probe(random_combo(family, rng));
		add_timed(rep,
				  check_residual("dcw.transgression_homotopy.disk_sphere",
								 "the transgressed chain map satisfies the homotopy identity",
								 worst, ctx.tol(1e-6)),
				  t);
	}

	return rep;
}

// ------------------------------------------------------------- kalkman -----

Report kalkman_suite(const SuiteContext& ctx) {
	Report rep;
	Timer t;

	for (int m : {1, 2, 3}) {
		Scenario s = load_scenario("disk_" + std::to_string(m));
		EqForm one = EqForm::wrap(1, DForm::scalar(2, Expr::rational(1)));
		SidePair sides = kalkman_sides(s, one, ctx.cfg.quad_order);
		std::string base = "kalkman.disk_" + std::to_string(m);
		add_timed(rep,
				  check_pair(base + ".sides",
							 "the boundary integral equals the fixed-point contribution on "
							 "the rotating disk",
							 sides.lhs, sides.rhs, ctx.tol(1e-6)),
				  t);
		add_timed(rep,
				  check_pair(base + ".value",
							 "the unit class localizes to the reciprocal rotation weight",
							 sides.lhs, 1.0 / m, ctx.tol(1e-6)),
				  t);
	}

	{
		Scenario s = load_scenario("disk_sphere");
		std::vector<EqForm> family;
		for (const Chart& chart : s.charts) {
			const std::string r2 = chart.name == "DN" ? "a^2 + b^2" : "c^2 + d^2";
			EqForm alpha = EqForm::wrap(
				1, DForm::monomial(4, 0b1100u,
								   parse_scalar_expr("4/(1 + " + r2 + ")^2", chart.coords)));
			const std::string h = chart.name == "DN" ? "4*pi/(1 + " + r2 + ")"
													 : "4*pi*(" + r2 + ")/(1 + " + r2 + ")";
			alpha +=
				EqForm::term(1, {1}, DForm::scalar(4, parse_scalar_expr(h, chart.coords)));
			family.push_back(alpha);
		}
		SidePair sides = kalkman_sides(s, family, std::min(ctx.cfg.quad_order, 20));
		add_timed(rep,
				  check_pair("kalkman.disk_sphere.sides",
							 "the boundary integral equals the fixed-point contribution on "
							 "the disk-sphere product",
							 sides.lhs, sides.rhs, ctx.tol(1e-5)),
				  t);
		add_timed(rep,
				  check_pair("kalkman.disk_sphere.value",
							 "the equivariant sphere area localizes to the sphere volume",
							 sides.lhs, 4 * kPi, ctx.tol(1e-5)),
				  t);
	}

	{
		// pointwise vanishing of the Stokes integrand on the cutoff plateau
		double worst = 0;
		for (int m : {1, 3}) {
			Scenario s = load_scenario("disk_" + std::to_string(m));
			const Chart& chart = s.charts.front();
			GConnection conn = metric_connection(s.algebra, chart);
			GEqCurv curv = degenerate_curvature(conn, chart.cutoff);
			EqForm one = EqForm::wrap(1, DForm::scalar(2, Expr::rational(1)));
			EqForm integrand = curv.comp[0] * apply_r_f(one, curv, chart.fields);
			std::vector<std::vector<double>> collar;
			for (double r : {0.72, 0.81, 0.93})
				for (double phi : {0.3, 2.2, 4.4})
					collar.push_back({r * std::cos(phi), r * std::sin(phi)});
			for (const auto& [e, w] : integrand.terms()) {
				(void)e;
				worst = std::max(worst, dform_max(w, collar));
			}
		}
		add_timed(rep,
				  check_residual("kalkman.concentration",
								 "the localization integrand vanishes identically on the "
								 "cutoff plateau",
								 worst, ctx.tol(1e-10)),
				  t);
	}

	return rep;
}

// ---------------------------------------------------------- nonabelian -----

Report nonabelian_suite(const SuiteContext& ctx) {
	Report rep;
	Timer t;

	{
		Scenario s = load_scenario("quat_ball");
		int order = std::min(ctx.cfg.quad_order, 16);

		EqForm unit = EqForm::wrap(3, DForm::scalar(4, Expr::rational(1)));
		SidePair sides = su2_boundary_sides(s, unit, order);
		add_timed(rep,
				  check_pair("nonabelian.quat.sides",
							 "the boundary frame integral equals the reduced localization sum",
							 sides.lhs, sides.rhs, ctx.tol(1e-5)),
				  t);
		add_timed(rep,
				  check_pair("nonabelian.quat.value",
							 "the unit class localizes to the Casimir normalization constant",
							 sides.rhs, 1.0, ctx.tol(1e-9)),
				  t);

		EqForm scaled =
			EqForm::wrap(3, DForm::scalar(4, Expr::constant(PiScalar(Rational(-3, 2)))));
		SidePair sides2 = su2_boundary_sides(s, scaled, order);
		add_timed(rep,
				  check_pair("nonabelian.quat.scaled_sides",
							 "the boundary formula is linear in the localized class",
							 sides2.lhs, sides2.rhs, ctx.tol(1e-5)),
				  t);

		std::vector<EqForm> family = {unit};
		auto [frame, rewrite] = su2_boundary_rewrite_pair(s, family, order);
		add_timed(rep,
				  check_pair("nonabelian.quat.rewrite",
							 "the frame-volume rewrite reproduces the boundary integrand",
							 frame.value, rewrite.value, ctx.tol(1e-5)),
				  t);
	}

	for (const char* name : {"triangle_fp", "triangle_fp_scalene"}) {
		Scenario s = load_scenario(name);
		{
			bool ok = true;
			for (Rational cval : {Rational(1), Rational(-7, 3)})
				ok = ok && nonabelian_fixed_point_sum(s.fixed, PiScalar(cval), s.algebra) ==
							   PiScalar(cval);
			long oracle = std::stol(s.extras.at("oracle_lhs"));
			ok = ok && nonabelian_fixed_point_sum(s.fixed, PiScalar(1), s.algebra) ==
						   PiScalar(oracle);
			add_timed(rep,
					  check_exact(std::string("nonabelian.") + name + ".sum",
								  "the fixed-point sum reproduces the constant class and the "
								  "quotient-side oracle",
								  ok),
					  t);
		}
		{
			std::vector<FixedComponent> flipped = s.fixed;
			for (FixedComponent& fc : flipped) {
				for (int& w : fc.weights) w = -w;
				fc.mu = -fc.mu;
				fc.label = fc.label == "plus" ? "minus" : "plus";
			}
			bool ok =
				nonabelian_fixed_point_sum(flipped, PiScalar(Rational(5, 4)), s.algebra) ==
				nonabelian_fixed_point_sum(s.fixed, PiScalar(Rational(5, 4)), s.algebra);
			add_timed(rep,
					  check_exact(std::string("nonabelian.") + name + ".flip",
								  "the sum is invariant under the simultaneous weight, moment "
								  "and label flip",
								  ok),
					  t);
		}
	}

	return rep;
}

// ------------------------------------------------------------- residue -----

Report residue_suite(const SuiteContext& ctx) {
	Report rep;
	Timer t;

	LieAlgebraSpec alg = load_scenario("triangle_fp").algebra;

	for (const char* name : {"triangle_fp", "triangle_fp_scalene"}) {
		Scenario s = load_scenario(name);
		Rational eta(5, 4);
		std::vector<JkComponent> comps = jk_from_fixed(s.fixed, eta);
		JkValues vals = jk_residue_check(comps, 0, 0, s.algebra);
		bool ok = vals.residue == vals.triple_sum &&
				  vals.residue == nonabelian_fixed_point_sum(s.fixed, PiScalar(eta), s.algebra);
		add_timed(rep,
				  check_exact(std::string("residue.") + name,
							  "the residue route and the triple-sum route agree and match the "
							  "fixed-point sum",
							  ok),
				  t);
	}

	{
		bool ok = true;
		Rng rng(ctx.seed(17));
		for (int trial = 0; trial < 50; ++trial) {
			int n = static_cast<int>(rng.integer(2, 5));
			int sdeg = static_cast<int>(rng.integer(0, n));
			std::vector<JkComponent> comps;
			for (int k = 0, count = static_cast<int>(rng.integer(1, 3)); k < count; ++k) {
				JkComponent comp;
				comp.l = static_cast<int>(rng.integer(0, std::min(2, n)));
				comp.mu = rng.rational(5, 4, true);
				for (int a = 0; a <= std::min(comp.l, sdeg); ++a)
					for (int b = 0; a + b <= comp.l && b <= n - sdeg; ++b) {
						int cdeg = comp.l - a - b;
						comp.pairings[{a, b, cdeg}] = rng.rational(6, 3);
					}
				if (comp.pairings.empty()) continue;
				comps.push_back(comp);
			}
			JkValues vals = jk_residue_check(comps, n, sdeg, alg);
			ok = ok && vals.residue == vals.triple_sum;
		}
		add_timed(rep,
				  check_exact("residue.synthetic",
							  "the residue and triple-sum routes agree on 50 random component "
							  "datasets",
							  ok),
				  t);
	}

	return rep;
}

}  // namespace

const std::vector<std::string>& suite_names() {
	static const std::vector<std::string> names = {"weil",    "cartan",     "dcw",
												   "kalkman", "nonabelian", "residue"};
	return names;
}

Report run_suite(const std::string& name, const SuiteConfig& config) {
	if (config.quad_order < 2) throw std::invalid_argument("quadrature order must be at least 2");
	if (!(config.tolerance_scale > 0))
		throw std::invalid_argument("tolerance scale must be positive");
	SuiteContext ctx{config};
	if (name == "all") {
		Report rep;
		for (const std::string& n : suite_names()) rep.merge(run_suite(n, config));
		return rep;
	}
	if (name == "weil") return weil_suite(ctx);
	if (name == "cartan") return cartan_suite(ctx);
	if (name == "dcw") return dcw_suite(ctx);
	if (name == "kalkman") return kalkman_suite(ctx);
	if (name == "nonabelian") return nonabelian_suite(ctx);
	if (name == "residue") return residue_suite(ctx);
	throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace dcw
