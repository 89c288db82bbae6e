#include "dcw/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dcw {

namespace {

std::vector<double> eval_all(std::span<const Expr> es, std::span<const double> at) {
	std::vector<double> out(es.size());
	for (size_t i = 0; i < es.size(); ++i) out[i] = es[i].eval(at);
	return out;
}

double form_distance(const DForm& a, const DForm& b,
					 const std::vector<std::vector<double>>& probes) {
	double worst = 0;
	auto scan = [&](const std::map<uint32_t, Expr>& comps) {
		for (const auto& [mask, unused] : comps) {
			(void)unused;
			for (const auto& p : probes)
				worst = std::max(worst, std::fabs(a.eval(mask, p) - b.eval(mask, p)));
		}
	};
	scan(a.components());
	scan(b.components());
	return worst;
}

}  // namespace

std::vector<double> FixedComponent::point_d() const {
	std::vector<double> out(point.size());
	for (size_t i = 0; i < point.size(); ++i) out[i] = point[i].convert_to<double>();
	return out;
}

const Chart* Scenario::chart(std::string_view n) const {
	for (const auto& c : charts)
		if (c.name == n) return &c;
	return nullptr;
}

const Chart& Scenario::chart_or_throw(std::string_view n) const {
	const Chart* c = chart(n);
	if (!c) throw std::invalid_argument("scenario '" + name + "': no chart named '" +
										std::string(n) + "'");
	return *c;
}

const Region* Scenario::region(std::string_view n) const {
	for (const auto& r : regions)
		if (r.name == n) return &r;
	return nullptr;
}

const Region& Scenario::region_or_throw(std::string_view n) const {
	const Region* r = region(n);
	if (!r) throw std::invalid_argument("scenario '" + name + "': no region named '" +
										std::string(n) + "'");
	return *r;
}

const FixedComponent* Scenario::fixed_component(std::string_view n) const {
	for (const auto& f : fixed)
		if (f.name == n) return &f;
	return nullptr;
}

std::vector<std::vector<double>> sample_points(const Chart& chart, int count, Rng& rng) {
	std::vector<std::vector<double>> pts;
	pts.reserve(count);
	for (int k = 0; k < count; ++k) {
		std::vector<double> p(chart.dim());
		for (int i = 0; i < chart.dim(); ++i) p[i] = rng.real(chart.sample_lo[i], chart.sample_hi[i]);
		pts.push_back(std::move(p));
	}
	return pts;
}

IntegralEstimate integrate_region(const Scenario& s, const Region& region,
								  const std::function<DForm(const Chart&)>& form_on_chart,
								  int order) {
	IntegralEstimate total;
	for (const RegionPiece& piece : region.pieces) {
		const Chart& ch = s.chart_or_throw(piece.chart);
		if (static_cast<int>(piece.map.size()) != ch.dim())
			throw std::invalid_argument("region '" + region.name + "': piece map has " +
										std::to_string(piece.map.size()) + " components, chart '" +
										ch.name + "' has dimension " + std::to_string(ch.dim()));
		const int k = piece.dim();
		DForm pulled = form_on_chart(ch).pullback(piece.map, k);
		const uint32_t full = (k >= 32) ? ~0u : ((1u << k) - 1u);
		Expr coeff = pulled.coefficient(full);
		auto est = integrate_box_refined(
			[&](std::span<const double> p) { return coeff.eval(p); }, piece.lo, piece.hi, order);
		total.value += piece.orient * est.value;
		total.error += est.error;
	}
	return total;
}

DForm average_over_circle(const Chart& chart, const DForm& omega, double invariant_tol,
						  double target) {
	const int n = chart.dim();
	if (omega.dim() != n)
		throw std::invalid_argument("average_over_circle: form dimension " +
									std::to_string(omega.dim()) + " != chart dimension " +
									std::to_string(n));
	if (chart.fields.empty() || chart.fields[0].empty())
		throw std::logic_error("average_over_circle: chart '" + chart.name +
							   "' carries no generator fields");

	Rng prng(0x5eed5eedULL);
	auto probes = sample_points(chart, 8, prng);

	// Exact identity on already-invariant input: same object back.
	DForm lie = omega.lie(chart.fields[0]);
	double lie_res = 0;
	for (const auto& [mask, coeff] : lie.components())
		for (const auto& p : probes) lie_res = std::max(lie_res, std::fabs(coeff.eval(p)));
	if (lie_res < invariant_tol) return omega;

	if (!chart.has_flow)
		throw std::logic_error("average_over_circle: chart '" + chart.name +
							   "' has no closed-form flow");

	auto pull_at = [&](const Rational& t) {
		std::vector<Expr> repl(n + 1);
		for (int i = 0; i < n; ++i) repl[i] = Expr::coord(i);
		repl[n] = Expr::constant(PiScalar(t));
		std::vector<Expr> emb(n);
		for (int i = 0; i < n; ++i) emb[i] = chart.flow[i].substitute(repl);
		return omega.pullback(emb, n);
	};

	int big_n = 4;
	DForm sum(n);
	for (int i = 0; i < big_n; ++i) sum += pull_at(Rational(i, big_n));
	DForm prev = Expr::rational(1, big_n) * sum;
	while (big_n < 512) {
		for (int i = 0; i < big_n; ++i) sum += pull_at(Rational(2 * i + 1, 2 * big_n));
		big_n *= 2;
		DForm cur = Expr::rational(1, big_n) * sum;
		if (form_distance(cur, prev, probes) < target) return cur;
		prev = cur;
	}
	throw std::runtime_error("average_over_circle: flow average did not converge on chart '" +
							 chart.name + "'");
}

Report validate_scenario(const Scenario& s, uint64_t seed, int samples) {
	Report rep;
	const std::string prefix = "scenario." + s.name + ".";
	const int m = s.algebra.dim;
	Rng rng(seed * 0x9e3779b97f4a7c15ULL + 0xd1ce5ca1ULL);

	// --- structural well-formedness -----------------------------------------
	std::string problem;
	auto flag = [&](const std::string& msg) {
		if (problem.empty()) problem = msg;
	};
	for (const auto& c : s.charts) {
		const size_t d = c.coords.size();
		if (d == 0) flag("chart '" + c.name + "' has no coordinates");
		if (c.sample_lo.size() != d || c.sample_hi.size() != d)
			flag("chart '" + c.name + "' sample box shape mismatch");
		if (static_cast<int>(c.fields.size()) != m)
			flag("chart '" + c.name + "' has " + std::to_string(c.fields.size()) +
				 " fields for a rank-" + std::to_string(m) + " algebra");
		for (const auto& v : c.fields)
			if (v.size() != d) flag("chart '" + c.name + "' field component count mismatch");
		if (!c.metric.empty()) {
			if (c.metric.size() != d) flag("chart '" + c.name + "' metric row count mismatch");
			for (const auto& row : c.metric)
				if (row.size() != d) flag("chart '" + c.name + "' metric column count mismatch");
		}
		if (c.has_flow && c.flow.size() != d)
			flag("chart '" + c.name + "' flow component count mismatch");
		if (c.orient != 1 && c.orient != -1) flag("chart '" + c.name + "' orientation not +-1");
	}
	for (const auto& r : s.regions) {
		for (const auto& p : r.pieces) {
			if (!s.chart(p.chart))
				flag("region '" + r.name + "' references unknown chart '" + p.chart + "'");
			else if (p.map.size() != s.chart(p.chart)->coords.size())
				flag("region '" + r.name + "' piece map component count mismatch");
			if (p.dim() != r.dim()) flag("region '" + r.name + "' mixes piece dimensions");
			if (p.lo.size() != p.params.size() || p.hi.size() != p.params.size())
				flag("region '" + r.name + "' piece bound count mismatch");
			for (size_t i = 0; i < p.lo.size(); ++i)
				if (!(p.lo[i] < p.hi[i])) flag("region '" + r.name + "' piece has empty box");
			if (p.orient != 1 && p.orient != -1) flag("region '" + r.name + "' orientation not +-1");
		}
	}
	for (const auto& t : s.transitions) {
		const Chart* from = s.chart(t.from);
		const Chart* to = s.chart(t.to);
		if (!from || !to)
			flag("transition references unknown chart '" + (from ? t.to : t.from) + "'");
		else {
			if (t.map.size() != to->coords.size()) flag("transition map component count mismatch");
			if (t.sample_lo.size() != from->coords.size() ||
				t.sample_hi.size() != from->coords.size())
				flag("transition sample box shape mismatch");
		}
	}
	for (const auto& fc : s.fixed) {
		if (!fc.chart.empty()) {
			const Chart* c = s.chart(fc.chart);
			if (!c)
				flag("fixed component '" + fc.name + "' references unknown chart '" + fc.chart +
					 "'");
			else {
				if (fc.point.size() != c->coords.size())
					flag("fixed component '" + fc.name + "' point size mismatch");
				if (static_cast<int>(fc.weights.size()) * 2 != c->dim())
					flag("fixed component '" + fc.name + "' weight count != dim/2");
			}
		}
	}
	{
		std::string stmt = "chart, region, transition and fixed-point tables are well-formed";
		if (!problem.empty()) stmt += "; first problem: " + problem;
		rep.add(check_exact(prefix + "structure", stmt, problem.empty()));
	}
	if (!problem.empty()) return rep;  // numeric checks would dereference bad shapes

	// --- moment-sign labels --------------------------------------------------
	if (!s.fixed.empty()) {
		bool labels_ok = true;
		for (const auto& fc : s.fixed) {
			if (fc.label == "plus" && !(fc.mu > 0)) labels_ok = false;
			if (fc.label == "minus" && !(fc.mu < 0)) labels_ok = false;
			if (!fc.label.empty() && fc.label != "plus" && fc.label != "minus") labels_ok = false;
		}
		rep.add(check_exact(prefix + "fixed.labels",
							"moment-sign labels match the stored moment values", labels_ok));
	}

	if (s.charts.empty()) return rep;

	// Per-chart sample points and field Jacobians.
	std::vector<std::vector<std::vector<double>>> pts(s.charts.size());
	for (size_t ci = 0; ci < s.charts.size(); ++ci)
		pts[ci] = sample_points(s.charts[ci], samples, rng);
	// dV[chart][g][i][j] = d V_g^i / d x_j
	std::vector<std::vector<std::vector<std::vector<Expr>>>> dV(s.charts.size());
	for (size_t ci = 0; ci < s.charts.size(); ++ci) {
		const Chart& c = s.charts[ci];
		dV[ci].resize(m);
		for (int g = 0; g < m; ++g) {
			dV[ci][g].assign(c.dim(), std::vector<Expr>(c.dim()));
			for (int i = 0; i < c.dim(); ++i)
				for (int j = 0; j < c.dim(); ++j) dV[ci][g][i][j] = c.fields[g][i].derivative(j);
		}
	}

	// --- bracket realization: [V_a, V_b] = f^c_{ab} V_c ---------------------
	{
		double worst = 0;
		for (size_t ci = 0; ci < s.charts.size(); ++ci) {
			const Chart& c = s.charts[ci];
			for (int a = 0; a < m; ++a)
				for (int b = a + 1; b < m; ++b)
					for (const auto& p : pts[ci]) {
						std::vector<double> va = eval_all(c.fields[a], p);
						std::vector<double> vb = eval_all(c.fields[b], p);
						for (int i = 0; i < c.dim(); ++i) {
							double lie = 0;
							for (int j = 0; j < c.dim(); ++j)
								lie += va[j] * dV[ci][b][i][j].eval(p) -
									   vb[j] * dV[ci][a][i][j].eval(p);
							double rhs = 0;
							for (int cc = 0; cc < m; ++cc)
								rhs += s.algebra.f[a][b][cc].to_double() *
									   c.fields[cc][i].eval(p);
							worst = std::max(worst, std::fabs(lie - rhs));
						}
					}
		}
		rep.add(check_residual(prefix + "fields.bracket",
							   "vector fields realize the Lie bracket [V_a,V_b] = f^c_ab V_c",
							   worst, 1e-9));
	}

	// --- metric invariance ---------------------------------------------------
	if (std::any_of(s.charts.begin(), s.charts.end(),
					[](const Chart& c) { return !c.metric.empty(); })) {
		double worst = 0;
		for (size_t ci = 0; ci < s.charts.size(); ++ci) {
			const Chart& c = s.charts[ci];
			if (c.metric.empty()) continue;
			const int d = c.dim();
			// dg[i][j][k] = d g_ij / d x_k
			std::vector<std::vector<std::vector<Expr>>> dg(
				d, std::vector<std::vector<Expr>>(d, std::vector<Expr>(d)));
			for (int i = 0; i < d; ++i)
				for (int j = 0; j < d; ++j)
					for (int k = 0; k < d; ++k) dg[i][j][k] = c.metric[i][j].derivative(k);
			for (int g = 0; g < m; ++g)
				for (const auto& p : pts[ci]) {
					std::vector<double> v = eval_all(c.fields[g], p);
					for (int i = 0; i < d; ++i)
						for (int j = 0; j < d; ++j) {
							double lie = 0;
							for (int k = 0; k < d; ++k)
								lie += v[k] * dg[i][j][k].eval(p) +
									   c.metric[k][j].eval(p) * dV[ci][g][k][i].eval(p) +
									   c.metric[i][k].eval(p) * dV[ci][g][k][j].eval(p);
							worst = std::max(worst, std::fabs(lie));
						}
				}
		}
		rep.add(check_residual(prefix + "metric.invariant",
							   "chart metrics are invariant under every generator flow", worst,
							   1e-9));
	}

	// --- Gram invertibility along the boundary ------------------------------
	if (const Region* bd = s.region("boundary"); bd != nullptr) {
		double min_det = std::numeric_limits<double>::infinity();
		for (const auto& piece : bd->pieces) {
			const Chart& c = s.chart_or_throw(piece.chart);
			if (c.metric.empty()) continue;
			for (int k = 0; k < samples; ++k) {
				std::vector<double> q(piece.dim());
				for (int i = 0; i < piece.dim(); ++i) q[i] = rng.real(piece.lo[i], piece.hi[i]);
				std::vector<double> x = eval_all(piece.map, q);
				std::vector<std::vector<double>> gram(m, std::vector<double>(m, 0.0));
				for (int a = 0; a < m; ++a) {
					std::vector<double> va = eval_all(c.fields[a], x);
					for (int b = 0; b < m; ++b) {
						std::vector<double> vb = eval_all(c.fields[b], x);
						for (int i = 0; i < c.dim(); ++i)
							for (int j = 0; j < c.dim(); ++j)
								gram[a][b] += c.metric[i][j].eval(x) * va[i] * vb[j];
					}
				}
				// Gaussian elimination determinant (m <= 3).
				double det = 1;
				for (int col = 0; col < m; ++col) {
					int piv = col;
					for (int r = col + 1; r < m; ++r)
						if (std::fabs(gram[r][col]) > std::fabs(gram[piv][col])) piv = r;
					if (piv != col) {
						std::swap(gram[piv], gram[col]);
						det = -det;
					}
					det *= gram[col][col];
					if (gram[col][col] == 0) break;
					for (int r = col + 1; r < m; ++r) {
						double fac = gram[r][col] / gram[col][col];
						for (int cc = col; cc < m; ++cc) gram[r][cc] -= fac * gram[col][cc];
					}
				}
				min_det = std::min(min_det, std::fabs(det));
			}
		}
		if (std::isfinite(min_det)) {
			CheckResult cr;
			cr.id = prefix + "boundary.gram";
			cr.statement = "generator Gram determinant stays away from zero on the boundary";
			cr.residual = min_det;
			cr.tolerance = 1e-6;
			cr.pass = min_det > 1e-6;
			rep.add(cr);
		}
	}

	// --- closed-form flow ----------------------------------------------------
	if (std::any_of(s.charts.begin(), s.charts.end(), [](const Chart& c) { return c.has_flow; })) {
		double worst_gen = 0, worst_period = 0;
		for (size_t ci = 0; ci < s.charts.size(); ++ci) {
			const Chart& c = s.charts[ci];
			if (!c.has_flow) continue;
			const int d = c.dim();
			std::vector<Expr> dflow(d);
			for (int i = 0; i < d; ++i) dflow[i] = c.flow[i].derivative(d);
			for (const auto& p : pts[ci]) {
				for (double t : {0.0, 1.0}) {
					std::vector<double> xt(p);
					xt.push_back(t);
					for (int i = 0; i < d; ++i)
						worst_period = std::max(worst_period,
												std::fabs(c.flow[i].eval(xt) - p[i]));
				}
				for (int rep_t = 0; rep_t < 4; ++rep_t) {
					std::vector<double> xt(p);
					xt.push_back(rng.unit());
					std::vector<double> image(d);
					for (int i = 0; i < d; ++i) image[i] = c.flow[i].eval(xt);
					for (int i = 0; i < d; ++i)
						worst_gen = std::max(worst_gen, std::fabs(dflow[i].eval(xt) -
																  c.fields[0][i].eval(image)));
				}
			}
		}
		rep.add(check_residual(prefix + "flow.generator",
							   "the time derivative of the flow equals V_0 along itself",
							   worst_gen, 1e-9));
		rep.add(check_residual(prefix + "flow.period",
							   "the closed-form flow is the identity at times 0 and 1",
							   worst_period, 1e-9));
	}

	// --- fixed points: vanishing and linearization weights ------------------
	{
		bool any = false;
		double worst_vanish = 0, worst_lin = 0;
		for (const auto& fc : s.fixed) {
			if (fc.chart.empty()) continue;
			any = true;
			const Chart& c = s.chart_or_throw(fc.chart);
			size_t ci = 0;
			while (s.charts[ci].name != c.name) ++ci;
			std::vector<double> p = fc.point_d();
			const int rank = s.algebra.torus_rank;
			for (int g = 0; g < rank; ++g)
				for (int i = 0; i < c.dim(); ++i)
					worst_vanish = std::max(worst_vanish, std::fabs(c.fields[g][i].eval(p)));
			const double two_pi = 2 * M_PI;
			for (int i = 0; i < c.dim(); ++i)
				for (int j = 0; j < c.dim(); ++j) {
					double expect = 0;
					if (i / 2 == j / 2 && i != j) {
						double w = two_pi * fc.weights[i / 2];
						expect = (i < j) ? -w : w;
					}
					worst_lin = std::max(worst_lin,
										 std::fabs(dV[ci][0][i][j].eval(p) - expect));
				}
		}
		if (any) {
			rep.add(check_residual(prefix + "fixed.vanishing",
								   "the torus generator fields vanish at every fixed point",
								   worst_vanish, 1e-12));
			rep.add(check_residual(
				prefix + "fixed.weights",
				"the linearization of V_0 at each fixed point is the stored block rotation",
				worst_lin, 1e-9));
		}
	}

	// --- cutoff and indicator ranges ----------------------------------------
	{
		bool any_cut = false, any_ind = false;
		double range_res = 0, boundary_res = 0, fixed_cut_res = 0;
		double ind_res = 0, ind_fixed_res = 0;
		auto each_cutoff = [&](const Chart& c, const auto& fn) {
			if (c.has_cutoff) fn(c.cutoff);
			if (c.has_cutoff_alt) fn(c.cutoff_alt);
		};
		for (size_t ci = 0; ci < s.charts.size(); ++ci) {
			const Chart& c = s.charts[ci];
			if (c.has_cutoff || c.has_cutoff_alt) any_cut = true;
			if (c.has_indicator) any_ind = true;
			for (const auto& p : pts[ci]) {
				each_cutoff(c, [&](const Expr& f) {
					double v = f.eval(p);
					range_res = std::max({range_res, -v, v - 1});
				});
				if (c.has_indicator) ind_res = std::max(ind_res, -c.indicator.eval(p));
			}
		}
		if (const Region* bd = s.region("boundary"); bd != nullptr && any_cut) {
			for (const auto& piece : bd->pieces) {
				const Chart& c = s.chart_or_throw(piece.chart);
				for (int k = 0; k < samples; ++k) {
					std::vector<double> q(piece.dim());
					for (int i = 0; i < piece.dim(); ++i) q[i] = rng.real(piece.lo[i], piece.hi[i]);
					std::vector<double> x = eval_all(piece.map, q);
					each_cutoff(c, [&](const Expr& f) {
						boundary_res = std::max(boundary_res, std::fabs(f.eval(x) - 1));
					});
				}
			}
		}
		for (const auto& fc : s.fixed) {
			if (fc.chart.empty()) continue;
			const Chart& c = s.chart_or_throw(fc.chart);
			std::vector<double> p = fc.point_d();
			each_cutoff(c, [&](const Expr& f) {
				fixed_cut_res = std::max(fixed_cut_res, std::fabs(f.eval(p)));
			});
			if (c.has_indicator)
				ind_fixed_res = std::max(ind_fixed_res, std::fabs(c.indicator.eval(p)));
		}
		if (any_cut) {
			rep.add(check_residual(prefix + "cutoff.range",
								   "cutoff functions take values in [0,1]", range_res, 1e-12));
			if (s.region("boundary"))
				rep.add(check_residual(prefix + "cutoff.boundary",
									   "cutoff functions equal 1 along the boundary",
									   boundary_res, 1e-12));
			if (!s.fixed.empty())
				rep.add(check_residual(prefix + "cutoff.fixed",
									   "cutoff functions vanish at the fixed points",
									   fixed_cut_res, 1e-12));
		}
		if (any_ind) {
			rep.add(check_residual(prefix + "indicator.range",
								   "the fixed-set indicator is nonnegative", ind_res, 1e-12));
			if (!s.fixed.empty())
				rep.add(check_residual(prefix + "indicator.fixed",
									   "the fixed-set indicator vanishes at the fixed points",
									   ind_fixed_res, 1e-12));
		}
	}

	// --- chart transitions ---------------------------------------------------
	if (!s.transitions.empty()) {
		double worst_fields = 0, worst_metric = 0, worst_scalars = 0, worst_flow = 0;
		for (const auto& t : s.transitions) {
			const Chart& from = s.chart_or_throw(t.from);
			const Chart& to = s.chart_or_throw(t.to);
			const int dn = from.dim();
			const int dm = to.dim();
			std::vector<std::vector<Expr>> jac(dm, std::vector<Expr>(dn));
			for (int i = 0; i < dm; ++i)
				for (int j = 0; j < dn; ++j) jac[i][j] = t.map[i].derivative(j);
			for (int k = 0; k < samples; ++k) {
				std::vector<double> x(dn);
				for (int i = 0; i < dn; ++i) x[i] = rng.real(t.sample_lo[i], t.sample_hi[i]);
				std::vector<double> y = eval_all(t.map, x);
				std::vector<std::vector<double>> jv(dm, std::vector<double>(dn));
				for (int i = 0; i < dm; ++i)
					for (int j = 0; j < dn; ++j) jv[i][j] = jac[i][j].eval(x);
				for (int g = 0; g < m; ++g) {
					std::vector<double> vf = eval_all(from.fields[g], x);
					for (int i = 0; i < dm; ++i) {
						double push = 0;
						for (int j = 0; j < dn; ++j) push += jv[i][j] * vf[j];
						worst_fields = std::max(worst_fields,
												std::fabs(push - to.fields[g][i].eval(y)));
					}
				}
				if (!from.metric.empty() && !to.metric.empty()) {
					for (int i = 0; i < dn; ++i)
						for (int j = 0; j < dn; ++j) {
							double pulled = 0;
							for (int a = 0; a < dm; ++a)
								for (int b = 0; b < dm; ++b)
									pulled += jv[a][i] * to.metric[a][b].eval(y) * jv[b][j];
							worst_metric = std::max(worst_metric,
													std::fabs(pulled - from.metric[i][j].eval(x)));
						}
				}
				auto scalar_pair = [&](bool have_a, const Expr& ea, bool have_b, const Expr& eb) {
					if (have_a && have_b)
						worst_scalars = std::max(worst_scalars, std::fabs(ea.eval(x) - eb.eval(y)));
				};
				scalar_pair(from.has_cutoff, from.cutoff, to.has_cutoff, to.cutoff);
				scalar_pair(from.has_cutoff_alt, from.cutoff_alt, to.has_cutoff_alt,
							to.cutoff_alt);
				scalar_pair(from.has_indicator, from.indicator, to.has_indicator, to.indicator);
				if (from.has_flow && to.has_flow && k < samples / 4) {
					double tv = rng.unit();
					std::vector<double> xt(x);
					xt.push_back(tv);
					std::vector<double> fx(dn);
					for (int i = 0; i < dn; ++i) fx[i] = from.flow[i].eval(xt);
					std::vector<double> lhs = eval_all(t.map, fx);
					std::vector<double> yt(y);
					yt.push_back(tv);
					for (int i = 0; i < dm; ++i)
						worst_flow = std::max(worst_flow,
											  std::fabs(lhs[i] - to.flow[i].eval(yt)));
				}
			}
		}
		rep.add(check_residual(prefix + "transition.fields",
							   "generator fields push forward consistently across chart overlaps",
							   worst_fields, 1e-9));
		rep.add(check_residual(prefix + "transition.metric",
							   "chart metrics agree across chart overlaps", worst_metric, 1e-9));
		rep.add(check_residual(prefix + "transition.scalars",
							   "cutoff and indicator functions agree across chart overlaps",
							   worst_scalars, 1e-9));
		rep.add(check_residual(prefix + "transition.flow",
							   "the circle flow commutes with chart transitions", worst_flow,
							   1e-9));
	}

	return rep;
}

}  // namespace dcw
