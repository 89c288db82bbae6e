#include "dcw/localize.hpp"

#include <bit>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dcw {

namespace {

Rational factorial(int n) {
	Rational r(1);
	for (int k = 2; k <= n; ++k) r *= k;
	return r;
}

Rational binomial(int n, int k) {
	if (k < 0 || k > n) return Rational(0);
	Rational r(1);
	for (int j = 0; j < k; ++j) r = r * Rational(n - j) / Rational(j + 1);
	return r;
}

Rational rational_pow(const Rational& x, int n) {
	Rational r(1);
	for (int j = 0; j < n; ++j) r *= x;
	return r;
}

/// Drop monomials of form degree above max_degree.
DForm truncate_form_degree(const DForm& w, int max_degree) {
	DForm out(w.dim());
	for (const auto& [mask, f] : w.components())
		if (std::popcount(mask) <= max_degree) out += DForm::monomial(w.dim(), mask, f);
	return out;
}

std::set<std::string> region_charts(const Region& region) {
	std::set<std::string> names;
	for (const RegionPiece& piece : region.pieces) names.insert(piece.chart);
	return names;
}

size_t chart_index(const Scenario& s, const std::string& name) {
	for (size_t i = 0; i < s.charts.size(); ++i)
		if (s.charts[i].name == name) return i;
	throw std::invalid_argument("scenario '" + s.name + "' has no chart named '" + name + "'");
}

/// Exact scalar of a base-dimension-0 series coefficient.
PiScalar exact_scalar(const DForm& w) {
	if (w.is_zero()) return PiScalar();
	if (w.components().size() != 1 || w.components().begin()->first != 0)
		throw std::logic_error("LaurentU: expected a scalar coefficient, got " + w.str());
	std::optional<PiScalar> v = w.components().begin()->second.const_value();
	if (!v) {
		v = w.components().begin()->second.eval_exact({});
		if (!v)
			throw std::logic_error("LaurentU: coefficient did not fold to an exact constant: " +
								   w.str());
	}
	return *v;
}

PiScalar group_factor(const LieAlgebraSpec& alg) {
	return PiScalar(Rational(-alg.b_const, alg.c_const));
}

}  // namespace

// ---------------------------------------------------------------- LaurentU

void LaurentU::insert(int power, const DForm& w) {
	if (w.is_zero()) return;
	if (trunc_ && power > *trunc_) return;
	auto it = c_.find(power);
	if (it == c_.end()) {
		c_.emplace(power, w);
		return;
	}
	it->second += w;
	if (it->second.is_zero()) c_.erase(it);
}

void LaurentU::prune() {
	if (!trunc_) return;
	for (auto it = c_.begin(); it != c_.end();)
		it = it->first > *trunc_ ? c_.erase(it) : std::next(it);
}

LaurentU LaurentU::monomial(int dim, int power, const DForm& coef) {
	if (coef.dim() != dim) throw std::invalid_argument("LaurentU: coefficient dimension mismatch");
	LaurentU x(dim);
	x.insert(power, coef);
	return x;
}

LaurentU LaurentU::constant(int dim, int power, const PiScalar& c) {
	return monomial(dim, power, DForm::scalar(dim, Expr::constant(c)));
}

LaurentU LaurentU::exp_u(int dim, const PiScalar& mu, int max_order) {
	if (max_order < 0) throw std::invalid_argument("LaurentU::exp_u: negative truncation order");
	if (mu.is_zero()) return constant(dim, 0, PiScalar(1));
	LaurentU x(dim);
	Rational fact(1);
	for (int j = 0; j <= max_order; ++j) {
		if (j > 0) fact *= j;
		x.insert(j, DForm::scalar(dim, Expr::constant(mu.pow(j) * PiScalar(Rational(1) / fact))));
	}
	x.trunc_ = max_order;
	return x;
}

DForm LaurentU::coefficient(int power) const {
	if (trunc_ && power > *trunc_)
		throw std::domain_error("LaurentU: coefficient of u^" + std::to_string(power) +
								" lies beyond the truncation window u^" +
								std::to_string(*trunc_));
	auto it = c_.find(power);
	return it == c_.end() ? DForm(dim_) : it->second;
}

int LaurentU::min_power() const {
	if (c_.empty()) throw std::domain_error("LaurentU: empty series has no powers");
	return c_.begin()->first;
}

int LaurentU::max_power() const {
	if (c_.empty()) throw std::domain_error("LaurentU: empty series has no powers");
	return c_.rbegin()->first;
}

LaurentU& LaurentU::operator+=(const LaurentU& o) {
	if (dim_ != o.dim_) throw std::invalid_argument("LaurentU: dimension mismatch");
	if (o.trunc_) trunc_ = trunc_ ? std::min(*trunc_, *o.trunc_) : *o.trunc_;
	for (const auto& [p, w] : o.c_) insert(p, w);
	prune();
	return *this;
}

LaurentU& LaurentU::operator-=(const LaurentU& o) { return *this += -o; }

LaurentU operator-(const LaurentU& a) {
	LaurentU r(a.dim_);
	r.trunc_ = a.trunc_;
	for (const auto& [p, w] : a.c_) r.c_.emplace(p, -w);
	return r;
}

LaurentU operator*(const LaurentU& a, const LaurentU& b) {
	if (a.dim_ != b.dim_) throw std::invalid_argument("LaurentU: dimension mismatch");
	LaurentU r(a.dim_);
	if (a.is_zero() || b.is_zero()) return r;
	// The product is exact below the window where either factor's unknown
	// tail could first contribute.
	std::optional<int> tr;
	auto low = [](const LaurentU& x) { return x.c_.empty() ? *x.trunc_ + 1 : x.min_power(); };
	if (a.trunc_) tr = *a.trunc_ + low(b);
	if (b.trunc_) {
		int t = *b.trunc_ + low(a);
		tr = tr ? std::min(*tr, t) : t;
	}
	r.trunc_ = tr;
	for (const auto& [pa, wa] : a.c_)
		for (const auto& [pb, wb] : b.c_) {
			if (tr && pa + pb > *tr) continue;
			r.insert(pa + pb, wa * wb);
		}
	return r;
}

LaurentU operator*(const Expr& f, const LaurentU& a) {
	if (f.is_zero()) return LaurentU(a.dim_);
	LaurentU r(a.dim_);
	r.trunc_ = a.trunc_;
	for (const auto& [p, w] : a.c_) r.insert(p, f * w);
	return r;
}

std::string LaurentU::str(std::span<const std::string> coord_names) const {
	std::ostringstream os;
	bool first = true;
	for (const auto& [p, w] : c_) {
		if (!first) os << " + ";
		first = false;
		os << "u^" << p << " (x) (" << w.str(coord_names) << ")";
	}
	if (first) os << "0";
	if (trunc_) os << " + O(u^" << *trunc_ + 1 << ")";
	return os.str();
}

DForm res0(const LaurentU& x) { return x.coefficient(-1); }

// ------------------------------------------------------- Euler and inverse

LaurentU equivariant_euler(int dim, std::span<const int> weights, std::span<const DForm> c1) {
	if (!c1.empty() && c1.size() != weights.size())
		throw std::invalid_argument("equivariant_euler: Chern list does not match weight list");
	LaurentU acc = LaurentU::constant(dim, 0, PiScalar(1));
	for (size_t j = 0; j < weights.size(); ++j) {
		if (weights[j] == 0)
			throw std::domain_error("equivariant_euler: zero weight at position " +
									std::to_string(j));
		LaurentU line =
			LaurentU::constant(dim, 1, PiScalar(static_cast<long>(weights[j])));
		if (!c1.empty() && !c1[j].is_zero()) line += LaurentU::monomial(dim, 0, c1[j]);
		acc = acc * line;
	}
	return acc;
}

LaurentU equivariant_euler(const FixedComponent& fc) {
	return equivariant_euler(0, fc.weights, {});
}

LaurentU laurent_invert(const LaurentU& x, int max_form_degree) {
	if (x.truncation())
		throw std::domain_error("laurent_invert: cannot invert a truncated series");
	if (x.is_zero() || x.terms().empty())
		throw std::domain_error("laurent_invert: zero leading coefficient");
	const int k = x.max_power();
	const DForm lead = x.coefficient(k);
	std::optional<PiScalar> c;
	if (lead.components().size() == 1 && lead.components().begin()->first == 0)
		c = lead.components().begin()->second.const_value();
	if (!c || c->is_zero())
		throw std::domain_error(
			"laurent_invert: leading term must be a nonzero constant multiple of a pure "
			"u-power, got coefficient " +
			lead.str());
	const Expr inv_c = Expr::constant(PiScalar(1) / *c);
	// N = x / (c u^k) - 1; exactness of the geometric series requires every
	// coefficient of N to be a form of positive degree.
	LaurentU n(x.dim());
	for (const auto& [p, w] : x.terms()) {
		DForm scaled = truncate_form_degree(inv_c * w, max_form_degree);
		if (p == k) scaled -= DForm::scalar(x.dim(), Expr::rational(1));
		if (scaled.is_zero()) continue;
		if (!scaled.coefficient(0).is_zero())
			throw std::domain_error(
				"laurent_invert: non-nilpotent lower-order term at power u^" +
				std::to_string(p));
		n += LaurentU::monomial(x.dim(), p - k, scaled);
	}
	LaurentU acc = LaurentU::constant(x.dim(), 0, PiScalar(1));
	LaurentU power = n;
	int sign = -1;
	for (int j = 1; !power.is_zero() && !power.terms().empty(); ++j) {
		if (j > max_form_degree + 1)
			throw std::logic_error("laurent_invert: geometric series failed to terminate");
		acc += sign > 0 ? power : -power;
		sign = -sign;
		LaurentU next(x.dim());
		for (const auto& [p, w] : (power * n).terms())
			next += LaurentU::monomial(x.dim(), p, truncate_form_degree(w, max_form_degree));
		power = next;
	}
	LaurentU out(x.dim());
	for (const auto& [p, w] : acc.terms()) out += LaurentU::monomial(x.dim(), p - k, inv_c * w);
	return out;
}

LaurentU restrict_at_point(const EqForm& alpha, std::span<const double> point) {
	if (alpha.is_zero()) return LaurentU(0);
	if (alpha.nvars() != 1)
		throw std::invalid_argument("restrict_at_point: torus model (one generator) required");
	if (static_cast<int>(point.size()) != alpha.dim())
		throw std::invalid_argument("restrict_at_point: point dimension mismatch");
	LaurentU out(0);
	for (const auto& [exp, w] : alpha.terms()) {
		const double v = w.eval(0, point);
		if (v == 0.0) continue;
		out += LaurentU::constant(0, exp[0], PiScalar(Rational(v)));
	}
	return out;
}

// ------------------------------------------------------------ circle case

namespace {

/// Shared validation for the boundary formulas: one torus/full-model form per
/// chart, each homogeneous of the stated degree.  Returns true when every
/// entry is zero.
bool validate_family(const Scenario& s, std::span<const EqForm> alpha_by_chart, int nvars,
					 int degree, const char* who) {
	if (alpha_by_chart.size() != s.charts.size())
		throw std::invalid_argument(std::string(who) +
									": expected one form per chart, in chart order");
	bool all_zero = true;
	for (size_t i = 0; i < alpha_by_chart.size(); ++i) {
		const EqForm& a = alpha_by_chart[i];
		if (a.is_zero()) continue;
		all_zero = false;
		if (a.nvars() != nvars)
			throw std::invalid_argument(std::string(who) + ": form on chart '" +
										s.charts[i].name + "' has the wrong generator count");
		if (a.dim() != s.charts[i].dim())
			throw std::invalid_argument(std::string(who) + ": form on chart '" +
										s.charts[i].name + "' has the wrong dimension");
		int deg = 0;
		if (!a.is_homogeneous(&deg) || deg != degree)
			throw std::invalid_argument(std::string(who) + ": degree mismatch on chart '" +
										s.charts[i].name + "' (want total degree " +
										std::to_string(degree) + ")");
	}
	return all_zero;
}

/// u^0-coefficient of alpha|_P * u / euler(P) at one isolated fixed point.
double fixed_point_term(const EqForm& alpha, const FixedComponent& fc) {
	LaurentU eps = equivariant_euler(fc);
	LaurentU inv = laurent_invert(eps, 0);
	LaurentU a0 = restrict_at_point(alpha, fc.point_d());
	LaurentU series = a0 * LaurentU::constant(0, 1, PiScalar(1)) * inv;
	return series.coefficient(0).coefficient(0).eval({});
}

}  // namespace

SidePair kalkman_sides(const Scenario& s, std::span<const EqForm> alpha_by_chart, int order) {
	const LieAlgebraSpec& alg = s.algebra;
	if (alg.kind != GroupKind::U1)
		throw std::invalid_argument("kalkman_sides: circle scenario required, got " + alg.name());
	SidePair out;
	if (validate_family(s, alpha_by_chart, 1, s.dim() - 2, "kalkman_sides")) return out;

	const Region& boundary = s.region_or_throw("boundary");
	std::map<std::string, DForm> integrand;
	for (const std::string& name : region_charts(boundary)) {
		const Chart& chart = s.chart_or_throw(name);
		if (!chart.has_cutoff)
			throw std::invalid_argument("kalkman_sides: chart '" + name + "' has no cutoff");
		GConnection conn = metric_connection(alg, chart);
		GEqCurv curv = degenerate_curvature(conn, chart.cutoff);
		EqForm r = apply_r_f(alpha_by_chart[chart_index(s, name)], curv, chart.fields);
		integrand.emplace(name, conn.comp[0] * r.coefficient({0}));
	}
	IntegralEstimate est = integrate_region(
		s, boundary, [&](const Chart& chart) { return integrand.at(chart.name); }, order);
	out.lhs = est.value;
	out.lhs_error = est.error;

	if (s.fixed.empty())
		throw std::invalid_argument("kalkman_sides: missing fixed-component data");
	for (const FixedComponent& fc : s.fixed) {
		if (fc.chart.empty() || fc.weights.empty())
			throw std::invalid_argument("kalkman_sides: missing fixed-component data for '" +
										fc.name + "'");
		out.rhs += fixed_point_term(alpha_by_chart[chart_index(s, fc.chart)], fc);
	}
	return out;
}

SidePair kalkman_sides(const Scenario& s, const EqForm& alpha, int order) {
	std::vector<EqForm> family(s.charts.size(), alpha);
	return kalkman_sides(s, family, order);
}

// --------------------------------------------------------- nonabelian case

EqForm su2_reduction_form(const Scenario& s, const Chart& chart, const EqForm& alpha) {
	const LieAlgebraSpec& alg = s.algebra;
	if (alg.dim != 3)
		throw std::invalid_argument("su2_reduction_form: three-dimensional group required");
	if (!chart.has_cutoff)
		throw std::invalid_argument("su2_reduction_form: chart '" + chart.name +
									"' has no cutoff");
	GConnection conn = metric_connection(alg, chart);
	GEqCurv curv = degenerate_curvature(conn, chart.cutoff);
	EqForm r2 = apply_r_f(apply_r_f(alpha, curv, chart.fields), curv, chart.fields);
	EqForm p = project_to_torus(r2, alg, chart);
	EqForm factor = EqForm::wrap(1, (chart.cutoff * conn.comp[0]).d());
	factor += EqForm::term(1, {1},
						   DForm::scalar(chart.dim(), Expr::sub(Expr::rational(1), chart.cutoff)));
	return factor * p;
}

SidePair su2_boundary_sides(const Scenario& s, std::span<const EqForm> alpha_by_chart,
							int order) {
	const LieAlgebraSpec& alg = s.algebra;
	if (alg.kind != GroupKind::SU2 && alg.kind != GroupKind::SO3)
		throw std::invalid_argument("su2_boundary_sides: SU(2) or SO(3) scenario required, got " +
									alg.name());
	SidePair out;
	if (validate_family(s, alpha_by_chart, 3, s.dim() - 4, "su2_boundary_sides")) return out;

	const Region& boundary = s.region_or_throw("boundary");
	std::map<std::string, DForm> integrand;
	for (const std::string& name : region_charts(boundary)) {
		const Chart& chart = s.chart_or_throw(name);
		if (!chart.has_cutoff)
			throw std::invalid_argument("su2_boundary_sides: chart '" + name +
										"' has no cutoff");
		GConnection conn = metric_connection(alg, chart);
		GEqCurv curv = degenerate_curvature(conn, chart.cutoff);
		EqForm r = apply_r_f(alpha_by_chart[chart_index(s, name)], curv, chart.fields);
		integrand.emplace(name, conn.comp[0] * conn.comp[1] * conn.comp[2] *
								   r.coefficient({0, 0, 0}));
	}
	IntegralEstimate est = integrate_region(
		s, boundary, [&](const Chart& chart) { return integrand.at(chart.name); }, order);
	const double inv_vol = 1.0 / alg.group_volume.to_double();
	out.lhs = est.value * inv_vol;
	out.lhs_error = est.error * inv_vol;

	if (s.fixed.empty())
		throw std::invalid_argument("su2_boundary_sides: missing fixed-component data");
	std::map<std::string, EqForm> beta;
	double sum = 0;
	for (const FixedComponent& fc : s.fixed) {
		if (fc.chart.empty() || fc.weights.empty())
			throw std::invalid_argument("su2_boundary_sides: missing fixed-component data for '" +
										fc.name + "'");
		auto it = beta.find(fc.chart);
		if (it == beta.end()) {
			size_t ci = chart_index(s, fc.chart);
			it = beta.emplace(fc.chart,
							  su2_reduction_form(s, s.charts[ci], alpha_by_chart[ci]))
					 .first;
		}
		sum += fixed_point_term(it->second, fc);
	}
	out.rhs = -sum / alg.c_const;
	return out;
}

SidePair su2_boundary_sides(const Scenario& s, const EqForm& alpha, int order) {
	std::vector<EqForm> family(s.charts.size(), alpha);
	return su2_boundary_sides(s, family, order);
}

std::pair<IntegralEstimate, IntegralEstimate> su2_boundary_rewrite_pair(
	const Scenario& s, std::span<const EqForm> alpha_by_chart, int order) {
	const LieAlgebraSpec& alg = s.algebra;
	if (alg.kind != GroupKind::SU2 && alg.kind != GroupKind::SO3)
		throw std::invalid_argument(
			"su2_boundary_rewrite_pair: SU(2) or SO(3) scenario required, got " + alg.name());
	validate_family(s, alpha_by_chart, 3, s.dim() - 4, "su2_boundary_rewrite_pair");

	const Region& boundary = s.region_or_throw("boundary");
	std::map<std::string, DForm> frame, rewrite;
	for (const std::string& name : region_charts(boundary)) {
		const Chart& chart = s.chart_or_throw(name);
		GConnection conn = metric_connection(alg, chart);
		GEqCurv curv = degenerate_curvature(conn, chart.cutoff);
		DForm r0 = apply_r_f(alpha_by_chart[chart_index(s, name)], curv, chart.fields)
					   .coefficient({0, 0, 0});
		frame.emplace(name, conn.comp[0] * conn.comp[1] * conn.comp[2] * r0);
		rewrite.emplace(name, conn.comp[0] * conn.comp[0].d() * r0);
	}
	IntegralEstimate a = integrate_region(
		s, boundary, [&](const Chart& chart) { return frame.at(chart.name); }, order);
	IntegralEstimate b = integrate_region(
		s, boundary, [&](const Chart& chart) { return rewrite.at(chart.name); }, order);
	const double inv_a = 1.0 / alg.a_const.to_double();
	return {a, IntegralEstimate{-b.value * inv_a, b.error * inv_a}};
}

// ------------------------------------------------------------- exact sums

PiScalar nonabelian_fixed_point_sum(std::span<const FixedComponent> fixed, const PiScalar& alpha,
									const LieAlgebraSpec& alg) {
	PiScalar sum;
	for (const FixedComponent& fc : fixed) {
		if (fc.label != "plus" && fc.label != "minus")
			throw std::invalid_argument("nonabelian_fixed_point_sum: component '" + fc.name +
										"' carries no moment-sign label");
		if (fc.mu == 0)
			throw std::domain_error("nonabelian_fixed_point_sum: component '" + fc.name +
									"' has vanishing moment value (zero is not a regular level)");
		if (fc.label != "plus") continue;
		LaurentU series = LaurentU::constant(0, 3, alpha) * laurent_invert(equivariant_euler(fc), 0);
		sum += exact_scalar(series.coefficient(0));
	}
	return group_factor(alg) * sum;
}

JkValues jk_residue_check(std::span<const JkComponent> comps, int n, int s,
						  const LieAlgebraSpec& alg) {
	if (n < 0 || s < 0 || s > n)
		throw std::invalid_argument("jk_residue_check: inconsistent degree data (need 0 <= s <= n)");
	for (const JkComponent& comp : comps) {
		if (comp.l < 0 || comp.l > n)
			throw std::invalid_argument(
				"jk_residue_check: inconsistent degree data (need 0 <= l <= n)");
		for (const auto& [key, value] : comp.pairings) {
			const auto [a, b, c] = key;
			if (a < 0 || b < 0 || c < 0 || a + b + c != comp.l || a > s || b > n - s)
				throw std::invalid_argument(
					"jk_residue_check: inconsistent degree data in a pairing key");
		}
	}

	// Residue route: assemble each component's Laurent series
	//   S_k = sum_{a+b+c=l} I_{abc}/b! u^{(s-a) - (n-l+3) - c},
	// multiply by the truncated exponential of the moment value, and take the
	// 1/u-coefficient of u^2 times the total.
	LaurentU total(0);
	for (const JkComponent& comp : comps) {
		LaurentU series(0);
		for (const auto& [key, value] : comp.pairings) {
			const auto [a, b, c] = key;
			if (value == 0) continue;
			series += LaurentU::constant(0, (s - a) - (n - comp.l + 3) - c,
										 PiScalar(value / factorial(b)));
		}
		if (series.is_zero()) continue;
		total += LaurentU::exp_u(0, PiScalar(comp.mu), n - s) * series;
	}
	PiScalar residue =
		group_factor(alg) * exact_scalar(res0(LaurentU::constant(0, 2, PiScalar(1)) * total));

	// Direct route: the fully expanded triple sum.
	Rational triple(0);
	for (const JkComponent& comp : comps)
		for (const auto& [key, value] : comp.pairings) {
			const auto [a, b, c] = key;
			triple += binomial(n - s, b) / factorial(n - s) * value *
					  rational_pow(comp.mu, n - s - b);
		}
	return JkValues{residue, group_factor(alg) * PiScalar(triple)};
}

std::vector<JkComponent> jk_from_fixed(std::span<const FixedComponent> fixed,
									   const Rational& eta_const) {
	std::vector<JkComponent> out;
	for (const FixedComponent& fc : fixed) {
		if (fc.label != "plus" && fc.label != "minus")
			throw std::invalid_argument("jk_from_fixed: component '" + fc.name +
										"' carries no moment-sign label");
		if (fc.label != "plus") continue;
		Rational prod(1);
		for (int w : fc.weights) {
			if (w == 0)
				throw std::domain_error("jk_from_fixed: zero weight on component '" + fc.name +
										"'");
			prod *= w;
		}
		JkComponent comp;
		comp.l = 0;
		comp.mu = fc.mu;
		comp.pairings[{0, 0, 0}] = eta_const / prod;
		out.push_back(std::move(comp));
	}
	return out;
}

}  // namespace dcw
