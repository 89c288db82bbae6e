#include "dcw/chern_weil.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "dcw/quadrature.hpp"

namespace dcw {

namespace {

// (Omega)^E as an EqForm product, multiplied in ascending generator order.
// apply_cw_f and the j = 0 branch of apply_r_f share this so that the
// identity CW_f = r_f ∘ (polynomial injection) holds tree-for-tree.
EqForm curv_monomial(std::span<const EqForm> curv, const std::vector<int>& e, int nvars, int dim) {
	EqForm acc = EqForm::wrap(nvars, DForm::scalar(dim, Expr::rational(1)));
	for (size_t a = 0; a < curv.size(); ++a)
		for (int k = 0; k < e[a]; ++k) acc = acc * curv[a];
	return acc;
}

void validate_invariant_polynomial(const WeilElement& F, const char* who) {
	if (!F.algebra()) throw std::invalid_argument(std::string(who) + ": polynomial has no algebra");
	if (!F.is_symmetric())
		throw std::invalid_argument(std::string(who) + ": element has odd generators (not in S(g*))");
	for (int b = 0; b < F.algebra()->dim; ++b)
		if (!weil_lie(b, F).is_zero())
			throw std::invalid_argument(std::string(who) + ": polynomial is not ad-invariant");
}

const LieAlgebraSpec& torus_spec(int rank) {
	static const LieAlgebraSpec u1 = build_lie_algebra(GroupKind::U1);
	static const LieAlgebraSpec t2 = build_lie_algebra(GroupKind::Torus2);
	if (rank == 1) return u1;
	if (rank == 2) return t2;
	throw std::logic_error("torus_restriction: unsupported torus rank");
}

std::string point_str(std::span<const double> p) {
	std::ostringstream os;
	os << "(";
	for (size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
	os << ")";
	return os.str();
}

}  // namespace

void GConnection::require_regular(std::span<const double> point, double tol) const {
	double det = gram_det.eval(point);
	if (!(std::fabs(det) >= tol)) {
		std::ostringstream os;
		os << "metric connection singular at " << point_str(point) << ": |det g(V_a,V_b)| = "
		   << std::fabs(det) << " < " << tol;
		throw std::domain_error(os.str());
	}
}

GConnection metric_connection(const LieAlgebraSpec& alg, const Chart& chart) {
	const int m = alg.dim, n = chart.dim();
	if (static_cast<int>(chart.fields.size()) < m)
		throw std::invalid_argument("metric_connection: chart does not realize all generators");
	if (static_cast<int>(chart.metric.size()) != n)
		throw std::invalid_argument("metric_connection: chart '" + chart.name + "' has no metric");
	if (m < 1 || m > 3)
		throw std::invalid_argument("metric_connection: algebra dimension outside 1..3");

	auto idx = [](int i) { return static_cast<size_t>(i); };
	// Gram matrix H_ab = g(V_a, V_b) and the lowered fields g(V_b, .)
	std::vector<std::vector<Expr>> H(idx(m), std::vector<Expr>(idx(m)));
	std::vector<std::vector<Expr>> low(idx(m), std::vector<Expr>(idx(n)));  // [b][j]
	for (int b = 0; b < m; ++b)
		for (int j = 0; j < n; ++j) {
			Expr s;
			for (int i = 0; i < n; ++i)
				s = s + chart.metric[idx(i)][idx(j)] * chart.fields[idx(b)][idx(i)];
			low[idx(b)][idx(j)] = s;
		}
	for (int a = 0; a < m; ++a)
		for (int b = 0; b < m; ++b) {
			Expr s;
			for (int j = 0; j < n; ++j) s = s + chart.fields[idx(a)][idx(j)] * low[idx(b)][idx(j)];
			H[idx(a)][idx(b)] = s;
		}

	// determinant and adjugate, written out for m <= 3
	auto at = [&](int i, int j) { return H[idx(i)][idx(j)]; };
	Expr det;
	std::vector<std::vector<Expr>> adj(idx(m), std::vector<Expr>(idx(m)));
	if (m == 1) {
		det = at(0, 0);
		adj[0][0] = Expr::rational(1);
	} else if (m == 2) {
		det = at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
		adj[0][0] = at(1, 1);
		adj[0][1] = -at(0, 1);
		adj[1][0] = -at(1, 0);
		adj[1][1] = at(0, 0);
	} else {
		auto minor = [&](int r, int c) {
			int r1 = r == 0 ? 1 : 0, r2 = r == 2 ? 1 : 2;
			int c1 = c == 0 ? 1 : 0, c2 = c == 2 ? 1 : 2;
			return at(r1, c1) * at(r2, c2) - at(r1, c2) * at(r2, c1);
		};
		det = at(0, 0) * minor(0, 0) - at(0, 1) * minor(0, 1) + at(0, 2) * minor(0, 2);
		for (int i = 0; i < m; ++i)
			for (int j = 0; j < m; ++j) {
				Expr cof = minor(j, i);
				adj[idx(i)][idx(j)] = (i + j) % 2 == 0 ? cof : -cof;
			}
	}

	GConnection out;
	out.alg = &alg;
	out.dim = n;
	out.gram_det = det;
	for (int a = 0; a < m; ++a) {
		DForm w(n);
		for (int j = 0; j < n; ++j) {
			Expr s;
			for (int b = 0; b < m; ++b) s = s + adj[idx(a)][idx(b)] * low[idx(b)][idx(j)];
			if (!s.is_zero()) w += DForm::monomial(n, 1u << j, s / det);
		}
		out.comp.push_back(w);
	}
	return out;
}

GConnection torus_restriction(const GConnection& conn) {
	const int rank = conn.alg->torus_rank;
	GConnection out;
	out.alg = &torus_spec(rank);
	out.dim = conn.dim;
	out.comp.assign(conn.comp.begin(), conn.comp.begin() + rank);
	out.gram_det = conn.gram_det;  // the components still carry the full Gram denominator
	return out;
}

GEqCurv degenerate_curvature(const GConnection& conn, const Expr& f) {
	const LieAlgebraSpec& alg = *conn.alg;
	const int m = alg.dim, n = conn.dim;
	if (static_cast<int>(conn.comp.size()) != m)
		throw std::invalid_argument("degenerate_curvature: component count does not match the algebra");
	GEqCurv out;
	out.alg = &alg;
	out.f = f;
	Expr f2 = f * f;
	for (int a = 0; a < m; ++a) out.omega_f.push_back(f * conn.comp[static_cast<size_t>(a)]);
	const PiScalar half(Rational(1, 2));
	for (int a = 0; a < m; ++a) {
		EqForm c = EqForm::wrap(m, out.omega_f[static_cast<size_t>(a)].d());
		DForm quad(n);
		for (int b = 0; b < m; ++b)
			for (int cc = 0; cc < m; ++cc) {
				const PiScalar& fa =
					alg.f[static_cast<size_t>(b)][static_cast<size_t>(cc)][static_cast<size_t>(a)];
				if (fa.is_zero()) continue;
				quad += Expr::constant(half * fa) *
						(conn.comp[static_cast<size_t>(b)] * conn.comp[static_cast<size_t>(cc)]);
			}
		if (!quad.is_zero()) c += EqForm::wrap(m, f2 * quad);
		std::vector<int> e(static_cast<size_t>(m), 0);
		e[static_cast<size_t>(a)] = 1;
		c += EqForm::term(m, e, DForm::scalar(n, Expr::rational(1) - f));
		out.comp.push_back(c);
	}
	return out;
}

std::vector<EqForm> g_bracket(const LieAlgebraSpec& alg, std::span<const EqForm> A,
							  std::span<const EqForm> B) {
	const int m = alg.dim;
	if (static_cast<int>(A.size()) != m || static_cast<int>(B.size()) != m)
		throw std::invalid_argument("g_bracket: component count does not match the algebra");
	std::vector<EqForm> out;
	for (int a = 0; a < m; ++a) {
		EqForm acc(A.empty() ? 0 : A[0].nvars(), A.empty() ? 0 : A[0].dim());
		for (int b = 0; b < m; ++b)
			for (int c = 0; c < m; ++c) {
				const PiScalar& f =
					alg.f[static_cast<size_t>(b)][static_cast<size_t>(c)][static_cast<size_t>(a)];
				if (f.is_zero()) continue;
				acc += Expr::constant(f) * (A[static_cast<size_t>(b)] * B[static_cast<size_t>(c)]);
			}
		out.push_back(acc);
	}
	return out;
}

EqForm inject_polynomial(const WeilElement& F, int chart_dim) {
	if (!F.algebra()) throw std::invalid_argument("inject_polynomial: element has no algebra");
	const int m = F.algebra()->dim;
	EqForm out(m, chart_dim);
	for (const auto& [key, coef] : F.terms()) {
		if (key.mask != 0)
			throw std::invalid_argument("inject_polynomial: element has odd generators");
		out += EqForm::term(m, key.sym, DForm::scalar(chart_dim, Expr::constant(coef)));
	}
	return out;
}

EqForm apply_cw_f(const WeilElement& F, const GEqCurv& curv) {
	validate_invariant_polynomial(F, "apply_cw_f");
	const int m = curv.alg->dim;
	const int n = curv.comp.empty() ? 0 : curv.comp.front().dim();
	if (F.algebra()->dim != m)
		throw std::invalid_argument("apply_cw_f: polynomial algebra does not match the curvature");
	EqForm out(m, n);
	for (const auto& [key, coef] : F.terms())
		out += curv_monomial(curv.comp, key.sym, m, n) *
			   EqForm::wrap(m, DForm::scalar(n, Expr::constant(coef)));
	return out;
}

EqForm apply_r_f(const EqForm& alpha, std::span<const DForm> omega_f,
				 std::span<const EqForm> curv, std::span<const std::vector<Expr>> fields) {
	const int m = static_cast<int>(curv.size());
	if (alpha.nvars() != m || static_cast<int>(omega_f.size()) != m ||
		static_cast<int>(fields.size()) != m)
		throw std::invalid_argument("apply_r_f: ingredient counts do not match the generators");
	const int n = alpha.dim();
	EqForm out(m, n);
	for (const auto& [e, w] : alpha.terms()) {
		for (uint32_t subset = 0; subset < (1u << m); ++subset) {
			// innermost contraction first = largest index
			DForm contracted = w;
			for (int idx = m - 1; idx >= 0 && !contracted.is_zero(); --idx)
				if (subset & (1u << idx))
					contracted = contracted.contract(fields[static_cast<size_t>(idx)]);
			if (contracted.is_zero()) continue;
			EqForm piece = curv_monomial(curv, e, m, n) * EqForm::wrap(m, contracted);
			for (int idx = m - 1; idx >= 0; --idx)
				if (subset & (1u << idx))
					piece = EqForm::wrap(m, omega_f[static_cast<size_t>(idx)]) * piece;
			int j = std::popcount(subset);
			if ((j * (j + 1) / 2) % 2 != 0) piece = Expr::rational(-1) * piece;
			out += piece;
		}
	}
	return out;
}

EqForm apply_r_f(const EqForm& alpha, const GEqCurv& curv,
				 std::span<const std::vector<Expr>> fields) {
	return apply_r_f(alpha, curv.omega_f, curv.comp, fields);
}

namespace {

// Curvature data on the product with the interval, with the interval
// coordinate threaded through coefficient expressions as coordinate index
// `dim`: each component splits as A^a + dt ^ B^a, and the degenerate
// connection keeps no dt-part for the straight-line paths used here.
struct TildeData {
	std::vector<DForm> omega_f;  // spatial degenerate connection (t-dependent)
	std::vector<EqForm> A;       // spatial curvature part
	std::vector<DForm> B;        // dt-coefficient of the curvature
};

TildeData tilde_common(const LieAlgebraSpec& alg, int n, std::span<const DForm> omega_tilde,
					   const Expr& f_tilde, std::vector<DForm> B) {
	const int m = alg.dim;
	TildeData out;
	out.B = std::move(B);
	Expr f2 = f_tilde * f_tilde;
	for (int a = 0; a < m; ++a) out.omega_f.push_back(f_tilde * omega_tilde[static_cast<size_t>(a)]);
	const PiScalar half(Rational(1, 2));
	for (int a = 0; a < m; ++a) {
		EqForm c = EqForm::wrap(m, out.omega_f[static_cast<size_t>(a)].d());
		DForm quad(n);
		for (int b = 0; b < m; ++b)
			for (int cc = 0; cc < m; ++cc) {
				const PiScalar& fa =
					alg.f[static_cast<size_t>(b)][static_cast<size_t>(cc)][static_cast<size_t>(a)];
				if (fa.is_zero()) continue;
				quad += Expr::constant(half * fa) *
						(omega_tilde[static_cast<size_t>(b)] * omega_tilde[static_cast<size_t>(cc)]);
			}
		if (!quad.is_zero()) c += EqForm::wrap(m, f2 * quad);
		std::vector<int> e(static_cast<size_t>(m), 0);
		e[static_cast<size_t>(a)] = 1;
		c += EqForm::term(m, e, DForm::scalar(n, Expr::rational(1) - f_tilde));
		out.A.push_back(c);
	}
	return out;
}

TildeData tilde_connection_path(const GConnection& w0, const GConnection& w1, const Expr& f) {
	if (w0.alg != w1.alg || w0.dim != w1.dim)
		throw std::invalid_argument("transgression: endpoint connections live on different data");
	const int m = w0.alg->dim, n = w0.dim;
	Expr t = Expr::coord(n), s = Expr::rational(1) - t;
	std::vector<DForm> omega_tilde, B;
	for (int a = 0; a < m; ++a) {
		omega_tilde.push_back(s * w0.comp[static_cast<size_t>(a)] +
							  t * w1.comp[static_cast<size_t>(a)]);
		B.push_back(f * (w1.comp[static_cast<size_t>(a)] - w0.comp[static_cast<size_t>(a)]));
	}
	return tilde_common(*w0.alg, n, omega_tilde, f, std::move(B));
}

TildeData tilde_cutoff_path(const GConnection& w, const Expr& f0, const Expr& f1) {
	const int m = w.alg->dim, n = w.dim;
	Expr t = Expr::coord(n);
	Expr f_tilde = (Expr::rational(1) - t) * f0 + t * f1;
	std::vector<DForm> B;
	for (int a = 0; a < m; ++a) B.push_back((f1 - f0) * w.comp[static_cast<size_t>(a)]);
	return tilde_common(*w.alg, n, std::span<const DForm>(w.comp), f_tilde, std::move(B));
}

DForm substitute_coeffs(const DForm& w, std::span<const Expr> repl, int n) {
	DForm r(n);
	for (const auto& [mask, c] : w.components()) r += DForm::monomial(n, mask, c.substitute(repl));
	return r;
}

EqForm substitute_t(const EqForm& x, int n, const PiScalar& t) {
	std::vector<Expr> repl(static_cast<size_t>(n) + 1);
	for (int i = 0; i < n; ++i) repl[static_cast<size_t>(i)] = Expr::coord(i);
	repl[static_cast<size_t>(n)] = Expr::constant(t);
	EqForm out(x.nvars(), n);
	for (const auto& [e, w] : x.terms()) out += EqForm::term(x.nvars(), e, substitute_coeffs(w, repl, n));
	return out;
}

EqForm integrate_t(const EqForm& integrand, int n, int order) {
	const Quadrature& q = gauss_legendre(order);
	EqForm acc(integrand.nvars(), n);
	for (size_t k = 0; k < q.nodes.size(); ++k) {
		// nodes mapped to (0,1); doubles are dyadic rationals, so the
		// substitution stays exact
		Rational tk(0.5 * (q.nodes[k] + 1.0));
		Rational wk(0.5 * q.weights[k]);
		acc += Expr::constant(PiScalar(wk)) * substitute_t(integrand, n, PiScalar(tk));
	}
	return acc;
}

EqForm integrate_t_adaptive(const EqForm& integrand, int n) {
	if (integrand.is_zero()) return EqForm(integrand.nvars(), n);
	Rng rng(0xdcf);
	std::vector<std::vector<double>> probes;
	for (int i = 0; i < 6; ++i) {
		std::vector<double> p(static_cast<size_t>(n));
		for (double& x : p) x = rng.real(0.15, 0.55);
		probes.push_back(p);
	}
	EqForm prev = integrate_t(integrand, n, 16);
	for (int order : {24, 32}) {
		EqForm next = integrate_t(integrand, n, order);
		if (eq_distance(prev, next, probes) < 1e-9) return next;
		prev = next;
	}
	return prev;
}

// dt-coefficient of F applied to the product-space curvature:
// sum_E a_E sum_a E_a B^a ^ A^{E - e_a}
EqForm poly_dt_part(const WeilElement& F, const TildeData& td, int n) {
	const int m = F.algebra()->dim;
	EqForm out(m, n);
	for (const auto& [key, coef] : F.terms())
		for (int a = 0; a < m; ++a) {
			if (key.sym[static_cast<size_t>(a)] < 1) continue;
			std::vector<int> e = key.sym;
			--e[static_cast<size_t>(a)];
			EqForm piece = EqForm::wrap(m, td.B[static_cast<size_t>(a)]) *
						   curv_monomial(td.A, e, m, n);
			out += Expr::constant(coef * PiScalar(key.sym[static_cast<size_t>(a)])) * piece;
		}
	return out;
}

}  // namespace

EqForm transgress_invariant_poly(const GConnection& omega0, const GConnection& omega1,
								 const Expr& f, const WeilElement& F) {
	validate_invariant_polynomial(F, "transgress_invariant_poly");
	const int n = omega0.dim;
	TildeData td = tilde_connection_path(omega0, omega1, f);
	return integrate_t_adaptive(poly_dt_part(F, td, n), n);
}

EqForm transgress_invariant_poly_cutoff(const GConnection& omega, const Expr& f0, const Expr& f1,
										const WeilElement& F) {
	validate_invariant_polynomial(F, "transgress_invariant_poly");
	const int n = omega.dim;
	TildeData td = tilde_cutoff_path(omega, f0, f1);
	return integrate_t_adaptive(poly_dt_part(F, td, n), n);
}

EqForm transgress_form(const GConnection& omega0, const GConnection& omega1, const Expr& f,
					   const EqForm& alpha, std::span<const std::vector<Expr>> fields) {
	const int m = omega0.alg->dim, n = omega0.dim;
	if (alpha.nvars() != m || static_cast<int>(fields.size()) != m)
		throw std::invalid_argument("transgress_form: form generators do not match the connection");
	TildeData td = tilde_connection_path(omega0, omega1, f);
	EqForm integrand(m, n);
	for (const auto& [e, w] : alpha.terms()) {
		for (uint32_t subset = 0; subset < (1u << m); ++subset) {
			DForm contracted = w;
			for (int idx = m - 1; idx >= 0 && !contracted.is_zero(); --idx)
				if (subset & (1u << idx))
					contracted = contracted.contract(fields[static_cast<size_t>(idx)]);
			if (contracted.is_zero()) continue;
			// dt-part of the curvature block, with the sign of carrying dt
			// through the j odd connection factors in front
			EqForm core(m, n);
			for (int a = 0; a < m; ++a) {
				if (e[static_cast<size_t>(a)] < 1) continue;
				std::vector<int> e2 = e;
				--e2[static_cast<size_t>(a)];
				core += Expr::constant(PiScalar(e[static_cast<size_t>(a)])) *
						(EqForm::wrap(m, td.B[static_cast<size_t>(a)]) * curv_monomial(td.A, e2, m, n));
			}
			if (core.is_zero()) continue;
			EqForm piece = core * EqForm::wrap(m, contracted);
			for (int idx = m - 1; idx >= 0; --idx)
				if (subset & (1u << idx))
					piece = EqForm::wrap(m, td.omega_f[static_cast<size_t>(idx)]) * piece;
			int j = std::popcount(subset);
			if ((j * (j + 1) / 2 + j) % 2 != 0) piece = Expr::rational(-1) * piece;
			integrand += piece;
		}
	}
	return integrate_t_adaptive(integrand, n);
}

std::vector<std::vector<double>> sample_points_free(const Chart& chart, int count, Rng& rng,
													double min_indicator) {
	if (!chart.has_indicator)
		throw std::runtime_error("sample_points_free: chart '" + chart.name + "' has no indicator");
	std::vector<std::vector<double>> out;
	long tries = 0;
	const long limit = 400L * count + 4000;
	while (static_cast<int>(out.size()) < count) {
		if (++tries > limit)
			throw std::runtime_error("sample_points_free: rejection sampling stalled on chart '" +
									 chart.name + "'");
		std::vector<double> p(static_cast<size_t>(chart.dim()));
		for (int i = 0; i < chart.dim(); ++i)
			p[static_cast<size_t>(i)] =
				rng.real(chart.sample_lo[static_cast<size_t>(i)], chart.sample_hi[static_cast<size_t>(i)]);
		if (chart.indicator.eval(p) >= min_indicator) out.push_back(std::move(p));
	}
	return out;
}

}  // namespace dcw
