#pragma once

#include <span>
#include <vector>

#include "dcw/cartan.hpp"
#include "dcw/scenario.hpp"
#include "dcw/weil.hpp"

namespace dcw {

/// Lie-algebra-valued connection 1-form on one chart: one component per
/// generator, built from an invariant metric.  `gram_det` is the determinant
/// of the Gram matrix g(V_a, V_b), kept symbolically so evaluation points can
/// be checked against the singular locus of the group action.
struct GConnection {
	const LieAlgebraSpec* alg = nullptr;
	int dim = 0;                 // chart dimension
	std::vector<DForm> comp;     // omega^a, degree-1 forms
	Expr gram_det;

	/// Throws std::domain_error naming the point when |det g(V_a,V_b)| < tol.
	void require_regular(std::span<const double> point, double tol = 1e-12) const;
};

/// omega^a = (H^{-1})^{ab} g(V_b, .) with H_{ab} = g(V_a, V_b); the inverse is
/// formed symbolically via the adjugate (algebra dimension <= 3).  Satisfies
/// i_{V_a} omega^b = delta_a^b and Lie_{V_b} omega^a = -f^a_{bc} omega^c away
/// from the singular locus.
GConnection metric_connection(const LieAlgebraSpec& alg, const Chart& chart);

/// The abelian restriction of a connection to the distinguished torus: the
/// first torus_rank components with the corresponding torus algebra.
GConnection torus_restriction(const GConnection& conn);

/// Degenerate equivariant curvature data of omega_f = f * omega:
///   (Omega_f)^a = d(f omega^a) + 1/2 f^a_{bc} f^2 omega^b ^ omega^c + (1-f) Theta^a.
struct GEqCurv {
	const LieAlgebraSpec* alg = nullptr;
	Expr f;
	std::vector<DForm> omega_f;  // f * omega^a
	std::vector<EqForm> comp;    // (Omega_f)^a, total degree 2
};

GEqCurv degenerate_curvature(const GConnection& conn, const Expr& f);

/// Componentwise bracket of g-valued equivariant forms:
/// [A, B]^a = f^a_{bc} A^b ^ B^c.
std::vector<EqForm> g_bracket(const LieAlgebraSpec& alg, std::span<const EqForm> A,
							  std::span<const EqForm> B);

/// Injection of a symmetric Weil-algebra element into equivariant forms on a
/// chart: Theta^E (x) coefficient.  Throws std::invalid_argument when the
/// element has odd (connection) generators.
EqForm inject_polynomial(const WeilElement& F, int chart_dim);

/// Degenerate Chern-Weil image of an invariant polynomial: substitute
/// (Omega_f)^a for Theta^a in F.  Throws std::invalid_argument when F has odd
/// generators or is not ad-invariant.
EqForm apply_cw_f(const WeilElement& F, const GEqCurv& curv);

/// The chain map r_f: for alpha = sum_E Theta^E (x) alpha_E,
///   r_f(alpha) = sum_j (-1)^{j(j+1)/2} sum_{a_1<...<a_j}
///                omega_f^{a_1}^...^omega_f^{a_j} ^ (Omega_f)^E ^
///                i_{a_1}...i_{a_j} alpha_E
/// (innermost contraction = largest index).  Serves both the full-group and
/// the torus model; `fields` realizes the generators for the contractions.
EqForm apply_r_f(const EqForm& alpha, std::span<const DForm> omega_f,
				 std::span<const EqForm> curv, std::span<const std::vector<Expr>> fields);

/// Convenience: r_f with all ingredients taken from the curvature data.
EqForm apply_r_f(const EqForm& alpha, const GEqCurv& curv,
				 std::span<const std::vector<Expr>> fields);

/// Transgression of an invariant polynomial along the straight-line path of
/// connections (1-t) omega0 + t omega1 with the cut-off held fixed:
/// the integral over t of the dt-coefficient of F of the product-space
/// curvature.  Exact Gauss quadrature in t (the integrand is polynomial in t).
EqForm transgress_invariant_poly(const GConnection& omega0, const GConnection& omega1,
								 const Expr& f, const WeilElement& F);

/// Same along the cut-off path (1-t) f0 + t f1 with the connection fixed.
EqForm transgress_invariant_poly_cutoff(const GConnection& omega, const Expr& f0,
										const Expr& f1, const WeilElement& F);

/// Form-level transgression between two connections: the fibre integral of
/// r_f on the product with the interval.  Satisfies the homotopy identity
/// D T(alpha) + T(D alpha) = r_f^1(alpha) - r_f^0(alpha) on invariant alpha.
EqForm transgress_form(const GConnection& omega0, const GConnection& omega1, const Expr& f,
					   const EqForm& alpha, std::span<const std::vector<Expr>> fields);

/// Sample points in the chart box with indicator >= min_indicator (rejection
/// sampling; throws std::runtime_error if the chart has no indicator or the
/// acceptance rate is hopeless).
std::vector<std::vector<double>> sample_points_free(const Chart& chart, int count, Rng& rng,
													double min_indicator);

}  // namespace dcw
