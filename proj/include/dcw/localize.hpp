#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dcw/cartan.hpp"
#include "dcw/chern_weil.hpp"
#include "dcw/dform.hpp"
#include "dcw/liealg.hpp"
#include "dcw/pi_scalar.hpp"
#include "dcw/scenario.hpp"

namespace dcw {

/// Laurent series in the degree-2 torus generator u with form coefficients on
/// a base of dimension `dim`: x = sum_k u^k (x) c_k with finitely many
/// nonzero c_k.  Houses the equivariant Euler classes, their geometric-series
/// inverses, and the exponential factors e^{mu u} of the residue formulas.
/// Arithmetic is exact; when a truncated series (exp_u) enters a computation
/// the largest still-exact power is tracked and coefficient() refuses to read
/// beyond it.
class LaurentU {
public:
	explicit LaurentU(int dim = 0) : dim_(dim) {}

	static LaurentU monomial(int dim, int power, const DForm& coef);
	static LaurentU constant(int dim, int power, const PiScalar& c);
	/// exp(mu*u) truncated after u^max_order (exact with no truncation record
	/// when mu = 0).
	static LaurentU exp_u(int dim, const PiScalar& mu, int max_order);

	int dim() const { return dim_; }
	/// Structurally zero with no truncation window (the exact zero series).
	bool is_zero() const { return c_.empty() && !trunc_; }
	const std::map<int, DForm>& terms() const { return c_; }
	/// Coefficient of u^power, the zero form if absent.  Throws
	/// std::domain_error when power lies beyond the truncation window.
	DForm coefficient(int power) const;
	std::optional<int> truncation() const { return trunc_; }
	int min_power() const;  // throws std::domain_error on an empty series
	int max_power() const;

	LaurentU& operator+=(const LaurentU& o);
	LaurentU& operator-=(const LaurentU& o);
	friend LaurentU operator+(LaurentU a, const LaurentU& b) { return a += b; }
	friend LaurentU operator-(LaurentU a, const LaurentU& b) { return a -= b; }
	friend LaurentU operator-(const LaurentU& a);
	friend LaurentU operator*(const LaurentU& a, const LaurentU& b);
	friend LaurentU operator*(const Expr& f, const LaurentU& a);

	std::string str(std::span<const std::string> coord_names = {}) const;

private:
	void insert(int power, const DForm& w);
	void prune();

	int dim_ = 0;
	std::map<int, DForm> c_;
	std::optional<int> trunc_;  // largest exact power when a truncation entered
};

/// Coefficient of u^{-1} (zero if absent; throws past a truncation window).
DForm res0(const LaurentU& x);

/// Equivariant Euler class prod_j (m_j u + c1_j) of a direct sum of weight
/// lines over a base of dimension dim.  `c1` supplies the first Chern
/// representatives and may be empty (all zero) or match the weight list.
/// Throws std::domain_error on a zero weight.
LaurentU equivariant_euler(int dim, std::span<const int> weights, std::span<const DForm> c1 = {});
/// Euler class of the normal bundle of an isolated fixed point (base
/// dimension 0, no Chern forms).
LaurentU equivariant_euler(const FixedComponent& fc);

/// Inverse of a series whose leading (highest-power) coefficient is a nonzero
/// constant scalar, by the geometric series; exact because the lower-order
/// coefficients are nilpotent forms.  Form degrees beyond max_form_degree are
/// dropped.  Throws std::domain_error on a zero or non-constant leading
/// coefficient, a non-nilpotent tail, or a truncated input.
LaurentU laurent_invert(const LaurentU& x, int max_form_degree);

/// Restriction of a torus-model equivariant form (nvars = 1) at a point: the
/// scalar parts of the Theta-coefficients evaluated there, as a base-
/// dimension-0 Laurent polynomial in u.
LaurentU restrict_at_point(const EqForm& alpha, std::span<const double> point);

/// Both sides of a boundary localization identity, with the quadrature error
/// estimate of the integral side.
struct SidePair {
	double lhs = 0, rhs = 0;
	double lhs_error = 0;
};

/// Kalkman's abelian localization for a circle scenario with free boundary
/// action: lhs = integral over the boundary of omega ^ r_f(alpha), rhs = sum
/// over fixed components of the u^0-coefficient of alpha|_P * u / euler(nu_P).
/// `alpha_by_chart` gives the torus-model representative of one D-closed form
/// of total degree dim - 2 on each chart, in scenario chart order.  Throws
/// std::invalid_argument on a non-circle group, a degree or chart-count
/// mismatch, or missing fixed-component data.
SidePair kalkman_sides(const Scenario& s, std::span<const EqForm> alpha_by_chart, int order);
SidePair kalkman_sides(const Scenario& s, const EqForm& alpha, int order);

/// The auxiliary torus-model form
///   beta = (d(f omega^1) + (1 - f) u) ^ p(r_f(r_f(alpha)))
/// that reduces the SU(2)/SO(3) boundary formula to the circle case: D_T-
/// closed, equal to dw^1 ^ r_f(alpha) after one torus-model chain map near
/// the boundary, and equal to p(alpha) u near the fixed points.
EqForm su2_reduction_form(const Scenario& s, const Chart& chart, const EqForm& alpha);

/// Nonabelian boundary localization for SU(2)/SO(3): lhs = (1 / vol G) *
/// integral over the boundary of omega^1^omega^2^omega^3 ^ r_f(alpha), rhs =
/// -(1/c) * [Kalkman fixed-point sum of the reduction form beta at the torus-
/// fixed components].  `alpha_by_chart` gives one D-closed form of total
/// degree dim - 4 per chart.  Throws std::invalid_argument on a wrong group
/// kind or a degree mismatch.
SidePair su2_boundary_sides(const Scenario& s, std::span<const EqForm> alpha_by_chart, int order);
SidePair su2_boundary_sides(const Scenario& s, const EqForm& alpha, int order);

/// The frame rewrite of the boundary volume integrand: returns the two
/// boundary integrals
///   ( integral of omega^1^omega^2^omega^3 ^ r_f(alpha),
///     -(1/a) * integral of omega^1 ^ d omega^1 ^ r_f(alpha) )
/// which agree because omega^2^omega^3 = (Omega^1 - d omega^1)/a and
/// Omega^1 ^ r_f(alpha) vanishes on the boundary for degree reasons.
std::pair<IntegralEstimate, IntegralEstimate> su2_boundary_rewrite_pair(
	const Scenario& s, std::span<const EqForm> alpha_by_chart, int order);

/// Fixed-point side of the nonabelian localization formula for a constant
/// class alpha, from circle fixed-point data with moment-sign labels:
///   -(b/c) * sum over plus-labeled components of
///            [u^0-coefficient of u^3 alpha / euler(P)].
/// Exact.  Throws std::invalid_argument on an unlabeled component and
/// std::domain_error when a component has a vanishing moment value (the zero
/// level is then not regular).
PiScalar nonabelian_fixed_point_sum(std::span<const FixedComponent> fixed, const PiScalar& alpha,
									const LieAlgebraSpec& alg);

/// Localization data of one fixed component entering the residue identity:
/// component dimension 2l, circle moment mu, and the finite pairing table
///   pairings[{a,b,c}] = integral over the component of eta_a ^ varpi^b ^
///   sigma_c
/// where eta_a is the u^{s-a}-coefficient of the restricted class, varpi the
/// restricted 2-form, and sigma_c the c-th inverse-Euler correction form.
/// Keys must satisfy a + b + c = l.
struct JkComponent {
	int l = 0;
	Rational mu{0};
	std::map<std::array<int, 3>, Rational> pairings;
};

struct JkValues {
	PiScalar residue;
	PiScalar triple_sum;
};

/// Jeffrey-Kirwan residue identity on a 2n+6-dimensional total space with a
/// class of u-degree s: computes
///   residue   = -(b/c) res0( u^2 sum_k e^{mu_k u} S_k )
/// with S_k the Laurent series assembled from the pairing table, and
///   triple_sum = -(b/c) sum_k sum_{a+b+c=l_k} C(n-s, b)/(n-s)! *
///                pairings[{a,b,c}] * mu_k^{n-s-b},
/// both in exact arithmetic, for comparison.  Throws std::invalid_argument on
/// inconsistent degree data (a > s, b > n-s, a+b+c != l, l > n, s > n).
JkValues jk_residue_check(std::span<const JkComponent> comps, int n, int s,
						  const LieAlgebraSpec& alg);

/// Translate moment-positive isolated fixed points carrying a constant class
/// into residue-identity data: l = 0 and the single pairing 1/(product of
/// weights).  Throws like nonabelian_fixed_point_sum on unlabeled components.
std::vector<JkComponent> jk_from_fixed(std::span<const FixedComponent> fixed,
									   const Rational& eta_const);

}  // namespace dcw
