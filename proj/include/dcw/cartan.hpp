#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "dcw/dform.hpp"
#include "dcw/liealg.hpp"
#include "dcw/rng.hpp"
#include "dcw/scenario.hpp"

namespace dcw {

/// Equivariant differential form in the Cartan picture on one chart: a
/// polynomial in the commuting degree-2 generators Theta^1..Theta^nvars with
/// ordinary-form coefficients, alpha = sum_E Theta^E (x) omega_E.  For a
/// compact-group model nvars is the algebra dimension; for the maximal-torus
/// model it is the torus rank and the single generator is written u.
class EqForm {
public:
	EqForm() = default;
	EqForm(int nvars, int dim) : nvars_(nvars), dim_(dim) {}

	/// Theta-degree-zero embedding of an ordinary form.
	static EqForm wrap(int nvars, const DForm& w);
	/// Theta^a (x) 1 on a chart of the given dimension.
	static EqForm theta(int nvars, int dim, int a);
	static EqForm term(int nvars, std::vector<int> exp, const DForm& w);

	int nvars() const { return nvars_; }
	int dim() const { return dim_; }
	bool is_zero() const { return terms_.empty(); }
	const std::map<std::vector<int>, DForm>& terms() const { return terms_; }
	/// Coefficient of Theta^exp (the zero form if absent).
	DForm coefficient(const std::vector<int>& exp) const;

	EqForm& operator+=(const EqForm& o);
	EqForm& operator-=(const EqForm& o);
	friend EqForm operator+(EqForm a, const EqForm& b) { return a += b; }
	friend EqForm operator-(EqForm a, const EqForm& b) { return a -= b; }
	friend EqForm operator-(const EqForm& a);
	friend EqForm operator*(const EqForm& a, const EqForm& b);
	friend EqForm operator*(const Expr& c, const EqForm& a);
	EqForm pow(int n) const;

	/// Total degree 2|E| + deg omega_E; -1 for zero, -2 when inhomogeneous.
	int total_degree() const;
	bool is_homogeneous(int* degree_out = nullptr) const;
	EqForm homogeneous_part(int degree) const;

	/// Structural coefficient-wise equality (same expression trees).
	static bool same(const EqForm& a, const EqForm& b);
	std::string str(std::span<const std::string> coord_names = {}) const;

private:
	void insert(const std::vector<int>& exp, const DForm& w);

	int nvars_ = 0, dim_ = 0;
	std::map<std::vector<int>, DForm> terms_;
};

/// Cartan differential D = 1 (x) d - sum_a Theta^a (x) i_{V_a}.  `fields`
/// supplies the vector field realizing each Theta-generator (nvars entries).
EqForm cartan_d(const EqForm& alpha, std::span<const std::vector<Expr>> fields);

/// Diagonal action of one generator: the coadjoint action on the Theta part
/// plus the geometric Lie derivative of the coefficients.  Vanishes on
/// invariant forms.
EqForm eq_lie(const EqForm& alpha, int b, const LieAlgebraSpec& alg,
			  std::span<const std::vector<Expr>> fields);

/// Max |eq_lie(alpha, b)| over all generators and sample points.
double invariance_residual(const EqForm& alpha, const LieAlgebraSpec& alg,
						   std::span<const std::vector<Expr>> fields,
						   const std::vector<std::vector<double>>& pts);

/// Projection to the maximal-torus model: keep the Theta-exponents supported
/// on the torus generators (renaming Theta^1 to u), then average each
/// coefficient over the distinguished circle.  Already-invariant coefficients
/// are returned structurally unchanged.
EqForm project_to_torus(const EqForm& alpha, const LieAlgebraSpec& alg, const Chart& chart);

/// Pointwise max difference of coefficients over the union of exponents.
double eq_distance(const EqForm& a, const EqForm& b,
				   const std::vector<std::vector<double>>& pts);

/// Random homogeneous equivariant form of the given total degree with small
/// polynomial coefficients (deterministic for a fixed Rng state).
EqForm random_eq_form(int nvars, int dim, int total_degree, Rng& rng);

}  // namespace dcw
