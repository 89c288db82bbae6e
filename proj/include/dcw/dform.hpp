#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "dcw/expr.hpp"

namespace dcw {

/// Differential form on a single coordinate chart of dimension dim (<= 32).
/// Stored as a sum of coefficient * dx^{i1}^...^dx^{ik} monomials with
/// ascending indices, keyed by the index bit mask; mixed degrees are allowed
/// (use homogeneous_part to slice).  The zero form has an empty component map.
class DForm {
public:
	explicit DForm(int dim = 0) : dim_(dim) {}

	static DForm scalar(int dim, const Expr& f);
	static DForm dx(int dim, int i);
	static DForm monomial(int dim, uint32_t mask, const Expr& f);

	int dim() const { return dim_; }
	bool is_zero() const { return comps_.empty(); }
	const std::map<uint32_t, Expr>& components() const { return comps_; }
	/// Coefficient of dx^mask (the zero expression if absent).
	Expr coefficient(uint32_t mask) const;
	DForm homogeneous_part(int k) const;
	/// Largest monomial degree present (-1 for the zero form).
	int max_degree() const;

	DForm& operator+=(const DForm& o);
	DForm& operator-=(const DForm& o);

	/// Exterior derivative.
	DForm d() const;
	/// Interior product with a vector field (components in chart coordinates),
	/// contracting into the first slot: i_V(dx_i^dx_j) = V_i dx_j - V_j dx_i.
	DForm contract(std::span<const Expr> field) const;
	/// Lie derivative along a vector field, via d i_V + i_V d.
	DForm lie(std::span<const Expr> field) const;
	/// Pull back along a map into this form's chart: embedding supplies each
	/// target coordinate as an expression in source_dim source coordinates.
	DForm pullback(std::span<const Expr> embedding, int source_dim) const;

	double eval(uint32_t mask, std::span<const double> at) const;
	/// Structural coefficient-wise equality (same expression trees).
	static bool same(const DForm& a, const DForm& b);
	std::string str(std::span<const std::string> names = {}) const;

	friend DForm operator+(DForm a, const DForm& b) { return a += b; }
	friend DForm operator-(DForm a, const DForm& b) { return a -= b; }
	friend DForm operator-(const DForm& a);
	/// Graded (wedge) product.
	friend DForm operator*(const DForm& a, const DForm& b);
	friend DForm operator*(const Expr& f, const DForm& a);

private:
	void insert(uint32_t mask, const Expr& f);

	int dim_ = 0;
	std::map<uint32_t, Expr> comps_;
};

}  // namespace dcw
