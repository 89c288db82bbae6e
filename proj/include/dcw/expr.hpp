#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dcw/pi_scalar.hpp"

namespace dcw {

enum class ExprOp : uint8_t {
	Const,  // PiScalar value
	Coord,  // coordinate by index
	Add, Sub, Mul, Div,
	Neg,
	Pow,    // integer exponent
	Sin, Cos, Exp, Sqrt,
	Bump,   // k-th derivative of the smooth step applied to (child - r0)/(r1 - r0)
};

struct ExprNode;

/// Immutable shared symbolic expression over chart coordinates.  Constants
/// are exact PiScalar values; differentiation is symbolic (never finite
/// differences); evaluation substitutes doubles at the very end.  Factory
/// functions perform light canonical folding (0+x, 1*x, x-x, d(const)=0 ...)
/// so that structural identities like "f identically 0 makes omega_f the
/// literal zero form" hold exactly.
class Expr {
public:
	Expr() = default;  // the constant 0
	static Expr constant(const PiScalar& c);
	static Expr rational(long num, long den = 1);
	static Expr pi();
	static Expr coord(int index);

	static Expr add(const Expr& a, const Expr& b);
	static Expr sub(const Expr& a, const Expr& b);
	static Expr mul(const Expr& a, const Expr& b);
	static Expr div(const Expr& a, const Expr& b);
	static Expr neg(const Expr& a);
	static Expr pow(const Expr& a, int n);
	static Expr sin(const Expr& a);
	static Expr cos(const Expr& a);
	static Expr exp(const Expr& a);
	static Expr sqrt(const Expr& a);
	/// Smooth step in the window [r0, r1]: identically 0 below r0, identically
	/// 1 above r1, C-infinity throughout (logistic of 1/x - 1/(1-x) inside).
	static Expr bump(const Expr& a, const PiScalar& r0, const PiScalar& r1);

	bool is_const() const;
	std::optional<PiScalar> const_value() const;
	bool is_zero() const;  // structurally the constant 0
	bool is_one() const;

	double eval(std::span<const double> coords) const;
	/// Exact evaluation at rational points; nullopt when the tree contains a
	/// transcendental node or a division that leaves Q[pi,pi^-1].
	std::optional<PiScalar> eval_exact(std::span<const Rational> coords) const;

	Expr derivative(int coord) const;
	/// coordinate i replaced by replacement[i]; indices past the span are errors
	Expr substitute(std::span<const Expr> replacement) const;

	static bool same_tree(const Expr& a, const Expr& b);

	/// highest coordinate index used + 1
	int arity() const;

	std::string str(std::span<const std::string> coord_names = {}) const;

	/// The constant zero is stored as a null pointer internally; node()
	/// presents it as a Const node so visitors need no special case.
	const ExprNode& node() const;

private:
	explicit Expr(std::shared_ptr<const ExprNode> p) : p_(std::move(p)) {}
	std::shared_ptr<const ExprNode> p_;
	friend struct ExprDetail;  // node-level construction for internal walkers
};

struct ExprNode {
	ExprOp op = ExprOp::Const;
	PiScalar value;      // Const
	int index = 0;       // Coord index, Pow exponent, Bump derivative order
	PiScalar r0, r1;     // Bump window
	Expr a, b;           // children (a only for unary ops)
};

inline Expr operator+(const Expr& a, const Expr& b) { return Expr::add(a, b); }
inline Expr operator-(const Expr& a, const Expr& b) { return Expr::sub(a, b); }
inline Expr operator*(const Expr& a, const Expr& b) { return Expr::mul(a, b); }
inline Expr operator/(const Expr& a, const Expr& b) { return Expr::div(a, b); }
inline Expr operator-(const Expr& a) { return Expr::neg(a); }

/// Evaluate the k-th derivative of the smooth step itself (unit window);
/// exposed for tests of the cut-off machinery.
double smooth_step_deriv(int order, double x);

}  // namespace dcw
