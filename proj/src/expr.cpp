#include "dcw/expr.hpp"

#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace dcw {

struct ExprDetail {
	static Expr wrap(std::shared_ptr<const ExprNode> p) { return Expr(std::move(p)); }
};

namespace {

std::shared_ptr<const ExprNode> make_node(ExprNode n) {
	return std::make_shared<const ExprNode>(std::move(n));
}

// Folding shares subtrees aggressively, so expressions are DAGs whose
// expanded tree size can be exponential in the node count.  Every recursive
// walk below therefore memoizes on the node address for the duration of the
// call.
template <typename T>
using NodeMemo = std::unordered_map<const ExprNode*, T>;

}  // namespace

const ExprNode& Expr::node() const {
	static const ExprNode kZero{};  // Const with zero value; children stay null
	return p_ ? *p_ : kZero;
}

Expr Expr::constant(const PiScalar& c) {
	if (c.is_zero()) return Expr();
	return Expr(make_node({ExprOp::Const, c, 0, {}, {}, {}, {}}));
}

Expr Expr::rational(long num, long den) { return constant(PiScalar(Rational(num, den))); }

Expr Expr::pi() { return constant(PiScalar::pi()); }

Expr Expr::coord(int index) {
	if (index < 0) throw std::invalid_argument("Expr::coord: negative index");
	return Expr(make_node({ExprOp::Coord, {}, index, {}, {}, {}, {}}));
}

bool Expr::is_const() const { return node().op == ExprOp::Const; }

std::optional<PiScalar> Expr::const_value() const {
	if (node().op == ExprOp::Const) return node().value;
	return std::nullopt;
}

bool Expr::is_zero() const { return node().op == ExprOp::Const && node().value.is_zero(); }

bool Expr::is_one() const { return node().op == ExprOp::Const && node().value == PiScalar(1); }

Expr Expr::add(const Expr& a, const Expr& b) {
	if (a.is_zero()) return b;
	if (b.is_zero()) return a;
	if (a.is_const() && b.is_const()) return constant(a.node().value + b.node().value);
	if (b.node().op == ExprOp::Neg && same_tree(a, b.node().a)) return Expr();
	if (a.node().op == ExprOp::Neg && same_tree(a.node().a, b)) return Expr();
	return Expr(make_node({ExprOp::Add, {}, 0, {}, {}, a, b}));
}

Expr Expr::sub(const Expr& a, const Expr& b) {
	if (b.is_zero()) return a;
	if (a.is_zero()) return neg(b);
	if (a.is_const() && b.is_const()) return constant(a.node().value - b.node().value);
	if (same_tree(a, b)) return Expr();
	return Expr(make_node({ExprOp::Sub, {}, 0, {}, {}, a, b}));
}

Expr Expr::mul(const Expr& a, const Expr& b) {
	if (a.is_zero() || b.is_zero()) return Expr();
	if (a.is_one()) return b;
	if (b.is_one()) return a;
	if (a.is_const() && b.is_const()) return constant(a.node().value * b.node().value);
	// keep constants on the left and merge nested constant factors
	if (b.is_const() && !a.is_const()) return mul(b, a);
	if (a.is_const() && b.node().op == ExprOp::Mul && b.node().a.is_const())
		return mul(constant(a.node().value * b.node().a.node().value), b.node().b);
	if (a.is_const() && a.node().value == PiScalar(-1)) return neg(b);
	return Expr(make_node({ExprOp::Mul, {}, 0, {}, {}, a, b}));
}

Expr Expr::div(const Expr& a, const Expr& b) {
	if (b.is_zero()) throw std::domain_error("Expr::div: division by the constant zero");
	if (a.is_zero()) return Expr();
	if (b.is_one()) return a;
	if (b.is_const()) {
		const PiScalar c = b.node().value;
		if (c.is_monomial()) return mul(constant(PiScalar(1) / c), a);
	}
	// non-monomial constant divisors stay as nodes, evaluated numerically
	return Expr(make_node({ExprOp::Div, {}, 0, {}, {}, a, b}));
}

Expr Expr::neg(const Expr& a) {
	if (a.is_const()) return constant(-a.node().value);
	if (a.node().op == ExprOp::Neg) return a.node().a;
	return Expr(make_node({ExprOp::Neg, {}, 0, {}, {}, a, {}}));
}

Expr Expr::pow(const Expr& a, int n) {
	if (n == 0) return constant(PiScalar(1));
	if (n == 1) return a;
	if (a.is_const()) {
		const PiScalar& c = a.node().value;
		if (n > 0 || c.is_monomial()) return constant(c.pow(n));
	}
	if (a.is_zero() && n < 0) throw std::domain_error("Expr::pow: zero to a negative power");
	return Expr(make_node({ExprOp::Pow, {}, n, {}, {}, a, {}}));
}

Expr Expr::sin(const Expr& a) {
	if (a.is_zero()) return Expr();
	return Expr(make_node({ExprOp::Sin, {}, 0, {}, {}, a, {}}));
}

Expr Expr::cos(const Expr& a) {
	if (a.is_zero()) return constant(PiScalar(1));
	return Expr(make_node({ExprOp::Cos, {}, 0, {}, {}, a, {}}));
}

Expr Expr::exp(const Expr& a) {
	if (a.is_zero()) return constant(PiScalar(1));
	return Expr(make_node({ExprOp::Exp, {}, 0, {}, {}, a, {}}));
}

Expr Expr::sqrt(const Expr& a) {
	if (a.is_zero()) return Expr();
	if (a.is_one()) return constant(PiScalar(1));
	return Expr(make_node({ExprOp::Sqrt, {}, 0, {}, {}, a, {}}));
}

Expr Expr::bump(const Expr& a, const PiScalar& r0, const PiScalar& r1) {
	if ((r1 - r0).is_zero() || (r1 - r0).to_double() <= 0)
		throw std::invalid_argument("Expr::bump: window must satisfy r0 < r1");
	return Expr(make_node({ExprOp::Bump, {}, 0, r0, r1, a, {}}));
}

// ---------------------------------------------------------------------------
// smooth step

namespace {

/// Symbolic derivatives of s(x) = 1/(1 + exp(1/x - 1/(1-x))) on (0,1),
/// generated by the engine's own differentiation and cached per order.
const Expr& step_expr(int order) {
	static std::vector<Expr> cache;
	static std::mutex mu;
	std::lock_guard<std::mutex> lock(mu);
	if (cache.empty()) {
		Expr x = Expr::coord(0);
		Expr one = Expr::rational(1);
		Expr w = one / x - one / (one - x);
		cache.push_back(one / (one + Expr::exp(w)));
	}
	while (static_cast<int>(cache.size()) <= order) cache.push_back(cache.back().derivative(0));
	return cache[static_cast<size_t>(order)];
}

}  // namespace

double smooth_step_deriv(int order, double x) {
	// guard band: the step and all its derivatives are flat to ~exp(-1000)
	if (x < 1e-3) return 0.0;
	if (x > 1.0 - 1e-3) return order == 0 ? 1.0 : 0.0;
	double v = x;
	return step_expr(order).eval(std::span<const double>(&v, 1));
}

// ---------------------------------------------------------------------------

namespace {

double eval_impl(const Expr& e, std::span<const double> coords, NodeMemo<double>& memo) {
	const ExprNode& n = e.node();
	auto it = memo.find(&n);
	if (it != memo.end()) return it->second;
	auto rec = [&](const Expr& c) { return eval_impl(c, coords, memo); };
	double out;
	switch (n.op) {
		case ExprOp::Const: out = n.value.to_double(); break;
		case ExprOp::Coord:
			if (n.index >= static_cast<int>(coords.size()))
				throw std::out_of_range("Expr::eval: coordinate index beyond point dimension");
			out = coords[static_cast<size_t>(n.index)];
			break;
		case ExprOp::Add: out = rec(n.a) + rec(n.b); break;
		case ExprOp::Sub: out = rec(n.a) - rec(n.b); break;
		case ExprOp::Mul: out = rec(n.a) * rec(n.b); break;
		case ExprOp::Div: out = rec(n.a) / rec(n.b); break;
		case ExprOp::Neg: out = -rec(n.a); break;
		case ExprOp::Pow: out = std::pow(rec(n.a), n.index); break;
		case ExprOp::Sin: out = std::sin(rec(n.a)); break;
		case ExprOp::Cos: out = std::cos(rec(n.a)); break;
		case ExprOp::Exp: out = std::exp(rec(n.a)); break;
		case ExprOp::Sqrt: out = std::sqrt(rec(n.a)); break;
		case ExprOp::Bump: {
			double t = (rec(n.a) - n.r0.to_double()) / (n.r1 - n.r0).to_double();
			double scale = std::pow((n.r1 - n.r0).to_double(), -n.index);
			out = smooth_step_deriv(n.index, t) * scale;
			break;
		}
		default: throw std::logic_error("Expr::eval: unknown op");
	}
	memo.emplace(&n, out);
	return out;
}

}  // namespace

double Expr::eval(std::span<const double> coords) const {
	NodeMemo<double> memo;
	return eval_impl(*this, coords, memo);
}

namespace {

std::optional<PiScalar> eval_exact_impl(const Expr& e, std::span<const Rational> coords,
										NodeMemo<std::optional<PiScalar>>& memo) {
	const ExprNode& n = e.node();
	auto it = memo.find(&n);
	if (it != memo.end()) return it->second;
	auto child = [&](const Expr& c) { return eval_exact_impl(c, coords, memo); };
	std::optional<PiScalar> out;
	try {
		switch (n.op) {
			case ExprOp::Const: out = n.value; break;
			case ExprOp::Coord:
				if (n.index < static_cast<int>(coords.size()))
					out = PiScalar(coords[static_cast<size_t>(n.index)]);
				break;
			case ExprOp::Add: {
				auto a = child(n.a), b = child(n.b);
				if (a && b) out = *a + *b;
				break;
			}
			case ExprOp::Sub: {
				auto a = child(n.a), b = child(n.b);
				if (a && b) out = *a - *b;
				break;
			}
			case ExprOp::Mul: {
				auto a = child(n.a), b = child(n.b);
				if (a && b) out = *a * *b;
				break;
			}
			case ExprOp::Div: {
				auto a = child(n.a), b = child(n.b);
				if (a && b) out = *a / *b;  // throws if the quotient leaves the ring
				break;
			}
			case ExprOp::Neg: {
				auto a = child(n.a);
				if (a) out = -*a;
				break;
			}
			case ExprOp::Pow: {
				auto a = child(n.a);
				if (a) out = a->pow(n.index);
				break;
			}
			default: break;  // transcendental node
		}
	} catch (const std::domain_error&) {
		out = std::nullopt;
	}
	memo.emplace(&n, out);
	return out;
}

}  // namespace

std::optional<PiScalar> Expr::eval_exact(std::span<const Rational> coords) const {
	NodeMemo<std::optional<PiScalar>> memo;
	return eval_exact_impl(*this, coords, memo);
}

namespace {

Expr derivative_impl(const Expr& e, int coord, NodeMemo<Expr>& memo) {
	const ExprNode& n = e.node();
	auto it = memo.find(&n);
	if (it != memo.end()) return it->second;
	auto rec = [&](const Expr& c) { return derivative_impl(c, coord, memo); };
	Expr out;
	switch (n.op) {
		case ExprOp::Const: break;
		case ExprOp::Coord:
			if (n.index == coord) out = Expr::constant(PiScalar(1));
			break;
		case ExprOp::Add: out = Expr::add(rec(n.a), rec(n.b)); break;
		case ExprOp::Sub: out = Expr::sub(rec(n.a), rec(n.b)); break;
		case ExprOp::Mul:
			out = Expr::add(Expr::mul(rec(n.a), n.b), Expr::mul(n.a, rec(n.b)));
			break;
		case ExprOp::Div:
			// (a/b)' = a'/b - a b'/b^2
			out = Expr::sub(Expr::div(rec(n.a), n.b),
			                Expr::div(Expr::mul(n.a, rec(n.b)), Expr::pow(n.b, 2)));
			break;
		case ExprOp::Neg: out = Expr::neg(rec(n.a)); break;
		case ExprOp::Pow:
			out = Expr::mul(Expr::mul(Expr::constant(PiScalar(n.index)), Expr::pow(n.a, n.index - 1)),
			                rec(n.a));
			break;
		case ExprOp::Sin: out = Expr::mul(Expr::cos(n.a), rec(n.a)); break;
		case ExprOp::Cos: out = Expr::neg(Expr::mul(Expr::sin(n.a), rec(n.a))); break;
		case ExprOp::Exp: out = Expr::mul(Expr::exp(n.a), rec(n.a)); break;
		case ExprOp::Sqrt:
			out = Expr::div(rec(n.a), Expr::mul(Expr::constant(PiScalar(2)), Expr::sqrt(n.a)));
			break;
		case ExprOp::Bump: {
			Expr inner = rec(n.a);
			if (!inner.is_zero()) {
				Expr dstep = ExprDetail::wrap(make_node({ExprOp::Bump, {}, n.index + 1, n.r0, n.r1, n.a, {}}));
				out = Expr::mul(dstep, inner);
			}
			break;
		}
		default: throw std::logic_error("Expr::derivative: unknown op");
	}
	memo.emplace(&n, out);
	return out;
}

Expr substitute_impl(const Expr& e, std::span<const Expr> replacement, NodeMemo<Expr>& memo) {
	const ExprNode& n = e.node();
	auto it = memo.find(&n);
	if (it != memo.end()) return it->second;
	auto rec = [&](const Expr& c) { return substitute_impl(c, replacement, memo); };
	Expr out;
	switch (n.op) {
		case ExprOp::Const: out = e; break;
		case ExprOp::Coord:
			if (n.index >= static_cast<int>(replacement.size()))
				throw std::out_of_range("Expr::substitute: coordinate index beyond replacement list");
			out = replacement[static_cast<size_t>(n.index)];
			break;
		case ExprOp::Add: out = Expr::add(rec(n.a), rec(n.b)); break;
		case ExprOp::Sub: out = Expr::sub(rec(n.a), rec(n.b)); break;
		case ExprOp::Mul: out = Expr::mul(rec(n.a), rec(n.b)); break;
		case ExprOp::Div: out = Expr::div(rec(n.a), rec(n.b)); break;
		case ExprOp::Neg: out = Expr::neg(rec(n.a)); break;
		case ExprOp::Pow: out = Expr::pow(rec(n.a), n.index); break;
		case ExprOp::Sin: out = Expr::sin(rec(n.a)); break;
		case ExprOp::Cos: out = Expr::cos(rec(n.a)); break;
		case ExprOp::Exp: out = Expr::exp(rec(n.a)); break;
		case ExprOp::Sqrt: out = Expr::sqrt(rec(n.a)); break;
		case ExprOp::Bump: out = ExprDetail::wrap(make_node({ExprOp::Bump, {}, n.index, n.r0, n.r1, rec(n.a), {}})); break;
		default: throw std::logic_error("Expr::substitute: unknown op");
	}
	memo.emplace(&n, out);
	return out;
}

struct PairHash {
	size_t operator()(const std::pair<const ExprNode*, const ExprNode*>& p) const {
		return std::hash<const void*>()(p.first) * 1000003u ^ std::hash<const void*>()(p.second);
	}
};

bool same_tree_impl(const Expr& a, const Expr& b,
					std::unordered_map<std::pair<const ExprNode*, const ExprNode*>, bool, PairHash>& memo) {
	const ExprNode& x = a.node();
	const ExprNode& y = b.node();
	if (&x == &y) return true;
	auto key = std::make_pair(&x, &y);
	auto it = memo.find(key);
	if (it != memo.end()) return it->second;
	bool out;
	if (x.op != y.op || x.index != y.index) {
		out = false;
	} else {
		switch (x.op) {
			case ExprOp::Const: out = x.value == y.value; break;
			case ExprOp::Coord: out = true; break;  // index compared above
			case ExprOp::Bump:
				out = x.r0 == y.r0 && x.r1 == y.r1 && same_tree_impl(x.a, y.a, memo);
				break;
			case ExprOp::Neg:
			case ExprOp::Pow:
			case ExprOp::Sin:
			case ExprOp::Cos:
			case ExprOp::Exp:
			case ExprOp::Sqrt:
				out = same_tree_impl(x.a, y.a, memo);
				break;
			default:
				out = same_tree_impl(x.a, y.a, memo) && same_tree_impl(x.b, y.b, memo);
				break;
		}
	}
	memo.emplace(key, out);
	return out;
}

int arity_impl(const Expr& e, NodeMemo<int>& memo) {
	const ExprNode& n = e.node();
	auto it = memo.find(&n);
	if (it != memo.end()) return it->second;
	int out;
	switch (n.op) {
		case ExprOp::Const: out = 0; break;
		case ExprOp::Coord: out = n.index + 1; break;
		case ExprOp::Neg:
		case ExprOp::Pow:
		case ExprOp::Sin:
		case ExprOp::Cos:
		case ExprOp::Exp:
		case ExprOp::Sqrt:
		case ExprOp::Bump: out = arity_impl(n.a, memo); break;
		default: out = std::max(arity_impl(n.a, memo), arity_impl(n.b, memo)); break;
	}
	memo.emplace(&n, out);
	return out;
}

}  // namespace

Expr Expr::derivative(int coord) const {
	NodeMemo<Expr> memo;
	return derivative_impl(*this, coord, memo);
}

Expr Expr::substitute(std::span<const Expr> replacement) const {
	NodeMemo<Expr> memo;
	return substitute_impl(*this, replacement, memo);
}

bool Expr::same_tree(const Expr& a, const Expr& b) {
	if (a.p_ == b.p_) return true;
	std::unordered_map<std::pair<const ExprNode*, const ExprNode*>, bool, PairHash> memo;
	return same_tree_impl(a, b, memo);
}

int Expr::arity() const {
	NodeMemo<int> memo;
	return arity_impl(*this, memo);
}

namespace {

int precedence(ExprOp op) {
	switch (op) {
		case ExprOp::Add:
		case ExprOp::Sub: return 1;
		case ExprOp::Mul:
		case ExprOp::Div: return 2;
		case ExprOp::Neg: return 3;
		case ExprOp::Pow: return 4;
		default: return 5;
	}
}

void print(const Expr& e, std::ostream& os, std::span<const std::string> names, int parent_prec) {
	const ExprNode& n = e.node();
	int prec = precedence(n.op);
	bool paren = prec < parent_prec;
	auto open = [&] { if (paren) os << "("; };
	auto close = [&] { if (paren) os << ")"; };
	switch (n.op) {
		case ExprOp::Const: {
			std::string s = n.value.str();
			bool composite = s.find(' ') != std::string::npos || (s.size() > 1 && s[0] == '-');
			if (composite && parent_prec > 1) os << "(" << s << ")";
			else os << s;
			return;
		}
		case ExprOp::Coord:
			if (n.index < static_cast<int>(names.size())) os << names[static_cast<size_t>(n.index)];
			else os << "x" << n.index;
			return;
		case ExprOp::Add:
			open(); print(n.a, os, names, prec); os << " + "; print(n.b, os, names, prec); close();
			return;
		case ExprOp::Sub:
			open(); print(n.a, os, names, prec); os << " - "; print(n.b, os, names, prec + 1); close();
			return;
		case ExprOp::Mul:
			open(); print(n.a, os, names, prec); os << "*"; print(n.b, os, names, prec); close();
			return;
		case ExprOp::Div:
			open(); print(n.a, os, names, prec); os << "/"; print(n.b, os, names, prec + 1); close();
			return;
		case ExprOp::Neg:
			open(); os << "-"; print(n.a, os, names, prec + 1); close();
			return;
		case ExprOp::Pow:
			open(); print(n.a, os, names, prec + 1); os << "^" << n.index; close();
			return;
		case ExprOp::Sin: os << "sin("; print(n.a, os, names, 0); os << ")"; return;
		case ExprOp::Cos: os << "cos("; print(n.a, os, names, 0); os << ")"; return;
		case ExprOp::Exp: os << "exp("; print(n.a, os, names, 0); os << ")"; return;
		case ExprOp::Sqrt: os << "sqrt("; print(n.a, os, names, 0); os << ")"; return;
		case ExprOp::Bump:
			if (n.index > 0) os << "bump'" << n.index;
			else os << "bump";
			os << "(";
			print(n.a, os, names, 0);
			os << "; " << n.r0.str() << ", " << n.r1.str() << ")";
			return;
	}
}

}  // namespace

std::string Expr::str(std::span<const std::string> coord_names) const {
	std::ostringstream os;
	print(*this, os, coord_names, 0);
	return os.str();
}

}  // namespace dcw
