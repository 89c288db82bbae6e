#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dcw/expr.hpp"

namespace dcw {

/// Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2n-1.
struct Quadrature {
	std::vector<double> nodes;
	std::vector<double> weights;
};

/// Cached rule with n points (n >= 1).
const Quadrature& gauss_legendre(int n);

/// Tensor-product Gauss-Legendre integral of f over the box [lo, hi] with
/// `order` points per axis.  A zero-dimensional box evaluates f at ().
double integrate_box(const std::function<double(std::span<const double>)>& f,
					 std::span<const double> lo, std::span<const double> hi, int order);

double integrate_box(const Expr& f, std::span<const double> lo, std::span<const double> hi,
					 int order);

/// Integral plus a crude error estimate: |value(order) - value(order - order/3 - 1)|.
struct IntegralEstimate {
	double value = 0;
	double error = 0;
};

IntegralEstimate integrate_box_refined(const std::function<double(std::span<const double>)>& f,
									   std::span<const double> lo, std::span<const double> hi,
									   int order);

}  // namespace dcw
