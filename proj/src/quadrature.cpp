#include "dcw/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace dcw {
namespace {

Quadrature compute_gauss_legendre(int n) {
	Quadrature q;
	q.nodes.resize(static_cast<size_t>(n));
	q.weights.resize(static_cast<size_t>(n));
	for (int k = 0; k < (n + 1) / 2; ++k) {
		// Tricomi initial guess, then Newton on P_n.
		double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
		double dp = 0;
		for (int it = 0; it < 100; ++it) {
			double p0 = 1, p1 = x;
			if (n == 1) p1 = x;
			for (int j = 2; j <= n; ++j) {
				const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
				p0 = p1;
				p1 = p2;
			}
			const double pn = (n == 1) ? x : p1;
			const double pm = (n == 1) ? 1.0 : p0;
			dp = n * (x * pn - pm) / (x * x - 1);
			const double dx = pn / dp;
			x -= dx;
			if (std::abs(dx) < 1e-15) break;
		}
		q.nodes[static_cast<size_t>(k)] = -x;
		q.nodes[static_cast<size_t>(n - 1 - k)] = x;
		const double w = 2.0 / ((1 - x * x) * dp * dp);
		q.weights[static_cast<size_t>(k)] = w;
		q.weights[static_cast<size_t>(n - 1 - k)] = w;
	}
	if (n % 2 == 1) q.nodes[static_cast<size_t>(n / 2)] = 0;
	return q;
}

}  // namespace

const Quadrature& gauss_legendre(int n) {
	if (n < 1 || n > 200) throw std::invalid_argument("gauss_legendre: order out of range");
	static std::map<int, Quadrature> cache;
	static std::mutex mu;
	std::lock_guard<std::mutex> lock(mu);
	auto it = cache.find(n);
	if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
	return it->second;
}

double integrate_box(const std::function<double(std::span<const double>)>& f,
					 std::span<const double> lo, std::span<const double> hi, int order) {
	if (lo.size() != hi.size()) throw std::invalid_argument("integrate_box: bound mismatch");
	const int dim = static_cast<int>(lo.size());
	if (dim == 0) return f({});
	const Quadrature& q = gauss_legendre(order);
	std::vector<double> at(static_cast<size_t>(dim));
	std::vector<int> idx(static_cast<size_t>(dim), 0);
	double total = 0;
	while (true) {
		double w = 1;
		for (int i = 0; i < dim; ++i) {
			const size_t k = static_cast<size_t>(idx[static_cast<size_t>(i)]);
			const double half = 0.5 * (hi[static_cast<size_t>(i)] - lo[static_cast<size_t>(i)]);
			at[static_cast<size_t>(i)] =
				lo[static_cast<size_t>(i)] + half * (1 + q.nodes[k]);
			w *= half * q.weights[k];
		}
		total += w * f(at);
		int i = 0;
		for (; i < dim; ++i) {
			if (++idx[static_cast<size_t>(i)] < order) break;
			idx[static_cast<size_t>(i)] = 0;
		}
		if (i == dim) break;
	}
	return total;
}

double integrate_box(const Expr& f, std::span<const double> lo, std::span<const double> hi,
					 int order) {
	return integrate_box([&f](std::span<const double> at) { return f.eval(at); }, lo, hi, order);
}

IntegralEstimate integrate_box_refined(const std::function<double(std::span<const double>)>& f,
									   std::span<const double> lo, std::span<const double> hi,
									   int order) {
	IntegralEstimate out;
	out.value = integrate_box(f, lo, hi, order);
	const int coarse = std::max(1, order - order / 3 - 1);
	out.error = std::abs(out.value - integrate_box(f, lo, hi, coarse));
	return out;
}

}  // namespace dcw
