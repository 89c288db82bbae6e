#include "dcw/weil.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "dcw/mask_sign.hpp"

namespace dcw {

namespace {

void check_same(const WeilElement& a, const WeilElement& b) {
	if (a.algebra() && b.algebra() && a.algebra() != b.algebra())
		throw std::invalid_argument("WeilElement: mixing elements of different algebras");
}

}  // namespace

WeilElement WeilElement::constant(const LieAlgebraSpec* alg, const PiScalar& c) {
	return monomial(alg, 0, std::vector<int>(static_cast<size_t>(alg->dim), 0), c);
}

WeilElement WeilElement::theta(const LieAlgebraSpec* alg, int a) {
	return monomial(alg, 1u << a, std::vector<int>(static_cast<size_t>(alg->dim), 0), PiScalar(1));
}

WeilElement WeilElement::big_theta(const LieAlgebraSpec* alg, int a) {
	std::vector<int> sym(static_cast<size_t>(alg->dim), 0);
	sym[static_cast<size_t>(a)] = 1;
	return monomial(alg, 0, std::move(sym), PiScalar(1));
}

WeilElement WeilElement::monomial(const LieAlgebraSpec* alg, uint32_t mask, std::vector<int> sym,
                                  const PiScalar& c) {
	WeilElement x(alg);
	if (static_cast<int>(sym.size()) != alg->dim)
		throw std::invalid_argument("WeilElement: exponent vector size mismatch");
	x.add_term(Key{mask, std::move(sym)}, c);
	return x;
}

void WeilElement::add_term(const Key& k, const PiScalar& c) {
	if (c.is_zero()) return;
	auto [it, fresh] = terms_.try_emplace(k, c);
	if (!fresh) {
		it->second += c;
		if (it->second.is_zero()) terms_.erase(it);
	}
}

WeilElement WeilElement::operator+(const WeilElement& o) const {
	check_same(*this, o);
	WeilElement r = *this;
	if (!r.alg_) r.alg_ = o.alg_;
	for (const auto& [k, c] : o.terms_) r.add_term(k, c);
	return r;
}

WeilElement WeilElement::operator-(const WeilElement& o) const { return *this + (-o); }

WeilElement WeilElement::operator-() const {
	WeilElement r = *this;
	for (auto& [k, c] : r.terms_) c = -c;
	return r;
}

WeilElement WeilElement::operator*(const WeilElement& o) const {
	check_same(*this, o);
	WeilElement r(alg_ ? alg_ : o.alg_);
	for (const auto& [k1, c1] : terms_)
		for (const auto& [k2, c2] : o.terms_) {
			if (k1.mask & k2.mask) continue;  // theta^a ^ theta^a = 0
			Key k;
			k.mask = k1.mask | k2.mask;
			k.sym.resize(k1.sym.size());
			for (size_t i = 0; i < k.sym.size(); ++i) k.sym[i] = k1.sym[i] + k2.sym[i];
			PiScalar c = c1 * c2;
			if (merge_sign(k1.mask, k2.mask) < 0) c = -c;
			r.add_term(k, c);
		}
	return r;
}

WeilElement WeilElement::operator*(const PiScalar& c) const {
	WeilElement r(alg_);
	if (c.is_zero()) return r;
	r.terms_ = terms_;
	for (auto& [k, v] : r.terms_) v *= c;
	return r;
}

WeilElement WeilElement::pow(int n) const {
	if (n < 0) throw std::invalid_argument("WeilElement::pow: negative exponent");
	WeilElement r = constant(alg_, PiScalar(1));
	for (int i = 0; i < n; ++i) r = r * (*this);
	return r;
}

int WeilElement::key_degree(const Key& k) {
	int d = std::popcount(k.mask);
	for (int e : k.sym) d += 2 * e;
	return d;
}

bool WeilElement::is_homogeneous(int* degree_out) const {
	if (terms_.empty()) {
		if (degree_out) *degree_out = 0;
		return true;
	}
	int d = key_degree(terms_.begin()->first);
	for (const auto& [k, c] : terms_)
		if (key_degree(k) != d) return false;
	if (degree_out) *degree_out = d;
	return true;
}

WeilElement WeilElement::homogeneous_part(int degree) const {
	WeilElement r(alg_);
	for (const auto& [k, c] : terms_)
		if (key_degree(k) == degree) r.add_term(k, c);
	return r;
}

bool WeilElement::is_symmetric() const {
	for (const auto& [k, c] : terms_)
		if (k.mask != 0) return false;
	return true;
}

std::string WeilElement::str() const {
	if (terms_.empty()) return "0";
	// print theta-heavy terms first so differentials read naturally
	std::vector<const Terms::value_type*> order;
	for (const auto& t : terms_) order.push_back(&t);
	std::stable_sort(order.begin(), order.end(), [](auto* x, auto* y) {
		int px = std::popcount(x->first.mask), py = std::popcount(y->first.mask);
		if (px != py) return px > py;
		return x->first < y->first;
	});
	std::ostringstream os;
	bool first = true;
	for (auto* t : order) {
		const Key& k = t->first;
		PiScalar c = t->second;
		std::string cs = c.str();
		bool neg = false;
		if (!cs.empty() && cs[0] == '-' && cs.find(" + ") == std::string::npos &&
		    cs.find(" - ") == std::string::npos) {
			neg = true;
			cs = cs.substr(1);
		}
		os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
		first = false;
		std::vector<std::string> parts;
		bool unit_coef = (cs == "1");
		bool has_gen = (k.mask != 0) || std::any_of(k.sym.begin(), k.sym.end(), [](int e) { return e > 0; });
		if (!unit_coef || !has_gen) {
			if (cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos)
				parts.push_back("(" + cs + ")");
			else
				parts.push_back(cs);
		}
		std::string wedge;
		for (uint32_t b = k.mask; b != 0; b &= b - 1) {
			int a = std::countr_zero(b);
			if (!wedge.empty()) wedge += "^";
			wedge += "t" + std::to_string(a + 1);
		}
		if (!wedge.empty()) parts.push_back(wedge);
		for (size_t a = 0; a < k.sym.size(); ++a)
			if (k.sym[a] > 0) {
				std::string p = "T" + std::to_string(a + 1);
				if (k.sym[a] > 1) p += "^" + std::to_string(k.sym[a]);
				parts.push_back(p);
			}
		for (size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
	}
	return os.str();
}

namespace {

/// d theta^a = -1/2 f^a_{bc} theta^b theta^c + Theta^a
WeilElement d_theta(const LieAlgebraSpec* alg, int a) {
	WeilElement r = WeilElement::big_theta(alg, a);
	const PiScalar half(Rational(1, 2));
	for (int b = 0; b < alg->dim; ++b)
		for (int c = 0; c < alg->dim; ++c) {
			const PiScalar& f = alg->f[static_cast<size_t>(b)][static_cast<size_t>(c)][static_cast<size_t>(a)];
			if (f.is_zero() || b == c) continue;
			r = r + WeilElement::theta(alg, b) * WeilElement::theta(alg, c) * (-(half * f));
		}
	return r;
}

/// d Theta^a = -f^a_{bc} theta^b Theta^c
WeilElement d_big_theta(const LieAlgebraSpec* alg, int a) {
	WeilElement r(alg);
	for (int b = 0; b < alg->dim; ++b)
		for (int c = 0; c < alg->dim; ++c) {
			const PiScalar& f = alg->f[static_cast<size_t>(b)][static_cast<size_t>(c)][static_cast<size_t>(a)];
			if (f.is_zero()) continue;
			r = r + WeilElement::theta(alg, b) * WeilElement::big_theta(alg, c) * (-f);
		}
	return r;
}

/// L_a applied to a single generator: theta^b -> -f^b_{ac} theta^c (odd=true)
/// or Theta^b -> -f^b_{ac} Theta^c.
WeilElement lie_of_generator(const LieAlgebraSpec* alg, int a, int b, bool odd) {
	WeilElement r(alg);
	for (int c = 0; c < alg->dim; ++c) {
		const PiScalar& f = alg->f[static_cast<size_t>(a)][static_cast<size_t>(c)][static_cast<size_t>(b)];
		if (f.is_zero()) continue;
		WeilElement gen = odd ? WeilElement::theta(alg, c) : WeilElement::big_theta(alg, c);
		r = r + gen * (-f);
	}
	return r;
}

WeilElement key_monomial(const LieAlgebraSpec* alg, uint32_t mask, const std::vector<int>& sym) {
	return WeilElement::monomial(alg, mask, sym, PiScalar(1));
}

}  // namespace

WeilElement weil_d(const WeilElement& x) {
	const LieAlgebraSpec* alg = x.algebra();
	WeilElement out(alg);
	const std::vector<int> zero_sym(alg ? static_cast<size_t>(alg->dim) : 0, 0);
	for (const auto& [k, c] : x.terms()) {
		// odd factors, ascending; d(xy) = dx y + (-1)^{|x|} x dy
		for (uint32_t b = k.mask; b != 0; b &= b - 1) {
			int a = std::countr_zero(b);
			uint32_t below = k.mask & ((1u << a) - 1u);
			uint32_t above = k.mask & ~((2u << a) - 1u);
			WeilElement term = key_monomial(alg, below, zero_sym) * d_theta(alg, a) *
			                   key_monomial(alg, above, k.sym);
			PiScalar coef = c;
			if (popcount_below(k.mask, a) % 2 == 1) coef = -coef;
			out = out + term * coef;
		}
		// even factors; prefix sign (-1)^{#odd}
		PiScalar sgn = (std::popcount(k.mask) % 2 == 0) ? PiScalar(1) : PiScalar(-1);
		for (size_t b = 0; b < k.sym.size(); ++b) {
			if (k.sym[b] == 0) continue;
			std::vector<int> rest = k.sym;
			rest[b] -= 1;
			WeilElement term = key_monomial(alg, k.mask, rest) * d_big_theta(alg, static_cast<int>(b));
			out = out + term * (sgn * PiScalar(k.sym[b]) * c);
		}
	}
	return out;
}

WeilElement weil_contract(int a, const WeilElement& x) {
	WeilElement out(x.algebra());
	for (const auto& [k, c] : x.terms()) {
		if (!(k.mask & (1u << a))) continue;
		WeilElement::Key nk = k;
		nk.mask &= ~(1u << a);
		PiScalar coef = c;
		if (popcount_below(k.mask, a) % 2 == 1) coef = -coef;
		out = out + WeilElement::monomial(x.algebra(), nk.mask, nk.sym, coef);
	}
	return out;
}

WeilElement weil_lie(int a, const WeilElement& x) {
	const LieAlgebraSpec* alg = x.algebra();
	WeilElement out(alg);
	const std::vector<int> zero_sym(alg ? static_cast<size_t>(alg->dim) : 0, 0);
	for (const auto& [k, c] : x.terms()) {
		for (uint32_t bits = k.mask; bits != 0; bits &= bits - 1) {
			int b = std::countr_zero(bits);
			uint32_t below = k.mask & ((1u << b) - 1u);
			uint32_t above = k.mask & ~((2u << b) - 1u);
			WeilElement term = key_monomial(alg, below, zero_sym) * lie_of_generator(alg, a, b, true) *
			                   key_monomial(alg, above, k.sym);
			out = out + term * c;
		}
		for (size_t b = 0; b < k.sym.size(); ++b) {
			if (k.sym[b] == 0) continue;
			std::vector<int> rest = k.sym;
			rest[b] -= 1;
			WeilElement term =
			    key_monomial(alg, k.mask, rest) * lie_of_generator(alg, a, static_cast<int>(b), false);
			out = out + term * (PiScalar(k.sym[b]) * c);
		}
	}
	return out;
}

WeilElement random_weil_element(const LieAlgebraSpec* alg, Rng& rng, int max_terms,
                                int max_sym_total) {
	WeilElement out(alg);
	int n = static_cast<int>(rng.integer(1, max_terms));
	for (int t = 0; t < n; ++t) {
		uint32_t mask = static_cast<uint32_t>(rng.integer(0, (1l << alg->dim) - 1));
		std::vector<int> sym(static_cast<size_t>(alg->dim), 0);
		int total = static_cast<int>(rng.integer(0, max_sym_total));
		for (int i = 0; i < total; ++i) sym[static_cast<size_t>(rng.integer(0, alg->dim - 1))] += 1;
		PiScalar c(rng.rational(9, 9, true));
		if (rng.integer(0, 2) == 0) c *= PiScalar::pi();
		out = out + WeilElement::monomial(alg, mask, std::move(sym), c);
	}
	return out;
}

WeilElement random_weil_homogeneous(const LieAlgebraSpec* alg, Rng& rng, int degree, int max_terms) {
	auto keys = graded_keys(alg, degree);
	WeilElement out(alg);
	if (keys.empty()) return out;
	int n = static_cast<int>(rng.integer(1, max_terms));
	for (int t = 0; t < n; ++t) {
		const auto& k = keys[static_cast<size_t>(rng.integer(0, static_cast<long>(keys.size()) - 1))];
		PiScalar c(rng.rational(9, 9, true));
		if (rng.integer(0, 2) == 0) c *= PiScalar::pi();
		out = out + WeilElement::monomial(alg, k.mask, k.sym, c);
	}
	return out;
}

namespace {

void enumerate_sym(int dim, int total, std::vector<int>& cur, size_t pos,
                   std::vector<std::vector<int>>& out) {
	if (pos + 1 == static_cast<size_t>(dim)) {
		cur[pos] = total;
		out.push_back(cur);
		return;
	}
	for (int e = 0; e <= total; ++e) {
		cur[pos] = e;
		enumerate_sym(dim, total - e, cur, pos + 1, out);
	}
}

std::vector<std::vector<int>> sym_exponents(int dim, int total) {
	std::vector<std::vector<int>> out;
	std::vector<int> cur(static_cast<size_t>(dim), 0);
	if (dim == 0) return out;
	enumerate_sym(dim, total, cur, 0, out);
	return out;
}

}  // namespace

std::vector<WeilElement::Key> symmetric_keys(const LieAlgebraSpec* alg, int q) {
	std::vector<WeilElement::Key> keys;
	for (auto& sym : sym_exponents(alg->dim, q)) keys.push_back({0, std::move(sym)});
	return keys;
}

std::vector<WeilElement::Key> graded_keys(const LieAlgebraSpec* alg, int q) {
	std::vector<WeilElement::Key> keys;
	for (uint32_t mask = 0; mask < (1u << alg->dim); ++mask) {
		int odd = std::popcount(mask);
		if (odd > q || (q - odd) % 2 != 0) continue;
		for (auto& sym : sym_exponents(alg->dim, (q - odd) / 2)) keys.push_back({mask, std::move(sym)});
	}
	return keys;
}

namespace {

/// Exact nullspace of a rational matrix (rows x cols), returned as a basis of
/// column-coefficient vectors, via reduced row echelon form.
std::vector<std::vector<Rational>> rational_nullspace(std::vector<std::vector<Rational>> m,
                                                      size_t cols) {
	size_t rows = m.size();
	std::vector<long> pivot_of_row;
	size_t r = 0;
	for (size_t c = 0; c < cols && r < rows; ++c) {
		size_t sel = r;
		while (sel < rows && m[sel][c] == 0) ++sel;
		if (sel == rows) continue;
		std::swap(m[r], m[sel]);
		Rational inv = m[r][c];
		for (size_t j = c; j < cols; ++j) m[r][j] /= inv;
		for (size_t i = 0; i < rows; ++i) {
			if (i == r || m[i][c] == 0) continue;
			Rational factor = m[i][c];
			for (size_t j = c; j < cols; ++j) m[i][j] -= factor * m[r][j];
		}
		pivot_of_row.push_back(static_cast<long>(c));
		++r;
	}
	std::vector<bool> is_pivot(cols, false);
	for (long p : pivot_of_row) is_pivot[static_cast<size_t>(p)] = true;
	std::vector<std::vector<Rational>> basis;
	for (size_t free_c = 0; free_c < cols; ++free_c) {
		if (is_pivot[free_c]) continue;
		std::vector<Rational> v(cols, Rational(0));
		v[free_c] = 1;
		for (size_t i = 0; i < pivot_of_row.size(); ++i)
			v[static_cast<size_t>(pivot_of_row[i])] = -m[i][free_c];
		basis.push_back(std::move(v));
	}
	return basis;
}

/// Joint kernel of linear operators on the span of the given monomial keys.
/// The operator outputs have PiScalar coefficients; each (output key, pi
/// power) pair becomes one rational constraint row, so the kernel is exact.
std::vector<WeilElement> joint_kernel(const LieAlgebraSpec* alg,
                                      const std::vector<WeilElement::Key>& keys,
                                      const std::vector<std::function<WeilElement(const WeilElement&)>>& ops) {
	size_t cols = keys.size();
	if (cols == 0) return {};
	// column images per operator
	std::vector<std::vector<Rational>> rows;
	for (const auto& op : ops) {
		std::vector<WeilElement> images;
		images.reserve(cols);
		std::map<WeilElement::Key, std::pair<int, int>> power_window;  // key -> [min,max] pi power
		for (const auto& k : keys) {
			images.push_back(op(WeilElement::monomial(alg, k.mask, k.sym, PiScalar(1))));
			for (const auto& [ok, oc] : images.back().terms()) {
				auto it = power_window.find(ok);
				if (it == power_window.end())
					power_window.emplace(ok, std::make_pair(oc.min_power(), oc.max_power()));
				else {
					it->second.first = std::min(it->second.first, oc.min_power());
					it->second.second = std::max(it->second.second, oc.max_power());
				}
			}
		}
		for (const auto& [ok, window] : power_window)
			for (int p = window.first; p <= window.second; ++p) {
				std::vector<Rational> row(cols, Rational(0));
				bool nonzero = false;
				for (size_t j = 0; j < cols; ++j) {
					auto it = images[j].terms().find(ok);
					if (it == images[j].terms().end()) continue;
					row[j] = it->second.coeff(p);
					if (row[j] != 0) nonzero = true;
				}
				if (nonzero) rows.push_back(std::move(row));
			}
	}
	auto basis = rational_nullspace(std::move(rows), cols);
	std::vector<WeilElement> out;
	for (const auto& v : basis) {
		WeilElement x(alg);
		for (size_t j = 0; j < cols; ++j)
			if (v[j] != 0) x = x + WeilElement::monomial(alg, keys[j].mask, keys[j].sym, PiScalar(v[j]));
		out.push_back(std::move(x));
	}
	return out;
}

}  // namespace

std::vector<WeilElement> invariant_polynomials(const LieAlgebraSpec* alg, int q) {
	if (q < 0) throw std::invalid_argument("invariant_polynomials: negative degree");
	std::vector<std::function<WeilElement(const WeilElement&)>> ops;
	for (int a = 0; a < alg->dim; ++a)
		ops.push_back([a](const WeilElement& x) { return weil_lie(a, x); });
	return joint_kernel(alg, symmetric_keys(alg, q), ops);
}

std::vector<WeilElement> basic_basis(const LieAlgebraSpec* alg, int q) {
	if (q < 0) throw std::invalid_argument("basic_basis: negative degree");
	std::vector<std::function<WeilElement(const WeilElement&)>> ops;
	for (int a = 0; a < alg->dim; ++a) {
		ops.push_back([a](const WeilElement& x) { return weil_contract(a, x); });
		ops.push_back([a](const WeilElement& x) { return weil_lie(a, x); });
	}
	return joint_kernel(alg, graded_keys(alg, q), ops);
}

PiScalar symmetric_coefficient(const WeilElement& x, const std::vector<int>& idx) {
	if (!x.is_symmetric())
		throw std::invalid_argument("symmetric_coefficient: element has odd generators");
	const LieAlgebraSpec* alg = x.algebra();
	std::vector<int> sym(static_cast<size_t>(alg->dim), 0);
	for (int i : idx) sym[static_cast<size_t>(i)] += 1;
	auto it = x.terms().find(WeilElement::Key{0, sym});
	if (it == x.terms().end()) return PiScalar(0);
	// multiplicity q! / prod(e_a!) of the tuple among all orderings
	long q = static_cast<long>(idx.size());
	Rational count(1);
	for (long i = 2; i <= q; ++i) count *= i;
	for (int e : sym)
		for (long i = 2; i <= e; ++i) count /= i;
	return it->second / PiScalar(count);
}

}  // namespace dcw
