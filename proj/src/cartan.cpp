#include "dcw/cartan.hpp"

#include <bit>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dcw {

void EqForm::insert(const std::vector<int>& exp, const DForm& w) {
	if (w.is_zero()) return;
	auto it = terms_.find(exp);
	if (it == terms_.end()) {
		terms_.emplace(exp, w);
	} else {
		it->second += w;
		if (it->second.is_zero()) terms_.erase(it);
	}
}

EqForm EqForm::wrap(int nvars, const DForm& w) {
	EqForm r(nvars, w.dim());
	r.insert(std::vector<int>(static_cast<size_t>(nvars), 0), w);
	return r;
}

EqForm EqForm::theta(int nvars, int dim, int a) {
	if (a < 0 || a >= nvars) throw std::out_of_range("EqForm::theta: generator index out of range");
	std::vector<int> e(static_cast<size_t>(nvars), 0);
	e[static_cast<size_t>(a)] = 1;
	EqForm r(nvars, dim);
	r.insert(e, DForm::scalar(dim, Expr::rational(1)));
	return r;
}

EqForm EqForm::term(int nvars, std::vector<int> exp, const DForm& w) {
	if (static_cast<int>(exp.size()) != nvars)
		throw std::invalid_argument("EqForm::term: exponent vector length != nvars");
	for (int e : exp)
		if (e < 0) throw std::invalid_argument("EqForm::term: negative Theta exponent");
	EqForm r(nvars, w.dim());
	r.insert(exp, w);
	return r;
}

DForm EqForm::coefficient(const std::vector<int>& exp) const {
	auto it = terms_.find(exp);
	return it == terms_.end() ? DForm(dim_) : it->second;
}

static void require_compatible(const EqForm& a, const EqForm& b, const char* what) {
	if (a.nvars() != b.nvars() || a.dim() != b.dim())
		throw std::invalid_argument(std::string(what) + ": mixing equivariant forms of different shapes");
}

EqForm& EqForm::operator+=(const EqForm& o) {
	if (o.terms_.empty() && o.nvars_ == 0) return *this;
	if (terms_.empty() && nvars_ == 0) return *this = o;
	require_compatible(*this, o, "EqForm +");
	for (const auto& [e, w] : o.terms_) insert(e, w);
	return *this;
}

EqForm& EqForm::operator-=(const EqForm& o) { return *this += -o; }

EqForm operator-(const EqForm& a) {
	EqForm r(a.nvars_, a.dim_);
	for (const auto& [e, w] : a.terms_) r.terms_.emplace(e, -w);
	return r;
}

EqForm operator*(const EqForm& a, const EqForm& b) {
	// Theta generators carry even degree, so the only Koszul sign is the one
	// the coefficient wedge already produces.
	require_compatible(a, b, "EqForm *");
	EqForm r(a.nvars_, a.dim_);
	for (const auto& [ea, wa] : a.terms_)
		for (const auto& [eb, wb] : b.terms_) {
			std::vector<int> e = ea;
			for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
			r.insert(e, wa * wb);
		}
	return r;
}

EqForm operator*(const Expr& c, const EqForm& a) {
	EqForm r(a.nvars_, a.dim_);
	for (const auto& [e, w] : a.terms_) r.insert(e, c * w);
	return r;
}

EqForm EqForm::pow(int n) const {
	if (n < 0) throw std::invalid_argument("EqForm::pow: negative exponent");
	EqForm r = wrap(nvars_, DForm::scalar(dim_, Expr::rational(1)));
	for (int k = 0; k < n; ++k) r = r * *this;
	return r;
}

static int exp_weight(const std::vector<int>& e) {
	int s = 0;
	for (int v : e) s += v;
	return 2 * s;
}

int EqForm::total_degree() const {
	int best = -1;
	for (const auto& [e, w] : terms_)
		for (const auto& [mask, c] : w.components())
			best = std::max(best, exp_weight(e) + std::popcount(mask));
	return best;
}

bool EqForm::is_homogeneous(int* degree_out) const {
	int deg = -1;
	for (const auto& [e, w] : terms_)
		for (const auto& [mask, c] : w.components()) {
			int d = exp_weight(e) + std::popcount(mask);
			if (deg == -1) deg = d;
			else if (deg != d) return false;
		}
	if (degree_out) *degree_out = deg;
	return true;
}

EqForm EqForm::homogeneous_part(int degree) const {
	EqForm r(nvars_, dim_);
	for (const auto& [e, w] : terms_) {
		int k = degree - exp_weight(e);
		if (k >= 0) r.insert(e, w.homogeneous_part(k));
	}
	return r;
}

bool EqForm::same(const EqForm& a, const EqForm& b) {
	if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
	auto ia = a.terms_.begin();
	auto ib = b.terms_.begin();
	for (; ia != a.terms_.end(); ++ia, ++ib)
		if (ia->first != ib->first || !DForm::same(ia->second, ib->second)) return false;
	return true;
}

std::string EqForm::str(std::span<const std::string> coord_names) const {
	if (terms_.empty()) return "0";
	std::ostringstream os;
	bool first = true;
	for (const auto& [e, w] : terms_) {
		if (!first) os << " + ";
		first = false;
		os << "(" << w.str(coord_names) << ")";
		for (int a = 0; a < nvars_; ++a) {
			if (e[static_cast<size_t>(a)] == 0) continue;
			if (nvars_ == 1) os << " u";
			else os << " T" << (a + 1);
			if (e[static_cast<size_t>(a)] > 1) os << "^" << e[static_cast<size_t>(a)];
		}
	}
	return os.str();
}

EqForm cartan_d(const EqForm& alpha, std::span<const std::vector<Expr>> fields) {
	if (static_cast<int>(fields.size()) != alpha.nvars())
		throw std::invalid_argument("cartan_d: need one vector field per Theta generator");
	EqForm out(alpha.nvars(), alpha.dim());
	for (const auto& [e, w] : alpha.terms()) {
		out += EqForm::term(alpha.nvars(), e, w.d());
		for (int a = 0; a < alpha.nvars(); ++a) {
			std::vector<int> e2 = e;
			++e2[static_cast<size_t>(a)];
			out -= EqForm::term(alpha.nvars(), e2, w.contract(fields[static_cast<size_t>(a)]));
		}
	}
	return out;
}

EqForm eq_lie(const EqForm& alpha, int b, const LieAlgebraSpec& alg,
			  std::span<const std::vector<Expr>> fields) {
	if (alpha.nvars() != alg.dim)
		throw std::invalid_argument("eq_lie: form generators do not match the algebra");
	if (b < 0 || b >= alg.dim) throw std::out_of_range("eq_lie: generator index out of range");
	EqForm out(alpha.nvars(), alpha.dim());
	for (const auto& [e, w] : alpha.terms()) {
		out += EqForm::term(alpha.nvars(), e, w.lie(fields[static_cast<size_t>(b)]));
		// coadjoint action on the polynomial part: L_b Theta^c = -f^c_{ba} Theta^a
		for (int c = 0; c < alg.dim; ++c) {
			if (e[static_cast<size_t>(c)] == 0) continue;
			for (int a = 0; a < alg.dim; ++a) {
				const PiScalar& f = alg.f[static_cast<size_t>(b)][static_cast<size_t>(a)][static_cast<size_t>(c)];
				if (f.is_zero()) continue;
				std::vector<int> e2 = e;
				--e2[static_cast<size_t>(c)];
				++e2[static_cast<size_t>(a)];
				PiScalar coef = PiScalar(-static_cast<long>(e[static_cast<size_t>(c)])) * f;
				out += EqForm::term(alpha.nvars(), e2, Expr::constant(coef) * w);
			}
		}
	}
	return out;
}

double invariance_residual(const EqForm& alpha, const LieAlgebraSpec& alg,
						   std::span<const std::vector<Expr>> fields,
						   const std::vector<std::vector<double>>& pts) {
	double worst = 0;
	for (int b = 0; b < alg.dim; ++b) {
		EqForm l = eq_lie(alpha, b, alg, fields);
		for (const auto& [e, w] : l.terms())
			for (const auto& [mask, c] : w.components())
				for (const auto& p : pts) worst = std::max(worst, std::fabs(c.eval(p)));
	}
	return worst;
}

EqForm project_to_torus(const EqForm& alpha, const LieAlgebraSpec& alg, const Chart& chart) {
	if (alpha.nvars() != alg.dim)
		throw std::invalid_argument("project_to_torus: form generators do not match the algebra");
	const int rank = alg.torus_rank;
	if (rank < 1) throw std::logic_error("project_to_torus: algebra has no torus generators");
	EqForm out(rank, alpha.dim());
	for (const auto& [e, w] : alpha.terms()) {
		bool torus_only = true;
		for (int a = rank; a < alg.dim; ++a)
			if (e[static_cast<size_t>(a)] != 0) { torus_only = false; break; }
		if (!torus_only) continue;
		std::vector<int> e2(e.begin(), e.begin() + rank);
		out += EqForm::term(rank, e2, average_over_circle(chart, w));
	}
	return out;
}

double eq_distance(const EqForm& a, const EqForm& b,
				   const std::vector<std::vector<double>>& pts) {
	if (!a.is_zero() && !b.is_zero()) require_compatible(a, b, "eq_distance");
	std::set<std::vector<int>> keys;
	for (const auto& [e, w] : a.terms()) keys.insert(e);
	for (const auto& [e, w] : b.terms()) keys.insert(e);
	double worst = 0;
	for (const auto& e : keys) {
		DForm da = a.is_zero() ? DForm(b.dim()) : a.coefficient(e);
		DForm db = b.is_zero() ? DForm(a.dim()) : b.coefficient(e);
		std::set<uint32_t> masks;
		for (const auto& [m, c] : da.components()) masks.insert(m);
		for (const auto& [m, c] : db.components()) masks.insert(m);
		for (uint32_t m : masks)
			for (const auto& p : pts)
				worst = std::max(worst, std::fabs(da.eval(m, p) - db.eval(m, p)));
	}
	return worst;
}

EqForm random_eq_form(int nvars, int dim, int total_degree, Rng& rng) {
	EqForm out(nvars, dim);
	int made = 0;
	for (int tries = 0; tries < 64 && made < 4; ++tries) {
		int fdeg = static_cast<int>(rng.integer(0, std::min(dim, total_degree)));
		if ((total_degree - fdeg) % 2 != 0) continue;
		std::vector<int> e(static_cast<size_t>(nvars), 0);
		for (int k = 0; k < (total_degree - fdeg) / 2; ++k)
			++e[static_cast<size_t>(rng.integer(0, nvars - 1))];
		uint32_t mask = 0;
		while (std::popcount(mask) < fdeg) mask |= 1u << rng.integer(0, dim - 1);
		// coefficient: small rational times a low-degree monomial
		Expr coef = Expr::constant(PiScalar(rng.rational(4, 3, true)));
		for (int j = 0; j < 2; ++j) {
			int i = static_cast<int>(rng.integer(0, dim - 1));
			int p = static_cast<int>(rng.integer(0, 2));
			if (p > 0) coef = coef * Expr::pow(Expr::coord(i), p);
		}
		out += EqForm::term(nvars, e, DForm::monomial(dim, mask, coef));
		++made;
	}
	return out;
}

}  // namespace dcw
