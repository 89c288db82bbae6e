#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcw {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exact scalar in Q[pi, pi^-1]: a finite sum  sum_k c_k pi^k  with rational
/// coefficients and integer (possibly negative) exponents.  This is the
/// coefficient ring for the Lie algebra structure constants (4*pi, 2*pi),
/// the Haar volumes (1/(4*pi), 1/pi) and everything the Weil algebra and the
/// exact residue arithmetic touch.  Floats only appear when to_double() is
/// called at the very end of a computation.
class PiScalar {
public:
	PiScalar() = default;
	PiScalar(long v) : off_(0), c_{Rational(v)} { normalize(); }
	PiScalar(int v) : PiScalar(static_cast<long>(v)) {}
	PiScalar(const Rational& r) : off_(0), c_{r} { normalize(); }

	/// coef * pi^power
	static PiScalar pi(int power = 1, const Rational& coef = Rational(1)) {
		PiScalar s;
		s.off_ = power;
		s.c_ = {coef};
		s.normalize();
		return s;
	}
	static PiScalar frac(long num, long den) { return PiScalar(Rational(num, den)); }

	bool is_zero() const { return c_.empty(); }
	/// true when the value lies in Q (only the pi^0 coefficient may be nonzero)
	bool is_rational() const { return c_.empty() || (c_.size() == 1 && off_ == 0); }
	/// true when the value is c * pi^k for a single k
	bool is_monomial() const { return c_.size() == 1; }
	int min_power() const { return c_.empty() ? 0 : off_; }
	int max_power() const { return c_.empty() ? 0 : off_ + static_cast<int>(c_.size()) - 1; }

	/// coefficient of pi^k
	Rational coeff(int k) const {
		if (c_.empty() || k < off_ || k > max_power()) return Rational(0);
		return c_[static_cast<size_t>(k - off_)];
	}
	Rational rational_part() const { return coeff(0); }

	PiScalar operator-() const {
		PiScalar r = *this;
		for (auto& c : r.c_) c = -c;
		return r;
	}
	PiScalar operator+(const PiScalar& o) const {
		if (is_zero()) return o;
		if (o.is_zero()) return *this;
		int lo = std::min(off_, o.off_), hi = std::max(max_power(), o.max_power());
		PiScalar r;
		r.off_ = lo;
		r.c_.assign(static_cast<size_t>(hi - lo + 1), Rational(0));
		for (size_t i = 0; i < c_.size(); ++i) r.c_[static_cast<size_t>(off_ - lo) + i] += c_[i];
		for (size_t i = 0; i < o.c_.size(); ++i) r.c_[static_cast<size_t>(o.off_ - lo) + i] += o.c_[i];
		r.normalize();
		return r;
	}
	PiScalar operator-(const PiScalar& o) const { return *this + (-o); }
	PiScalar operator*(const PiScalar& o) const {
		if (is_zero() || o.is_zero()) return PiScalar();
		PiScalar r;
		r.off_ = off_ + o.off_;
		r.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
		for (size_t i = 0; i < c_.size(); ++i)
			for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
		r.normalize();
		return r;
	}
	/// Exact division.  Supported divisors: any nonzero monomial c*pi^k.
	/// (That is all the engine ever divides by; a general quotient would leave
	/// the ring.)
	PiScalar operator/(const PiScalar& o) const {
		if (o.is_zero()) throw std::domain_error("PiScalar: division by zero");
		if (!o.is_monomial())
			throw std::domain_error("PiScalar: division only by monomials c*pi^k, got " + o.str());
		PiScalar r = *this;
		r.off_ -= o.off_;
		for (auto& c : r.c_) c /= o.c_[0];
		r.normalize();
		return r;
	}
	PiScalar& operator+=(const PiScalar& o) { return *this = *this + o; }
	PiScalar& operator-=(const PiScalar& o) { return *this = *this - o; }
	PiScalar& operator*=(const PiScalar& o) { return *this = *this * o; }
	PiScalar& operator/=(const PiScalar& o) { return *this = *this / o; }

	bool operator==(const PiScalar& o) const { return off_ == o.off_ && c_ == o.c_; }
	bool operator!=(const PiScalar& o) const { return !(*this == o); }

	/// x^n for integer n; negative n requires a monomial
	PiScalar pow(int n) const {
		if (n == 0) return PiScalar(1);
		if (n < 0) {
			if (!is_monomial()) throw std::domain_error("PiScalar: negative power of non-monomial");
			return PiScalar(1) / this->pow(-n);
		}
		PiScalar r(1), b = *this;
		for (int k = n; k > 0; k >>= 1) {
			if (k & 1) r *= b;
			if (k > 1) b *= b;
		}
		return r;
	}

	double to_double() const {
		double s = 0;
		for (size_t i = 0; i < c_.size(); ++i)
			s += c_[i].convert_to<double>() * std::pow(M_PI, off_ + static_cast<int>(i));
		return s;
	}

	std::string str() const {
		if (is_zero()) return "0";
		std::ostringstream os;
		bool first = true;
		for (size_t i = 0; i < c_.size(); ++i) {
			const Rational& c = c_[i];
			if (c == 0) continue;
			Rational a = c < 0 ? Rational(-c) : c;
			if (first) {
				if (c < 0) os << "-";
				first = false;
			} else {
				os << (c < 0 ? " - " : " + ");
			}
			int k = off_ + static_cast<int>(i);
			if (k == 0) {
				os << a.str();
			} else {
				if (a != 1) os << a.str() << "*";
				os << "pi";
				if (k != 1) os << "^" << k;
			}
		}
		return os.str();
	}

private:
	void normalize() {
		size_t b = 0, e = c_.size();
		while (b < e && c_[b] == 0) ++b;
		while (e > b && c_[e - 1] == 0) --e;
		if (b == e) {
			c_.clear();
			off_ = 0;
			return;
		}
		if (b > 0 || e < c_.size()) {
			c_ = std::vector<Rational>(c_.begin() + static_cast<long>(b), c_.begin() + static_cast<long>(e));
			off_ += static_cast<int>(b);
		}
	}

	int off_ = 0;               // exponent of pi carried by c_[0]
	std::vector<Rational> c_;   // trimmed at both ends; empty means zero
};

inline PiScalar operator*(const Rational& r, const PiScalar& s) { return PiScalar(r) * s; }
inline PiScalar operator*(long n, const PiScalar& s) { return PiScalar(n) * s; }

}  // namespace dcw
