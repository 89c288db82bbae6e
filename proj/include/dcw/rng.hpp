#pragma once

#include <cstdint>
#include <random>

#include "dcw/pi_scalar.hpp"

namespace dcw {

/// Deterministic pseudo-random source.  mt19937_64's output sequence is fixed
/// by the standard; the mappings below avoid std::uniform_*_distribution so
/// that sample points and random algebra elements are reproducible across
/// standard library implementations (byte-stable reports for a fixed seed).
class Rng {
public:
	explicit Rng(uint64_t seed) : eng_(seed) {}

	uint64_t bits() { return eng_(); }

	/// uniform in [0,1)
	double unit() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

	/// uniform in [lo,hi)
	double real(double lo, double hi) { return lo + (hi - lo) * unit(); }

	/// uniform integer in [lo,hi] inclusive
	long integer(long lo, long hi) {
		return lo + static_cast<long>(bits() % static_cast<uint64_t>(hi - lo + 1));
	}

	/// small exact rational, nonzero_num forcing a nonzero numerator
	Rational rational(long max_num = 9, long max_den = 9, bool nonzero = false) {
		long num = integer(-max_num, max_num);
		if (nonzero && num == 0) num = 1;
		long den = integer(1, max_den);
		return Rational(num, den);
	}

private:
	std::mt19937_64 eng_;
};

}  // namespace dcw
