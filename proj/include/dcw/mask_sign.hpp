#pragma once

#include <bit>
#include <cstdint>

namespace dcw {

/// Number of set bits of mask strictly below position a.
inline int popcount_below(uint32_t mask, int a) {
	return std::popcount(mask & ((1u << a) - 1u));
}

/// Sign of merging two ascending odd monomials indexed by bit masks:
/// (-1)^{#{(i,j) in S1 x S2 : i > j}}.  Zero overlap assumed.
inline int merge_sign(uint32_t m1, uint32_t m2) {
	int inv = 0;
	for (uint32_t b = m2; b != 0; b &= b - 1) {
		const int j = std::countr_zero(b);
		inv += std::popcount(m1 >> (j + 1));
	}
	return (inv % 2 == 0) ? 1 : -1;
}

}  // namespace dcw
