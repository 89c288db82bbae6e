#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dcw/liealg.hpp"
#include "dcw/rng.hpp"

namespace dcw {

/// Element of the Weil algebra W(g) = Lambda(g*) (x) S(g*) of a fixed
/// algebra: an exact linear combination of monomials
///     theta^{a_1} ^ ... ^ theta^{a_k} * (Theta^1)^{e_1} ... (Theta^m)^{e_m}
/// with theta^a of degree 1, Theta^a of degree 2 and PiScalar coefficients.
/// The odd part is stored as a bitmask over the generators (ascending order
/// is canonical), the even part as an exponent vector.
///
/// The pretty printer writes theta as t and Theta as T, wedges between odd
/// generators as ^, e.g. "-4*pi*t2^t3 + T1"; symmetric powers print as T1^2.
class WeilElement {
public:
	struct Key {
		uint32_t mask = 0;          // odd generators present (bit a = theta^{a+1})
		std::vector<int> sym;       // even exponents, always of size dim
		auto operator<=>(const Key&) const = default;
	};
	using Terms = std::map<Key, PiScalar>;

	WeilElement() = default;
	explicit WeilElement(const LieAlgebraSpec* alg) : alg_(alg) {}

	static WeilElement zero(const LieAlgebraSpec* alg) { return WeilElement(alg); }
	static WeilElement constant(const LieAlgebraSpec* alg, const PiScalar& c);
	/// generator theta^a (0-based a)
	static WeilElement theta(const LieAlgebraSpec* alg, int a);
	/// generator Theta^a (0-based a)
	static WeilElement big_theta(const LieAlgebraSpec* alg, int a);
	/// monomial with explicit key and coefficient
	static WeilElement monomial(const LieAlgebraSpec* alg, uint32_t mask, std::vector<int> sym,
	                            const PiScalar& c);

	const LieAlgebraSpec* algebra() const { return alg_; }
	const Terms& terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }

	WeilElement operator+(const WeilElement& o) const;
	WeilElement operator-(const WeilElement& o) const;
	WeilElement operator-() const;
	WeilElement operator*(const WeilElement& o) const;  // graded product
	WeilElement operator*(const PiScalar& c) const;
	WeilElement pow(int n) const;

	bool operator==(const WeilElement& o) const { return terms_ == o.terms_; }

	/// total degree of a key: #odd + 2 * sum(even)
	static int key_degree(const Key& k);
	bool is_homogeneous(int* degree_out = nullptr) const;
	WeilElement homogeneous_part(int degree) const;
	/// true when no odd generators appear (element of S(g*))
	bool is_symmetric() const;

	std::string str() const;

private:
	void add_term(const Key& k, const PiScalar& c);

	const LieAlgebraSpec* alg_ = nullptr;
	Terms terms_;
};

/// Weil differential: d theta^a = -1/2 f^a_{bc} theta^b theta^c + Theta^a,
/// d Theta^a = -f^a_{bc} theta^b Theta^c, extended as an odd derivation.
WeilElement weil_d(const WeilElement& x);

/// Contraction i_a: i_a theta^b = delta_a^b, i_a Theta^b = 0 (odd derivation).
WeilElement weil_contract(int a, const WeilElement& x);

/// Lie derivative L_a theta^b = -f^b_{ac} theta^c, L_a Theta^b = -f^b_{ac} Theta^c
/// (even derivation).  Satisfies L_a = d i_a + i_a d.
WeilElement weil_lie(int a, const WeilElement& x);

/// Random element: up to max_terms monomials with small rational (optionally
/// pi-weighted) coefficients.  Deterministic for a fixed Rng state.
WeilElement random_weil_element(const LieAlgebraSpec* alg, Rng& rng, int max_terms = 5,
                                int max_sym_total = 2);
/// Random homogeneous element of the given total degree (zero if the graded
/// piece is trivial).
WeilElement random_weil_homogeneous(const LieAlgebraSpec* alg, Rng& rng, int degree,
                                    int max_terms = 5);

/// All monomial keys of S^q (no odd part) respectively of the full degree-q
/// graded piece of W(g).
std::vector<WeilElement::Key> symmetric_keys(const LieAlgebraSpec* alg, int q);
std::vector<WeilElement::Key> graded_keys(const LieAlgebraSpec* alg, int q);

/// Exact basis of (S^q(g*))^G: joint kernel of all L_a on symmetric degree q.
std::vector<WeilElement> invariant_polynomials(const LieAlgebraSpec* alg, int q);

/// Exact basis of the basic subcomplex in total degree q: joint kernel of all
/// i_a and L_a.  (Equals the invariant polynomials in even degree, 0 in odd.)
std::vector<WeilElement> basic_basis(const LieAlgebraSpec* alg, int q);

/// Fully symmetric coefficient a_{i_1...i_q} of a symmetric element
/// (stored coefficient divided by the multinomial count).  idx is 0-based,
/// unordered.  Used by the symmetrization identities in the test suite.
PiScalar symmetric_coefficient(const WeilElement& x, const std::vector<int>& idx);

}  // namespace dcw
