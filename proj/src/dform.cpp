#include "dcw/dform.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

#include "dcw/mask_sign.hpp"

namespace dcw {
namespace {

void check_dim(const DForm& a, const DForm& b) {
	if (a.dim() != b.dim())
		throw std::invalid_argument("DForm: mixing forms on charts of different dimension");
}

}  // namespace

DForm DForm::scalar(int dim, const Expr& f) { return monomial(dim, 0, f); }

DForm DForm::dx(int dim, int i) {
	if (i < 0 || i >= dim) throw std::invalid_argument("DForm::dx: index out of range");
	return monomial(dim, 1u << i, Expr::rational(1));
}

DForm DForm::monomial(int dim, uint32_t mask, const Expr& f) {
	if (dim < 0 || dim > 32) throw std::invalid_argument("DForm: dimension out of range");
	if (mask >> dim) throw std::invalid_argument("DForm: mask exceeds chart dimension");
	DForm out(dim);
	out.insert(mask, f);
	return out;
}

void DForm::insert(uint32_t mask, const Expr& f) {
	if (f.is_zero()) return;
	auto it = comps_.find(mask);
	if (it == comps_.end()) {
		comps_.emplace(mask, f);
		return;
	}
	it->second = it->second + f;
	if (it->second.is_zero()) comps_.erase(it);
}

Expr DForm::coefficient(uint32_t mask) const {
	auto it = comps_.find(mask);
	return it == comps_.end() ? Expr{} : it->second;
}

DForm DForm::homogeneous_part(int k) const {
	DForm out(dim_);
	for (const auto& [mask, f] : comps_)
		if (std::popcount(mask) == k) out.comps_.emplace(mask, f);
	return out;
}

int DForm::max_degree() const {
	int best = -1;
	for (const auto& [mask, f] : comps_) best = std::max(best, std::popcount(mask));
	return best;
}

DForm& DForm::operator+=(const DForm& o) {
	check_dim(*this, o);
	for (const auto& [mask, f] : o.comps_) insert(mask, f);
	return *this;
}

DForm& DForm::operator-=(const DForm& o) {
	check_dim(*this, o);
	for (const auto& [mask, f] : o.comps_) insert(mask, -f);
	return *this;
}

DForm operator-(const DForm& a) {
	DForm out(a.dim_);
	for (const auto& [mask, f] : a.comps_) out.comps_.emplace(mask, -f);
	return out;
}

DForm operator*(const DForm& a, const DForm& b) {
	check_dim(a, b);
	DForm out(a.dim_);
	for (const auto& [m1, f1] : a.comps_)
		for (const auto& [m2, f2] : b.comps_) {
			if (m1 & m2) continue;
			Expr prod = f1 * f2;
			if (merge_sign(m1, m2) < 0) prod = -prod;
			out.insert(m1 | m2, prod);
		}
	return out;
}

DForm operator*(const Expr& f, const DForm& a) {
	DForm out(a.dim_);
	for (const auto& [mask, g] : a.comps_) out.insert(mask, f * g);
	return out;
}

DForm DForm::d() const {
	DForm out(dim_);
	for (const auto& [mask, f] : comps_)
		for (int i = 0; i < dim_; ++i) {
			if (mask & (1u << i)) continue;
			Expr df = f.derivative(i);
			if (df.is_zero()) continue;
			if (merge_sign(1u << i, mask) < 0) df = -df;
			out.insert(mask | (1u << i), df);
		}
	return out;
}

DForm DForm::contract(std::span<const Expr> field) const {
	if (static_cast<int>(field.size()) != dim_)
		throw std::invalid_argument("DForm::contract: field has wrong number of components");
	DForm out(dim_);
	for (const auto& [mask, f] : comps_)
		for (uint32_t b = mask; b != 0; b &= b - 1) {
			const int i = std::countr_zero(b);
			if (field[static_cast<size_t>(i)].is_zero()) continue;
			Expr term = field[static_cast<size_t>(i)] * f;
			if (popcount_below(mask, i) % 2 != 0) term = -term;
			out.insert(mask & ~(1u << i), term);
		}
	return out;
}

DForm DForm::lie(std::span<const Expr> field) const {
	return contract(field).d() + d().contract(field);
}

DForm DForm::pullback(std::span<const Expr> embedding, int source_dim) const {
	if (static_cast<int>(embedding.size()) != dim_)
		throw std::invalid_argument("DForm::pullback: embedding has wrong number of components");
	std::vector<DForm> dphi;
	dphi.reserve(embedding.size());
	for (const Expr& phi : embedding) {
		DForm one(source_dim);
		for (int j = 0; j < source_dim; ++j) one.insert(1u << j, phi.derivative(j));
		dphi.push_back(std::move(one));
	}
	DForm out(source_dim);
	for (const auto& [mask, f] : comps_) {
		DForm term = DForm::scalar(source_dim, f.substitute(embedding));
		for (uint32_t b = mask; b != 0; b &= b - 1)
			term = term * dphi[static_cast<size_t>(std::countr_zero(b))];
		out += term;
	}
	return out;
}

double DForm::eval(uint32_t mask, std::span<const double> at) const {
	auto it = comps_.find(mask);
	return it == comps_.end() ? 0.0 : it->second.eval(at);
}

bool DForm::same(const DForm& a, const DForm& b) {
	if (a.dim_ != b.dim_) return false;
	for (const auto& [mask, f] : a.comps_)
		if (!Expr::same_tree(f, b.coefficient(mask))) return false;
	for (const auto& [mask, f] : b.comps_)
		if (a.comps_.find(mask) == a.comps_.end() && !f.is_zero()) return false;
	return true;
}

std::string DForm::str(std::span<const std::string> names) const {
	if (comps_.empty()) return "0";
	std::ostringstream os;
	bool first = true;
	for (const auto& [mask, f] : comps_) {
		if (!first) os << " + ";
		first = false;
		os << "(" << f.str(names) << ")";
		for (uint32_t b = mask; b != 0; b &= b - 1) {
			const int i = std::countr_zero(b);
			os << "^d";
			if (i < static_cast<int>(names.size()))
				os << names[static_cast<size_t>(i)];
			else
				os << "x" << i;
		}
	}
	return os.str();
}

}  // namespace dcw
