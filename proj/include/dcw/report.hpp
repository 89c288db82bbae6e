#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace dcw {

/// One verified identity or numeric comparison.  Exact checks carry a zero
/// tolerance and a residual that is either exactly 0 or 1; numeric checks
/// carry the max-abs residual (or an lhs/rhs pair) and the tolerance they
/// were held to.
struct CheckResult {
	std::string id;         // stable machine identifier, e.g. "weil.d_squared"
	std::string statement;  // human-readable mathematical statement
	double residual = 0;
	double tolerance = 0;
	bool exact = false;
	bool pass = false;
	std::optional<double> lhs, rhs;
	double seconds = 0;
};

inline CheckResult check_residual(std::string id, std::string statement, double residual,
								  double tolerance) {
	CheckResult r;
	r.id = std::move(id);
	r.statement = std::move(statement);
	r.residual = residual;
	r.tolerance = tolerance;
	r.pass = std::isfinite(residual) && residual <= tolerance;
	return r;
}

inline CheckResult check_pair(std::string id, std::string statement, double lhs, double rhs,
							  double tolerance) {
	CheckResult r = check_residual(std::move(id), std::move(statement), std::fabs(lhs - rhs),
								   tolerance);
	r.lhs = lhs;
	r.rhs = rhs;
	return r;
}

inline CheckResult check_exact(std::string id, std::string statement, bool ok) {
	CheckResult r;
	r.id = std::move(id);
	r.statement = std::move(statement);
	r.residual = ok ? 0.0 : 1.0;
	r.exact = true;
	r.pass = ok;
	return r;
}

struct Report {
	std::vector<CheckResult> checks;

	void add(CheckResult c) { checks.push_back(std::move(c)); }
	void merge(const Report& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }
	bool all_pass() const {
		for (const auto& c : checks)
			if (!c.pass) return false;
		return true;
	}
	int failures() const {
		int n = 0;
		for (const auto& c : checks)
			if (!c.pass) ++n;
		return n;
	}
};

}  // namespace dcw
