#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcw/report.hpp"

namespace dcw {

/// Shared knobs for the verification suites.  `quad_order` is the per-axis
/// Gauss-Legendre order for region integrals (individual checks cap it where a
/// lower order already attains the tolerance); `tolerance_scale` multiplies
/// every numeric tolerance and leaves exact checks untouched.
struct SuiteConfig {
	std::uint64_t seed = 0;
	int quad_order = 32;
	double tolerance_scale = 1;
};

/// The suite names accepted by run_suite, in the order "all" executes them.
const std::vector<std::string>& suite_names();

/// Run one verification suite ("all" concatenates every suite in order).
/// Throws std::invalid_argument for unknown names or unusable configs.
Report run_suite(const std::string& name, const SuiteConfig& config = {});

}  // namespace dcw
