#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dcw/dform.hpp"
#include "dcw/expr.hpp"
#include "dcw/liealg.hpp"
#include "dcw/quadrature.hpp"
#include "dcw/report.hpp"
#include "dcw/rng.hpp"

namespace dcw {

/// One coordinate chart of a group manifold scenario.  Vector fields realize
/// the Lie algebra generators with [V_a, V_b] = f^c_{ab} V_c; the flow gives
/// the period-one circle generated by V_0 in closed form; the cutoff is the
/// boundary collar function (1 near the boundary, 0 near the fixed set) and
/// the indicator is a nonnegative function vanishing exactly on the fixed
/// set.  All of these are optional per chart except coords and the fields.
struct Chart {
	std::string name;
	std::vector<std::string> coords;
	std::vector<double> sample_lo, sample_hi;   // box for random test points
	std::vector<std::vector<Expr>> fields;      // [generator][coordinate]
	std::vector<std::vector<Expr>> metric;      // rows of an invariant metric
	Expr cutoff, cutoff_alt, indicator;
	bool has_cutoff = false, has_cutoff_alt = false, has_indicator = false;
	std::vector<Expr> flow;                     // coords + time (index dim())
	bool has_flow = false;
	int orient = 1;                             // chart orientation vs coordinate order

	int dim() const { return static_cast<int>(coords.size()); }
};

/// One parametrized patch of an integration region: a smooth map from a
/// coordinate box into a chart, with an orientation sign relative to the
/// ascending parameter order.
struct RegionPiece {
	std::string chart;
	std::vector<std::string> params;
	std::vector<double> lo, hi;
	std::vector<Expr> map;  // chart coordinates as expressions in the params
	int orient = 1;

	int dim() const { return static_cast<int>(params.size()); }
};

struct Region {
	std::string name;
	std::vector<RegionPiece> pieces;

	int dim() const { return pieces.empty() ? 0 : pieces.front().dim(); }
};

/// A connected component of the fixed-point set of the distinguished circle
/// (the flow of V_0).  Catalog components are isolated points; `chart` may be
/// empty for abstract components carried only by their localization data.
/// Weights describe the linearized circle action on consecutive coordinate
/// pairs in chart order; `mu` is the moment value of the circle generator and
/// `label` marks the moment sign ("plus"/"minus") where a theorem needs it.
struct FixedComponent {
	std::string name;
	std::string chart;
	std::vector<Rational> point;
	std::vector<int> weights;
	Rational mu{0};
	std::string label;

	std::vector<double> point_d() const;
};

/// Coordinate change between two charts on their overlap: `map` expresses the
/// `to` coordinates in the `from` coordinates; the sample box selects overlap
/// points away from the singular locus of the map.
struct Transition {
	std::string from, to;
	std::vector<Expr> map;
	std::vector<double> sample_lo, sample_hi;
};

struct Scenario {
	std::string name;
	LieAlgebraSpec algebra;
	std::vector<Chart> charts;
	std::vector<Transition> transitions;
	std::vector<Region> regions;
	std::vector<FixedComponent> fixed;
	std::map<std::string, std::string> extras;  // free-form key/value notes
	std::string source;                         // original scenario text

	const Chart* chart(std::string_view name) const;
	const Chart& chart_or_throw(std::string_view name) const;
	const Region* region(std::string_view name) const;
	const Region& region_or_throw(std::string_view name) const;
	const FixedComponent* fixed_component(std::string_view name) const;
	int dim() const { return charts.empty() ? 0 : charts.front().dim(); }
};

struct ScenarioParseError : std::runtime_error {
	ScenarioParseError(int line, const std::string& msg);
	int line;
};

/// Parse the INI-style scenario text format (see docs/scenario-format.md).
Scenario parse_scenario(std::string_view text);

/// Built-in scenario catalog.
std::vector<std::string> catalog_names();
const std::string& catalog_text(std::string_view name);  // throws std::invalid_argument
Scenario load_scenario(std::string_view name);

/// `count` uniform points in the chart's sample box.
std::vector<std::vector<double>> sample_points(const Chart& chart, int count, Rng& rng);

/// Structural and numerical well-formedness checks: bracket realization,
/// metric invariance, boundary Gram invertibility, flow/field consistency and
/// periodicity, fixed-point vanishing and weight linearization, cutoff and
/// indicator ranges, and chart transition compatibility.
Report validate_scenario(const Scenario& s, uint64_t seed = 0, int samples = 100);

/// Integrate a form over a region.  The callback supplies the form on each
/// chart touched by the region's pieces; the piece-degree homogeneous part is
/// pulled back through each piece map and integrated with a tensor
/// Gauss-Legendre rule of the given order per axis.
IntegralEstimate integrate_region(const Scenario& s, const Region& region,
								  const std::function<DForm(const Chart&)>& form_on_chart,
								  int order);

/// Average a form over the distinguished circle using the chart's closed-form
/// flow.  If the form is already invariant (Lie derivative along V_0 below
/// `invariant_tol` at probe points) it is returned unchanged; otherwise the
/// flow average is refined by doubling the sample count until successive
/// averages agree within `target` at the probe points.
DForm average_over_circle(const Chart& chart, const DForm& omega, double invariant_tol = 1e-12,
						  double target = 1e-9);

}  // namespace dcw
