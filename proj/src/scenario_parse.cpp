#include <cctype>
#include <cstdlib>
#include <string>
#include <vector>

#include "dcw/parser.hpp"
#include "dcw/scenario.hpp"

namespace dcw {

ScenarioParseError::ScenarioParseError(int line_no, const std::string& msg)
	: std::runtime_error("scenario line " + std::to_string(line_no) + ": " + msg), line(line_no) {}

namespace {

std::string_view trim(std::string_view sv) {
	while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.front()))) sv.remove_prefix(1);
	while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.back()))) sv.remove_suffix(1);
	return sv;
}

bool valid_identifier(std::string_view sv) {
	if (sv.empty() || !(std::isalpha(static_cast<unsigned char>(sv[0])) || sv[0] == '_'))
		return false;
	for (char ch : sv)
		if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
	return true;
}

struct Builder {
	Scenario out;
	int line_no = 0;
	bool have_scenario = false, have_group = false;

	enum class Section {
		None,
		Scenario,
		Chart,
		Field,
		Metric,
		Cutoff,
		Indicator,
		Flow,
		Region,
		Fixed,
		Transition
	};
	Section section = Section::None;
	int chart_idx = -1, field_idx = -1, region_idx = -1, fixed_idx = -1, transition_idx = -1;

	[[noreturn]] void fail(const std::string& msg) const { throw ScenarioParseError(line_no, msg); }

	Chart& cur_chart() { return out.charts[chart_idx]; }

	// Split on commas at parenthesis depth zero, so bump(x; a, b) survives.
	std::vector<std::string> split_list(std::string_view text) const {
		std::vector<std::string> parts;
		int depth = 0;
		size_t start = 0;
		for (size_t i = 0; i <= text.size(); ++i) {
			if (i == text.size() || (text[i] == ',' && depth == 0)) {
				std::string_view piece = trim(text.substr(start, i - start));
				if (piece.empty()) fail("empty entry in comma-separated list");
				parts.emplace_back(piece);
				start = i + 1;
			} else if (text[i] == '(') {
				++depth;
			} else if (text[i] == ')') {
				if (--depth < 0) fail("unbalanced ')' in list");
			}
		}
		if (depth != 0) fail("unbalanced '(' in list");
		return parts;
	}

	Expr parse_expr(std::string_view text, const std::vector<std::string>& names) const {
		try {
			return parse_scalar_expr(text, names);
		} catch (const ParseError& e) {
			fail(std::string("in expression '") + std::string(trim(text)) + "': " + e.what());
		}
	}

	std::vector<Expr> parse_expr_list(std::string_view text, const std::vector<std::string>& names,
									  size_t expect) const {
		auto parts = split_list(text);
		if (expect != 0 && parts.size() != expect)
			fail("expected " + std::to_string(expect) + " entries, got " +
				 std::to_string(parts.size()));
		std::vector<Expr> out_list;
		out_list.reserve(parts.size());
		for (const auto& p : parts) out_list.push_back(parse_expr(p, names));
		return out_list;
	}

	PiScalar parse_const(std::string_view text) const {
		Expr e = parse_expr(text, {});
		auto v = e.const_value();
		if (!v) fail("expected a constant, got '" + std::string(trim(text)) + "'");
		return *v;
	}

	Rational parse_rational(std::string_view text) const {
		PiScalar v = parse_const(text);
		if (!v.is_rational())
			fail("expected a rational constant, got '" + std::string(trim(text)) + "'");
		return v.rational_part();
	}

	std::vector<double> parse_const_list(std::string_view text, size_t expect) const {
		auto parts = split_list(text);
		if (expect != 0 && parts.size() != expect)
			fail("expected " + std::to_string(expect) + " entries, got " +
				 std::to_string(parts.size()));
		std::vector<double> vals;
		vals.reserve(parts.size());
		for (const auto& p : parts) vals.push_back(parse_const(p).to_double());
		return vals;
	}

	long parse_int(std::string_view text) const {
		std::string str(trim(text));
		char* end = nullptr;
		long v = std::strtol(str.c_str(), &end, 10);
		if (end == str.c_str() || *end != '\0')
			fail("expected an integer, got '" + str + "'");
		return v;
	}

	int parse_orient(std::string_view text) const {
		long v = parse_int(text);
		if (v != 1 && v != -1) fail("orientation must be +1 or -1");
		return static_cast<int>(v);
	}

	int chart_index(std::string_view name) const {
		for (size_t i = 0; i < out.charts.size(); ++i)
			if (out.charts[i].name == name) return static_cast<int>(i);
		fail("unknown chart '" + std::string(name) + "' (charts must be declared first)");
	}

	void open_section(std::string_view header) {
		std::vector<std::string> parts;
		{
			size_t start = 0;
			for (size_t i = 0; i <= header.size(); ++i)
				if (i == header.size() || header[i] == ':') {
					parts.emplace_back(trim(header.substr(start, i - start)));
					start = i + 1;
				}
		}
		const std::string& kind = parts[0];
		auto want = [&](size_t n, const char* shape) {
			if (parts.size() != n) fail(std::string("section header must look like [") + shape +
										"]");
		};
		if (kind == "scenario") {
			want(1, "scenario");
			if (have_scenario) fail("duplicate [scenario] section");
			have_scenario = true;
			section = Section::Scenario;
			return;
		}
		if (!have_scenario) fail("the [scenario] section must come first");
		if (kind == "chart") {
			want(2, "chart:NAME");
			if (!have_group) fail("the group must be declared before any chart");
			for (const auto& c : out.charts)
				if (c.name == parts[1]) fail("duplicate chart '" + parts[1] + "'");
			Chart c;
			c.name = parts[1];
			c.fields.resize(out.algebra.dim);
			out.charts.push_back(std::move(c));
			chart_idx = static_cast<int>(out.charts.size()) - 1;
			section = Section::Chart;
		} else if (kind == "field") {
			want(3, "field:INDEX:CHART");
			field_idx = static_cast<int>(parse_int(parts[1]));
			if (field_idx < 0 || field_idx >= out.algebra.dim)
				fail("field index " + parts[1] + " outside 0.." +
					 std::to_string(out.algebra.dim - 1));
			chart_idx = chart_index(parts[2]);
			section = Section::Field;
		} else if (kind == "metric" || kind == "cutoff" || kind == "indicator" ||
				   kind == "flow") {
			want(2, (kind + ":CHART").c_str());
			chart_idx = chart_index(parts[1]);
			section = kind == "metric"	  ? Section::Metric
					  : kind == "cutoff"	  ? Section::Cutoff
					  : kind == "indicator" ? Section::Indicator
											  : Section::Flow;
		} else if (kind == "region") {
			want(2, "region:NAME");
			for (const auto& r : out.regions)
				if (r.name == parts[1]) fail("duplicate region '" + parts[1] + "'");
			out.regions.push_back(Region{parts[1], {}});
			region_idx = static_cast<int>(out.regions.size()) - 1;
			section = Section::Region;
		} else if (kind == "fixed") {
			want(2, "fixed:NAME");
			for (const auto& f : out.fixed)
				if (f.name == parts[1]) fail("duplicate fixed component '" + parts[1] + "'");
			FixedComponent fc;
			fc.name = parts[1];
			out.fixed.push_back(std::move(fc));
			fixed_idx = static_cast<int>(out.fixed.size()) - 1;
			section = Section::Fixed;
		} else if (kind == "transition") {
			want(3, "transition:FROM:TO");
			Transition t;
			t.from = parts[1];
			t.to = parts[2];
			chart_index(t.from);
			chart_index(t.to);
			out.transitions.push_back(std::move(t));
			transition_idx = static_cast<int>(out.transitions.size()) - 1;
			section = Section::Transition;
		} else {
			fail("unknown section kind '" + kind + "'");
		}
	}

	std::vector<std::string> flow_names(const Chart& c) const {
		std::vector<std::string> names = c.coords;
		names.push_back("t");
		return names;
	}

	void handle_key(std::string_view key, std::string_view value) {
		switch (section) {
			case Section::None:
				fail("key/value line outside any section");
			case Section::Scenario:
				if (key == "name") {
					out.name = std::string(value);
				} else if (key == "group") {
					try {
						out.algebra = build_lie_algebra(value);
					} catch (const std::invalid_argument& e) {
						fail(e.what());
					}
					have_group = true;
				} else {
					out.extras[std::string(key)] = std::string(value);
				}
				break;
			case Section::Chart: {
				Chart& c = cur_chart();
				if (key == "coords") {
					for (const auto& id : split_list(value)) {
						if (!valid_identifier(id)) fail("bad coordinate name '" + id + "'");
						c.coords.push_back(id);
					}
				} else if (key == "sample_lo") {
					c.sample_lo = parse_const_list(value, c.coords.size());
				} else if (key == "sample_hi") {
					c.sample_hi = parse_const_list(value, c.coords.size());
				} else if (key == "orient") {
					c.orient = parse_orient(value);
				} else {
					fail("unknown key '" + std::string(key) + "' in [chart] section");
				}
				break;
			}
			case Section::Field:
				if (key != "value") fail("the [field] section only takes 'value ='");
				cur_chart().fields[field_idx] =
					parse_expr_list(value, cur_chart().coords, cur_chart().coords.size());
				break;
			case Section::Metric: {
				Chart& c = cur_chart();
				if (key.substr(0, 3) != "row")
					fail("metric keys must be row0, row1, ... in order");
				long idx = parse_int(key.substr(3));
				if (idx != static_cast<long>(c.metric.size()))
					fail("metric rows must appear in order row0, row1, ...");
				c.metric.push_back(parse_expr_list(value, c.coords, c.coords.size()));
				break;
			}
			case Section::Cutoff:
				if (key == "value") {
					cur_chart().cutoff = parse_expr(value, cur_chart().coords);
					cur_chart().has_cutoff = true;
				} else if (key == "alt") {
					cur_chart().cutoff_alt = parse_expr(value, cur_chart().coords);
					cur_chart().has_cutoff_alt = true;
				} else {
					fail("the [cutoff] section takes 'value =' and optional 'alt ='");
				}
				break;
			case Section::Indicator:
				if (key != "value") fail("the [indicator] section only takes 'value ='");
				cur_chart().indicator = parse_expr(value, cur_chart().coords);
				cur_chart().has_indicator = true;
				break;
			case Section::Flow:
				if (key != "value") fail("the [flow] section only takes 'value ='");
				cur_chart().flow =
					parse_expr_list(value, flow_names(cur_chart()), cur_chart().coords.size());
				cur_chart().has_flow = true;
				break;
			case Section::Region: {
				if (key != "piece") fail("the [region] section only takes 'piece =' lines");
				// CHART | params | lo1, hi1, ... | map | orient
				std::vector<std::string> parts;
				size_t start = 0;
				std::string v(value);
				for (size_t i = 0; i <= v.size(); ++i)
					if (i == v.size() || v[i] == '|') {
						parts.emplace_back(trim(std::string_view(v).substr(start, i - start)));
						start = i + 1;
					}
				if (parts.size() != 5)
					fail("piece must be 'CHART | params | bounds | map | orient'");
				RegionPiece piece;
				piece.chart = parts[0];
				int ci = chart_index(piece.chart);
				for (const auto& id : split_list(parts[1])) {
					if (!valid_identifier(id)) fail("bad parameter name '" + id + "'");
					piece.params.push_back(id);
				}
				auto bounds = parse_const_list(parts[2], 2 * piece.params.size());
				for (size_t i = 0; i < piece.params.size(); ++i) {
					piece.lo.push_back(bounds[2 * i]);
					piece.hi.push_back(bounds[2 * i + 1]);
				}
				piece.map =
					parse_expr_list(parts[3], piece.params, out.charts[ci].coords.size());
				piece.orient = parse_orient(parts[4]);
				out.regions[region_idx].pieces.push_back(std::move(piece));
				break;
			}
			case Section::Fixed: {
				FixedComponent& fc = out.fixed[fixed_idx];
				if (key == "chart") {
					fc.chart = std::string(value);
					chart_index(fc.chart);
				} else if (key == "point") {
					for (const auto& p : split_list(value)) fc.point.push_back(parse_rational(p));
				} else if (key == "weights") {
					for (const auto& w : split_list(value))
						fc.weights.push_back(static_cast<int>(parse_int(w)));
				} else if (key == "mu") {
					fc.mu = parse_rational(value);
				} else if (key == "label") {
					if (value != "plus" && value != "minus")
						fail("label must be 'plus' or 'minus'");
					fc.label = std::string(value);
				} else {
					fail("unknown key '" + std::string(key) + "' in [fixed] section");
				}
				break;
			}
			case Section::Transition: {
				Transition& t = out.transitions[transition_idx];
				const Chart& from = out.charts[chart_index(t.from)];
				const Chart& to = out.charts[chart_index(t.to)];
				if (key == "map") {
					t.map = parse_expr_list(value, from.coords, to.coords.size());
				} else if (key == "sample_lo") {
					t.sample_lo = parse_const_list(value, from.coords.size());
				} else if (key == "sample_hi") {
					t.sample_hi = parse_const_list(value, from.coords.size());
				} else {
					fail("unknown key '" + std::string(key) + "' in [transition] section");
				}
				break;
			}
		}
	}

	void feed(std::string_view line) {
		++line_no;
		if (size_t hash = line.find('#'); hash != std::string_view::npos)
			line = line.substr(0, hash);
		line = trim(line);
		if (line.empty()) return;
		if (line.front() == '[') {
			if (line.back() != ']') fail("section header is missing the closing ']'");
			open_section(line.substr(1, line.size() - 2));
			return;
		}
		size_t eq = line.find('=');
		if (eq == std::string_view::npos)
			fail("expected 'key = value' or a [section] header");
		std::string_view key = trim(line.substr(0, eq));
		std::string_view value = trim(line.substr(eq + 1));
		if (key.empty()) fail("empty key before '='");
		if (value.empty()) fail("empty value for key '" + std::string(key) + "'");
		handle_key(key, value);
	}

	Scenario finish(std::string_view source) {
		line_no = 0;  // errors below concern the file as a whole
		if (!have_scenario) fail("missing [scenario] section");
		if (out.name.empty()) fail("the [scenario] section must set 'name'");
		if (!have_group) fail("the [scenario] section must set 'group'");
		out.source = std::string(source);
		return std::move(out);
	}
};

}  // namespace

Scenario parse_scenario(std::string_view text) {
	Builder b;
	size_t start = 0;
	for (size_t i = 0; i <= text.size(); ++i)
		if (i == text.size() || text[i] == '\n') {
			b.feed(text.substr(start, i - start));
			start = i + 1;
		}
	return b.finish(text);
}

}  // namespace dcw
