#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "dcw/scenario.hpp"

namespace dcw {

namespace {

/// Unit disk with the weight-m circle rotation about the origin.
std::string disk_text(int m) {
	const int w = 2 * m;
	std::ostringstream os;
	os << "# Unit disk with the weight-" << m << " circle rotation about the origin.\n"
	   << "[scenario]\n"
	   << "name = disk_" << m << "\n"
	   << "group = U1\n"
	   << "note = circle localization: both sides equal 1/" << m << " for the trivial class\n"
	   << "\n"
	   << "[chart:D]\n"
	   << "coords = x, y\n"
	   << "sample_lo = -7/10, -7/10\n"
	   << "sample_hi = 7/10, 7/10\n"
	   << "\n"
	   << "[field:0:D]\n"
	   << "value = -" << w << "*pi*y, " << w << "*pi*x\n"
	   << "\n"
	   << "[metric:D]\n"
	   << "row0 = 1, 0\n"
	   << "row1 = 0, 1\n"
	   << "\n"
	   << "[indicator:D]\n"
	   << "value = x^2 + y^2\n"
	   << "\n"
	   << "[cutoff:D]\n"
	   << "value = bump(x^2 + y^2; 9/100, 49/100)\n"
	   << "alt = bump(x^2 + y^2; 4/25, 16/25)\n"
	   << "\n"
	   << "[flow:D]\n"
	   << "value = x*cos(" << w << "*pi*t) - y*sin(" << w << "*pi*t), x*sin(" << w
	   << "*pi*t) + y*cos(" << w << "*pi*t)\n"
	   << "\n"
	   << "[region:boundary]\n"
	   << "piece = D | s | 0, 1 | cos(2*pi*s), sin(2*pi*s) | 1\n"
	   << "\n"
	   << "[region:interior]\n"
	   << "piece = D | r, s | 0, 1, 0, 1 | r*cos(2*pi*s), r*sin(2*pi*s) | 1\n"
	   << "\n"
	   << "[fixed:origin]\n"
	   << "chart = D\n"
	   << "point = 0, 0\n"
	   << "weights = " << m << "\n"
	   << "mu = 0\n";
	return os.str();
}

/// Round sphere scenarios share their stereographic geometry; only the field
/// speed differs between the rank-one groups (the su(2) generators turn the
/// sphere twice as fast as the so(3) ones).  Fields use the bracket
/// homomorphism normalization, so the distinguished circle turns the chart
/// coordinates negatively at the north pole; the matching area form is the
/// inward round form and the circle moment is a positive multiple of x1.
std::string sphere_text(const char* name, const char* group, int speed) {
	const int w = 2 * speed;  // flow angle coefficient: 2*pi*speed*t
	const std::string sp = speed == 1 ? "pi" : std::to_string(speed) + "*pi";
	std::ostringstream os;
	os << "# Round sphere as the rank-one coadjoint orbit, poles on the x1 axis.\n"
	   << "[scenario]\n"
	   << "name = " << name << "\n"
	   << "group = " << group << "\n"
	   << "\n"
	   << "[chart:N]\n"
	   << "coords = a, b\n"
	   << "sample_lo = -9/10, -9/10\n"
	   << "sample_hi = 9/10, 9/10\n"
	   << "orient = -1\n"
	   << "\n"
	   << "[chart:S]\n"
	   << "coords = c, d\n"
	   << "sample_lo = -9/10, -9/10\n"
	   << "sample_hi = 9/10, 9/10\n"
	   << "orient = -1\n"
	   << "\n"
	   << "[field:0:N]\n"
	   << "value = " << w << "*pi*b, -" << w << "*pi*a\n"
	   << "\n"
	   << "[field:1:N]\n"
	   << "value = " << w << "*pi*a*b, " << sp << "*(1 - a^2 + b^2)\n"
	   << "\n"
	   << "[field:2:N]\n"
	   << "value = -" << sp << "*(1 + a^2 - b^2), -" << w << "*pi*a*b\n"
	   << "\n"
	   << "[field:0:S]\n"
	   << "value = -" << w << "*pi*d, " << w << "*pi*c\n"
	   << "\n"
	   << "[field:1:S]\n"
	   << "value = " << w << "*pi*c*d, " << sp << "*(1 - c^2 + d^2)\n"
	   << "\n"
	   << "[field:2:S]\n"
	   << "value = " << sp << "*(1 + c^2 - d^2), " << w << "*pi*c*d\n"
	   << "\n"
	   << "[metric:N]\n"
	   << "row0 = 4/(1 + a^2 + b^2)^2, 0\n"
	   << "row1 = 0, 4/(1 + a^2 + b^2)^2\n"
	   << "\n"
	   << "[metric:S]\n"
	   << "row0 = 4/(1 + c^2 + d^2)^2, 0\n"
	   << "row1 = 0, 4/(1 + c^2 + d^2)^2\n"
	   << "\n"
	   << "[flow:N]\n"
	   << "value = a*cos(" << w << "*pi*t) + b*sin(" << w << "*pi*t), -a*sin(" << w
	   << "*pi*t) + b*cos(" << w << "*pi*t)\n"
	   << "\n"
	   << "[flow:S]\n"
	   << "value = c*cos(" << w << "*pi*t) - d*sin(" << w << "*pi*t), c*sin(" << w
	   << "*pi*t) + d*cos(" << w << "*pi*t)\n"
	   << "\n"
	   << "[transition:N:S]\n"
	   << "map = a/(a^2 + b^2), -b/(a^2 + b^2)\n"
	   << "sample_lo = 1/5, -4/5\n"
	   << "sample_hi = 1, 4/5\n"
	   << "\n"
	   << "[region:interior]\n"
	   << "piece = N | r, s | 0, 1, 0, 1 | r*cos(2*pi*s), r*sin(2*pi*s) | -1\n"
	   << "piece = S | r, s | 0, 1, 0, 1 | r*cos(2*pi*s), r*sin(2*pi*s) | -1\n"
	   << "\n"
	   << "[fixed:n_pole]\n"
	   << "chart = N\n"
	   << "point = 0, 0\n"
	   << "weights = -" << speed << "\n"
	   << "mu = 1\n"
	   << "label = plus\n"
	   << "\n"
	   << "[fixed:s_pole]\n"
	   << "chart = S\n"
	   << "point = 0, 0\n"
	   << "weights = " << speed << "\n"
	   << "mu = -1\n"
	   << "label = minus\n";
	return os.str();
}

const char* kDiskSphere = R"(# Product of the unit disk and the round sphere, diagonal circle action.
[scenario]
name = disk_sphere
group = U1
note = circle localization: both sides equal 4*pi for the closed extension of the sphere area form

[chart:DN]
coords = x, y, a, b
sample_lo = -7/10, -7/10, -9/10, -9/10
sample_hi = 7/10, 7/10, 9/10, 9/10

[chart:DS]
coords = x, y, c, d
sample_lo = -7/10, -7/10, -9/10, -9/10
sample_hi = 7/10, 7/10, 9/10, 9/10

[field:0:DN]
value = -2*pi*y, 2*pi*x, -2*pi*b, 2*pi*a

[field:0:DS]
value = -2*pi*y, 2*pi*x, 2*pi*d, -2*pi*c

[metric:DN]
row0 = 1, 0, 0, 0
row1 = 0, 1, 0, 0
row2 = 0, 0, 4/(1 + a^2 + b^2)^2, 0
row3 = 0, 0, 0, 4/(1 + a^2 + b^2)^2

[metric:DS]
row0 = 1, 0, 0, 0
row1 = 0, 1, 0, 0
row2 = 0, 0, 4/(1 + c^2 + d^2)^2, 0
row3 = 0, 0, 0, 4/(1 + c^2 + d^2)^2

[indicator:DN]
value = x^2 + y^2 + 4*(a^2 + b^2)/(1 + a^2 + b^2)^2

[indicator:DS]
value = x^2 + y^2 + 4*(c^2 + d^2)/(1 + c^2 + d^2)^2

[cutoff:DN]
value = bump(x^2 + y^2 + 4*(a^2 + b^2)/(1 + a^2 + b^2)^2; 9/100, 49/100)
alt = bump(x^2 + y^2 + 4*(a^2 + b^2)/(1 + a^2 + b^2)^2; 4/25, 16/25)

[cutoff:DS]
value = bump(x^2 + y^2 + 4*(c^2 + d^2)/(1 + c^2 + d^2)^2; 9/100, 49/100)
alt = bump(x^2 + y^2 + 4*(c^2 + d^2)/(1 + c^2 + d^2)^2; 4/25, 16/25)

[flow:DN]
value = x*cos(2*pi*t) - y*sin(2*pi*t), x*sin(2*pi*t) + y*cos(2*pi*t), a*cos(2*pi*t) - b*sin(2*pi*t), a*sin(2*pi*t) + b*cos(2*pi*t)

[flow:DS]
value = x*cos(2*pi*t) - y*sin(2*pi*t), x*sin(2*pi*t) + y*cos(2*pi*t), c*cos(2*pi*t) + d*sin(2*pi*t), -c*sin(2*pi*t) + d*cos(2*pi*t)

[transition:DN:DS]
map = x, y, a/(a^2 + b^2), -b/(a^2 + b^2)
sample_lo = -1/2, -1/2, 1/5, -4/5
sample_hi = 1/2, 1/2, 1, 4/5

[region:boundary]
piece = DN | s, r, u | 0, 1, 0, 1, 0, 1 | cos(2*pi*s), sin(2*pi*s), r*cos(2*pi*u), r*sin(2*pi*u) | 1
piece = DS | s, r, u | 0, 1, 0, 1, 0, 1 | cos(2*pi*s), sin(2*pi*s), r*cos(2*pi*u), r*sin(2*pi*u) | 1

[region:interior]
piece = DN | p, q, r, u | 0, 1, 0, 1, 0, 1, 0, 1 | p*cos(2*pi*q), p*sin(2*pi*q), r*cos(2*pi*u), r*sin(2*pi*u) | 1
piece = DS | p, q, r, u | 0, 1, 0, 1, 0, 1, 0, 1 | p*cos(2*pi*q), p*sin(2*pi*q), r*cos(2*pi*u), r*sin(2*pi*u) | 1

[fixed:pole_n]
chart = DN
point = 0, 0, 0, 0
weights = 1, 1

[fixed:pole_s]
chart = DS
point = 0, 0, 0, 0
weights = 1, -1
)";

const char* kQuatBall = R"(# Unit ball of the quaternions with the right-multiplication action.
[scenario]
name = quat_ball
group = SU2
note = boundary localization: both sides equal 1 for the quadratic Casimir class

[chart:Q]
coords = x0, x1, x2, x3
sample_lo = -9/20, -9/20, -9/20, -9/20
sample_hi = 9/20, 9/20, 9/20, 9/20

[field:0:Q]
value = -2*pi*x1, 2*pi*x0, 2*pi*x3, -2*pi*x2

[field:1:Q]
value = -2*pi*x2, -2*pi*x3, 2*pi*x0, 2*pi*x1

[field:2:Q]
value = -2*pi*x3, 2*pi*x2, -2*pi*x1, 2*pi*x0

[metric:Q]
row0 = 1, 0, 0, 0
row1 = 0, 1, 0, 0
row2 = 0, 0, 1, 0
row3 = 0, 0, 0, 1

[indicator:Q]
value = x0^2 + x1^2 + x2^2 + x3^2

[cutoff:Q]
value = bump(x0^2 + x1^2 + x2^2 + x3^2; 9/100, 49/100)
alt = bump(x0^2 + x1^2 + x2^2 + x3^2; 4/25, 16/25)

[flow:Q]
value = x0*cos(2*pi*t) - x1*sin(2*pi*t), x0*sin(2*pi*t) + x1*cos(2*pi*t), x2*cos(2*pi*t) + x3*sin(2*pi*t), -x2*sin(2*pi*t) + x3*cos(2*pi*t)

[region:boundary]
piece = Q | p1, p2, p3 | 0, 1, 0, 1, 0, 1 | cos(pi*p1), sin(pi*p1)*cos(pi*p2), sin(pi*p1)*sin(pi*p2)*cos(2*pi*p3), sin(pi*p1)*sin(pi*p2)*sin(2*pi*p3) | 1

[region:interior]
piece = Q | r, p1, p2, p3 | 0, 1, 0, 1, 0, 1, 0, 1 | r*cos(pi*p1), r*sin(pi*p1)*cos(pi*p2), r*sin(pi*p1)*sin(pi*p2)*cos(2*pi*p3), r*sin(pi*p1)*sin(pi*p2)*sin(2*pi*p3) | 1

[fixed:origin]
chart = Q
point = 0, 0, 0, 0
weights = 1, -1
mu = 0
)";

/// Torus fixed-point data for the product of three spheres with radii
/// (r1, r2, r3): eight pole triples, moment values s1 r1 + s2 r2 + s3 r3,
/// linearization weights (s1, s2, s3).
std::string triangle_text(const char* name, const char* r1, const char* r2, const char* r3) {
	std::ostringstream os;
	os << "# Product of three spheres with the diagonal rotation action: abstract\n"
	   << "# torus fixed-point data for the exact localization checks.\n"
	   << "[scenario]\n"
	   << "name = " << name << "\n"
	   << "group = SO3\n"
	   << "radii = " << r1 << ", " << r2 << ", " << r3 << "\n"
	   << "oracle_lhs = 1\n"
	   << "note = reduced space is a point; the constant class c integrates to c\n";
	const char* radii[3] = {r1, r2, r3};
	for (int mask = 7; mask >= 0; --mask) {
		int sgn[3] = {(mask & 4) ? 1 : -1, (mask & 2) ? 1 : -1, (mask & 1) ? 1 : -1};
		std::string tag;
		for (int i = 0; i < 3; ++i) tag += (sgn[i] > 0 ? 'p' : 'm');
		os << "\n[fixed:" << tag << "]\n"
		   << "weights = " << sgn[0] << ", " << sgn[1] << ", " << sgn[2] << "\n"
		   << "mu = ";
		for (int i = 0; i < 3; ++i)
			os << (i ? " " : "") << (sgn[i] > 0 ? (i ? "+ " : "") : "- ") << "(" << radii[i]
			   << ")";
		os << "\n";
		// The label records the sign of mu; all catalog radii keep mu nonzero.
		double val = 0;
		for (int i = 0; i < 3; ++i) {
			std::string sr(radii[i]);
			size_t slash = sr.find('/');
			double x = slash == std::string::npos
						   ? std::stod(sr)
						   : std::stod(sr.substr(0, slash)) / std::stod(sr.substr(slash + 1));
			val += sgn[i] * x;
		}
		os << "label = " << (val > 0 ? "plus" : "minus") << "\n";
	}
	return os.str();
}

const std::vector<std::pair<std::string, std::string>>& catalog() {
	static const std::vector<std::pair<std::string, std::string>> entries = [] {
		std::vector<std::pair<std::string, std::string>> v;
		v.emplace_back("disk_1", disk_text(1));
		v.emplace_back("disk_2", disk_text(2));
		v.emplace_back("disk_3", disk_text(3));
		v.emplace_back("disk_sphere", kDiskSphere);
		v.emplace_back("sphere_so3", sphere_text("sphere_so3", "SO3", 1));
		v.emplace_back("sphere_su2", sphere_text("sphere_su2", "SU2", 2));
		v.emplace_back("quat_ball", kQuatBall);
		v.emplace_back("triangle_fp", triangle_text("triangle_fp", "1", "1", "1"));
		v.emplace_back("triangle_fp_scalene",
					   triangle_text("triangle_fp_scalene", "2", "3/2", "1"));
		return v;
	}();
	return entries;
}

}  // namespace

std::vector<std::string> catalog_names() {
	std::vector<std::string> names;
	for (const auto& [name, text] : catalog()) names.push_back(name);
	return names;
}

const std::string& catalog_text(std::string_view name) {
	for (const auto& [n, text] : catalog())
		if (n == name) return text;
	throw std::invalid_argument("no catalog scenario named '" + std::string(name) + "'");
}

Scenario load_scenario(std::string_view name) { return parse_scenario(catalog_text(name)); }

}  // namespace dcw
