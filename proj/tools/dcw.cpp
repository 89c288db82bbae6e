#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcw/scenario.hpp"
#include "dcw/suites.hpp"

namespace {

const char* kUsage =
	"usage: dcw <command> [options]\n"
	"\n"
	"commands:\n"
	"  verify <suite>            run a verification suite:\n"
	"                            weil | cartan | dcw | kalkman | nonabelian | residue | all\n"
	"  scenario list             list the built-in scenario catalog\n"
	"  scenario dump <name>      print the text of a catalog scenario\n"
	"  scenario validate <path>  parse a scenario file and run its well-formedness checks\n"
	"\n"
	"options for verify and scenario validate:\n"
	"  --seed N                  base seed for randomized checks (default 0)\n"
	"  --quad-order K            Gauss-Legendre order per axis (default 32)\n"
	"  --tolerance-scale X       multiply every numeric tolerance by X (default 1)\n"
	"  --format human|machine    report format (default human); machine output is\n"
	"                            tab-separated and byte-stable for fixed options\n"
	"\n"
	"exit status: 0 all checks passed, 1 at least one check failed,\n"
	"             2 usage error or malformed input\n";

struct Options {
	uint64_t seed = 0;
	int quad_order = 32;
	double tolerance_scale = 1;
	std::string format = "human";
	std::vector<std::string> positional;
};

// returns false (after reporting to stderr) on malformed flags
bool parse_options(int argc, char** argv, Options& opt) {
	auto value_of = [&](int& i, const char* flag, std::string& out) {
		if (i + 1 >= argc) {
			std::fprintf(stderr, "dcw: %s needs a value\n", flag);
			return false;
		}
		out = argv[++i];
		return true;
	};
	for (int i = 1; i < argc; ++i) {
		std::string arg = argv[i];
		std::string val;
		try {
			if (arg == "--seed") {
				if (!value_of(i, "--seed", val)) return false;
				opt.seed = std::stoull(val);
			} else if (arg == "--quad-order") {
				if (!value_of(i, "--quad-order", val)) return false;
				opt.quad_order = std::stoi(val);
				if (opt.quad_order < 2) throw std::invalid_argument("too small");
			} else if (arg == "--tolerance-scale") {
				if (!value_of(i, "--tolerance-scale", val)) return false;
				opt.tolerance_scale = std::stod(val);
				if (!(opt.tolerance_scale > 0)) throw std::invalid_argument("not positive");
			} else if (arg == "--format") {
				if (!value_of(i, "--format", val)) return false;
				if (val != "human" && val != "machine") {
					std::fprintf(stderr, "dcw: --format must be human or machine\n");
					return false;
				}
				opt.format = val;
			} else if (arg == "--help" || arg == "-h") {
				opt.positional.insert(opt.positional.begin(), "help");
			} else if (arg.rfind("--", 0) == 0) {
				std::fprintf(stderr, "dcw: unknown option %s\n", arg.c_str());
				return false;
			} else {
				opt.positional.push_back(arg);
			}
		} catch (const std::exception&) {
			std::fprintf(stderr, "dcw: bad value for %s: %s\n", arg.c_str(), val.c_str());
			return false;
		}
	}
	return true;
}

std::string fmt_num(double v) {
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.12g", v);
	return buf;
}

void print_human(const dcw::Report& rep, const std::string& label) {
	double total = 0;
	for (const auto& c : rep.checks) {
		total += c.seconds;
		std::string detail;
		if (c.exact)
			detail = "exact";
		else if (c.lhs && c.rhs)
			detail = "lhs " + fmt_num(*c.lhs) + " rhs " + fmt_num(*c.rhs) + " tol " +
					 fmt_num(c.tolerance);
		else
			detail = "residual " + fmt_num(c.residual) + " tol " + fmt_num(c.tolerance);
		std::printf("[%s] %s: %s (%s) [%.2fs]\n", c.pass ? "PASS" : "FAIL", c.id.c_str(),
					c.statement.c_str(), detail.c_str(), c.seconds);
	}
	std::printf("%s: %zu checks, %d failures [%.2fs]\n", label.c_str(), rep.checks.size(),
				rep.failures(), total);
}

// tab-separated records without timing; byte-stable for fixed options
void print_machine(const dcw::Report& rep, const std::string& label) {
	for (const auto& c : rep.checks) {
		const char* kind = c.exact ? "exact" : (c.lhs && c.rhs ? "pair" : "residual");
		std::printf("check\t%s\t%s\t%s\t%s\t%s\t%s\t%s\t%s\n", c.id.c_str(), kind,
					c.pass ? "pass" : "FAIL", fmt_num(c.residual).c_str(),
					fmt_num(c.tolerance).c_str(), c.lhs ? fmt_num(*c.lhs).c_str() : "",
					c.rhs ? fmt_num(*c.rhs).c_str() : "", c.statement.c_str());
	}
	std::printf("summary\t%s\t%zu\t%d\t%s\n", label.c_str(), rep.checks.size(), rep.failures(),
				rep.all_pass() ? "pass" : "FAIL");
}

int emit(const dcw::Report& rep, const std::string& label, const Options& opt) {
	if (opt.format == "machine")
		print_machine(rep, label);
	else
		print_human(rep, label);
	return rep.all_pass() ? 0 : 1;
}

int cmd_verify(const Options& opt) {
	if (opt.positional.size() != 2) {
		std::fprintf(stderr, "dcw: verify needs exactly one suite name\n%s", kUsage);
		return 2;
	}
	const std::string& suite = opt.positional[1];
	dcw::SuiteConfig cfg;
	cfg.seed = opt.seed;
	cfg.quad_order = opt.quad_order;
	cfg.tolerance_scale = opt.tolerance_scale;
	try {
		dcw::Report rep = dcw::run_suite(suite, cfg);
		return emit(rep, "suite " + suite, opt);
	} catch (const std::invalid_argument& e) {
		std::fprintf(stderr, "dcw: %s\n", e.what());
		return 2;
	}
}

int cmd_scenario(const Options& opt) {
	if (opt.positional.size() < 2) {
		std::fprintf(stderr, "dcw: scenario needs a subcommand (list, dump, validate)\n");
		return 2;
	}
	const std::string& sub = opt.positional[1];
	if (sub == "list") {
		for (const std::string& n : dcw::catalog_names()) std::printf("%s\n", n.c_str());
		return 0;
	}
	if (sub == "dump") {
		if (opt.positional.size() != 3) {
			std::fprintf(stderr, "dcw: scenario dump needs exactly one name\n");
			return 2;
		}
		try {
			std::fputs(dcw::catalog_text(opt.positional[2]).c_str(), stdout);
			return 0;
		} catch (const std::invalid_argument& e) {
			std::fprintf(stderr, "dcw: %s\n", e.what());
			return 2;
		}
	}
	if (sub == "validate") {
		if (opt.positional.size() != 3) {
			std::fprintf(stderr, "dcw: scenario validate needs exactly one file path\n");
			return 2;
		}
		const std::string& path = opt.positional[2];
		std::ifstream in(path);
		if (!in) {
			std::fprintf(stderr, "dcw: cannot read %s\n", path.c_str());
			return 2;
		}
		std::ostringstream text;
		text << in.rdbuf();
		try {
			dcw::Scenario s = dcw::parse_scenario(text.str());
			dcw::Report rep = dcw::validate_scenario(s, opt.seed);
			return emit(rep, "scenario " + s.name, opt);
		} catch (const dcw::ScenarioParseError& e) {
			std::fprintf(stderr, "dcw: %s:%d: %s\n", path.c_str(), e.line, e.what());
			return 2;
		} catch (const std::exception& e) {
			std::fprintf(stderr, "dcw: %s: %s\n", path.c_str(), e.what());
			return 2;
		}
	}
	std::fprintf(stderr, "dcw: unknown scenario subcommand %s\n", sub.c_str());
	return 2;
}

}  // namespace

int main(int argc, char** argv) {
	Options opt;
	if (!parse_options(argc, argv, opt)) return 2;
	if (opt.positional.empty()) {
		std::fputs(kUsage, stderr);
		return 2;
	}
	const std::string& cmd = opt.positional[0];
	if (cmd == "help" || cmd == "--help" || cmd == "-h") {
		std::fputs(kUsage, stdout);
		return 0;
	}
	if (cmd == "verify") return cmd_verify(opt);
	if (cmd == "scenario") return cmd_scenario(opt);
	std::fprintf(stderr, "dcw: unknown command %s\n%s", cmd.c_str(), kUsage);
	return 2;
}
