#include "dcw/parser.hpp"

#include <cctype>
#include <cstddef>
#include <utility>

#include "dcw/pi_scalar.hpp"

namespace dcw {
namespace {

struct Token {
	enum Kind { End, Num, Ident, Sym };
	Kind kind = End;
	Rational value;
	std::string text;
	char sym = 0;
	std::size_t pos = 0;
};

[[noreturn]] void fail(std::size_t pos, const std::string& msg) {
	throw ParseError("column " + std::to_string(pos + 1) + ": " + msg);
}

std::vector<Token> lex(std::string_view s) {
	std::vector<Token> out;
	std::size_t i = 0;
	while (i < s.size()) {
		const char c = s[i];
		if (std::isspace(static_cast<unsigned char>(c))) {
			++i;
			continue;
		}
		if (std::isdigit(static_cast<unsigned char>(c))) {
			const std::size_t start = i;
			while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
			Rational value{std::string(s.substr(start, i - start))};
			if (i < s.size() && s[i] == '.') {
				++i;
				const std::size_t fs = i;
				while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
				if (i == fs) fail(i, "expected digits after decimal point");
				const std::string frac(s.substr(fs, i - fs));
				Rational den = 1;
				for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
				value += Rational{frac} / den;
			}
			Token t;
			t.kind = Token::Num;
			t.value = std::move(value);
			t.pos = start;
			out.push_back(std::move(t));
			continue;
		}
		if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
			const std::size_t start = i;
			while (i < s.size() &&
				   (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
				++i;
			Token t;
			t.kind = Token::Ident;
			t.text = std::string(s.substr(start, i - start));
			t.pos = start;
			out.push_back(std::move(t));
			continue;
		}
		if (std::string_view("+-*/^();,").find(c) != std::string_view::npos) {
			Token t;
			t.kind = Token::Sym;
			t.sym = c;
			t.pos = i;
			out.push_back(std::move(t));
			++i;
			continue;
		}
		fail(i, std::string("unexpected character '") + c + "'");
	}
	Token end;
	end.pos = s.size();
	out.push_back(std::move(end));
	return out;
}

class Parser {
public:
	Parser(std::vector<Token> tokens, const std::vector<std::string>& coords)
		: toks_(std::move(tokens)), coords_(coords) {}

	Expr parse() {
		Expr e = expr();
		if (!at_end()) fail(cur().pos, unexpected_desc() + " after complete expression");
		return e;
	}

private:
	const Token& cur() const { return toks_[idx_]; }
	bool at_end() const { return cur().kind == Token::End; }
	bool is_sym(char c) const { return cur().kind == Token::Sym && cur().sym == c; }
	void advance() { ++idx_; }

	bool eat(char c) {
		if (!is_sym(c)) return false;
		advance();
		return true;
	}

	void expect(char c, const char* context) {
		if (!eat(c)) fail(cur().pos, std::string("expected '") + c + "' " + context);
	}

	std::string unexpected_desc() const {
		const Token& t = cur();
		if (t.kind == Token::End) return "unexpected end of input";
		if (t.kind == Token::Sym) return std::string("unexpected '") + t.sym + "'";
		if (t.kind == Token::Num) return "unexpected number";
		return "unexpected '" + t.text + "'";
	}

	Expr expr() {
		Expr lhs = term();
		while (true) {
			if (eat('+'))
				lhs = lhs + term();
			else if (eat('-'))
				lhs = lhs - term();
			else
				return lhs;
		}
	}

	Expr term() {
		Expr lhs = signed_factor();
		while (true) {
			if (eat('*')) {
				lhs = lhs * signed_factor();
			} else if (eat('/')) {
				const std::size_t dpos = cur().pos;
				const Expr rhs = signed_factor();
				try {
					lhs = lhs / rhs;
				} catch (const std::domain_error& e) {
					fail(dpos, e.what());
				}
			} else {
				return lhs;
			}
		}
	}

	Expr signed_factor() {
		if (eat('-')) return -signed_factor();
		return power();
	}

	Expr power() {
		Expr base = atom();
		if (!eat('^')) return base;
		const bool negative = eat('-');
		if (cur().kind != Token::Num) fail(cur().pos, "expected integer exponent after '^'");
		const std::size_t pos = cur().pos;
		const Rational v = cur().value;
		advance();
		if (boost::multiprecision::denominator(v) != 1 || v > 1000 || v < 0)
			fail(pos, "exponent must be an integer between 0 and 1000");
		int n = v.convert_to<int>();
		if (negative) n = -n;
		return Expr::pow(base, n);
	}

	Expr atom() {
		if (cur().kind == Token::Num) {
			Expr e = Expr::constant(PiScalar{cur().value});
			advance();
			return e;
		}
		if (cur().kind == Token::Ident) {
			const std::string name = cur().text;
			const std::size_t pos = cur().pos;
			advance();
			if (name == "pi") return Expr::pi();
			if (is_sym('(')) return call(name, pos);
			for (std::size_t k = 0; k < coords_.size(); ++k)
				if (coords_[k] == name) return Expr::coord(static_cast<int>(k));
			std::string known;
			for (const auto& c : coords_) {
				if (!known.empty()) known += ", ";
				known += c;
			}
			fail(pos, "unknown identifier '" + name +
						  "' (coordinates here: " + (known.empty() ? "none" : known) + ")");
		}
		if (eat('(')) {
			Expr e = expr();
			expect(')', "to close parenthesis");
			return e;
		}
		fail(cur().pos, unexpected_desc() + "; expected a number, name, or '('");
	}

	Expr call(const std::string& name, std::size_t pos) {
		expect('(', "after function name");
		std::vector<Expr> args;
		std::vector<std::size_t> argpos;
		argpos.push_back(cur().pos);
		args.push_back(expr());
		while (eat(';') || eat(',')) {
			argpos.push_back(cur().pos);
			args.push_back(expr());
		}
		expect(')', "to close argument list");
		const auto want = [&](std::size_t n) {
			if (args.size() != n)
				fail(pos, name + " expects " + std::to_string(n) + " argument" +
							  (n == 1 ? "" : "s") + ", got " + std::to_string(args.size()));
		};
		if (name == "sin") {
			want(1);
			return Expr::sin(args[0]);
		}
		if (name == "cos") {
			want(1);
			return Expr::cos(args[0]);
		}
		if (name == "exp") {
			want(1);
			return Expr::exp(args[0]);
		}
		if (name == "sqrt") {
			want(1);
			return Expr::sqrt(args[0]);
		}
		if (name == "bump") {
			want(3);
			const PiScalar r0 = constant_bound(args[1], argpos[1]);
			const PiScalar r1 = constant_bound(args[2], argpos[2]);
			if (!(r0.rational_part() < r1.rational_part()))
				fail(argpos[1], "bump window must satisfy r0 < r1");
			return Expr::bump(args[0], r0, r1);
		}
		fail(pos, "unknown function '" + name + "' (available: sin, cos, exp, sqrt, bump)");
	}

	PiScalar constant_bound(const Expr& e, std::size_t pos) const {
		const auto v = e.const_value();
		if (!v) fail(pos, "bump window bound must be a constant");
		if (!v->is_rational()) fail(pos, "bump window bound must be rational (no pi)");
		return *v;
	}

	std::vector<Token> toks_;
	const std::vector<std::string>& coords_;
	std::size_t idx_ = 0;
};

}  // namespace

Expr parse_scalar_expr(std::string_view text, const std::vector<std::string>& coord_names) {
	return Parser{lex(text), coord_names}.parse();
}

}  // namespace dcw
