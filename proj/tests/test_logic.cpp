#include "doctest.h"

#include <functional>
#include <map>

#include "autseq/error.hpp"
#include "autseq/logic.hpp"

using namespace autseq;

namespace {

Environment tm_env() {
	Environment env;
	env.sequences.emplace("x", thue_morse());
	return env;
}

bool accepts(const Compiled& c, std::initializer_list<Natural> values) {
	return c.dfa.accepts(encode_tuple(values, c.dfa.base()));
}

// Reference semantics: quantifiers range over [0, bound).
struct Brute {
	const Environment& env;
	Natural bound;

	long long term(const Term& t, const std::map<std::string, Natural>& a) const {
		switch (t.kind) {
		case Term::Kind::variable:
			return static_cast<long long>(a.at(t.name));
		case Term::Kind::constant:
			return static_cast<long long>(t.value);
		case Term::Kind::sum:
			return term(*t.lhs, a) + term(*t.rhs, a);
		case Term::Kind::scaled:
			return static_cast<long long>(t.value) * term(*t.lhs, a);
		}
		return 0;
	}

	static bool rel(Relop op, long long x, long long y) {
		switch (op) {
		case Relop::eq:
			return x == y;
		case Relop::ne:
			return x != y;
		case Relop::lt:
			return x < y;
		case Relop::le:
			return x <= y;
		case Relop::gt:
			return x > y;
		case Relop::ge:
			return x >= y;
		}
		return false;
	}

	long long operand(const SeqOperand& s, const std::map<std::string, Natural>& a) const {
		if (!s.sequence)
			return s.constant;
		return env.sequences.at(*s.sequence).evaluate(static_cast<Natural>(term(*s.index, a)));
	}

	bool eval(const Formula& f, std::map<std::string, Natural>& a) const {
		switch (f.kind) {
		case Formula::Kind::truth:
			return f.truth;
		case Formula::Kind::compare:
			return rel(f.op, term(*f.lhs, a), term(*f.rhs, a));
		case Formula::Kind::seq_compare:
			return rel(f.op, operand(f.left, a), operand(f.right, a));
		case Formula::Kind::relation:
			throw Error("not supported");
		case Formula::Kind::negation:
			return !eval(*f.a, a);
		case Formula::Kind::conj:
			return eval(*f.a, a) && eval(*f.b, a);
		case Formula::Kind::disj:
			return eval(*f.a, a) || eval(*f.b, a);
		case Formula::Kind::implies:
			return !eval(*f.a, a) || eval(*f.b, a);
		case Formula::Kind::iff:
			return eval(*f.a, a) == eval(*f.b, a);
		case Formula::Kind::exists:
		case Formula::Kind::forall: {
			bool want = f.kind == Formula::Kind::exists;
			auto saved = a.find(f.name) == a.end() ? std::optional<Natural>() : a[f.name];
			bool result = !want;
			for (Natural v = 0; v < bound; ++v) {
				a[f.name] = v;
				if (eval(*f.a, a) == want) {
					result = want;
					break;
				}
			}
			if (saved)
				a[f.name] = *saved;
			else
				a.erase(f.name);
			return result;
		}
		}
		return false;
	}
};

} // namespace

TEST_CASE("parse structure") {
	auto f = parse_formula("E i A t (t < n) => x[i+t] = x[i+n+t]");
	CHECK(f->kind == Formula::Kind::exists);
	CHECK(f->a->kind == Formula::Kind::forall);
	CHECK(f->a->a->kind == Formula::Kind::implies);
	CHECK(to_string(*f) == "(E i: (A t: (t < n => x[i+t] = x[i+n+t])))");
	CHECK(free_variables(*f) == std::vector<std::string>{"n"});

	CHECK_NOTHROW(parse_formula("2*l <= n"));
	CHECK_THROWS_AS(parse_formula("l <= n/2"), ParseError);

	auto m = parse_formula("n ≡ 1 mod 6");
	CHECK(m->kind == Formula::Kind::exists);
	CHECK(to_string(*m->a) == "n = 6*" + m->name + "+1");
	CHECK(to_string(*parse_formula("mod(n, 6, 7)")->a) == to_string(*m->a));

	CHECK(to_string(*parse_formula("E v: v = 1")) == to_string(*parse_formula("E v v = 1")));
	CHECK(to_string(*parse_formula("A a, b < n: a = b")) == "(A a: (a < n => (A b: (b < n => a = b))))");
	CHECK(to_string(*parse_formula("a - b >= c")) == "a >= c+b");
	CHECK(to_string(*parse_formula("~x[n] != 1 | $rel(n+1, m)")) == "(~(x[n] != 1) | $rel(n+1, m))");
	CHECK(to_string(*parse_formula("(a+b) = 2*(c+1)")) == "a+b = 2*c+2*1");
	CHECK(to_string(*parse_formula("a ≤ b ∧ ¬(b ≥ c)")) == "(a <= b & ~(b >= c))");
}

TEST_CASE("parse errors carry positions") {
	try {
		parse_formula("E i (i < n) &\n  x[i] = ");
		FAIL("expected a parse error");
	} catch (const ParseError& e) {
		CHECK(e.line() == 2);
	}
	try {
		parse_formula("a < b +");
		FAIL("expected a parse error");
	} catch (const ParseError& e) {
		CHECK(e.line() == 1);
		CHECK(e.column() == 8);
	}
	CHECK_THROWS_AS(parse_formula("a # b"), ParseError);
	CHECK_THROWS_AS(parse_formula("x[n] = y"), ParseError);
	CHECK_THROWS_AS(parse_formula("E : a = 1"), ParseError);
	CHECK_THROWS_AS(parse_formula("(a = 1"), ParseError);
}

TEST_CASE("compile atoms") {
	Environment env;
	Compiled eq = compile("i = n", env);
	CHECK(eq.vars == std::vector<std::string>{"i", "n"});
	CHECK(eq.dfa.accepts(DigitWord::from_symbols(2, {{1, 1}, {0, 0}})));
	CHECK(!eq.dfa.accepts(DigitWord::from_symbols(2, {{1, 0}})));

	Compiled even = compile("E q n = 2*q", env);
	for (Natural n = 0; n <= 16; ++n)
		CHECK(even.dfa.accepts(encode_lsd(n, 2)) == (n % 2 == 0));
	CHECK(even.dfa.accepts(DigitWord::from_digits(2, {0, 1})));
	CHECK(!even.dfa.accepts(DigitWord::from_digits(2, {1})));

	Environment t = tm_env();
	Compiled one = compile("x[n] = 1", t);
	CHECK(one.dfa.accepts(DigitWord::from_digits(2, {1})));
	CHECK(!one.dfa.accepts(DigitWord(2, 1)));
	for (Natural n = 0; n < 200; ++n)
		CHECK(one.dfa.accepts(encode_lsd(n, 2)) == (thue_morse().evaluate(n) == 1));

	CHECK_THROWS_AS(compile("y[n] = 1", t), ParseError);
}

TEST_CASE("adder") {
	for (unsigned k : {2u, 3u}) {
		Environment env;
		env.base = k;
		Compiled add = compile("z = x + y", env);
		REQUIRE(add.vars == std::vector<std::string>{"x", "y", "z"});
		for (Natural x = 0; x < 64; ++x)
			for (Natural y = 0; y < 64; ++y) {
				REQUIRE(accepts(add, {x, y, x + y}));
				REQUIRE(!accepts(add, {x, y, x + y + 1}));
				if (x + y > 0)
					REQUIRE(!accepts(add, {x, y, x + y - 1}));
			}
	}
}

TEST_CASE("linear relations with every operator") {
	Environment env;
	env.base = 3;
	const char* ops[] = {"=", "!=", "<", "<=", ">", ">="};
	for (const char* op : ops) {
		Compiled c = compile(std::string("2*a + 5 ") + op + " 3*b + 1", env);
		auto f = parse_formula(std::string("2*a + 5 ") + op + " 3*b + 1");
		Brute brute{env, 0};
		for (Natural a = 0; a < 30; ++a)
			for (Natural b = 0; b < 30; ++b) {
				std::map<std::string, Natural> asg{{"a", a}, {"b", b}};
				REQUIRE(accepts(c, {a, b}) == brute.eval(*f, asg));
			}
	}
}

TEST_CASE("compiled formulas agree with brute force") {
	Environment env = tm_env();
	// Every quantifier in these formulas has its witnesses below 100 when
	// the free variables are below 32.
	const char* corpus[] = {
		"a < b",
		"a + b = c",
		"a - b = 3",
		"E q a = 3*q + 2",
		"mod(a, 4, 1) | mod(b, 3, 0)",
		"a ≡ 2 mod 5",
		"A c < a: c + c != b",
		"E c < b: a = c + c",
		"x[a] = x[b]",
		"x[a + 1] != x[2*b]",
		"x[a - 1] = 1",
		"x[a] < x[b]",
		"x[a] = 0 & x[a + b] = 1",
		"E i < 20: x[i] = x[i+1] & i >= a",
		"A t < a: x[b+t] = x[b+a+t]",
		"E i (i < 32) & A t < a: x[i+t] = x[i+a+t]",
		"~(a = b) <=> (a < b | b < a)",
		"(a <= b) => E c (c + a = b)",
		"E i (i <= 40) & i >= a & x[i] != x[i+1] & x[i+1] != x[i+2]",
		"a - b <= c - 2",
	};
	for (const char* text : corpus) {
		CAPTURE(text);
		auto f = parse_formula(text);
		Compiled c = compile(*f, env);
		Brute brute{env, 100};
		std::vector<std::string> vars = free_variables(*f);
		REQUIRE(c.vars.size() <= vars.size());
		for (Natural a = 0; a < 32; ++a)
			for (Natural b = 0; b < (vars.size() > 1 ? 32u : 1u); ++b)
				for (Natural cc = 0; cc < (vars.size() > 2 ? 12u : 1u); ++cc) {
					std::map<std::string, Natural> asg;
					std::vector<Natural> all{a, b, cc};
					for (std::size_t i = 0; i < vars.size(); ++i)
						asg[vars[i]] = all[i];
					std::vector<Natural> used;
					for (const auto& v : c.vars)
						used.push_back(asg[v]);
					bool got = c.vars.empty() ? c.dfa.is_final(c.dfa.initial())
					                          : c.dfa.accepts(encode_tuple(used, 2));
					REQUIRE(got == brute.eval(*f, asg));
				}
	}
}

TEST_CASE("compositionality and duality") {
	Environment env = tm_env();
	const char* fs[] = {"x[n] = 1", "E i (i < n & x[i] = x[n])", "mod(n, 3, 1)"};
	for (const char* a : fs) {
		Compiled ca = compile(a, env);
		Compiled na = compile(std::string("~(") + a + ")", env);
		CHECK(na.dfa == minimize(complement(ca.dfa)));
		for (const char* b : fs) {
			Compiled cb = compile(b, env);
			Compiled both = compile(std::string("(") + a + ") & (" + b + ")", env);
			CHECK(both.dfa == minimize(product(ca.dfa, cb.dfa, BoolOp::conj)));
		}
	}
	Compiled all = compile("A i (i < n => x[i] = x[i+n])", env);
	Compiled dual = compile("~E i ~(i < n => x[i] = x[i+n])", env);
	CHECK(all.dfa == dual.dfa);
}

TEST_CASE("decide") {
	Environment env = tm_env();
	Decision overlap = decide("E i E n (n >= 1) & A t (t < n+1) => x[i+t] = x[i+n+t]", env);
	CHECK(!overlap.value);
	Decision square = decide("E i E n (n >= 1) & A t (t < n) => x[i+t]=x[i+n+t]", env);
	CHECK(square.value);
	REQUIRE(square.assignment.size() == 2);
	Natural i = square.assignment[0].second, n = square.assignment[1].second;
	CHECK(n >= 1);
	for (Natural t = 0; t < n; ++t)
		CHECK(thue_morse().evaluate(i + t) == thue_morse().evaluate(i + n + t));

	CHECK(decide("A n E m (m > n)", env).value);
	Decision cex = decide("A n (n < 5)", env);
	CHECK(!cex.value);
	CHECK(cex.counterexample);
	CHECK(cex.assignment[0].second >= 5);
	CHECK(decide("~E n (n + 1 = 0)", env).value);
	CHECK(decide("true", env).value);
	CHECK_THROWS_AS(decide("n = n", env), PreconditionError);
}

TEST_CASE("characteristic") {
	Environment env = tm_env();
	Dfao all = characteristic("n = n", env);
	for (Natural n = 0; n < 50; ++n)
		CHECK(all.evaluate(n) == 1);
	Dfao m = characteristic("E q n = 6*q + 1", env);
	for (Natural n = 0; n <= 100; ++n)
		CHECK(m.evaluate(n) == (n % 6 == 1 ? 1 : 0));
	CHECK_THROWS_AS(characteristic("a = b", env), ArityError);
	CHECK_THROWS_AS(characteristic("true", env), ArityError);
}

TEST_CASE("relations") {
	Environment env = tm_env();
	define_relation(env, "lt", {"p", "q"}, "p < q");
	define_relation(env, "eqf", {"i", "j", "n"}, "A t < n: x[i+t] = x[j+t]");
	Compiled c = compile("$lt(b, a)", env);
	CHECK(accepts(c, {5, 3}));
	CHECK(!accepts(c, {3, 5}));
	Compiled d = compile("$lt(a + 2, b)", env);
	CHECK(accepts(d, {1, 4}));
	CHECK(!accepts(d, {2, 4}));
	Compiled e = compile("$lt(a, a)", env);
	CHECK(!accepts(e, {3}));
	Compiled s = compile("$eqf(i, i + n, n)", env);
	Compiled direct = compile("A t < n: x[i+t] = x[i+n+t]", env);
	CHECK(s.dfa == direct.dfa);
	CHECK_THROWS_AS(compile("$lt(a)", env), ArityError);
	CHECK_THROWS_AS(compile("$nope(a)", env), ParseError);
	CHECK_THROWS_AS(define_relation(env, "bad", {"p"}, "p < q"), PreconditionError);
}

TEST_CASE("resource ceiling") {
	Environment env = tm_env();
	env.limits.max_states = 3;
	CHECK_THROWS_AS(compile("E i E n (n >= 1) & A t (t < n) => x[i+t]=x[i+n+t]", env), ResourceError);
}
