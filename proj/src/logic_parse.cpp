#include <algorithm>
#include <set>

#include "autseq/error.hpp"
#include "autseq/logic.hpp"

namespace autseq {

TermPtr Term::var(std::string name) {
	auto t = std::make_shared<Term>();
	t->kind = Kind::variable;
	t->name = std::move(name);
	return t;
}

TermPtr Term::constant(Natural value) {
	auto t = std::make_shared<Term>();
	t->kind = Kind::constant;
	t->value = value;
	return t;
}

TermPtr Term::sum(TermPtr a, TermPtr b) {
	auto t = std::make_shared<Term>();
	t->kind = Kind::sum;
	t->lhs = std::move(a);
	t->rhs = std::move(b);
	return t;
}

TermPtr Term::scaled(Natural c, TermPtr operand) {
	if (c == 0)
		throw PreconditionError("a constant multiple needs a coefficient of at least 1");
	auto t = std::make_shared<Term>();
	t->kind = Kind::scaled;
	t->value = c;
	t->lhs = std::move(operand);
	return t;
}

FormulaPtr make_not(FormulaPtr f) {
	auto out = std::make_shared<Formula>();
	out->kind = Formula::Kind::negation;
	out->pos = f->pos;
	out->a = std::move(f);
	return out;
}

FormulaPtr make_binary(Formula::Kind kind, FormulaPtr a, FormulaPtr b) {
	auto out = std::make_shared<Formula>();
	out->kind = kind;
	out->pos = a->pos;
	out->a = std::move(a);
	out->b = std::move(b);
	return out;
}

FormulaPtr make_quantifier(Formula::Kind kind, std::string var, FormulaPtr body) {
	auto out = std::make_shared<Formula>();
	out->kind = kind;
	out->pos = body->pos;
	out->name = std::move(var);
	out->a = std::move(body);
	return out;
}

FormulaPtr make_compare(TermPtr lhs, Relop op, TermPtr rhs) {
	auto out = std::make_shared<Formula>();
	out->kind = Formula::Kind::compare;
	out->lhs = std::move(lhs);
	out->op = op;
	out->rhs = std::move(rhs);
	return out;
}

namespace {

struct Token {
	enum class Kind { ident, number, symbol, end };
	Kind kind;
	std::string text;
	SourcePos pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> tokenize(const std::string& s) {
	static const std::vector<std::pair<std::string, std::string>> unicode = {
		{"≠", "!="}, {"≤", "<="}, {"≥", ">="}, {"≡", "≡"}, {"¬", "~"},
		{"∧", "&"},  {"∨", "|"},  {"⇒", "=>"}, {"→", "=>"},    {"⇔", "<=>"},
		{"↔", "<=>"}, {"∃", "E"}, {"∀", "A"},
	};
	static const std::vector<std::string> symbols = {"<=>", "=>", "<=", ">=", "!=", "~", "&", "|", "=", "<", ">",
	                                                 "+",   "-",  "*",  "(",  ")",  "[", "]", ",", ":", "$"};
	std::vector<Token> out;
	SourcePos pos;
	std::size_t i = 0;
	auto advance = [&](std::size_t n) {
		for (std::size_t j = 0; j < n; ++j) {
			if (s[i] == '\n') {
				++pos.line;
				pos.column = 1;
			} else if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
				++pos.column;
			}
			++i;
		}
	};
	while (i < s.size()) {
		char c = s[i];
		if (std::isspace(static_cast<unsigned char>(c))) {
			advance(1);
			continue;
		}
		SourcePos start = pos;
		if (ident_start(c)) {
			std::size_t j = i;
			while (j < s.size() && ident_char(s[j]))
				++j;
			out.push_back({Token::Kind::ident, s.substr(i, j - i), start});
			advance(j - i);
			continue;
		}
		if (std::isdigit(static_cast<unsigned char>(c))) {
			std::size_t j = i;
			while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
				++j;
			out.push_back({Token::Kind::number, s.substr(i, j - i), start});
			advance(j - i);
			continue;
		}
		bool matched = false;
		for (const auto& [u, ascii] : unicode)
			if (s.compare(i, u.size(), u) == 0) {
				bool word = ascii == "E" || ascii == "A";
				out.push_back({word ? Token::Kind::ident : Token::Kind::symbol, ascii, start});
				advance(u.size());
				matched = true;
				break;
			}
		if (matched)
			continue;
		for (const auto& sym : symbols)
			if (s.compare(i, sym.size(), sym) == 0) {
				out.push_back({Token::Kind::symbol, sym, start});
				advance(sym.size());
				matched = true;
				break;
			}
		if (!matched)
			throw ParseError(std::string("unexpected character '") + c + "'", start.line, start.column);
	}
	out.push_back({Token::Kind::end, "", pos});
	return out;
}

// A term with subtraction still present: positive and negative parts.
struct Signed {
	std::vector<TermPtr> pos;
	std::vector<TermPtr> neg;
};

TermPtr fold(const std::vector<TermPtr>& parts) {
	if (parts.empty())
		return Term::constant(0);
	TermPtr t = parts[0];
	for (std::size_t i = 1; i < parts.size(); ++i)
		t = Term::sum(t, parts[i]);
	return t;
}

bool is_constant(const Term& t) {
	switch (t.kind) {
	case Term::Kind::constant:
		return true;
	case Term::Kind::variable:
		return false;
	case Term::Kind::sum:
		return is_constant(*t.lhs) && is_constant(*t.rhs);
	case Term::Kind::scaled:
		return is_constant(*t.lhs);
	}
	return false;
}

long long constant_value(const Term& t) {
	switch (t.kind) {
	case Term::Kind::constant:
		return static_cast<long long>(t.value);
	case Term::Kind::sum:
		return constant_value(*t.lhs) + constant_value(*t.rhs);
	case Term::Kind::scaled:
		return static_cast<long long>(t.value) * constant_value(*t.lhs);
	default:
		return 0;
	}
}

struct Failure {
	std::size_t token;
	std::string message;
};

class Parser {
public:
	explicit Parser(const std::string& text) : tokens_(tokenize(text)) {}

	FormulaPtr parse() {
		try {
			FormulaPtr f = formula();
			if (peek().kind != Token::Kind::end)
				fail("unexpected '" + peek().text + "'");
			return f;
		} catch (const Failure& e) {
			const Failure& worst = furthest_ && furthest_->token > e.token ? *furthest_ : e;
			const Token& t = tokens_[worst.token];
			throw ParseError(worst.message, t.pos.line, t.pos.column);
		}
	}

private:
	const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(at_ + ahead, tokens_.size() - 1)]; }
	bool is(const std::string& sym, std::size_t ahead = 0) const {
		const Token& t = peek(ahead);
		return (t.kind == Token::Kind::symbol || t.kind == Token::Kind::ident) && t.text == sym;
	}
	bool accept(const std::string& sym) {
		if (!is(sym))
			return false;
		++at_;
		return true;
	}
	[[noreturn]] void fail(const std::string& message) const { throw Failure{at_, message}; }
	void expect(const std::string& sym) {
		if (!accept(sym))
			fail("expected '" + sym + "'" + (peek().kind == Token::Kind::end ? " at end of input"
			                                                                 : ", got '" + peek().text + "'"));
	}
	void remember(const Failure& f) {
		if (!furthest_ || f.token > furthest_->token)
			furthest_ = f;
	}

	std::string fresh() { return "#" + std::to_string(++fresh_); }

	static bool is_keyword(const std::string& s) {
		return s == "E" || s == "A" || s == "true" || s == "false" || s == "mod";
	}

	std::string variable() {
		const Token& t = peek();
		if (t.kind != Token::Kind::ident || is_keyword(t.text))
			fail("expected a variable name");
		++at_;
		return t.text;
	}

	Natural number() {
		const Token& t = peek();
		if (t.kind != Token::Kind::number)
			fail("expected a number");
		++at_;
		try {
			return std::stoull(t.text);
		} catch (const std::exception&) {
			--at_;
			fail("number out of range");
		}
	}

	std::optional<Relop> relop() {
		static const std::vector<std::pair<std::string, Relop>> ops = {
			{"=", Relop::eq}, {"!=", Relop::ne}, {"<=", Relop::le}, {">=", Relop::ge}, {"<", Relop::lt}, {">", Relop::gt}};
		for (auto [s, op] : ops)
			if (peek().kind == Token::Kind::symbol && peek().text == s) {
				++at_;
				return op;
			}
		return std::nullopt;
	}

	FormulaPtr formula() {
		if (is("E") || is("A"))
			return quantifier();
		return iff();
	}

	FormulaPtr quantifier() {
		SourcePos pos = peek().pos;
		bool exists = is("E");
		++at_;
		std::vector<std::string> vars{variable()};
		while (accept(","))
			vars.push_back(variable());
		std::optional<Relop> bound_op = relop();
		Signed bound;
		if (bound_op)
			bound = term();
		accept(":");
		FormulaPtr body = formula();
		for (std::size_t i = vars.size(); i-- > 0;) {
			FormulaPtr inner = body;
			if (bound_op) {
				FormulaPtr guard = comparison(Signed{{Term::var(vars[i])}, {}}, *bound_op, bound, pos);
				inner = make_binary(exists ? Formula::Kind::conj : Formula::Kind::implies, guard, inner);
			}
			body = make_quantifier(exists ? Formula::Kind::exists : Formula::Kind::forall, vars[i], inner);
			std::const_pointer_cast<Formula>(body)->pos = pos;
		}
		return body;
	}

	FormulaPtr iff() {
		FormulaPtr f = implies();
		while (accept("<=>"))
			f = make_binary(Formula::Kind::iff, f, implies());
		return f;
	}

	FormulaPtr implies() {
		FormulaPtr f = disjunction();
		if (accept("=>"))
			return make_binary(Formula::Kind::implies, f, (is("E") || is("A")) ? quantifier() : implies());
		return f;
	}

	FormulaPtr disjunction() {
		FormulaPtr f = conjunction();
		while (accept("|"))
			f = make_binary(Formula::Kind::disj, f, conjunction());
		return f;
	}

	FormulaPtr conjunction() {
		FormulaPtr f = unary();
		while (accept("&"))
			f = make_binary(Formula::Kind::conj, f, unary());
		return f;
	}

	FormulaPtr unary() {
		SourcePos pos = peek().pos;
		if (accept("~"))
			return make_not(unary());
		if (is("E") || is("A"))
			return quantifier();
		if (accept("true") || accept("false")) {
			auto f = std::make_shared<Formula>();
			f->kind = Formula::Kind::truth;
			f->truth = tokens_[at_ - 1].text == "true";
			f->pos = pos;
			return f;
		}
		if (is("(")) {
			std::size_t saved = at_;
			try {
				return atom();
			} catch (const Failure& e) {
				remember(e);
				at_ = saved;
			}
			expect("(");
			FormulaPtr f = formula();
			expect(")");
			return f;
		}
		return atom();
	}

	// x[t] or a term.
	struct Operand {
		std::optional<std::string> sequence;
		Signed value; // the index for sequences
		SourcePos pos;
	};

	Operand operand() {
		Operand o;
		o.pos = peek().pos;
		if (peek().kind == Token::Kind::ident && !is_keyword(peek().text) && is("[", 1)) {
			o.sequence = peek().text;
			at_ += 2;
			o.value = term();
			expect("]");
			return o;
		}
		o.value = term();
		return o;
	}

	FormulaPtr atom() {
		SourcePos pos = peek().pos;
		if (accept("$"))
			return relation(pos);
		if (accept("mod")) {
			expect("(");
			Signed t = term();
			expect(",");
			Natural m = number();
			expect(",");
			Natural a = number();
			expect(")");
			return congruence(t, m, a, pos);
		}
		Operand lhs = operand();
		if (!lhs.sequence && accept("≡")) {
			Natural a = number();
			expect("mod");
			Natural m = number();
			return congruence(lhs.value, m, a, pos);
		}
		std::optional<Relop> op = relop();
		if (!op)
			fail(peek().kind == Token::Kind::end ? "expected a comparison operator at end of input"
			                                     : "expected a comparison operator, got '" + peek().text + "'");
		Operand rhs = operand();
		if (!lhs.sequence && !rhs.sequence)
			return comparison(lhs.value, *op, rhs.value, pos);
		return sequence_comparison(lhs, *op, rhs, pos);
	}

	FormulaPtr relation(SourcePos pos) {
		auto f = std::make_shared<Formula>();
		f->kind = Formula::Kind::relation;
		f->pos = pos;
		const Token& t = peek();
		if (t.kind != Token::Kind::ident)
			fail("expected a relation name after '$'");
		f->name = t.text;
		++at_;
		expect("(");
		std::vector<std::pair<std::string, Signed>> subtractions;
		if (!is(")"))
			do {
				Signed s = term();
				if (s.neg.empty()) {
					f->args.push_back(fold(s.pos));
				} else {
					std::string m = fresh();
					subtractions.emplace_back(m, s);
					f->args.push_back(Term::var(m));
				}
			} while (accept(","));
		expect(")");
		return wrap_subtractions(f, subtractions, pos);
	}

	// ∃m (m + neg = pos & f) for every index that used subtraction.
	FormulaPtr wrap_subtractions(FormulaPtr f, const std::vector<std::pair<std::string, Signed>>& subs, SourcePos pos) {
		for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
			Signed lhs{{Term::var(it->first)}, {}};
			FormulaPtr def = comparison(lhs, Relop::eq, it->second, pos);
			f = make_quantifier(Formula::Kind::exists, it->first, make_binary(Formula::Kind::conj, def, f));
		}
		return f;
	}

	FormulaPtr congruence(const Signed& t, Natural m, Natural a, SourcePos pos) {
		if (m == 0)
			fail("modulus must be at least 1");
		std::string q = fresh();
		Signed rhs{{Term::scaled(m, Term::var(q)), Term::constant(a % m)}, {}};
		FormulaPtr eq = comparison(t, Relop::eq, rhs, pos);
		auto f = make_quantifier(Formula::Kind::exists, q, eq);
		std::const_pointer_cast<Formula>(f)->pos = pos;
		return f;
	}

	FormulaPtr comparison(const Signed& lhs, Relop op, const Signed& rhs, SourcePos pos) {
		std::vector<TermPtr> left = lhs.pos, right = rhs.pos;
		left.insert(left.end(), rhs.neg.begin(), rhs.neg.end());
		right.insert(right.end(), lhs.neg.begin(), lhs.neg.end());
		auto f = std::const_pointer_cast<Formula>(make_compare(fold(left), op, fold(right)));
		f->pos = pos;
		return f;
	}

	FormulaPtr sequence_comparison(const Operand& lhs, Relop op, const Operand& rhs, SourcePos pos) {
		std::vector<std::pair<std::string, Signed>> subs;
		auto side = [&](const Operand& o) {
			SeqOperand s;
			if (!o.sequence) {
				TermPtr t = fold(o.value.pos);
				if (!o.value.neg.empty() || !is_constant(*t))
					throw Failure{at_ - 1, "a sequence value can only be compared with another sequence value or a constant"};
				s.constant = constant_value(*t);
				return s;
			}
			s.sequence = o.sequence;
			if (o.value.neg.empty()) {
				s.index = fold(o.value.pos);
			} else {
				std::string m = fresh();
				subs.emplace_back(m, o.value);
				s.index = Term::var(m);
			}
			return s;
		};
		auto f = std::make_shared<Formula>();
		f->kind = Formula::Kind::seq_compare;
		f->pos = pos;
		f->left = side(lhs);
		f->op = op;
		f->right = side(rhs);
		return wrap_subtractions(f, subs, pos);
	}

	Signed term() {
		Signed out = product();
		for (;;) {
			if (accept("+")) {
				Signed p = product();
				out.pos.insert(out.pos.end(), p.pos.begin(), p.pos.end());
				out.neg.insert(out.neg.end(), p.neg.begin(), p.neg.end());
			} else if (accept("-")) {
				Signed p = product();
				out.pos.insert(out.pos.end(), p.neg.begin(), p.neg.end());
				out.neg.insert(out.neg.end(), p.pos.begin(), p.pos.end());
			} else {
				return out;
			}
		}
	}

	static Signed scale(Natural c, const Signed& s) {
		Signed out;
		if (c == 0)
			return out;
		for (const auto& t : s.pos)
			out.pos.push_back(c == 1 ? t : Term::scaled(c, t));
		for (const auto& t : s.neg)
			out.neg.push_back(c == 1 ? t : Term::scaled(c, t));
		return out;
	}

	Signed product() {
		Signed base;
		if (peek().kind == Token::Kind::number) {
			Natural c = number();
			if (accept("*"))
				return scale(c, product());
			base.pos.push_back(Term::constant(c));
		} else if (accept("(")) {
			base = term();
			expect(")");
		} else if (peek().kind == Token::Kind::ident && !is_keyword(peek().text)) {
			if (is("[", 1))
				fail("a sequence value cannot be used inside arithmetic");
			base.pos.push_back(Term::var(variable()));
		} else {
			fail(peek().kind == Token::Kind::end ? "expected a term at end of input"
			                                     : "expected a term, got '" + peek().text + "'");
		}
		while (accept("*"))
			base = scale(number(), base);
		return base;
	}

	std::vector<Token> tokens_;
	std::size_t at_ = 0;
	int fresh_ = 0;
	std::optional<Failure> furthest_;
};

const char* relop_text(Relop op) {
	switch (op) {
	case Relop::eq:
		return "=";
	case Relop::ne:
		return "!=";
	case Relop::lt:
		return "<";
	case Relop::le:
		return "<=";
	case Relop::gt:
		return ">";
	case Relop::ge:
		return ">=";
	}
	return "?";
}

std::string operand_text(const SeqOperand& s) {
	if (!s.sequence)
		return std::to_string(s.constant);
	return *s.sequence + "[" + to_string(*s.index) + "]";
}

void collect_term_vars(const Term& t, std::set<std::string>& out) {
	switch (t.kind) {
	case Term::Kind::variable:
		out.insert(t.name);
		break;
	case Term::Kind::constant:
		break;
	case Term::Kind::sum:
		collect_term_vars(*t.lhs, out);
		collect_term_vars(*t.rhs, out);
		break;
	case Term::Kind::scaled:
		collect_term_vars(*t.lhs, out);
		break;
	}
}

void collect_free(const Formula& f, std::set<std::string>& out) {
	switch (f.kind) {
	case Formula::Kind::truth:
		break;
	case Formula::Kind::compare:
		collect_term_vars(*f.lhs, out);
		collect_term_vars(*f.rhs, out);
		break;
	case Formula::Kind::seq_compare:
		if (f.left.sequence)
			collect_term_vars(*f.left.index, out);
		if (f.right.sequence)
			collect_term_vars(*f.right.index, out);
		break;
	case Formula::Kind::relation:
		for (const auto& t : f.args)
			collect_term_vars(*t, out);
		break;
	case Formula::Kind::negation:
		collect_free(*f.a, out);
		break;
	case Formula::Kind::exists:
	case Formula::Kind::forall: {
		std::set<std::string> inner;
		collect_free(*f.a, inner);
		inner.erase(f.name);
		out.insert(inner.begin(), inner.end());
		break;
	}
	default:
		collect_free(*f.a, out);
		collect_free(*f.b, out);
	}
}

} // namespace

FormulaPtr parse_formula(const std::string& text) { return Parser(text).parse(); }

std::string to_string(const Term& t) {
	switch (t.kind) {
	case Term::Kind::variable:
		return t.name;
	case Term::Kind::constant:
		return std::to_string(t.value);
	case Term::Kind::sum:
		return to_string(*t.lhs) + "+" + to_string(*t.rhs);
	case Term::Kind::scaled: {
		bool atomic = t.lhs->kind == Term::Kind::variable || t.lhs->kind == Term::Kind::constant;
		std::string inner = to_string(*t.lhs);
		return std::to_string(t.value) + "*" + (atomic ? inner : "(" + inner + ")");
	}
	}
	return "?";
}

std::string to_string(const Formula& f) {
	switch (f.kind) {
	case Formula::Kind::truth:
		return f.truth ? "true" : "false";
	case Formula::Kind::compare:
		return to_string(*f.lhs) + " " + relop_text(f.op) + " " + to_string(*f.rhs);
	case Formula::Kind::seq_compare:
		return operand_text(f.left) + " " + relop_text(f.op) + " " + operand_text(f.right);
	case Formula::Kind::relation: {
		std::string out = "$" + f.name + "(";
		for (std::size_t i = 0; i < f.args.size(); ++i)
			out += (i ? ", " : "") + to_string(*f.args[i]);
		return out + ")";
	}
	case Formula::Kind::negation:
		return "~(" + to_string(*f.a) + ")";
	case Formula::Kind::conj:
		return "(" + to_string(*f.a) + " & " + to_string(*f.b) + ")";
	case Formula::Kind::disj:
		return "(" + to_string(*f.a) + " | " + to_string(*f.b) + ")";
	case Formula::Kind::implies:
		return "(" + to_string(*f.a) + " => " + to_string(*f.b) + ")";
	case Formula::Kind::iff:
		return "(" + to_string(*f.a) + " <=> " + to_string(*f.b) + ")";
	case Formula::Kind::exists:
		return "(E " + f.name + ": " + to_string(*f.a) + ")";
	case Formula::Kind::forall:
		return "(A " + f.name + ": " + to_string(*f.a) + ")";
	}
	return "?";
}

std::vector<std::string> free_variables(const Formula& f) {
	std::set<std::string> out;
	collect_free(f, out);
	return {out.begin(), out.end()};
}

} // namespace autseq
