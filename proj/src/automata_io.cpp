#include <sstream>
#include <vector>

#include "autseq/automata.hpp"
#include "autseq/error.hpp"
#include "text_util.hpp"

namespace autseq {

namespace {

std::string symbol_text(const TupleAlphabet& sigma, Symbol s) {
	if (s == kEpsilon)
		return "eps";
	if (sigma.arity() == 0)
		return "()";
	std::string out;
	for (unsigned t = 0; t < sigma.arity(); ++t) {
		if (t != 0)
			out += ',';
		out += std::to_string(sigma.digit(s, t));
	}
	return out;
}

Symbol parse_symbol(const TupleAlphabet& sigma, const std::string& text, std::size_t line) {
	if (text == "eps")
		return kEpsilon;
	if (text == "()") {
		if (sigma.arity() != 0)
			throw ParseError("empty symbol for arity " + std::to_string(sigma.arity()), line);
		return 0;
	}
	std::vector<Digit> digits;
	for (const auto& part : text::split(text, ','))
		digits.push_back(static_cast<Digit>(text::parse_unsigned(part, line)));
	if (digits.size() != sigma.arity())
		throw ParseError("symbol '" + text + "' has " + std::to_string(digits.size()) + " coordinates, expected " +
		                     std::to_string(sigma.arity()),
		                 line);
	for (Digit d : digits)
		if (d >= sigma.base())
			throw ParseError("digit " + std::to_string(d) + " out of range for base " + std::to_string(sigma.base()),
			                 line);
	return sigma.encode(digits);
}

std::string header(const char* kind, const TupleAlphabet& sigma, State states, const std::string& initial,
                   const std::string& finals) {
	std::ostringstream os;
	os << kind << " base=" << sigma.base() << " arity=" << sigma.arity() << " states=" << states
	   << " initial=" << initial << " finals=" << finals;
	return os.str();
}

struct Header {
	std::string kind;
	unsigned base;
	unsigned arity;
	State states;
	std::vector<State> initials;
	std::vector<std::pair<State, NatInf>> finals;
};

Header parse_header(const std::string& line) {
	auto fields = text::split_ws(line);
	if (fields.empty() || (fields[0] != "dfa" && fields[0] != "nfa"))
		throw ParseError("expected 'dfa' or 'nfa' header", 1);
	Header h;
	h.kind = fields[0];
	auto kv = text::key_values(fields, 1, 1);
	h.base = static_cast<unsigned>(text::parse_unsigned(text::require(kv, "base", 1), 1));
	h.arity = static_cast<unsigned>(text::parse_unsigned(text::require(kv, "arity", 1), 1));
	h.states = static_cast<State>(text::parse_unsigned(text::require(kv, "states", 1), 1));
	for (const auto& s : text::split(text::require(kv, "initial", 1), ','))
		h.initials.push_back(static_cast<State>(text::parse_unsigned(s, 1)));
	for (const auto& s : text::split(text::require(kv, "finals", 1), ',')) {
		auto colon = s.find(':');
		State q = static_cast<State>(text::parse_unsigned(s.substr(0, colon), 1));
		NatInf w(1);
		if (colon != std::string::npos)
			w = text::parse_natinf(s.substr(colon + 1), 1);
		h.finals.emplace_back(q, w);
	}
	if (h.base < 2)
		throw ParseError("base must be at least 2", 1);
	for (State q : h.initials)
		if (q >= h.states)
			throw ParseError("initial state out of range", 1);
	for (const auto& [q, w] : h.finals)
		if (q >= h.states)
			throw ParseError("final state out of range", 1);
	return h;
}

struct TransitionLine {
	State from;
	Symbol symbol;
	NatInf mult;
	State to;
};

TransitionLine parse_transition(const TupleAlphabet& sigma, State states, const std::string& line, std::size_t lineno) {
	auto fields = text::split_ws(line);
	if (fields.size() != 4)
		throw ParseError("expected '<from> <symbol> <mult> <to>'", lineno);
	TransitionLine t{static_cast<State>(text::parse_unsigned(fields[0], lineno)), parse_symbol(sigma, fields[1], lineno),
	                 text::parse_natinf(fields[2], lineno), static_cast<State>(text::parse_unsigned(fields[3], lineno))};
	if (t.from >= states || t.to >= states)
		throw ParseError("state out of range", lineno);
	if (t.mult.is_zero())
		throw ParseError("multiplicity must be positive", lineno);
	return t;
}

} // namespace

std::string to_text(const Dfa& a) {
	std::string finals;
	for (State q = 0; q < a.num_states(); ++q)
		if (a.is_final(q))
			finals += (finals.empty() ? "" : ",") + std::to_string(q);
	std::string out = header("dfa", a.alphabet(), a.num_states(), std::to_string(a.initial()), finals) + "\n";
	for (State q = 0; q < a.num_states(); ++q)
		for (Symbol s = 0; s < a.alphabet().size(); ++s)
			out += std::to_string(q) + " " + symbol_text(a.alphabet(), s) + " 1 " + std::to_string(a.next(q, s)) + "\n";
	return out;
}

std::string to_text(const Nfa& a) {
	std::string initial;
	for (State q : a.initials())
		initial += (initial.empty() ? "" : ",") + std::to_string(q);
	std::string finals;
	for (State q = 0; q < a.num_states(); ++q)
		if (a.is_final(q)) {
			finals += (finals.empty() ? "" : ",") + std::to_string(q);
			if (a.final_weight(q) != NatInf(1))
				finals += ":" + a.final_weight(q).str();
		}
	std::string out = header("nfa", a.alphabet(), a.num_states(), initial, finals) + "\n";
	for (const auto& t : a.transitions())
		out += std::to_string(t.from) + " " + symbol_text(a.alphabet(), t.symbol) + " " + t.multiplicity.str() + " " +
		       std::to_string(t.to) + "\n";
	return out;
}

Dfa dfa_from_text(const std::string& text) {
	auto lines = text::lines(text);
	if (lines.empty())
		throw ParseError("empty automaton text", 1);
	Header h = parse_header(lines[0].second);
	if (h.kind != "dfa")
		throw ParseError("expected a 'dfa' header", 1);
	if (h.initials.size() != 1)
		throw ParseError("a DFA has exactly one initial state", 1);
	TupleAlphabet sigma(h.base, h.arity);
	constexpr State unset = 0xFFFFFFFFu;
	std::vector<State> delta(std::size_t(h.states) * sigma.size(), unset);
	for (std::size_t i = 1; i < lines.size(); ++i) {
		auto [lineno, line] = lines[i];
		TransitionLine t = parse_transition(sigma, h.states, line, lineno);
		if (t.symbol == kEpsilon)
			throw ParseError("ε-transition in a DFA", lineno);
		if (t.mult != NatInf(1))
			throw ParseError("DFA transitions have multiplicity 1", lineno);
		State& slot = delta[std::size_t(t.from) * sigma.size() + t.symbol];
		if (slot != unset)
			throw ParseError("duplicate transition", lineno);
		slot = t.to;
	}
	for (std::size_t i = 0; i < delta.size(); ++i)
		if (delta[i] == unset)
			throw ParseError("transition function is not total: state " + std::to_string(i / sigma.size()) +
			                     " has no move on " + symbol_text(sigma, static_cast<Symbol>(i % sigma.size())),
			                 lines.back().first);
	std::vector<char> finals(h.states, 0);
	for (const auto& [q, w] : h.finals) {
		if (w != NatInf(1))
			throw ParseError("DFA final states carry no weight", 1);
		finals[q] = 1;
	}
	return Dfa(h.base, h.arity, h.states, h.initials[0], std::move(delta), std::move(finals));
}

Nfa nfa_from_text(const std::string& text) {
	auto lines = text::lines(text);
	if (lines.empty())
		throw ParseError("empty automaton text", 1);
	Header h = parse_header(lines[0].second);
	if (h.kind != "nfa")
		throw ParseError("expected an 'nfa' header", 1);
	Nfa out(h.base, h.arity, h.states);
	for (State q : h.initials)
		out.add_initial(q);
	for (const auto& [q, w] : h.finals)
		if (!w.is_zero())
			out.set_final(q, w);
	for (std::size_t i = 1; i < lines.size(); ++i) {
		auto [lineno, line] = lines[i];
		TransitionLine t = parse_transition(out.alphabet(), h.states, line, lineno);
		out.add_transition(t.from, t.symbol, t.mult, t.to);
	}
	return out;
}

} // namespace autseq
