#include "autseq/seqgen.hpp"

#include <algorithm>
#include <map>

#include "autseq/error.hpp"
#include "text_util.hpp"

namespace autseq {

Dfao::Dfao(unsigned base, State num_states, State initial, std::vector<State> delta, std::vector<Output> outputs)
	: base_(base), initial_(initial), delta_(std::move(delta)), outputs_(std::move(outputs)) {
	check_base(base);
	if (num_states == 0 || outputs_.size() != num_states)
		throw PreconditionError("DFAO needs one output per state");
	if (initial_ >= num_states)
		throw IndexError("initial state out of range");
	if (delta_.size() != std::size_t(num_states) * base_)
		throw PreconditionError("DFAO transition function is not total");
	for (State q : delta_)
		if (q >= num_states)
			throw IndexError("DFAO transition target out of range");

	std::vector<char> seen(num_states, 0);
	std::vector<State> stack{initial_};
	seen[initial_] = 1;
	while (!stack.empty()) {
		State q = stack.back();
		stack.pop_back();
		if (output(next(q, 0)) != output(q))
			throw PaddingError("state " + std::to_string(q) + " changes output on a trailing zero (" +
			                       std::to_string(output(q)) + " -> " + std::to_string(output(next(q, 0))) + ")",
			                   q);
		for (Digit d = 0; d < base_; ++d)
			if (!seen[next(q, d)]) {
				seen[next(q, d)] = 1;
				stack.push_back(next(q, d));
			}
	}
}

std::vector<Output> Dfao::output_alphabet() const {
	std::vector<Output> out(outputs_);
	std::sort(out.begin(), out.end());
	out.erase(std::unique(out.begin(), out.end()), out.end());
	return out;
}

Output Dfao::evaluate(Natural n) const {
	State q = initial_;
	for (; n != 0; n /= base_)
		q = next(q, static_cast<Digit>(n % base_));
	return output(q);
}

Output Dfao::evaluate(const DigitWord& w) const {
	if (w.base() != base_ || w.arity() != 1)
		throw IncompatibleError("DFAO evaluation needs a single-track word in base " + std::to_string(base_));
	State q = initial_;
	for (std::size_t i = 0; i < w.size(); ++i)
		q = next(q, w.at(i, 0));
	return output(q);
}

Dfao thue_morse() {
	// Parity of the binary digit sum.
	return Dfao(2, 2, 0, {0, 1, 1, 0}, {0, 1});
}

Dfao builtin_sequence(const std::string& name) {
	if (name == "tm" || name == "thue-morse")
		return thue_morse();
	if (name == "tm-swapped")
		return Dfao(2, 2, 0, {0, 1, 1, 0}, {1, 0});
	if (name == "rudin-shapiro")
		// state = 2 * parity + last digit
		return Dfao(2, 4, 0, {0, 1, 0, 3, 2, 3, 2, 1}, {0, 0, 1, 1});
	if (name == "const0")
		return Dfao(2, 1, 0, {0, 0}, {0});
	if (name == "const1")
		return Dfao(2, 1, 0, {0, 0}, {1});
	if (name == "period2")
		// 0101...: the lowest digit decides.
		return Dfao(2, 3, 0, {1, 2, 1, 1, 2, 2}, {0, 0, 1});
	if (name == "powers2")
		// characteristic sequence of {1, 2, 4, 8, ...}
		return Dfao(2, 3, 0, {0, 1, 1, 2, 2, 2}, {0, 1, 0});
	if (name == "zero-only")
		// characteristic sequence of {0}
		return Dfao(2, 2, 0, {0, 1, 1, 1}, {1, 0});
	throw IndexError("unknown built-in sequence '" + name + "'");
}

std::vector<std::string> builtin_sequence_names() {
	return {"tm", "tm-swapped", "rudin-shapiro", "const0", "const1", "period2", "powers2", "zero-only"};
}

std::vector<Output> prefix(const Dfao& s, std::size_t length) {
	std::vector<Output> out;
	out.reserve(length);
	for (std::size_t i = 0; i < length; ++i)
		out.push_back(s.evaluate(static_cast<Natural>(i)));
	return out;
}

std::string store(const Dfao& s) {
	std::string out = "dfao base=" + std::to_string(s.base()) + " states=" + std::to_string(s.num_states()) +
	                  " initial=" + std::to_string(s.initial()) + " order=lsd\n";
	for (State q = 0; q < s.num_states(); ++q)
		out += "state " + std::to_string(q) + " output " + std::to_string(s.output(q)) + "\n";
	for (State q = 0; q < s.num_states(); ++q)
		for (Digit d = 0; d < s.base(); ++d)
			out += std::to_string(q) + " " + std::to_string(d) + " " + std::to_string(s.next(q, d)) + "\n";
	return out;
}

Dfao load_dfao(const std::string& text) {
	auto lines = text::lines(text);
	if (lines.empty())
		throw ParseError("empty DFAO text", 1);
	auto [hline, htext] = lines[0];
	auto fields = text::split_ws(htext);
	if (fields.empty() || fields[0] != "dfao")
		throw ParseError("expected a 'dfao' header", hline);
	auto kv = text::key_values(fields, 1, hline);
	unsigned base = static_cast<unsigned>(text::parse_unsigned(text::require(kv, "base", hline), hline));
	State states = static_cast<State>(text::parse_unsigned(text::require(kv, "states", hline), hline));
	State initial = static_cast<State>(text::parse_unsigned(text::require(kv, "initial", hline), hline));
	if (auto it = kv.find("order"); it != kv.end() && it->second != "lsd")
		throw ParseError("only order=lsd is supported, got '" + it->second + "'", hline);
	if (base < 2)
		throw ParseError("base must be at least 2", hline);
	if (states == 0)
		throw ParseError("a DFAO needs at least one state", hline);
	if (initial >= states)
		throw ParseError("initial state out of range", hline);

	constexpr State unset = 0xFFFFFFFFu;
	std::vector<State> delta(std::size_t(states) * base, unset);
	std::vector<Output> outputs(states);
	std::vector<char> has_output(states, 0);
	for (std::size_t i = 1; i < lines.size(); ++i) {
		auto [no, line] = lines[i];
		auto f = text::split_ws(line);
		if (f.size() == 4 && f[0] == "state" && f[2] == "output") {
			State q = static_cast<State>(text::parse_unsigned(f[1], no));
			if (q >= states)
				throw ParseError("state out of range", no);
			try {
				outputs[q] = std::stoi(f[3]);
			} catch (const std::exception&) {
				throw ParseError("output symbol must be an integer, got '" + f[3] + "'", no);
			}
			has_output[q] = 1;
		} else if (f.size() == 3) {
			State from = static_cast<State>(text::parse_unsigned(f[0], no));
			Digit d = static_cast<Digit>(text::parse_unsigned(f[1], no));
			State to = static_cast<State>(text::parse_unsigned(f[2], no));
			if (from >= states || to >= states)
				throw ParseError("state out of range", no);
			if (d >= base)
				throw ParseError("digit out of range", no);
			State& slot = delta[std::size_t(from) * base + d];
			if (slot != unset)
				throw ParseError("duplicate transition", no);
			slot = to;
		} else {
			throw ParseError("expected 'state <id> output <sym>' or '<from> <digit> <to>'", no);
		}
	}
	for (State q = 0; q < states; ++q)
		if (!has_output[q])
			throw ParseError("state " + std::to_string(q) + " has no output", lines.back().first);
	for (std::size_t i = 0; i < delta.size(); ++i)
		if (delta[i] == unset)
			throw ParseError("transition function is not total: state " + std::to_string(i / base) +
			                     " has no move on digit " + std::to_string(i % base),
			                 lines.back().first);
	return Dfao(base, states, initial, std::move(delta), std::move(outputs));
}

} // namespace autseq
