#ifndef AUTSEQ_SEQGEN_HPP
#define AUTSEQ_SEQGEN_HPP

#include <string>
#include <vector>

#include "autseq/automata.hpp"
#include "autseq/numeration.hpp"

namespace autseq {

using Output = int;

/// Deterministic automaton with output reading base-k digits lsd-first: the
/// executable form of a k-automatic sequence.
///
/// Construction checks padding stability: every reachable state q must have
/// output(δ(q, 0)) = output(q), so the value at n does not depend on how many
/// trailing zeros its representation carries.
class Dfao {
public:
	Dfao(unsigned base, State num_states, State initial, std::vector<State> delta, std::vector<Output> outputs);

	unsigned base() const { return base_; }
	State num_states() const { return static_cast<State>(outputs_.size()); }
	State initial() const { return initial_; }
	State next(State q, Digit d) const { return delta_[std::size_t(q) * base_ + d]; }
	Output output(State q) const { return outputs_[q]; }
	const std::vector<Output>& outputs() const { return outputs_; }
	const std::vector<State>& table() const { return delta_; }

	/// Sorted distinct output symbols (the output alphabet Δ).
	std::vector<Output> output_alphabet() const;

	Output evaluate(Natural n) const;
	Output evaluate(const DigitWord& w) const;

	friend bool operator==(const Dfao&, const Dfao&) = default;

private:
	unsigned base_;
	State initial_;
	std::vector<State> delta_;
	std::vector<Output> outputs_;
};

Dfao thue_morse();

/// Built-in sequences by name: tm, tm-swapped, rudin-shapiro, const0,
/// const1, period2, powers2, zero-only. Throws IndexError for unknown names.
Dfao builtin_sequence(const std::string& name);
std::vector<std::string> builtin_sequence_names();

std::vector<Output> prefix(const Dfao& s, std::size_t length);

/// Text format:
///   dfao base=<k> states=<m> initial=<i> order=lsd
///   state <id> output <sym>      (one per state)
///   <from> <digit> <to>          (one per transition)
std::string store(const Dfao& s);
Dfao load_dfao(const std::string& text);

} // namespace autseq

#endif
