#ifndef AUTSEQ_AUTOMATA_HPP
#define AUTSEQ_AUTOMATA_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "autseq/numeration.hpp"
#include "autseq/semiring.hpp"

namespace autseq {

using State = std::uint32_t;
using Symbol = std::uint32_t;

inline constexpr Symbol kEpsilon = 0xFFFFFFFFu;

/// Σ_k^r with symbols numbered so that numeric order is the lexicographic
/// order of the digit tuples (track 0 most significant). The all-zero tuple
/// is symbol 0.
class TupleAlphabet {
public:
	TupleAlphabet(unsigned base, unsigned arity);

	unsigned base() const { return base_; }
	unsigned arity() const { return arity_; }
	Symbol size() const { return size_; }

	Digit digit(Symbol s, unsigned track) const { return (s / weight_[track]) % base_; }
	Symbol encode(std::span<const Digit> digits) const;
	std::vector<Digit> decode(Symbol s) const;
	/// The symbol with track `track` deleted, over the alphabet of arity r-1.
	Symbol remove_track(Symbol s, unsigned track) const;
	/// Inserts digit `d` so that it becomes track `position` of an arity r+1 symbol.
	Symbol insert_track(Symbol s, unsigned position, Digit d) const;

	friend bool operator==(const TupleAlphabet& a, const TupleAlphabet& b) {
		return a.base_ == b.base_ && a.arity_ == b.arity_;
	}

private:
	unsigned base_;
	unsigned arity_;
	Symbol size_;
	std::vector<Symbol> weight_;
};

/// Guards against runaway intermediate automata. Exceeding the ceiling
/// throws ResourceError.
struct Limits {
	std::size_t max_states = 2'000'000;
};

/// Complete deterministic automaton over a tuple alphabet. Immutable.
class Dfa {
public:
	/// `delta` is row-major: delta[q * |Σ| + a]. Throws if the table is not
	/// total or refers to missing states.
	Dfa(unsigned base, unsigned arity, State num_states, State initial,
	    std::vector<State> delta, std::vector<char> finals);

	static Dfa universal(unsigned base, unsigned arity);
	static Dfa empty(unsigned base, unsigned arity);

	const TupleAlphabet& alphabet() const { return alphabet_; }
	unsigned base() const { return alphabet_.base(); }
	unsigned arity() const { return alphabet_.arity(); }
	State num_states() const { return num_states_; }
	State initial() const { return initial_; }
	bool is_final(State q) const { return finals_[q] != 0; }
	State next(State q, Symbol a) const { return delta_[std::size_t(q) * alphabet_.size() + a]; }
	std::span<const State> row(State q) const {
		return {delta_.data() + std::size_t(q) * alphabet_.size(), alphabet_.size()};
	}
	const std::vector<State>& table() const { return delta_; }
	const std::vector<char>& finals() const { return finals_; }

	State run(const DigitWord& w) const;
	bool accepts(const DigitWord& w) const { return is_final(run(w)); }

	friend bool operator==(const Dfa&, const Dfa&) = default;

private:
	TupleAlphabet alphabet_;
	State num_states_;
	State initial_;
	std::vector<State> delta_;
	std::vector<char> finals_;
};

struct NfaTransition {
	State from;
	Symbol symbol; // kEpsilon for ε
	NatInf multiplicity;
	State to;

	bool is_epsilon() const { return symbol == kEpsilon; }
	friend bool operator==(const NfaTransition&, const NfaTransition&) = default;
};

/// Nondeterministic automaton with ε-moves and transition multiplicities.
/// Final states carry a weight (1 for plain language automata); weights
/// other than 1 only arise from ε-saturation.
class Nfa {
public:
	Nfa(unsigned base, unsigned arity, State num_states);

	const TupleAlphabet& alphabet() const { return alphabet_; }
	unsigned base() const { return alphabet_.base(); }
	unsigned arity() const { return alphabet_.arity(); }
	State num_states() const { return num_states_; }

	State add_state();
	void add_transition(State from, Symbol symbol, NatInf multiplicity, State to);
	void add_transition(State from, Symbol symbol, State to) { add_transition(from, symbol, NatInf(1), to); }
	void add_epsilon(State from, State to, NatInf multiplicity = NatInf(1)) {
		add_transition(from, kEpsilon, std::move(multiplicity), to);
	}
	void add_initial(State q);
	void set_final(State q, NatInf weight = NatInf(1));

	const std::vector<NfaTransition>& transitions() const { return transitions_; }
	const std::vector<State>& initials() const { return initials_; }
	const NatInf& final_weight(State q) const { return final_weight_[q]; }
	bool is_final(State q) const { return !final_weight_[q].is_zero(); }
	bool has_epsilon() const;

	friend bool operator==(const Nfa&, const Nfa&) = default;

private:
	void check_state(State q) const;

	TupleAlphabet alphabet_;
	State num_states_;
	std::vector<NfaTransition> transitions_;
	std::vector<State> initials_;
	std::vector<NatInf> final_weight_;
};

enum class BoolOp { conj, disj, and_not, exclusive_or };

Dfa determinize(const Nfa& a, const Limits& limits = {});
Dfa complement(const Dfa& a);
Dfa product(const Dfa& a, const Dfa& b, BoolOp op, const Limits& limits = {});

/// Product where each operand reads its own view of a common alphabet:
/// operand a reads `map_a[s]` when the product reads `s`.
Dfa product_mapped(const Dfa& a, std::span<const Symbol> map_a, const Dfa& b, std::span<const Symbol> map_b,
                   const TupleAlphabet& alphabet, BoolOp op, const Limits& limits = {});

Nfa project(const Dfa& a, unsigned track);
/// determinize(project(a, track)) without materializing the NFA.
Dfa project_determinize(const Dfa& a, unsigned track, const Limits& limits = {});
Dfa inflate(const Dfa& a, unsigned position);
/// Reorders tracks: track t of the result is track perm[t] of `a`.
Dfa permute_tracks(const Dfa& a, std::span<const unsigned> perm);

Dfa pad_closure(const Dfa& a, const Limits& limits = {});
Dfa minimize(const Dfa& a);

struct Emptiness {
	bool empty;
	std::optional<DigitWord> witness; // shortest, lexicographically least
};
Emptiness is_empty(const Dfa& a);
bool is_finite(const Dfa& a);

struct Equivalence {
	bool equivalent;
	std::optional<DigitWord> counterexample;
};
Equivalence equivalent(const Dfa& a, const Dfa& b);

Nfa eps_eliminate(const Nfa& a);

/// Language-level reversal.
Nfa reverse(const Dfa& a);
/// Restricts to words that are empty or whose last symbol is not all-zero,
/// i.e. to the canonical encodings of the accepted value tuples.
Dfa canonical_only(const Dfa& a);

// Text format:
//   dfa|nfa base=<k> arity=<r> states=<m> initial=<i>[,<i>...] finals=<list>
//   <from> <d1,...,dr|eps> <mult> <to>        (one line per transition)
// Final weights other than 1 are written `<state>:<weight>`.
std::string to_text(const Dfa& a);
std::string to_text(const Nfa& a);
Dfa dfa_from_text(const std::string& text);
Nfa nfa_from_text(const std::string& text);

} // namespace autseq

#endif
