#include "autseq/automata.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

#include "autseq/error.hpp"

namespace autseq {

// ---------------------------------------------------------------------------
// TupleAlphabet

TupleAlphabet::TupleAlphabet(unsigned base, unsigned arity) : base_(base), arity_(arity), size_(1), weight_(arity) {
	check_base(base);
	for (unsigned t = arity; t-- > 0;) {
		weight_[t] = size_;
		if (size_ > 0xFFFFFFu / base)
			throw ResourceError("tuple alphabet of base " + std::to_string(base) + " and arity " +
			                    std::to_string(arity) + " is too large");
		size_ *= base;
	}
}

Symbol TupleAlphabet::encode(std::span<const Digit> digits) const {
	if (digits.size() != arity_)
		throw ArityError("symbol has " + std::to_string(digits.size()) + " coordinates, expected " +
		                 std::to_string(arity_));
	Symbol s = 0;
	for (unsigned t = 0; t < arity_; ++t) {
		if (digits[t] >= base_)
			throw InvalidBaseError("digit " + std::to_string(digits[t]) + " out of range");
		s += digits[t] * weight_[t];
	}
	return s;
}

std::vector<Digit> TupleAlphabet::decode(Symbol s) const {
	std::vector<Digit> out(arity_);
	for (unsigned t = 0; t < arity_; ++t)
		out[t] = digit(s, t);
	return out;
}

Symbol TupleAlphabet::remove_track(Symbol s, unsigned track) const {
	Symbol high = s / (weight_[track] * base_);
	Symbol low = s % weight_[track];
	return high * weight_[track] + low;
}

Symbol TupleAlphabet::insert_track(Symbol s, unsigned position, Digit d) const {
	// `this` is the smaller alphabet. Tracks at and after `position` keep
	// their value; the new digit sits just above them.
	Symbol w = position < arity_ ? weight_[position] * base_ : 1;
	Symbol high = s / w;
	Symbol low = s % w;
	return (high * base_ + d) * w + low;
}

// ---------------------------------------------------------------------------
// Dfa

Dfa::Dfa(unsigned base, unsigned arity, State num_states, State initial, std::vector<State> delta,
         std::vector<char> finals)
	: alphabet_(base, arity), num_states_(num_states), initial_(initial), delta_(std::move(delta)),
	  finals_(std::move(finals)) {
	if (num_states_ == 0)
		throw PreconditionError("a DFA needs at least one state");
	if (initial_ >= num_states_)
		throw IndexError("initial state out of range");
	if (delta_.size() != std::size_t(num_states_) * alphabet_.size())
		throw PreconditionError("transition table is not total: expected " +
		                        std::to_string(std::size_t(num_states_) * alphabet_.size()) + " entries, got " +
		                        std::to_string(delta_.size()));
	if (finals_.size() != num_states_)
		throw PreconditionError("final-state vector has the wrong size");
	for (State q : delta_)
		if (q >= num_states_)
			throw IndexError("transition target out of range");
}

Dfa Dfa::universal(unsigned base, unsigned arity) {
	TupleAlphabet sigma(base, arity);
	return Dfa(base, arity, 1, 0, std::vector<State>(sigma.size(), 0), {1});
}

Dfa Dfa::empty(unsigned base, unsigned arity) {
	TupleAlphabet sigma(base, arity);
	return Dfa(base, arity, 1, 0, std::vector<State>(sigma.size(), 0), {0});
}

State Dfa::run(const DigitWord& w) const {
	if (w.base() != base() || w.arity() != arity())
		throw IncompatibleError("word over base " + std::to_string(w.base()) + " arity " + std::to_string(w.arity()) +
		                        " given to automaton over base " + std::to_string(base()) + " arity " +
		                        std::to_string(arity()));
	State q = initial_;
	for (std::size_t i = 0; i < w.size(); ++i)
		q = next(q, alphabet_.encode(w.symbol(i)));
	return q;
}

// ---------------------------------------------------------------------------
// Nfa

Nfa::Nfa(unsigned base, unsigned arity, State num_states)
	: alphabet_(base, arity), num_states_(num_states), final_weight_(num_states) {}

State Nfa::add_state() {
	final_weight_.emplace_back();
	return num_states_++;
}

void Nfa::check_state(State q) const {
	if (q >= num_states_)
		throw IndexError("state " + std::to_string(q) + " out of range");
}

void Nfa::add_transition(State from, Symbol symbol, NatInf multiplicity, State to) {
	check_state(from);
	check_state(to);
	if (symbol != kEpsilon && symbol >= alphabet_.size())
		throw IndexError("symbol out of range");
	if (multiplicity.is_zero())
		throw PreconditionError("transition multiplicities must be positive");
	transitions_.push_back({from, symbol, std::move(multiplicity), to});
}

void Nfa::add_initial(State q) {
	check_state(q);
	if (std::find(initials_.begin(), initials_.end(), q) == initials_.end())
		initials_.push_back(q);
}

void Nfa::set_final(State q, NatInf weight) {
	check_state(q);
	final_weight_[q] = std::move(weight);
}

bool Nfa::has_epsilon() const {
	return std::any_of(transitions_.begin(), transitions_.end(), [](const NfaTransition& t) { return t.is_epsilon(); });
}

namespace {

void check_ceiling(std::size_t states, const Limits& limits) {
	if (states > limits.max_states)
		throw ResourceError("intermediate automaton exceeded " + std::to_string(limits.max_states) + " states");
}

struct SubsetHash {
	std::size_t operator()(const std::vector<State>& v) const {
		std::size_t h = v.size();
		for (State s : v)
			h = h * 0x9E3779B97F4A7C15ull + s + (h >> 29);
		return h;
	}
};

// Generic subset construction. `step(subset, symbol, out)` appends the
// successors (unsorted, possibly repeated) of `subset` on `symbol`.
template <class Step, class IsFinal>
Dfa subset_construction(const TupleAlphabet& sigma, std::vector<State> start, Step step, IsFinal is_final,
                        const Limits& limits) {
	std::sort(start.begin(), start.end());
	start.erase(std::unique(start.begin(), start.end()), start.end());

	std::unordered_map<std::vector<State>, State, SubsetHash> index;
	std::vector<std::vector<State>> subsets;
	std::vector<State> delta;
	std::vector<char> finals;

	auto intern = [&](std::vector<State>&& s) -> State {
		auto [it, inserted] = index.try_emplace(s, static_cast<State>(subsets.size()));
		if (inserted) {
			check_ceiling(subsets.size() + 1, limits);
			finals.push_back(is_final(it->first) ? 1 : 0);
			subsets.push_back(it->first);
		}
		return it->second;
	};

	intern(std::move(start));
	std::vector<State> buffer;
	for (std::size_t cur = 0; cur < subsets.size(); ++cur) {
		for (Symbol a = 0; a < sigma.size(); ++a) {
			buffer.clear();
			step(subsets[cur], a, buffer);
			std::sort(buffer.begin(), buffer.end());
			buffer.erase(std::unique(buffer.begin(), buffer.end()), buffer.end());
			delta.push_back(intern(std::vector<State>(buffer)));
		}
	}
	return Dfa(sigma.base(), sigma.arity(), static_cast<State>(subsets.size()), 0, std::move(delta),
	           std::move(finals));
}

std::vector<char> reachable_from_initial(const Dfa& a) {
	std::vector<char> seen(a.num_states(), 0);
	std::vector<State> stack{a.initial()};
	seen[a.initial()] = 1;
	while (!stack.empty()) {
		State q = stack.back();
		stack.pop_back();
		for (State r : a.row(q))
			if (!seen[r]) {
				seen[r] = 1;
				stack.push_back(r);
			}
	}
	return seen;
}

// States from which some final state is reachable.
std::vector<char> coreachable(const Dfa& a) {
	const State n = a.num_states();
	std::vector<std::size_t> count(n + 1, 0);
	for (State q = 0; q < n; ++q)
		for (State r : a.row(q))
			++count[r + 1];
	std::partial_sum(count.begin(), count.end(), count.begin());
	std::vector<State> preds(count.back());
	std::vector<std::size_t> fill(count.begin(), count.end() - 1);
	for (State q = 0; q < n; ++q)
		for (State r : a.row(q))
			preds[fill[r]++] = q;

	std::vector<char> seen(n, 0);
	std::vector<State> stack;
	for (State q = 0; q < n; ++q)
		if (a.is_final(q)) {
			seen[q] = 1;
			stack.push_back(q);
		}
	while (!stack.empty()) {
		State q = stack.back();
		stack.pop_back();
		for (std::size_t i = count[q]; i < count[q + 1]; ++i)
			if (!seen[preds[i]]) {
				seen[preds[i]] = 1;
				stack.push_back(preds[i]);
			}
	}
	return seen;
}

// Refinable partition of {0..n-1} (Valmari & Lehtinen).
class RefinablePartition {
public:
	explicit RefinablePartition(std::size_t n)
		: elems_(n), loc_(n), set_of_(n, 0), first_(n + 1), past_(n + 1), marked_(n + 1, 0) {
		std::iota(elems_.begin(), elems_.end(), 0);
		std::iota(loc_.begin(), loc_.end(), 0);
		if (n != 0) {
			sets_ = 1;
			first_[0] = 0;
			past_[0] = n;
		}
	}

	std::size_t sets() const { return sets_; }
	std::size_t set_of(std::size_t e) const { return set_of_[e]; }
	std::size_t first(std::size_t s) const { return first_[s]; }
	std::size_t past(std::size_t s) const { return past_[s]; }
	std::size_t element(std::size_t i) const { return elems_[i]; }

	void mark(std::size_t e) {
		std::size_t s = set_of_[e];
		std::size_t i = loc_[e];
		std::size_t j = first_[s] + marked_[s];
		elems_[i] = elems_[j];
		loc_[elems_[i]] = i;
		elems_[j] = e;
		loc_[e] = j;
		if (marked_[s]++ == 0)
			touched_.push_back(s);
	}

	void split() {
		while (!touched_.empty()) {
			std::size_t s = touched_.back();
			touched_.pop_back();
			std::size_t j = first_[s] + marked_[s];
			if (j == past_[s]) {
				marked_[s] = 0;
				continue;
			}
			// The smaller half becomes the new set.
			if (marked_[s] <= past_[s] - j) {
				first_[sets_] = first_[s];
				past_[sets_] = first_[s] = j;
			} else {
				past_[sets_] = past_[s];
				first_[sets_] = past_[s] = j;
			}
			for (std::size_t i = first_[sets_]; i < past_[sets_]; ++i)
				set_of_[elems_[i]] = sets_;
			marked_[s] = marked_[sets_] = 0;
			++sets_;
		}
	}

	// Builds the initial partition of transitions grouped by label.
	void group_by(const std::vector<Symbol>& label) {
		std::stable_sort(elems_.begin(), elems_.end(),
		                 [&](std::size_t a, std::size_t b) { return label[a] < label[b]; });
		sets_ = 0;
		for (std::size_t i = 0; i < elems_.size(); ++i) {
			if (i == 0 || label[elems_[i]] != label[elems_[i - 1]]) {
				if (i != 0)
					past_[sets_ - 1] = i;
				first_[sets_] = i;
				marked_[sets_] = 0;
				++sets_;
			}
			set_of_[elems_[i]] = sets_ - 1;
			loc_[elems_[i]] = i;
		}
		if (sets_ != 0)
			past_[sets_ - 1] = elems_.size();
	}

private:
	std::vector<std::size_t> elems_, loc_, set_of_, first_, past_, marked_, touched_;
	std::size_t sets_ = 0;
};

// BFS renumbering from the initial state, symbols in increasing order.
Dfa canonical_numbering(const Dfa& a) {
	const Symbol sigma = a.alphabet().size();
	constexpr State unseen = 0xFFFFFFFFu;
	std::vector<State> order_of(a.num_states(), unseen);
	std::vector<State> order;
	order_of[a.initial()] = 0;
	order.push_back(a.initial());
	for (std::size_t i = 0; i < order.size(); ++i)
		for (State r : a.row(order[i]))
			if (order_of[r] == unseen) {
				order_of[r] = static_cast<State>(order.size());
				order.push_back(r);
			}
	std::vector<State> delta;
	delta.reserve(order.size() * sigma);
	std::vector<char> finals;
	for (State q : order) {
		for (State r : a.row(q))
			delta.push_back(order_of[r]);
		finals.push_back(a.is_final(q) ? 1 : 0);
	}
	return Dfa(a.base(), a.arity(), static_cast<State>(order.size()), 0, std::move(delta), std::move(finals));
}

} // namespace

// ---------------------------------------------------------------------------
// Operations

Dfa determinize(const Nfa& a, const Limits& limits) {
	if (a.has_epsilon())
		throw PreconditionError("determinize: automaton has ε-transitions; call eps_eliminate first");
	const Symbol sigma = a.alphabet().size();
	// CSR adjacency keyed by (state, symbol).
	std::vector<std::size_t> offset(std::size_t(a.num_states()) * sigma + 1, 0);
	for (const auto& t : a.transitions())
		++offset[std::size_t(t.from) * sigma + t.symbol + 1];
	std::partial_sum(offset.begin(), offset.end(), offset.begin());
	std::vector<State> targets(offset.back());
	std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
	for (const auto& t : a.transitions())
		targets[fill[std::size_t(t.from) * sigma + t.symbol]++] = t.to;

	auto step = [&](const std::vector<State>& subset, Symbol s, std::vector<State>& out) {
		for (State q : subset) {
			std::size_t key = std::size_t(q) * sigma + s;
			out.insert(out.end(), targets.begin() + offset[key], targets.begin() + offset[key + 1]);
		}
	};
	auto is_final = [&](const std::vector<State>& subset) {
		return std::any_of(subset.begin(), subset.end(), [&](State q) { return a.is_final(q); });
	};
	return subset_construction(a.alphabet(), a.initials(), step, is_final, limits);
}

Dfa complement(const Dfa& a) {
	std::vector<char> finals(a.finals());
	for (char& f : finals)
		f = f ? 0 : 1;
	return Dfa(a.base(), a.arity(), a.num_states(), a.initial(), a.table(), std::move(finals));
}

Dfa product_mapped(const Dfa& a, std::span<const Symbol> map_a, const Dfa& b, std::span<const Symbol> map_b,
                   const TupleAlphabet& alphabet, BoolOp op, const Limits& limits) {
	const Symbol sigma = alphabet.size();
	if (map_a.size() != sigma || map_b.size() != sigma)
		throw IncompatibleError("symbol maps do not cover the product alphabet");
	auto combine = [op](bool x, bool y) {
		switch (op) {
		case BoolOp::conj: return x && y;
		case BoolOp::disj: return x || y;
		case BoolOp::and_not: return x && !y;
		case BoolOp::exclusive_or: return x != y;
		}
		return false;
	};

	std::unordered_map<std::uint64_t, State> index;
	std::vector<std::pair<State, State>> pairs;
	std::vector<State> delta;
	std::vector<char> finals;
	auto intern = [&](State p, State q) -> State {
		std::uint64_t key = (std::uint64_t(p) << 32) | q;
		auto [it, inserted] = index.try_emplace(key, static_cast<State>(pairs.size()));
		if (inserted) {
			check_ceiling(pairs.size() + 1, limits);
			pairs.emplace_back(p, q);
			finals.push_back(combine(a.is_final(p), b.is_final(q)) ? 1 : 0);
		}
		return it->second;
	};
	intern(a.initial(), b.initial());
	for (std::size_t cur = 0; cur < pairs.size(); ++cur) {
		auto [p, q] = pairs[cur];
		auto row_a = a.row(p);
		auto row_b = b.row(q);
		for (Symbol s = 0; s < sigma; ++s)
			delta.push_back(intern(row_a[map_a[s]], row_b[map_b[s]]));
	}
	return Dfa(alphabet.base(), alphabet.arity(), static_cast<State>(pairs.size()), 0, std::move(delta),
	           std::move(finals));
}

Dfa product(const Dfa& a, const Dfa& b, BoolOp op, const Limits& limits) {
	if (!(a.alphabet() == b.alphabet()))
		throw IncompatibleError("product of automata over different alphabets (base " + std::to_string(a.base()) +
		                        "/" + std::to_string(b.base()) + ", arity " + std::to_string(a.arity()) + "/" +
		                        std::to_string(b.arity()) + ")");
	std::vector<Symbol> identity(a.alphabet().size());
	std::iota(identity.begin(), identity.end(), 0);
	return product_mapped(a, identity, b, identity, a.alphabet(), op, limits);
}

Nfa project(const Dfa& a, unsigned track) {
	if (a.arity() < 2)
		throw ArityError("cannot project an arity-" + std::to_string(a.arity()) +
		                 " automaton; test emptiness instead");
	if (track >= a.arity())
		throw IndexError("track " + std::to_string(track) + " out of range");
	Nfa out(a.base(), a.arity() - 1, a.num_states());
	out.add_initial(a.initial());
	std::vector<std::pair<Symbol, State>> seen;
	for (State q = 0; q < a.num_states(); ++q) {
		seen.clear();
		for (Symbol s = 0; s < a.alphabet().size(); ++s)
			seen.emplace_back(a.alphabet().remove_track(s, track), a.next(q, s));
		std::sort(seen.begin(), seen.end());
		seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
		for (auto [s, r] : seen)
			out.add_transition(q, s, r);
		if (a.is_final(q))
			out.set_final(q);
	}
	return out;
}

Dfa project_determinize(const Dfa& a, unsigned track, const Limits& limits) {
	if (a.arity() < 1)
		throw ArityError("cannot project an arity-0 automaton");
	if (track >= a.arity())
		throw IndexError("track " + std::to_string(track) + " out of range");
	TupleAlphabet smaller(a.base(), a.arity() - 1);
	// For every symbol of the smaller alphabet, the k symbols it lifts to.
	std::vector<Symbol> lifts;
	lifts.reserve(a.alphabet().size());
	for (Symbol s = 0; s < smaller.size(); ++s)
		for (Digit d = 0; d < a.base(); ++d)
			lifts.push_back(smaller.insert_track(s, track, d));
	const unsigned k = a.base();
	auto step = [&](const std::vector<State>& subset, Symbol s, std::vector<State>& out) {
		for (State q : subset) {
			auto row = a.row(q);
			for (unsigned d = 0; d < k; ++d)
				out.push_back(row[lifts[std::size_t(s) * k + d]]);
		}
	};
	auto is_final = [&](const std::vector<State>& subset) {
		return std::any_of(subset.begin(), subset.end(), [&](State q) { return a.is_final(q); });
	};
	return subset_construction(smaller, {a.initial()}, step, is_final, limits);
}

Dfa inflate(const Dfa& a, unsigned position) {
	if (position > a.arity())
		throw IndexError("inflate position " + std::to_string(position) + " beyond arity " +
		                 std::to_string(a.arity()));
	TupleAlphabet bigger(a.base(), a.arity() + 1);
	std::vector<State> delta;
	delta.reserve(std::size_t(a.num_states()) * bigger.size());
	for (State q = 0; q < a.num_states(); ++q)
		for (Symbol s = 0; s < bigger.size(); ++s)
			delta.push_back(a.next(q, bigger.remove_track(s, position)));
	return Dfa(a.base(), a.arity() + 1, a.num_states(), a.initial(), std::move(delta), a.finals());
}

Dfa permute_tracks(const Dfa& a, std::span<const unsigned> perm) {
	if (perm.size() != a.arity())
		throw ArityError("permutation size does not match arity");
	std::vector<char> used(a.arity(), 0);
	for (unsigned p : perm) {
		if (p >= a.arity() || used[p])
			throw IndexError("not a permutation of the tracks");
		used[p] = 1;
	}
	const TupleAlphabet& sigma = a.alphabet();
	std::vector<Symbol> map(sigma.size());
	std::vector<Digit> src(a.arity());
	for (Symbol s = 0; s < sigma.size(); ++s) {
		for (unsigned t = 0; t < a.arity(); ++t)
			src[perm[t]] = sigma.digit(s, t);
		map[s] = sigma.encode(src);
	}
	std::vector<State> delta;
	delta.reserve(a.table().size());
	for (State q = 0; q < a.num_states(); ++q)
		for (Symbol s = 0; s < sigma.size(); ++s)
			delta.push_back(a.next(q, map[s]));
	return Dfa(a.base(), a.arity(), a.num_states(), a.initial(), std::move(delta), a.finals());
}

Dfa pad_closure(const Dfa& a, const Limits& limits) {
	const State n = a.num_states();
	// States that reach a final state by reading zero symbols only.
	std::vector<std::vector<State>> zero_preds(n);
	for (State q = 0; q < n; ++q)
		zero_preds[a.next(q, 0)].push_back(q);
	std::vector<char> upward(n, 0);
	std::vector<State> stack;
	for (State q = 0; q < n; ++q)
		if (a.is_final(q)) {
			upward[q] = 1;
			stack.push_back(q);
		}
	while (!stack.empty()) {
		State q = stack.back();
		stack.pop_back();
		for (State p : zero_preds[q])
			if (!upward[p]) {
				upward[p] = 1;
				stack.push_back(p);
			}
	}

	auto reachable = reachable_from_initial(a);
	bool closed_under_padding = true;
	for (State q = 0; q < n && closed_under_padding; ++q)
		if (reachable[q] && upward[q] && !upward[a.next(q, 0)])
			closed_under_padding = false;
	if (closed_under_padding)
		return Dfa(a.base(), a.arity(), n, a.initial(), a.table(), std::move(upward));

	// Otherwise remember the state reached after the last nonzero symbol;
	// acceptance depends only on that state.
	const Symbol sigma = a.alphabet().size();
	std::unordered_map<std::uint64_t, State> index;
	std::vector<std::pair<State, State>> pairs;
	std::vector<State> delta;
	std::vector<char> finals;
	auto intern = [&](State q, State p) -> State {
		std::uint64_t key = (std::uint64_t(q) << 32) | p;
		auto [it, inserted] = index.try_emplace(key, static_cast<State>(pairs.size()));
		if (inserted) {
			check_ceiling(pairs.size() + 1, limits);
			pairs.emplace_back(q, p);
			finals.push_back(upward[p]);
		}
		return it->second;
	};
	intern(a.initial(), a.initial());
	for (std::size_t cur = 0; cur < pairs.size(); ++cur) {
		auto [q, p] = pairs[cur];
		for (Symbol s = 0; s < sigma; ++s) {
			State r = a.next(q, s);
			delta.push_back(intern(r, s == 0 ? p : r));
		}
	}
	return Dfa(a.base(), a.arity(), static_cast<State>(pairs.size()), 0, std::move(delta), std::move(finals));
}

Dfa minimize(const Dfa& a) {
	const Symbol sigma = a.alphabet().size();
	auto reach = reachable_from_initial(a);
	auto live_back = coreachable(a);

	// Live states get dense ids; everything else collapses into the sink.
	constexpr State none = 0xFFFFFFFFu;
	std::vector<State> id(a.num_states(), none);
	std::vector<State> live;
	for (State q = 0; q < a.num_states(); ++q)
		if (reach[q] && live_back[q]) {
			id[q] = static_cast<State>(live.size());
			live.push_back(q);
		}
	if (id[a.initial()] == none)
		return Dfa::empty(a.base(), a.arity());

	const std::size_t n = live.size();
	std::vector<State> tail, head;
	std::vector<Symbol> label;
	for (std::size_t i = 0; i < n; ++i) {
		auto row = a.row(live[i]);
		for (Symbol s = 0; s < sigma; ++s)
			if (id[row[s]] != none) {
				tail.push_back(static_cast<State>(i));
				head.push_back(id[row[s]]);
				label.push_back(s);
			}
	}
	const std::size_t m = tail.size();

	RefinablePartition blocks(n);
	for (std::size_t i = 0; i < n; ++i)
		if (a.is_final(live[i]))
			blocks.mark(i);
	blocks.split();

	RefinablePartition cords(m);
	cords.group_by(label);

	// Incoming transitions per state.
	std::vector<std::size_t> in_offset(n + 1, 0);
	for (std::size_t t = 0; t < m; ++t)
		++in_offset[head[t] + 1];
	std::partial_sum(in_offset.begin(), in_offset.end(), in_offset.begin());
	std::vector<std::size_t> incoming(m);
	{
		std::vector<std::size_t> fill(in_offset.begin(), in_offset.end() - 1);
		for (std::size_t t = 0; t < m; ++t)
			incoming[fill[head[t]]++] = t;
	}

	std::size_t b = 1, c = 0;
	while (c < cords.sets()) {
		for (std::size_t i = cords.first(c); i < cords.past(c); ++i)
			blocks.mark(tail[cords.element(i)]);
		blocks.split();
		++c;
		while (b < blocks.sets()) {
			for (std::size_t i = blocks.first(b); i < blocks.past(b); ++i) {
				std::size_t q = blocks.element(i);
				for (std::size_t j = in_offset[q]; j < in_offset[q + 1]; ++j)
					cords.mark(incoming[j]);
			}
			cords.split();
			++b;
		}
	}

	const State num_blocks = static_cast<State>(blocks.sets());
	const State sink = num_blocks;
	std::vector<State> delta(std::size_t(num_blocks) * sigma, sink);
	std::vector<char> finals(num_blocks, 0);
	bool needs_sink = false;
	for (State blk = 0; blk < num_blocks; ++blk) {
		State rep = static_cast<State>(blocks.element(blocks.first(blk)));
		finals[blk] = a.is_final(live[rep]) ? 1 : 0;
		auto row = a.row(live[rep]);
		for (Symbol s = 0; s < sigma; ++s) {
			State r = id[row[s]];
			if (r == none)
				needs_sink = true;
			else
				delta[std::size_t(blk) * sigma + s] = static_cast<State>(blocks.set_of(r));
		}
	}
	State total = num_blocks;
	if (needs_sink) {
		delta.insert(delta.end(), sigma, sink);
		finals.push_back(0);
		++total;
	}
	Dfa reduced(a.base(), a.arity(), total, static_cast<State>(blocks.set_of(id[a.initial()])), std::move(delta),
	            std::move(finals));
	return canonical_numbering(reduced);
}

Emptiness is_empty(const Dfa& a) {
	constexpr State unseen = 0xFFFFFFFFu;
	std::vector<State> parent(a.num_states(), unseen);
	std::vector<Symbol> via(a.num_states(), 0);
	std::deque<State> queue{a.initial()};
	parent[a.initial()] = a.initial();
	while (!queue.empty()) {
		State q = queue.front();
		queue.pop_front();
		if (a.is_final(q)) {
			std::vector<Symbol> symbols;
			for (State cur = q; cur != a.initial(); cur = parent[cur])
				symbols.push_back(via[cur]);
			std::reverse(symbols.begin(), symbols.end());
			DigitWord w(a.base(), a.arity());
			for (Symbol s : symbols) {
				auto digits = a.alphabet().decode(s);
				w.push_back(digits);
			}
			return {false, std::move(w)};
		}
		auto row = a.row(q);
		for (Symbol s = 0; s < row.size(); ++s)
			if (parent[row[s]] == unseen) {
				parent[row[s]] = q;
				via[row[s]] = s;
				queue.push_back(row[s]);
			}
	}
	return {true, std::nullopt};
}

bool is_finite(const Dfa& a) {
	auto reach = reachable_from_initial(a);
	auto back = coreachable(a);
	const State n = a.num_states();
	// Iterative DFS for a cycle among trimmed states.
	std::vector<char> color(n, 0); // 0 white, 1 on stack, 2 done
	std::vector<std::pair<State, Symbol>> stack;
	for (State root = 0; root < n; ++root) {
		if (!reach[root] || !back[root] || color[root] != 0)
			continue;
		stack.emplace_back(root, 0);
		color[root] = 1;
		while (!stack.empty()) {
			auto& [q, s] = stack.back();
			if (s == a.alphabet().size()) {
				color[q] = 2;
				stack.pop_back();
				continue;
			}
			State r = a.next(q, s++);
			if (!reach[r] || !back[r])
				continue;
			if (color[r] == 1)
				return false;
			if (color[r] == 0) {
				color[r] = 1;
				stack.emplace_back(r, 0);
			}
		}
	}
	return true;
}

Equivalence equivalent(const Dfa& a, const Dfa& b) {
	Dfa diff = product(a, b, BoolOp::exclusive_or);
	Emptiness e = is_empty(diff);
	return {e.empty, std::move(e.witness)};
}

Nfa eps_eliminate(const Nfa& a) {
	const State n = a.num_states();
	std::vector<std::vector<State>> eps(n);
	for (const auto& t : a.transitions())
		if (t.is_epsilon())
			eps[t.from].push_back(t.to);
	// ε-closure of every state.
	std::vector<std::vector<State>> closure(n);
	for (State q = 0; q < n; ++q) {
		std::vector<char> seen(n, 0);
		std::vector<State> stack{q};
		seen[q] = 1;
		while (!stack.empty()) {
			State p = stack.back();
			stack.pop_back();
			closure[q].push_back(p);
			for (State r : eps[p])
				if (!seen[r]) {
					seen[r] = 1;
					stack.push_back(r);
				}
		}
		std::sort(closure[q].begin(), closure[q].end());
	}
	std::vector<std::vector<std::pair<Symbol, State>>> out_edges(n);
	for (const auto& t : a.transitions())
		if (!t.is_epsilon())
			out_edges[t.from].emplace_back(t.symbol, t.to);

	Nfa out(a.base(), a.arity(), n);
	for (State q : a.initials())
		out.add_initial(q);
	std::vector<std::pair<Symbol, State>> edges;
	for (State q = 0; q < n; ++q) {
		edges.clear();
		bool final = false;
		for (State p : closure[q]) {
			final = final || a.is_final(p);
			edges.insert(edges.end(), out_edges[p].begin(), out_edges[p].end());
		}
		std::sort(edges.begin(), edges.end());
		edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
		for (auto [s, r] : edges)
			out.add_transition(q, s, r);
		if (final)
			out.set_final(q);
	}
	return out;
}

Nfa reverse(const Dfa& a) {
	Nfa out(a.base(), a.arity(), a.num_states());
	for (State q = 0; q < a.num_states(); ++q) {
		auto row = a.row(q);
		for (Symbol s = 0; s < row.size(); ++s)
			out.add_transition(row[s], s, q);
		if (a.is_final(q))
			out.add_initial(q);
	}
	out.set_final(a.initial());
	return out;
}

Dfa canonical_only(const Dfa& a) {
	// Second component: 0 = empty word so far, 1 = last symbol nonzero,
	// 2 = last symbol zero.
	const Symbol sigma = a.alphabet().size();
	std::vector<State> delta;
	std::vector<char> finals;
	const State n = a.num_states();
	delta.reserve(std::size_t(n) * 3 * sigma);
	for (State q = 0; q < n; ++q)
		for (State tag = 0; tag < 3; ++tag) {
			for (Symbol s = 0; s < sigma; ++s)
				delta.push_back(a.next(q, s) * 3 + (s == 0 ? 2 : 1));
			finals.push_back(a.is_final(q) && tag != 2 ? 1 : 0);
		}
	return Dfa(a.base(), a.arity(), n * 3, a.initial() * 3, std::move(delta), std::move(finals));
}

} // namespace autseq
