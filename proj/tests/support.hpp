#ifndef AUTSEQ_TESTS_SUPPORT_HPP
#define AUTSEQ_TESTS_SUPPORT_HPP

#include <functional>
#include <map>
#include <vector>

#include "autseq/automata.hpp"

namespace testing {

using namespace autseq;

// Every word of length <= max_len over Σ_k^r.
inline std::vector<DigitWord> all_words(unsigned base, unsigned arity, std::size_t max_len) {
	std::vector<DigitWord> out{DigitWord(base, arity)};
	TupleAlphabet sigma(base, arity);
	std::size_t begin = 0;
	for (std::size_t len = 1; len <= max_len; ++len) {
		std::size_t end = out.size();
		for (std::size_t i = begin; i < end; ++i)
			for (Symbol s = 0; s < sigma.size(); ++s) {
				DigitWord w = out[i];
				auto d = sigma.decode(s);
				w.push_back(d);
				out.push_back(std::move(w));
			}
		begin = end;
	}
	return out;
}

// Trie automaton accepting exactly the given words.
inline Dfa words_dfa(unsigned base, unsigned arity, const std::vector<DigitWord>& words) {
	TupleAlphabet sigma(base, arity);
	std::vector<std::map<Symbol, State>> children(2); // 0 = sink, 1 = root
	std::vector<char> finals(2, 0);
	for (const auto& w : words) {
		State q = 1;
		for (std::size_t i = 0; i < w.size(); ++i) {
			Symbol s = sigma.encode(w.symbol(i));
			auto it = children[q].find(s);
			if (it == children[q].end()) {
				State fresh = static_cast<State>(children.size());
				children.emplace_back();
				finals.push_back(0);
				children[q][s] = fresh;
				q = fresh;
			} else {
				q = it->second;
			}
		}
		finals[q] = 1;
	}
	std::vector<State> delta;
	for (State q = 0; q < children.size(); ++q)
		for (Symbol s = 0; s < sigma.size(); ++s) {
			auto it = children[q].find(s);
			delta.push_back(it == children[q].end() ? 0 : it->second);
		}
	return Dfa(base, arity, static_cast<State>(children.size()), 1, std::move(delta), std::move(finals));
}

// Minimal DFA for the words whose decoded value tuple satisfies `pred`,
// built from a finite sample and closed under padding. Only valid when the
// accepted tuples all have canonical length <= max_len.
inline Dfa value_dfa(unsigned base, unsigned arity, std::size_t max_len,
                     const std::function<bool(const std::vector<Natural>&)>& pred) {
	std::vector<DigitWord> words;
	for (auto& w : all_words(base, arity, max_len)) {
		bool canonical = w.empty();
		if (!w.empty())
			for (Digit d : w.symbol(w.size() - 1))
				canonical = canonical || d != 0;
		if (canonical && pred(decode_tuple(w)))
			words.push_back(w);
	}
	return minimize(pad_closure(words_dfa(base, arity, words)));
}

} // namespace testing

#endif
