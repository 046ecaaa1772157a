#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

#include "autseq/error.hpp"
#include "autseq/logic.hpp"

namespace autseq {

unsigned Environment::effective_base() const {
	unsigned k = base;
	for (const auto& [name, seq] : sequences) {
		if (k == 0)
			k = seq.base();
		else if (seq.base() != k)
			throw IncompatibleError("sequence '" + name + "' has base " + std::to_string(seq.base()) +
			                        ", expected base " + std::to_string(k));
	}
	return k == 0 ? 2 : k;
}

namespace {

// Σ coeffs[v]·v + constant
struct Linear {
	std::map<std::string, long long> coeffs;
	long long constant = 0;
};

void accumulate(const Term& t, long long factor, Linear& out) {
	switch (t.kind) {
	case Term::Kind::variable:
		out.coeffs[t.name] += factor;
		break;
	case Term::Kind::constant:
		out.constant += factor * static_cast<long long>(t.value);
		break;
	case Term::Kind::sum:
		accumulate(*t.lhs, factor, out);
		accumulate(*t.rhs, factor, out);
		break;
	case Term::Kind::scaled:
		accumulate(*t.lhs, factor * static_cast<long long>(t.value), out);
		break;
	}
}

Linear linearize(const Term& t) {
	Linear out;
	accumulate(t, 1, out);
	std::erase_if(out.coeffs, [](const auto& kv) { return kv.second == 0; });
	return out;
}

long long floor_div(long long a, long long b) {
	long long q = a / b;
	if ((a % b != 0) && ((a < 0) != (b < 0)))
		--q;
	return q;
}

bool holds(Relop op, long long a, long long b) {
	switch (op) {
	case Relop::eq:
		return a == b;
	case Relop::ne:
		return a != b;
	case Relop::lt:
		return a < b;
	case Relop::le:
		return a <= b;
	case Relop::gt:
		return a > b;
	case Relop::ge:
		return a >= b;
	}
	return false;
}

// Explores states reachable from `start` and assembles a complete DFA.
template <typename Key, typename Hash, typename Step, typename Final>
Dfa explore(unsigned base, unsigned arity, const Key& start, Step step, Final is_final, const Limits& limits) {
	TupleAlphabet sigma(base, arity);
	std::unordered_map<Key, State, Hash> index;
	std::vector<Key> keys;
	std::vector<State> delta;
	std::vector<char> finals;
	auto intern = [&](const Key& k) {
		auto [it, inserted] = index.try_emplace(k, static_cast<State>(keys.size()));
		if (inserted) {
			if (keys.size() + 1 > limits.max_states)
				throw ResourceError("base automaton exceeds the state ceiling of " +
				                    std::to_string(limits.max_states));
			keys.push_back(k);
			finals.push_back(is_final(k) ? 1 : 0);
		}
		return it->second;
	};
	intern(start);
	std::vector<Digit> digits(arity);
	for (std::size_t cur = 0; cur < keys.size(); ++cur)
		for (Symbol s = 0; s < sigma.size(); ++s) {
			for (unsigned t = 0; t < arity; ++t)
				digits[t] = sigma.digit(s, t);
			Key next = step(keys[cur], digits);
			delta.push_back(intern(next));
		}
	return Dfa(base, arity, static_cast<State>(keys.size()), 0, std::move(delta), std::move(finals));
}

struct PairHash {
	std::size_t operator()(const std::pair<long long, int>& p) const {
		return std::hash<long long>()(p.first) * 31 + std::hash<int>()(p.second);
	}
};

struct VecHash {
	std::size_t operator()(const std::vector<long long>& v) const {
		std::size_t h = v.size();
		for (long long x : v)
			h = h * 1000003u ^ std::hash<long long>()(x);
		return h;
	}
};

} // namespace

Dfa linear_relation(unsigned base, const std::vector<long long>& coeffs, long long constant, Relop op,
                    const Limits& limits) {
	check_base(base);
	const long long k = base;
	// State: carry s and whether some emitted residue digit was nonzero.
	// After the whole word, D = low + k^len * s with 0 <= low < k^len, so
	// sign(D) = sign(s) unless s = 0, and D = 0 iff s = 0 and low = 0.
	const bool track_low = op != Relop::lt && op != Relop::ge;
	const bool absorbing = op == Relop::eq || op == Relop::ne;
	constexpr long long dead = std::numeric_limits<long long>::min();
	using Key = std::pair<long long, int>;
	auto step = [&](const Key& key, const std::vector<Digit>& d) -> Key {
		if (key.first == dead)
			return key;
		long long t = key.first;
		for (std::size_t v = 0; v < coeffs.size(); ++v)
			t += coeffs[v] * static_cast<long long>(d[v]);
		long long carry = floor_div(t, k);
		bool nonzero = t - carry * k != 0;
		if (absorbing && nonzero)
			return {dead, 0};
		return {carry, track_low && (key.second || nonzero) ? 1 : 0};
	};
	auto is_final = [&](const Key& key) {
		if (key.first == dead)
			return op == Relop::ne;
		int sign = key.first < 0 ? -1 : key.first > 0 ? 1 : (key.second ? 1 : 0);
		return holds(op, sign, 0);
	};
	return minimize(explore<Key, PairHash>(base, static_cast<unsigned>(coeffs.size()), Key{constant, 0}, step,
	                                       is_final, limits));
}

Dfao to_dfao(const Dfa& a) {
	if (a.arity() != 1)
		throw ArityError("a characteristic sequence needs an arity-1 automaton");
	std::vector<Output> outputs;
	for (State q = 0; q < a.num_states(); ++q)
		outputs.push_back(a.is_final(q) ? 1 : 0);
	return Dfao(a.base(), a.num_states(), a.initial(), a.table(), std::move(outputs));
}

namespace {

class Compiler {
public:
	explicit Compiler(const Environment& env) : env_(env), base_(env.effective_base()) {}

	Compiled run(const Formula& f) {
		switch (f.kind) {
		case Formula::Kind::truth:
			return {{}, f.truth ? Dfa::universal(base_, 0) : Dfa::empty(base_, 0)};
		case Formula::Kind::compare:
			return compare(f);
		case Formula::Kind::seq_compare:
			return sequence_atom(f);
		case Formula::Kind::relation:
			return relation(f);
		case Formula::Kind::negation: {
			Compiled c = run(*f.a);
			return {c.vars, complement(c.dfa)};
		}
		case Formula::Kind::conj:
			return combine(run(*f.a), run(*f.b), BoolOp::conj, false);
		case Formula::Kind::disj:
			return combine(run(*f.a), run(*f.b), BoolOp::disj, false);
		case Formula::Kind::implies:
			return combine(run(*f.a), run(*f.b), BoolOp::and_not, true);
		case Formula::Kind::iff:
			return combine(run(*f.a), run(*f.b), BoolOp::exclusive_or, true);
		case Formula::Kind::exists:
			return exists(run(*f.a), f.name);
		case Formula::Kind::forall: {
			Compiled body = run(*f.a);
			Compiled neg{body.vars, complement(body.dfa)};
			Compiled e = exists(std::move(neg), f.name);
			return {e.vars, complement(e.dfa)};
		}
		}
		throw Error("unknown formula kind");
	}

	Compiled exists(Compiled c, const std::string& var) {
		auto it = std::find(c.vars.begin(), c.vars.end(), var);
		if (it == c.vars.end())
			return c;
		unsigned track = static_cast<unsigned>(it - c.vars.begin());
		Dfa p = project_determinize(c.dfa, track, env_.limits);
		c.vars.erase(it);
		return {c.vars, minimize(pad_closure(minimize(p), env_.limits))};
	}

	Compiled align(const Compiled& c, const std::vector<std::string>& target) {
		Dfa d = c.dfa;
		for (unsigned p = 0; p < target.size(); ++p)
			if (!std::binary_search(c.vars.begin(), c.vars.end(), target[p]))
				d = inflate(d, p);
		return {target, std::move(d)};
	}

	Compiled combine(const Compiled& a, const Compiled& b, BoolOp op, bool negate) {
		std::vector<std::string> vars;
		std::set_union(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(), std::back_inserter(vars));
		Compiled x = align(a, vars);
		Compiled y = align(b, vars);
		Dfa d = minimize(product(x.dfa, y.dfa, op, env_.limits));
		return {vars, negate ? complement(d) : d};
	}

	Compiled compare(const Formula& f) {
		Linear l = linearize(*f.lhs);
		Linear r = linearize(*f.rhs);
		for (const auto& [v, c] : r.coeffs)
			l.coeffs[v] -= c;
		l.constant -= r.constant;
		std::erase_if(l.coeffs, [](const auto& kv) { return kv.second == 0; });
		std::vector<std::string> vars;
		std::vector<long long> coeffs;
		for (const auto& [v, c] : l.coeffs) {
			vars.push_back(v);
			coeffs.push_back(c);
		}
		return {vars, linear_relation(base_, coeffs, l.constant, f.op, env_.limits)};
	}

	const Dfao& sequence(const std::string& name, const Formula& f) {
		auto it = env_.sequences.find(name);
		if (it == env_.sequences.end())
			throw ParseError("unbound sequence '" + name + "'", f.pos.line, f.pos.column);
		return it->second;
	}

	// Reads the index tracks, adds them digit by digit with carries, and
	// feeds the sums to the DFAOs; at the end the pending carries are
	// flushed through the DFAOs before the outputs are compared.
	Compiled sequence_atom(const Formula& f) {
		struct Side {
			const Dfao* seq = nullptr;
			std::vector<long long> coeffs; // aligned with vars
			long long constant = 0;
			long long value = 0; // output constant when seq is null
		};
		std::set<std::string> names;
		std::vector<Linear> lin(2);
		const SeqOperand* ops[2] = {&f.left, &f.right};
		for (int s = 0; s < 2; ++s)
			if (ops[s]->sequence) {
				lin[s] = linearize(*ops[s]->index);
				for (const auto& [v, c] : lin[s].coeffs)
					names.insert(v);
			}
		std::vector<std::string> vars(names.begin(), names.end());
		Side sides[2];
		for (int s = 0; s < 2; ++s) {
			if (!ops[s]->sequence) {
				sides[s].value = ops[s]->constant;
				continue;
			}
			sides[s].seq = &sequence(*ops[s]->sequence, f);
			if (sides[s].seq->base() != base_)
				throw IncompatibleError("sequence '" + *ops[s]->sequence + "' has base " +
				                        std::to_string(sides[s].seq->base()) + ", expected base " +
				                        std::to_string(base_));
			sides[s].constant = lin[s].constant;
			for (const auto& v : vars) {
				auto it = lin[s].coeffs.find(v);
				sides[s].coeffs.push_back(it == lin[s].coeffs.end() ? 0 : it->second);
			}
		}
		const long long k = base_;
		// key: carry0, state0, carry1, state1
		using Key = std::vector<long long>;
		Key start{sides[0].constant, sides[0].seq ? sides[0].seq->initial() : 0, sides[1].constant,
		          sides[1].seq ? sides[1].seq->initial() : 0};
		auto step = [&](const Key& key, const std::vector<Digit>& d) {
			Key next = key;
			for (int s = 0; s < 2; ++s) {
				if (!sides[s].seq)
					continue;
				long long t = key[2 * s];
				for (std::size_t v = 0; v < d.size(); ++v)
					t += sides[s].coeffs[v] * static_cast<long long>(d[v]);
				next[2 * s] = t / k;
				next[2 * s + 1] = sides[s].seq->next(static_cast<State>(key[2 * s + 1]), static_cast<Digit>(t % k));
			}
			return next;
		};
		auto value = [&](const Key& key, int s) -> long long {
			if (!sides[s].seq)
				return sides[s].value;
			State q = static_cast<State>(key[2 * s + 1]);
			for (long long c = key[2 * s]; c != 0; c /= k)
				q = sides[s].seq->next(q, static_cast<Digit>(c % k));
			return sides[s].seq->output(q);
		};
		auto is_final = [&](const Key& key) { return holds(f.op, value(key, 0), value(key, 1)); };
		Dfa d = explore<Key, VecHash>(base_, static_cast<unsigned>(vars.size()), start, step, is_final, env_.limits);
		return {vars, minimize(d)};
	}

	Compiled relation(const Formula& f) {
		auto it = env_.relations.find(f.name);
		if (it == env_.relations.end())
			throw ParseError("unknown relation '$" + f.name + "'", f.pos.line, f.pos.column);
		const Relation& rel = it->second;
		if (rel.params.size() != f.args.size())
			throw ArityError("relation '$" + f.name + "' takes " + std::to_string(rel.params.size()) +
			                 " arguments, got " + std::to_string(f.args.size()));
		if (rel.dfa.base() != base_)
			throw IncompatibleError("relation '$" + f.name + "' has base " + std::to_string(rel.dfa.base()));
		std::vector<std::string> names;
		std::vector<std::pair<std::string, TermPtr>> definitions;
		for (const auto& arg : f.args) {
			if (arg->kind == Term::Kind::variable &&
			    std::find(names.begin(), names.end(), arg->name) == names.end()) {
				names.push_back(arg->name);
			} else {
				std::string fresh = "#r" + std::to_string(++fresh_);
				names.push_back(fresh);
				definitions.emplace_back(fresh, arg);
			}
		}
		std::vector<std::string> sorted = names;
		std::sort(sorted.begin(), sorted.end());
		std::vector<unsigned> perm;
		for (const auto& n : sorted)
			perm.push_back(static_cast<unsigned>(std::find(names.begin(), names.end(), n) - names.begin()));
		Compiled out{sorted, minimize(permute_tracks(rel.dfa, perm))};
		for (const auto& [fresh, term] : definitions) {
			Formula eq;
			eq.kind = Formula::Kind::compare;
			eq.lhs = Term::var(fresh);
			eq.op = Relop::eq;
			eq.rhs = term;
			out = combine(out, compare(eq), BoolOp::conj, false);
		}
		for (const auto& [fresh, term] : definitions)
			out = exists(std::move(out), fresh);
		return out;
	}

	unsigned base() const { return base_; }

private:
	const Environment& env_;
	unsigned base_;
	int fresh_ = 0;
};

} // namespace

Compiled compile(const Formula& f, const Environment& env) { return Compiler(env).run(f); }

Compiled compile(const std::string& text, const Environment& env) { return compile(*parse_formula(text), env); }

void define_relation(Environment& env, const std::string& name, const std::vector<std::string>& params,
                     const std::string& text) {
	Compiled c = compile(text, env);
	for (const auto& v : c.vars)
		if (std::find(params.begin(), params.end(), v) == params.end())
			throw PreconditionError("relation '$" + name + "' has unlisted free variable '" + v + "'");
	std::vector<std::string> sorted = params;
	std::sort(sorted.begin(), sorted.end());
	if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
		throw PreconditionError("relation '$" + name + "' lists a parameter twice");
	Compiler aligner(env);
	Compiled full = aligner.align(c, sorted);
	// full tracks follow `sorted`; reorder to `params`.
	std::vector<unsigned> perm;
	for (const auto& p : params)
		perm.push_back(static_cast<unsigned>(std::lower_bound(sorted.begin(), sorted.end(), p) - sorted.begin()));
	env.relations.insert_or_assign(name, Relation{params, minimize(permute_tracks(full.dfa, perm))});
}

Decision decide(const Formula& f, const Environment& env) {
	auto free = free_variables(f);
	if (!free.empty())
		throw PreconditionError("formula is not a sentence: variable '" + free.front() + "' is unbound");
	const Formula* body = &f;
	std::vector<std::string> block;
	Formula::Kind kind = f.kind;
	if (kind == Formula::Kind::exists || kind == Formula::Kind::forall)
		while (body->kind == kind && std::find(block.begin(), block.end(), body->name) == block.end()) {
			block.push_back(body->name);
			body = body->a.get();
		}
	Compiler compiler(env);
	Compiled c = compiler.run(*body);
	Decision out{};
	if (block.empty()) {
		out.value = c.dfa.is_final(c.dfa.initial());
		out.states = c.dfa.num_states();
		return out;
	}
	const bool universal = kind == Formula::Kind::forall;
	Dfa target = universal ? complement(c.dfa) : c.dfa;
	out.states = target.num_states();
	Emptiness e = is_empty(target);
	out.value = universal ? e.empty : !e.empty;
	if (!e.empty) {
		out.counterexample = universal;
		std::vector<Natural> values =
			c.vars.empty() ? std::vector<Natural>{} : decode_tuple(*e.witness);
		for (const auto& v : block) {
			auto it = std::find(c.vars.begin(), c.vars.end(), v);
			out.assignment.emplace_back(v, it == c.vars.end() ? 0 : values[it - c.vars.begin()]);
		}
	}
	return out;
}

Decision decide(const std::string& text, const Environment& env) { return decide(*parse_formula(text), env); }

Dfao characteristic(const Formula& f, const Environment& env) {
	auto free = free_variables(f);
	if (free.size() != 1)
		throw ArityError("a characteristic sequence needs exactly one free variable, got " +
		                 std::to_string(free.size()));
	Compiled c = compile(f, env);
	if (c.vars.empty())
		// The variable occurs but does not matter.
		return to_dfao(inflate(c.dfa, 0));
	return to_dfao(c.dfa);
}

Dfao characteristic(const std::string& text, const Environment& env) {
	return characteristic(*parse_formula(text), env);
}

} // namespace autseq
