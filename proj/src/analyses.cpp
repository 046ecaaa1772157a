#include "autseq/analyses.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "autseq/error.hpp"

namespace autseq {

namespace {

struct KindInfo {
	MeasureKind kind;
	const char* name;
};

constexpr std::array<KindInfo, 16> kKinds{{
    {MeasureKind::subword_complexity, "subword-complexity"},
    {MeasureKind::palindrome_complexity, "palindrome-complexity"},
    {MeasureKind::unbordered_count, "unbordered-count"},
    {MeasureKind::square_count_at, "square-count-at"},
    {MeasureKind::longest_square_at, "longest-square-at"},
    {MeasureKind::palindrome_count_at, "palindrome-count-at"},
    {MeasureKind::longest_palindrome_at, "longest-palindrome-at"},
    {MeasureKind::longest_fractional_power_at, "longest-fractional-power-at"},
    {MeasureKind::recurrent_factor_count, "recurrent-factor-count"},
    {MeasureKind::factors_in_x_not_y, "factors-in-x-not-y"},
    {MeasureKind::factors_in_both, "factors-in-both"},
    {MeasureKind::recurrence_R, "recurrence-R"},
    {MeasureKind::appearance_A, "appearance-A"},
    {MeasureKind::separator_S, "separator-S"},
    {MeasureKind::repetitivity_I, "repetitivity-I"},
    {MeasureKind::permutation_complexity, "permutation-complexity"},
}};

// Building blocks. Bound variable names are passed in so that nested uses
// never capture each other's variables.

// s1[a..a+len-1] = s2[b..b+len-1]
std::string factor_eq(const std::string& s1, const std::string& a, const std::string& s2, const std::string& b,
                      const std::string& len, const std::string& u = "u") {
	return "(A " + u + " (" + u + " < " + len + ") => " + s1 + "[" + a + "+" + u + "] = " + s2 + "[" + b + "+" + u +
	       "])";
}

std::string factor_ne(const std::string& s1, const std::string& a, const std::string& s2, const std::string& b,
                      const std::string& len, const std::string& u = "u") {
	return "(E " + u + " (" + u + " < " + len + " & " + s1 + "[" + a + "+" + u + "] != " + s2 + "[" + b + "+" + u +
	       "]))";
}

// x[i..i+n-1] occurs at no earlier position.
std::string first_occurrence(const std::string& i, const std::string& n) {
	return "(A j (j < " + i + ") => " + factor_ne("x", i, "x", "j", n) + ")";
}

std::string palindrome(const std::string& s, const std::string& m) {
	return "(A pu, pv (pu + pv + 1 = " + m + ") => x[" + s + "+pu] = x[" + s + "+pv])";
}

std::string square(const std::string& s, const std::string& l) {
	return "(A su (su < " + l + ") => x[" + s + "+su] = x[" + s + "+" + l + "+su])";
}

// No border of length l with 1 <= l <= m/2 (a shortest border never exceeds that).
std::string unbordered(const std::string& s, const std::string& m) {
	return "(A bl, bv (1 <= bl & 2*bl <= " + m + " & bl + bv = " + m + ") => E bu (bu < bl & x[" + s +
	       "+bu] != x[" + s + "+bv+bu]))";
}

// Square with half length l starting at s, anchored at position p.
std::string square_anchor(Anchor a, const std::string& p) {
	switch (a) {
	case Anchor::center: return "s + l = " + p;
	case Anchor::end: return "s + 2*l = " + p + " + 1";
	default: return "s = " + p;
	}
}

// Object of length m starting at s, anchored at position p.
std::string span_anchor(Anchor a, const std::string& p) {
	switch (a) {
	case Anchor::center: return "(2*s + m = 2*" + p + " | 2*s + m = 2*" + p + " + 1)";
	case Anchor::end: return "s + m = " + p + " + 1";
	default: return "s = " + p;
	}
}

Anchor resolve(Anchor requested, const std::vector<Anchor>& allowed, const std::string& what) {
	if (requested == Anchor::none)
		return allowed.front();
	if (std::find(allowed.begin(), allowed.end(), requested) == allowed.end())
		throw PreconditionError(what + " does not take anchor '" + to_string(requested) + "'");
	return requested;
}

Environment environment(const Dfao& x, const Dfao* y, const Limits& limits) {
	Environment env;
	env.base = x.base();
	env.limits = limits;
	env.sequences.emplace("x", x);
	if (y) {
		if (y->base() != x.base())
			throw IncompatibleError("sequences have bases " + std::to_string(x.base()) + " and " +
			                        std::to_string(y->base()));
		env.sequences.emplace("y", *y);
	}
	return env;
}

// The compiled automaton with tracks in `order`; variables the formula does
// not mention become unconstrained tracks.
Dfa arrange(const Compiled& c, const std::vector<std::string>& order) {
	Dfa a = c.dfa;
	std::vector<std::string> vars = c.vars;
	for (auto& name : order)
		if (std::find(vars.begin(), vars.end(), name) == vars.end()) {
			a = inflate(a, unsigned(vars.size()));
			vars.push_back(name);
		}
	if (vars.size() != order.size())
		throw Error("internal: unexpected free variables");
	std::vector<unsigned> perm;
	for (auto& name : order)
		perm.push_back(unsigned(std::find(vars.begin(), vars.end(), name) - vars.begin()));
	return permute_tracks(a, perm);
}

const char* kLexLess = "E t (A l (l < t) => x[a+l] = x[b+l]) & x[a+t] < x[b+t]";

Natural least_accepted(const Dfa& a) {
	// Shortest canonical words first; within a length, try values in order.
	auto w = is_empty(a);
	if (w.empty)
		throw PreconditionError("no accepted value");
	Natural bound = decode_lsd(*w.witness);
	for (Natural n = 0; n < bound; ++n)
		if (a.accepts(encode_lsd(n, a.base())))
			return n;
	return bound;
}

} // namespace

std::string to_string(MeasureKind k) {
	for (auto& info : kKinds)
		if (info.kind == k)
			return info.name;
	return "?";
}

std::string to_string(Anchor a) {
	switch (a) {
	case Anchor::none: return "none";
	case Anchor::begin: return "begin";
	case Anchor::center: return "center";
	case Anchor::end: return "end";
	}
	return "?";
}

std::optional<MeasureKind> parse_measure_kind(const std::string& name) {
	for (auto& info : kKinds)
		if (name == info.name)
			return info.kind;
	return std::nullopt;
}

std::optional<Anchor> parse_anchor(const std::string& name) {
	for (Anchor a : {Anchor::none, Anchor::begin, Anchor::center, Anchor::end})
		if (name == to_string(a))
			return a;
	return std::nullopt;
}

const std::vector<MeasureKind>& all_measure_kinds() {
	static const std::vector<MeasureKind> kinds = [] {
		std::vector<MeasureKind> out;
		for (auto& info : kKinds)
			out.push_back(info.kind);
		return out;
	}();
	return kinds;
}

std::vector<Anchor> allowed_anchors(MeasureKind k) {
	switch (k) {
	case MeasureKind::square_count_at:
	case MeasureKind::longest_square_at:
	case MeasureKind::palindrome_count_at:
	case MeasureKind::longest_palindrome_at:
		return {Anchor::begin, Anchor::center, Anchor::end};
	case MeasureKind::longest_fractional_power_at:
		return {Anchor::begin, Anchor::end};
	default:
		return {Anchor::none};
	}
}

bool needs_second_sequence(MeasureKind k) {
	return k == MeasureKind::factors_in_x_not_y || k == MeasureKind::factors_in_both;
}

MeasurePredicate measure_predicate(const MeasureSpec& spec) {
	Anchor anchor = resolve(spec.anchor, allowed_anchors(spec.kind), to_string(spec.kind));
	const std::string first = first_occurrence("i", "n");
	switch (spec.kind) {
	case MeasureKind::subword_complexity:
		return {first, "n", "i", false};
	case MeasureKind::palindrome_complexity:
		return {palindrome("i", "n") + " & " + first, "n", "i", false};
	case MeasureKind::unbordered_count:
		return {unbordered("i", "n") + " & " + first, "n", "i", false};
	case MeasureKind::square_count_at:
		return {"1 <= l & E s (" + square_anchor(anchor, "n") + " & " + square("s", "l") + ")", "n", "l", false};
	case MeasureKind::longest_square_at:
		return {"E l, s (2*l > t & 1 <= l & " + square_anchor(anchor, "n") + " & " + square("s", "l") + ")", "n",
		        "t", true};
	case MeasureKind::palindrome_count_at:
		return {"1 <= m & E s (" + span_anchor(anchor, "n") + " & " + palindrome("s", "m") + ")", "n", "m", false};
	case MeasureKind::longest_palindrome_at:
		return {"E m, s (m > t & " + span_anchor(anchor, "n") + " & " + palindrome("s", "m") + ")", "n", "t", true};
	case MeasureKind::longest_fractional_power_at: {
		if (spec.p == 0 || spec.q == 0)
			throw PreconditionError("fractional exponent must be positive");
		std::string ratio = std::to_string(spec.q) + "*m >= " + std::to_string(spec.p) + "*d";
		return {"E m, s, d (m > t & 1 <= d & " + ratio + " & " + span_anchor(anchor, "n") +
		            " & (A fu (fu + d < m) => x[s+fu] = x[s+d+fu]))",
		        "n", "t", true};
	}
	case MeasureKind::recurrent_factor_count:
		return {first + " & (A rj E rk (rk > rj & " + factor_eq("x", "rk", "x", "i", "n", "ru") + "))", "n", "i",
		        false};
	case MeasureKind::factors_in_x_not_y:
		return {first + " & ~(E yj " + factor_eq("x", "i", "y", "yj", "n", "yu") + ")", "n", "i", false};
	case MeasureKind::factors_in_both:
		return {first + " & (E yj " + factor_eq("x", "i", "y", "yj", "n", "yu") + ")", "n", "i", false};
	case MeasureKind::recurrence_R:
		return {"E i, j A l (i <= l & l + n <= i + t) => " + factor_ne("x", "l", "x", "j", "n"), "n", "t", true};
	case MeasureKind::appearance_A:
		return {"E j A l (l + n <= t) => " + factor_ne("x", "l", "x", "j", "n"), "n", "t", true};
	case MeasureKind::separator_S:
		return {"E j (j < n & " + factor_eq("x", "n", "x", "j", "t") + ")", "n", "t", true};
	case MeasureKind::repetitivity_I:
		return {"~(E i, j (i < j & j <= i + t & " + factor_eq("x", "i", "x", "j", "n") + "))", "n", "t", true};
	case MeasureKind::permutation_complexity:
		return {"A j (j < i) => E l, m (l < n & m < n & ~($lt(i+l, i+m) <=> $lt(j+l, j+m)))", "n", "i", false};
	}
	throw Error("internal: unknown measure kind");
}

CountingRep measure(const Dfao& x, const MeasureSpec& spec, const Dfao* y, const Limits& limits) {
	if (needs_second_sequence(spec.kind) && !y)
		throw PreconditionError(to_string(spec.kind) + " needs a second sequence");
	MeasurePredicate pred = measure_predicate(spec);
	Environment env = environment(x, needs_second_sequence(spec.kind) ? y : nullptr, limits);
	if (spec.kind == MeasureKind::permutation_complexity)
		define_relation(env, "lt", {"a", "b"}, kLexLess);
	Dfa p = arrange(compile(pred.text, env), {pred.parameter, pred.counted});
	return pred.threshold ? count_measure(p, limits) : count_parameter(p, limits);
}

std::string to_string(IndicatorKind k) {
	switch (k) {
	case IndicatorKind::square: return "square";
	case IndicatorKind::overlap: return "overlap";
	case IndicatorKind::palindrome: return "palindrome";
	case IndicatorKind::unbordered: return "unbordered";
	}
	return "?";
}

std::vector<Anchor> allowed_anchors(IndicatorKind k) {
	switch (k) {
	case IndicatorKind::square:
	case IndicatorKind::palindrome:
		return {Anchor::begin, Anchor::center, Anchor::end};
	case IndicatorKind::overlap:
	case IndicatorKind::unbordered:
		return {Anchor::begin, Anchor::end};
	}
	return {};
}

Dfao indicator(const Dfao& x, IndicatorKind kind, Anchor anchor, const Limits& limits) {
	anchor = resolve(anchor, allowed_anchors(kind), to_string(kind));
	std::string text;
	switch (kind) {
	case IndicatorKind::square:
		text = "E l (1 <= l & E s (" + square_anchor(anchor, "n") + " & " + square("s", "l") + "))";
		break;
	case IndicatorKind::overlap:
		// length 2p+1 with period p
		text = "E p, s (1 <= p & " + std::string(anchor == Anchor::end ? "s + 2*p = n" : "s = n") +
		       " & A u (u <= p) => x[s+u] = x[s+p+u])";
		break;
	case IndicatorKind::palindrome:
		text = "E m, s (1 <= m & " + span_anchor(anchor, "n") + " & " + palindrome("s", "m") + ")";
		break;
	case IndicatorKind::unbordered:
		text = "E m, s (1 <= m & " + span_anchor(anchor, "n") + " & " + unbordered("s", "m") + ")";
		break;
	}
	Environment env = environment(x, nullptr, limits);
	return to_dfao(arrange(compile(text, env), {"n"}));
}

Compiled unbordered_lengths(const Dfao& x, const Limits& limits) {
	Environment env = environment(x, nullptr, limits);
	Compiled c = compile("E j A l (1 <= l & 2*l <= n) => E i (i < l & x[j+i] != x[j+n-l+i])", env);
	return {{"n"}, arrange(c, {"n"})};
}

Dfao unbordered_characteristic(const Dfao& x, const Limits& limits) {
	return to_dfao(unbordered_lengths(x, limits).dfa);
}

bool has_arbitrarily_large_unbordered(const Dfao& x, const Limits& limits) {
	return !is_finite(canonical_only(unbordered_lengths(x, limits).dfa));
}

bool has_unbounded_exponent(const Dfao& x, const Limits& limits) {
	// (n, j): some factor of length n + j has period j.
	Environment env = environment(x, nullptr, limits);
	Dfa s = arrange(compile("1 <= j & E i A t (t < n) => x[i+t] = x[i+j+t]", env), {"n", "j"});
	Dfa a = minimize(canonical_only(s));
	const TupleAlphabet& sigma = a.alphabet();
	State m = a.num_states();

	std::vector<char> reach(m, 0);
	std::vector<State> stack{a.initial()};
	reach[a.initial()] = 1;
	while (!stack.empty()) {
		State q = stack.back();
		stack.pop_back();
		for (Symbol sym = 0; sym < sigma.size(); ++sym)
			if (State r = a.next(q, sym); !reach[r]) {
				reach[r] = 1;
				stack.push_back(r);
			}
	}
	// Phase two: after the last nonzero j-digit, only symbols with j-digit 0.
	std::vector<std::vector<State>> fwd(m), bwd(m);
	std::vector<char> phase(m, 0);
	for (State q = 0; q < m; ++q) {
		if (!reach[q])
			continue;
		for (Symbol sym = 0; sym < sigma.size(); ++sym) {
			State r = a.next(q, sym);
			if (sigma.digit(sym, 1) != 0) {
				phase[r] = 1;
			} else {
				fwd[q].push_back(r);
				bwd[r].push_back(q);
			}
		}
	}
	for (State q = 0; q < m; ++q)
		if (phase[q])
			stack.push_back(q);
	while (!stack.empty()) {
		State q = stack.back();
		stack.pop_back();
		for (State r : fwd[q])
			if (!phase[r]) {
				phase[r] = 1;
				stack.push_back(r);
			}
	}
	std::vector<char> useful(m, 0);
	for (State q = 0; q < m; ++q)
		if (a.is_final(q)) {
			useful[q] = 1;
			stack.push_back(q);
		}
	while (!stack.empty()) {
		State q = stack.back();
		stack.pop_back();
		for (State r : bwd[q])
			if (!useful[r]) {
				useful[r] = 1;
				stack.push_back(r);
			}
	}
	// A cycle among phase-two states that can still accept means unbounded
	// suffixes after j runs out. Kahn's algorithm leaves cycle states behind.
	std::vector<std::size_t> indegree(m, 0);
	auto live = [&](State q) { return phase[q] && useful[q]; };
	for (State q = 0; q < m; ++q)
		if (live(q))
			for (State r : fwd[q])
				if (live(r))
					++indegree[r];
	std::size_t remaining = 0;
	for (State q = 0; q < m; ++q)
		if (live(q)) {
			++remaining;
			if (indegree[q] == 0)
				stack.push_back(q);
		}
	while (!stack.empty()) {
		State q = stack.back();
		stack.pop_back();
		--remaining;
		for (State r : fwd[q])
			if (live(r) && --indegree[r] == 0)
				stack.push_back(r);
	}
	return remaining > 0;
}

RecurrenceFlags recurrence_flags(const Dfao& x, const Limits& limits) {
	Environment env = environment(x, nullptr, limits);
	RecurrenceFlags f;
	f.recurrent = decide("A i, r E m (m > i & " + factor_eq("x", "i", "x", "m", "r") + ")", env).value;
	f.uniformly_recurrent =
	    decide("A r E t (t > 0 & A i E m (i < m & m < i + t & " + factor_eq("x", "i", "x", "m", "r") + "))", env)
	        .value;
	f.ultimately_periodic = decide("E p, N (p >= 1 & A n (n >= N) => x[n] = x[n+p])", env).value;
	return f;
}

FactorComparison factor_set_compare(const Dfao& x, const Dfao& y, const Limits& limits) {
	Environment env = environment(x, &y, limits);
	FactorComparison out;
	// lengths n at which some factor of `a` is missing from `b`
	auto missing = [&](const std::string& a, const std::string& b) {
		return arrange(compile("E i A j " + factor_ne(a, "i", b, "j", "n"), env), {"n"});
	};
	Dfa x_only = missing("x", "y"), y_only = missing("y", "x");
	out.x_subset_of_y = is_empty(x_only).empty;
	out.y_subset_of_x = is_empty(y_only).empty;
	out.equal = out.x_subset_of_y && out.y_subset_of_x;
	std::size_t q = std::max(x.num_states(), y.num_states());
	out.tower_bound = "2^(2^(2^(2*" + std::to_string(q) + "^2)))";
	if (out.equal)
		return out;
	std::optional<Natural> nx, ny;
	if (!out.x_subset_of_y)
		nx = least_accepted(x_only);
	if (!out.y_subset_of_x)
		ny = least_accepted(y_only);
	bool from_x = nx && (!ny || *nx <= *ny);
	Natural n = from_x ? *nx : *ny;
	out.distinguishing_length = n;
	out.factor_owner = from_x ? "x" : "y";
	std::string a = from_x ? "x" : "y", b = from_x ? "y" : "x";
	Dfa starts = arrange(compile("A j " + factor_ne(a, "i", b, "j", std::to_string(n)), env), {"i"});
	Natural i = decode_lsd(*is_empty(starts).witness);
	const Dfao& owner = from_x ? x : y;
	for (Natural t = 0; t < n; ++t)
		out.distinguishing_factor.push_back(owner.evaluate(i + t));
	return out;
}

LinearVerdict linear_complexity_check(const CountingRep& count) {
	LinearVerdict v{is_empty(count.parts.infinite).empty, 0, 0};
	if (!v.bounded)
		return v;
	// A representative (n, i) has at most nfa_states symbols past the end of
	// n: a longer B-run repeats a state, and pumping it would give infinitely
	// many i. So i < k^(len(n) + s), and k^len(n) <= k*n for n >= 1.
	unsigned k = count.rep.base();
	auto s = static_cast<unsigned long>(count.nfa_states);
	mpz_ui_pow_ui(v.intercept.get_mpz_t(), k, s);
	v.slope = v.intercept * k;
	return v;
}

Dfa permutation_order(const Dfao& x, const Limits& limits) {
	Environment env = environment(x, nullptr, limits);
	return arrange(compile("E t (A l (l < t) => x[i+l] = x[j+l]) & x[i+t] < x[j+t]", env), {"i", "j"});
}

namespace {

// Thompson construction for msd-first digit regexes.
class RegexParser {
public:
	RegexParser(const std::string& text, unsigned base) : s_(text), nfa_(base, 1, 0), base_(base) {}

	Nfa run() {
		auto [start, end] = alternation();
		if (pos_ != s_.size())
			fail("unexpected '" + std::string(1, s_[pos_]) + "'");
		nfa_.add_initial(start);
		nfa_.set_final(end);
		return std::move(nfa_);
	}

private:
	using Frag = std::pair<State, State>;

	[[noreturn]] void fail(const std::string& msg) const { throw ParseError("regex: " + msg, 1, pos_ + 1); }

	Frag alternation() {
		Frag f = concatenation();
		while (pos_ < s_.size() && s_[pos_] == '|') {
			++pos_;
			Frag g = concatenation();
			State a = nfa_.add_state(), b = nfa_.add_state();
			nfa_.add_epsilon(a, f.first);
			nfa_.add_epsilon(a, g.first);
			nfa_.add_epsilon(f.second, b);
			nfa_.add_epsilon(g.second, b);
			f = {a, b};
		}
		return f;
	}

	Frag concatenation() {
		State a = nfa_.add_state();
		Frag f{a, a};
		while (pos_ < s_.size() && s_[pos_] != '|' && s_[pos_] != ')') {
			Frag g = repetition();
			nfa_.add_epsilon(f.second, g.first);
			f.second = g.second;
		}
		return f;
	}

	Frag repetition() {
		Frag f = atom();
		while (pos_ < s_.size() && (s_[pos_] == '*' || s_[pos_] == '+' || s_[pos_] == '?')) {
			char op = s_[pos_++];
			State a = nfa_.add_state(), b = nfa_.add_state();
			nfa_.add_epsilon(a, f.first);
			nfa_.add_epsilon(f.second, b);
			if (op != '+')
				nfa_.add_epsilon(a, b);
			if (op != '?')
				nfa_.add_epsilon(f.second, f.first);
			f = {a, b};
		}
		return f;
	}

	Frag atom() {
		if (pos_ >= s_.size())
			fail("unexpected end");
		char c = s_[pos_];
		if (c == '(') {
			++pos_;
			Frag f = alternation();
			if (pos_ >= s_.size() || s_[pos_] != ')')
				fail("expected ')'");
			++pos_;
			return f;
		}
		State a = nfa_.add_state(), b = nfa_.add_state();
		if (c == '.') {
			for (Digit d = 0; d < base_; ++d)
				nfa_.add_transition(a, d, b);
		} else if (std::isdigit(static_cast<unsigned char>(c)) && Digit(c - '0') < base_) {
			nfa_.add_transition(a, Digit(c - '0'), b);
		} else {
			fail("bad digit '" + std::string(1, c) + "'");
		}
		++pos_;
		return {a, b};
	}

	std::string s_;
	std::size_t pos_ = 0;
	Nfa nfa_;
	unsigned base_;
};

} // namespace

Dfa msd_regex_lengths(const std::string& regex, unsigned base, const Limits& limits) {
	check_base(base);
	std::string compact;
	for (char c : regex)
		if (!std::isspace(static_cast<unsigned char>(c)))
			compact += c;
	Dfa msd = minimize(determinize(eps_eliminate(RegexParser(compact, base).run()), limits));
	Dfa lsd = minimize(determinize(reverse(msd), limits));
	return minimize(pad_closure(lsd, limits));
}

} // namespace autseq
