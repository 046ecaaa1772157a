#include "acceptance.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <regex>
#include <sstream>

#include "autseq/analyses.hpp"
#include "autseq/error.hpp"
#include "autseq/oracle.hpp"

namespace autseq::acceptance {

namespace {

struct Outcome {
	bool pass = true;
	std::string summary;
	std::vector<std::string> details;

	void fail(const std::string& why) {
		if (pass)
			summary = why;
		pass = false;
		details.push_back(why);
	}
	void note(const std::string& line) { details.push_back(line); }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
	return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt_seconds(double s) {
	std::ostringstream os;
	os.precision(3);
	os << std::fixed << s << " s";
	return os.str();
}

std::uint64_t finite_value(const CountingRep& c, Natural n) {
	Scalar s = c.rep.evaluate(n);
	if (!s.is_natural())
		throw Error("value at " + std::to_string(n) + " is " + s.str());
	return s.rational().get_num().get_ui();
}

const oracle::PrefixContext& tm_prefix() {
	static const oracle::PrefixContext ctx = oracle::context(thue_morse(), 10000);
	return ctx;
}

// Engine against oracle for n = 0..max_n; records the first mismatch.
void compare_measure(Outcome& o, const MeasureSpec& spec, Natural max_n, const Limits& limits) {
	auto start = Clock::now();
	CountingRep c = measure(thue_morse(), spec, nullptr, limits);
	for (Natural n = 0; n <= max_n; ++n) {
		std::uint64_t engine = finite_value(c, n), brute = oracle::brute(spec, tm_prefix(), n);
		if (engine != brute) {
			o.fail(to_string(spec.kind) + " differs at n = " + std::to_string(n) + ": engine " +
			       std::to_string(engine) + ", oracle " + std::to_string(brute));
			return;
		}
	}
	o.note(to_string(spec.kind) + ": n <= " + std::to_string(max_n) + " agree (rank " +
	       std::to_string(c.rep.rank()) + ", " + fmt_seconds(seconds_since(start)) + ")");
}

// 1 ---------------------------------------------------------------------

Outcome thue_morse_prefix(const Limits&) {
	Outcome o;
	auto start = Clock::now();
	std::string t = "0";
	while (t.size() < 10000) {
		std::string next;
		for (char c : t)
			next += c == '0' ? "01" : "10";
		t = std::move(next);
	}
	Dfao tm = thue_morse();
	auto p = prefix(tm, 10000);
	for (Natural n = 0; n < 10000; ++n)
		if (p[n] != Output(t[n] - '0') || tm.evaluate(n) != p[n]) {
			o.fail("mismatch at n = " + std::to_string(n));
			return o;
		}
	std::string head;
	for (Natural n = 0; n < 12; ++n)
		head += char('0' + p[n]);
	if (head != "011010011001")
		o.fail("prefix is " + head);
	double s = seconds_since(start);
	if (s >= 1.0)
		o.fail("took " + fmt_seconds(s));
	o.summary = o.pass ? "n < 10^4 match the morphism, prefix 011010011001 (" + fmt_seconds(s) + ")" : o.summary;
	return o;
}

// 2 ---------------------------------------------------------------------

Outcome squares_and_overlaps(const Limits& limits) {
	Outcome o;
	Environment env;
	env.sequences.emplace("x", thue_morse());
	env.limits = limits;
	auto timed = [&](const std::string& text) {
		auto start = Clock::now();
		Decision d = decide(text, env);
		double s = seconds_since(start);
		if (s >= 30)
			o.fail("'" + text + "' took " + fmt_seconds(s));
		return std::make_pair(d, s);
	};
	auto [sq, t_sq] = timed("E i, n (n >= 1 & A t (t < n) => x[i+t] = x[i+n+t])");
	auto [ov, t_ov] = timed("E i, n (n >= 1 & A t (t <= n) => x[i+t] = x[i+n+t])");
	if (!sq.value)
		o.fail("square existence decided FALSE");
	if (ov.value)
		o.fail("overlap existence decided TRUE");

	oracle::PrefixContext big = oracle::context(thue_morse(), 100000);
	const auto& w = big.word();
	if (sq.value) {
		std::map<std::string, Natural> a(sq.assignment.begin(), sq.assignment.end());
		Natural i = a["i"], n = a["n"];
		if (n == 0 || !std::equal(w.begin() + i, w.begin() + i + n, w.begin() + i + n))
			o.fail("witness (i, n) = (" + std::to_string(i) + ", " + std::to_string(n) + ") is not a square");
		else
			o.note("square witness i = " + std::to_string(i) + ", n = " + std::to_string(n));
	}
	if (oracle::find_square(big) < 0)
		o.fail("oracle finds no square in a 10^5 prefix");
	if (long long at = oracle::find_overlap(big); at >= 0)
		o.fail("oracle finds an overlap at " + std::to_string(at));
	if (o.pass)
		o.summary = "square TRUE (" + fmt_seconds(t_sq) + "), overlap FALSE (" + fmt_seconds(t_ov) +
		            "), oracle agrees on a 10^5 prefix";
	return o;
}

// 3 ---------------------------------------------------------------------

Outcome unbordered_characteristic_check(const Limits& limits) {
	Outcome o;
	auto start = Clock::now();
	Dfao b = unbordered_characteristic(thue_morse(), limits);
	for (Natural n = 0; n <= 500; ++n)
		if (n % 6 != 1 && b.evaluate(n) != 1)
			o.fail("b(" + std::to_string(n) + ") = 0");
	if (b.evaluate(31) != 1)
		o.fail("b(31) = 0");
	auto w = prefix(thue_morse(), 70);
	std::string f;
	for (Natural i = 39; i <= 69; ++i)
		f += char('0' + w[i]);
	if (f != "0011010010110100110010110100101")
		o.fail("t[39..69] = " + f);
	for (std::size_t l = 1; l < f.size(); ++l)
		if (f.compare(0, l, f, f.size() - l, l) == 0)
			o.fail("t[39..69] has a border of length " + std::to_string(l));
	double s = seconds_since(start);
	if (s >= 300)
		o.fail("took " + fmt_seconds(s));
	if (o.pass)
		o.summary = "b(n) = 1 for n <= 500, n != 1 mod 6; b(31) = 1 via t[39..69] (" + fmt_seconds(s) + ")";
	return o;
}

// 4 ---------------------------------------------------------------------

Outcome unbordered_table(const Limits& limits) {
	Outcome o;
	auto start = Clock::now();
	CountingRep c = measure(thue_morse(), {MeasureKind::unbordered_count}, nullptr, limits);
	const std::vector<std::uint64_t> table{2, 2, 4, 2, 4, 6, 0, 4, 4, 4, 4, 12, 0, 4, 4, 8};
	std::string row;
	for (Natural n = 1; n <= 16; ++n) {
		std::uint64_t v = finite_value(c, n);
		row += (n > 1 ? "," : "") + std::to_string(v);
		if (v != table[n - 1])
			o.fail("f(" + std::to_string(n) + ") = " + std::to_string(v) + ", expected " +
			       std::to_string(table[n - 1]));
	}
	double s = seconds_since(start);
	if (s >= 600)
		o.fail("took " + fmt_seconds(s));
	if (o.pass)
		o.summary = "f(1..16) = " + row + " (" + fmt_seconds(s) + ")";
	return o;
}

// 5 ---------------------------------------------------------------------

Outcome conjecture(const Limits& limits) {
	Outcome o;
	auto start = Clock::now();
	Compiled lengths = unbordered_lengths(thue_morse(), limits);
	Dfa bordered_only = minimize(complement(lengths.dfa));
	Dfa regex = msd_regex_lengths("1(01*0)*10*1", 2, limits);

	// Sample with an unrelated matcher before the exact comparison.
	std::regex pattern("1(01*0)*10*1");
	std::optional<Natural> sample_mismatch;
	for (Natural n = 0; n < 10000 && !sample_mismatch; ++n) {
		bool in_regex = std::regex_match(to_msd_string(n, 2), pattern);
		if (bordered_only.accepts(encode_lsd(n, 2)) != in_regex)
			sample_mismatch = n;
	}
	Equivalence eq = equivalent(bordered_only, regex);
	double s = seconds_since(start);
	o.note("sample n < 10^4: " + (sample_mismatch ? "mismatch at " + std::to_string(*sample_mismatch)
	                                                : std::string("no mismatch")));
	std::string verdict;
	if (eq.equivalent) {
		verdict = "EQUIVALENT";
		if (sample_mismatch)
			o.fail("exact check says equivalent but the sample differs at " + std::to_string(*sample_mismatch));
	} else {
		Natural n = decode_lsd(*eq.counterexample);
		verdict = "NOT EQUIVALENT, counterexample n = " + std::to_string(n);
		bool in_regex = std::regex_match(to_msd_string(n, 2), pattern);
		if (bordered_only.accepts(encode_lsd(n, 2)) == in_regex)
			o.fail("counterexample " + std::to_string(n) + " does not separate the languages");
	}
	if (s >= 1800)
		o.fail("took " + fmt_seconds(s));
	if (o.pass)
		o.summary = verdict + " (automata of " + std::to_string(bordered_only.num_states()) + " and " +
		            std::to_string(regex.num_states()) + " states, " + fmt_seconds(s) + ")";
	return o;
}

// 6 ---------------------------------------------------------------------

const std::vector<std::string>& conjectured_relations() {
	static const std::vector<std::string> r{
	    "f(4n+1) = f(2n+1)",
	    "f(8n+2) = f(2n+1) - 8f(4n) + f(4n+3) + 4f(8n)",
	    "f(8n+3) = 2f(2n) - f(2n+1) + 5f(4n) + f(4n+2) - 3f(8n)",
	    "f(8n+4) = -4f(4n) + 2f(4n+2) + 2f(8n)",
	    "f(8n+6) = 2f(2n) - f(2n+1) + f(4n) + f(4n+2) + f(4n+3) - f(8n)",
	    "f(16n) = -2f(4n) + 3f(8n)",
	    "f(16n+7) = -2f(2n) + f(2n+1) - 5f(4n) + f(4n+2) + 3f(8n)",
	    "f(16n+8) = -8f(4n) + 4f(4n+2) + 4f(8n)",
	    "f(16n+15) = -8f(4n) + 2f(4n+3) + 4f(8n) + f(8n+7)",
	};
	return r;
}

Outcome recurrences(const Limits& limits) {
	Outcome o;
	CountingRep c = measure(thue_morse(), {MeasureKind::unbordered_count}, nullptr, limits);
	int held = 0;
	for (const auto& text : conjectured_relations()) {
		bool ok = verify_relation(c.rep, parse_kernel_relation(text, 2));
		held += ok;
		o.note(std::string(ok ? "holds: " : "fails: ") + text);
		if (!ok)
			o.fail("relation fails: " + text);
	}
	KernelReport k = kernel_relations(c.rep, 4);
	o.note("kernel exploration to depth 4: basis of " + std::to_string(k.basis.size()) + ", " +
	       std::to_string(k.relations.size()) + " relations, " + (k.closed ? "closed" : "not closed"));
	if (o.pass)
		o.summary = std::to_string(held) + "/9 relations hold exactly";
	return o;
}

// 7-9 -------------------------------------------------------------------

Outcome complexities(const Limits& limits) {
	Outcome o;
	auto start = Clock::now();
	compare_measure(o, {MeasureKind::subword_complexity}, 100, limits);
	compare_measure(o, {MeasureKind::palindrome_complexity}, 64, limits);
	double s = seconds_since(start);
	if (s >= 300)
		o.fail("took " + fmt_seconds(s));
	if (o.pass)
		o.summary = "subword n <= 100, palindrome n <= 64 agree with the oracle (" + fmt_seconds(s) + ")";
	return o;
}

Outcome window_measures(const Limits& limits) {
	Outcome o;
	auto start = Clock::now();
	for (MeasureKind k : {MeasureKind::recurrence_R, MeasureKind::appearance_A, MeasureKind::separator_S,
	                      MeasureKind::repetitivity_I})
		compare_measure(o, {k}, 20, limits);
	double s = seconds_since(start);
	if (s >= 600)
		o.fail("took " + fmt_seconds(s));
	if (o.pass)
		o.summary = "R, A, S, I agree with the oracle for n <= 20 (" + fmt_seconds(s) + ")";
	return o;
}

Outcome permutations(const Limits& limits) {
	Outcome o;
	auto start = Clock::now();
	compare_measure(o, {MeasureKind::permutation_complexity}, 12, limits);
	if (o.pass)
		o.summary = "permutation complexity agrees with the oracle for n <= 12 (" +
		            fmt_seconds(seconds_since(start)) + ")";
	return o;
}

// 10 --------------------------------------------------------------------

Outcome representations(const Limits& limits) {
	Outcome o;
	LinRep binary = representation_count({0, 1}, 2, limits);
	for (Natural n = 0; n <= 1000; ++n)
		if (!(binary.evaluate(n) == Scalar(1L))) {
			o.fail("b_2(" + std::to_string(n) + ") = " + binary.evaluate(n).str());
			break;
		}
	// Every word over {0,1,2} of length <= 9 with nonzero last digit.
	std::vector<long> brute(201, 0);
	brute[0] = 1; // empty word
	std::vector<std::pair<long, long>> frontier{{0, 1}}; // (value, weight 2^len)
	for (int len = 1; len <= 9; ++len) {
		std::vector<std::pair<long, long>> next;
		for (auto [v, p] : frontier)
			for (long d = 0; d <= 2; ++d) {
				long value = v + d * p;
				if (d != 0 && value <= 200)
					++brute[value];
				next.emplace_back(value, 2 * p);
			}
		frontier = std::move(next);
	}
	LinRep hyper = representation_count({0, 1, 2}, 2, limits);
	for (Natural n = 0; n <= 200; ++n)
		if (!(hyper.evaluate(n) == Scalar(brute[n]))) {
			o.fail("E = {0,1,2}: n = " + std::to_string(n) + " gives " + hyper.evaluate(n).str() + ", brute " +
			       std::to_string(brute[n]));
			break;
		}
	if (o.pass)
		o.summary = "b_2(n) = 1 for n <= 1000; E = {0,1,2} matches enumeration for n <= 200";
	return o;
}

// 11 --------------------------------------------------------------------

std::vector<DigitWord> words(unsigned base, std::size_t max_len) {
	std::vector<DigitWord> out{DigitWord(base, 1)};
	for (std::size_t i = 0; i < out.size(); ++i) {
		if (out[i].size() == max_len)
			continue;
		for (Digit d = 0; d < base; ++d) {
			DigitWord w = out[i];
			w.push_back({d});
			out.push_back(std::move(w));
		}
	}
	return out;
}

DigitWord zeros_then(std::size_t i, const DigitWord& w) {
	DigitWord out(w.base(), 1);
	for (std::size_t k = 0; k < i; ++k)
		out.push_back({0});
	for (std::size_t k = 0; k < w.size(); ++k)
		out.push_back({w.at(k, 0)});
	return out;
}

DigitWord then_zeros(const DigitWord& w, std::size_t i) {
	DigitWord out = w;
	for (std::size_t k = 0; k < i; ++k)
		out.push_back({0});
	return out;
}

NatInf to_natinf(const Scalar& s) {
	if (s.is_infinite())
		return NatInf::infinity();
	if (!s.is_natural())
		throw Error("non-natural entry " + s.str());
	return NatInf(Nat(s.rational().get_num()));
}

// Dense N∞ matrix products from the raw entries.
NatInf dense_eval(const LinRep& l, const DigitWord& w) {
	std::size_t r = l.rank();
	std::vector<NatInf> x(r);
	for (std::size_t i = 0; i < r; ++i)
		x[i] = to_natinf(l.u()[i]);
	for (std::size_t p = 0; p < w.size(); ++p) {
		std::vector<NatInf> y(r);
		for (std::size_t i = 0; i < r; ++i)
			for (std::size_t j = 0; j < r; ++j)
				y[j] += x[i] * to_natinf(l.mu(w.at(p, 0), i, j));
		x = std::move(y);
	}
	NatInf s;
	for (std::size_t i = 0; i < r; ++i)
		s += x[i] * to_natinf(l.v()[i]);
	return s;
}

LinRep random_rep(std::mt19937& rng, unsigned base, bool with_inf) {
	std::size_t r = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
	std::uniform_int_distribution<long> entry(0, 3);
	auto draw = [&]() -> Scalar {
		long x = entry(rng);
		if (with_inf && x == 3)
			return std::uniform_int_distribution<int>(0, 2)(rng) == 0 ? Scalar::infinity() : Scalar(0L);
		return Scalar(x);
	};
	std::vector<Scalar> u(r), v(r);
	std::vector<std::vector<Scalar>> mu(base, std::vector<Scalar>(r * r));
	for (auto& x : u)
		x = draw();
	for (auto& x : v)
		x = draw();
	for (auto& m : mu)
		for (auto& x : m)
			x = draw();
	return LinRep(with_inf ? Semiring::natinf : Semiring::nat, base, u, mu, v);
}

Nfa random_eps_nfa(std::mt19937& rng) {
	unsigned n = std::uniform_int_distribution<unsigned>(1, 4)(rng);
	Nfa a(2, 1, n);
	std::uniform_int_distribution<unsigned> state(0, n - 1), mult(1, 2), coin(0, 3);
	a.add_initial(state(rng));
	for (State q = 0; q < n; ++q) {
		if (coin(rng) == 0)
			a.set_final(q);
		for (Symbol s = 0; s < 2; ++s)
			for (State r = 0; r < n; ++r)
				if (coin(rng) == 0)
					a.add_transition(q, s, NatInf(long(mult(rng))), r);
		if (coin(rng) != 0)
			a.add_epsilon(q, state(rng), NatInf(long(mult(rng))));
	}
	return a;
}

// Accepting paths using at most `budget` ε-moves in total.
Nat bounded_paths(const Nfa& a, const DigitWord& w, std::size_t budget) {
	std::size_t n = a.num_states();
	using Layer = std::vector<std::vector<Nat>>;
	Layer cur(budget + 1, std::vector<Nat>(n));
	for (State q : a.initials())
		cur[0][q] += 1;
	auto close = [&](Layer& l) {
		for (std::size_t e = 0; e < budget; ++e)
			for (auto& t : a.transitions())
				if (t.is_epsilon() && l[e][t.from] != 0)
					l[e + 1][t.to] += l[e][t.from] * t.multiplicity.finite();
	};
	close(cur);
	for (std::size_t p = 0; p < w.size(); ++p) {
		Layer next(budget + 1, std::vector<Nat>(n));
		for (std::size_t e = 0; e <= budget; ++e)
			for (auto& t : a.transitions())
				if (!t.is_epsilon() && t.symbol == w.at(p, 0) && cur[e][t.from] != 0)
					next[e][t.to] += cur[e][t.from] * t.multiplicity.finite();
		close(next);
		cur = std::move(next);
	}
	Nat total = 0;
	for (auto& layer : cur)
		for (State q = 0; q < n; ++q)
			total += layer[q] * a.final_weight(q).finite();
	return total;
}

// Exhaustive count: if allowing more ε-moves than any cycle-free path needs
// still changes the total, some ε-cycle can be pumped.
NatInf all_paths(const Nfa& a, const DigitWord& w) {
	std::size_t n = a.num_states();
	std::size_t c1 = (n + 1) * (w.size() + 1), c2 = c1 + n + 1;
	Nat low = bounded_paths(a, w, c1), high = bounded_paths(a, w, c2);
	return low == high ? NatInf(low) : NatInf::infinity();
}

Outcome property_suites(const Limits& limits) {
	Outcome o;
	auto start = Clock::now();
	auto lap = start;
	std::mt19937 rng(20240611);
	std::map<unsigned, std::vector<DigitWord>> canonical;
	for (unsigned base : {2u, 3u})
		for (auto& w : words(base, 5))
			if (w.empty() || w.at(0, 0) != 0)
				canonical[base].push_back(w); // first digit read is nonzero

	int checks = 0;
	for (int trial = 0; trial < 100 && o.pass; ++trial) {
		unsigned base = 2 + trial % 2;
		LinRep f = random_rep(rng, base, false);
		LinRep g = normalize_leading(f);
		LinRep h = normalize_trailing(f);
		for (auto& w : canonical[base]) {
			// reversed, w ends in a nonzero digit
			DigitWord rev(base, 1);
			for (std::size_t k = w.size(); k-- > 0;)
				rev.push_back({w.at(k, 0)});
			for (std::size_t i = 0; i <= 3; ++i) {
				++checks;
				if (!(dense_eval(g, zeros_then(i, w)) == dense_eval(f, w))) {
					o.fail("leading-zero contract fails (trial " + std::to_string(trial) + ")");
					break;
				}
				if (!(dense_eval(h, then_zeros(rev, i)) == dense_eval(f, rev))) {
					o.fail("trailing-zero contract fails (trial " + std::to_string(trial) + ")");
					break;
				}
			}
		}
	}
	o.note("zero-padding contracts: 100 representations, " + std::to_string(checks) + " word checks (" +
	       fmt_seconds(seconds_since(lap)) + ")");
	lap = Clock::now();

	auto eight = words(2, 8);
	for (int trial = 0; trial < 100 && o.pass; ++trial) {
		LinRep l = random_rep(rng, 2, false);
		LinRep back = linrep_from_nfa(nfa_from_linrep(l));
		for (auto& w : eight)
			if (!w.empty() && !(to_natinf(back.evaluate(w)) == dense_eval(l, w))) {
				o.fail("NFA round trip differs on " + w.str() + " (trial " + std::to_string(trial) + ")");
				break;
			}
	}
	o.note("NFA/linear representation round trip: 100 instances, nonempty words up to length 8 (" +
	       fmt_seconds(seconds_since(lap)) + ")");
	lap = Clock::now();

	auto four = words(2, 4);
	int infinite = 0;
	for (int trial = 0; trial < 50 && o.pass; ++trial) {
		Nfa a = random_eps_nfa(rng);
		LinRep l = linrep_from_nfa(eps_saturate(a));
		for (auto& w : four) {
			NatInf expect = all_paths(a, w);
			infinite += expect.is_infinite();
			if (!(dense_eval(l, w) == expect)) {
				o.fail("saturation path count differs on " + w.str() + " (trial " + std::to_string(trial) + ")");
				break;
			}
		}
	}
	o.note("epsilon saturation: 50 instances, " + std::to_string(infinite) + " infinite path counts seen (" +
	       fmt_seconds(seconds_since(lap)) + ")");
	lap = Clock::now();

	auto five = words(2, 5);
	for (int trial = 0; trial < 50 && o.pass; ++trial) {
		LinRep l = random_rep(rng, 2, true);
		InfDecomposition parts = decompose_infinity(l, limits);
		for (auto& w : five) {
			NatInf direct = dense_eval(l, w);
			bool member = parts.infinite.accepts(w);
			if (member != direct.is_infinite() ||
			    (!member && !(dense_eval(parts.finite, w) == direct))) {
				o.fail("infinity decomposition differs on " + w.str() + " (trial " + std::to_string(trial) + ")");
				break;
			}
		}
	}
	o.note("infinity decomposition: 50 instances, words up to length 5 (" +
	       fmt_seconds(seconds_since(lap)) + ")");
	lap = Clock::now();

	double s = seconds_since(start);
	if (s >= 120)
		o.fail("took " + fmt_seconds(s));
	if (o.pass)
		o.summary = "all four suites exact (" + fmt_seconds(s) + ")";
	return o;
}

// 12 --------------------------------------------------------------------

Outcome linear_bound(const Limits& limits) {
	Outcome o;
	CountingRep sub = measure(thue_morse(), {MeasureKind::subword_complexity}, nullptr, limits);
	LinearVerdict v = linear_complexity_check(sub);
	if (!v.bounded) {
		o.fail("Thue-Morse subword complexity reported unbounded");
	} else {
		for (Natural n = 0; n <= 1000; ++n)
			if (Nat(finite_value(sub, n)) > v.slope * Nat(n) + v.intercept) {
				o.fail("bound violated at n = " + std::to_string(n));
				break;
			}
		o.note("bound: f(n) <= " + v.slope.get_str() + "*n + " + v.intercept.get_str());
	}
	// (n, i) with i > n: every n has infinitely many witnesses
	Dfa always = minimize(pad_closure(linear_relation(2, {-1, 1}, 0, Relop::gt, limits), limits));
	if (linear_complexity_check(count_parameter(always, limits)).bounded)
		o.fail("infinite count instance reported bounded");
	if (o.pass)
		o.summary = "Thue-Morse subword complexity bounded by a line; the infinite instance is unbounded";
	return o;
}

// 13 --------------------------------------------------------------------

Outcome recurrence(const Limits& limits) {
	Outcome o;
	auto show = [](const RecurrenceFlags& f) {
		return std::string("(") + (f.recurrent ? "true" : "false") + ", " +
		       (f.uniformly_recurrent ? "true" : "false") + ", " + (f.ultimately_periodic ? "true" : "false") + ")";
	};
	RecurrenceFlags tm = recurrence_flags(thue_morse(), limits);
	RecurrenceFlags c = recurrence_flags(builtin_sequence("const0"), limits);
	if (!(tm.recurrent && tm.uniformly_recurrent && !tm.ultimately_periodic))
		o.fail("Thue-Morse flags " + show(tm));
	if (!(c.recurrent && c.uniformly_recurrent && c.ultimately_periodic))
		o.fail("constant sequence flags " + show(c));
	if (o.pass)
		o.summary = "Thue-Morse " + show(tm) + ", constant " + show(c);
	return o;
}

struct Criterion {
	int id;
	const char* title;
	std::function<Outcome(const Limits&)> run;
};

} // namespace

int run(std::ostream& out, const std::set<int>& only, const Limits& limits) {
	const std::vector<Criterion> criteria{
	    {1, "Thue-Morse evaluation", thue_morse_prefix},
	    {2, "square and overlap decisions", squares_and_overlaps},
	    {3, "unbordered characteristic", unbordered_characteristic_check},
	    {4, "unbordered count table", unbordered_table},
	    {5, "unbordered-length conjecture", conjecture},
	    {6, "conjectured recurrences", recurrences},
	    {7, "subword and palindrome complexity", complexities},
	    {8, "R, A, S, I", window_measures},
	    {9, "permutation complexity", permutations},
	    {10, "representation counting", representations},
	    {11, "linear representation property suites", property_suites},
	    {12, "linear bound", linear_bound},
	    {13, "recurrence flags", recurrence},
	};
	int failures = 0;
	for (const auto& c : criteria) {
		if (!only.empty() && !only.count(c.id))
			continue;
		Outcome o;
		try {
			o = c.run(limits);
		} catch (const ResourceError& e) {
			o.fail(std::string("state ceiling reached: ") + e.what());
		} catch (const std::exception& e) {
			o.fail(std::string("error: ") + e.what());
		}
		failures += !o.pass;
		out << (o.pass ? "PASS " : "FAIL ") << c.id << " " << c.title << ": " << o.summary << "\n";
		for (const auto& d : o.details)
			out << "    " << d << "\n";
		out.flush();
	}
	return failures;
}

} // namespace autseq::acceptance
