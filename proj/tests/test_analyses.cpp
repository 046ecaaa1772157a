#include "doctest.h"

#include "autseq/analyses.hpp"
#include "autseq/error.hpp"
#include "autseq/oracle.hpp"

using namespace autseq;

namespace {

const oracle::PrefixContext& tm_short_prefix() {
	static const oracle::PrefixContext ctx = oracle::context(thue_morse(), 2500, 25);
	return ctx;
}

std::uint64_t value(const CountingRep& c, Natural n) {
	Scalar s = c.rep.evaluate(n);
	REQUIRE(s.is_natural());
	return s.rational().get_num().get_ui();
}

const oracle::PrefixContext& tm_prefix() {
	static const oracle::PrefixContext ctx = oracle::context(thue_morse(), 10000);
	return ctx;
}

void agree(const MeasureSpec& spec, Natural max_n, const Dfao* y = nullptr) {
	Dfao x = thue_morse();
	CountingRep c = measure(x, spec, y);
	std::optional<oracle::PrefixContext> yc;
	if (y)
		yc = oracle::context(*y, 10000);
	for (Natural n = 0; n <= max_n; ++n) {
		CAPTURE(n);
		if (c.rep.evaluate(n).is_infinite()) {
			// unbounded: the prefix count keeps growing
			CHECK(oracle::brute(spec, tm_prefix(), n) > oracle::brute(spec, tm_short_prefix(), n));
			continue;
		}
		CHECK(value(c, n) == oracle::brute(spec, tm_prefix(), n, yc ? &*yc : nullptr));
	}
}

} // namespace

TEST_CASE("measure names round trip") {
	for (MeasureKind k : all_measure_kinds())
		CHECK(parse_measure_kind(to_string(k)) == k);
	CHECK_FALSE(parse_measure_kind("nope"));
	CHECK(parse_anchor("center") == Anchor::center);
}

TEST_CASE("unbordered count on Thue-Morse for n = 1..16") {
	CountingRep c = measure(thue_morse(), {MeasureKind::unbordered_count});
	std::vector<std::uint64_t> table{2, 2, 4, 2, 4, 6, 0, 4, 4, 4, 4, 12, 0, 4, 4, 8};
	for (Natural n = 1; n <= 16; ++n) {
		CAPTURE(n);
		CHECK(value(c, n) == table[n - 1]);
		CHECK(oracle::brute(MeasureKind::unbordered_count, tm_prefix(), n) == table[n - 1]);
	}
}

TEST_CASE("subword and palindrome complexity agree with the oracle") {
	agree({MeasureKind::subword_complexity}, 40);
	agree({MeasureKind::palindrome_complexity}, 40);
}

TEST_CASE("window measures agree with the oracle") {
	agree({MeasureKind::recurrence_R}, 10);
	agree({MeasureKind::appearance_A}, 10);
	agree({MeasureKind::separator_S}, 10);
	agree({MeasureKind::repetitivity_I}, 10);
}

TEST_CASE("anchored measures agree with the oracle") {
	for (Anchor a : {Anchor::begin, Anchor::center, Anchor::end}) {
		CAPTURE(to_string(a));
		agree({MeasureKind::square_count_at, a}, 40);
		agree({MeasureKind::longest_square_at, a}, 40);
		agree({MeasureKind::palindrome_count_at, a}, 40);
		agree({MeasureKind::longest_palindrome_at, a}, 40);
	}
	agree({MeasureKind::longest_fractional_power_at, Anchor::begin, 3, 2}, 40);
	agree({MeasureKind::longest_fractional_power_at, Anchor::end, 5, 3}, 40);
	// prefixes of length 4^k are palindromes
	CountingRep pal = measure(thue_morse(), {MeasureKind::palindrome_count_at, Anchor::begin});
	CHECK(pal.rep.evaluate(Natural(0)).is_infinite());
}

TEST_CASE("two-sequence measures") {
	Dfao swapped = builtin_sequence("tm-swapped");
	Dfao rs = builtin_sequence("rudin-shapiro");
	agree({MeasureKind::factors_in_both}, 12, &swapped);
	agree({MeasureKind::factors_in_x_not_y}, 12, &swapped);
	agree({MeasureKind::factors_in_both}, 12, &rs);
	agree({MeasureKind::factors_in_x_not_y}, 12, &rs);
	CHECK_THROWS_AS(measure(thue_morse(), {MeasureKind::factors_in_both}), PreconditionError);
}

TEST_CASE("recurrent factors of Thue-Morse are all factors") {
	agree({MeasureKind::recurrent_factor_count}, 20);
}

TEST_CASE("permutation complexity agrees with the oracle") {
	agree({MeasureKind::permutation_complexity}, 8);
}

TEST_CASE("bad anchors are rejected") {
	CHECK_THROWS_AS(measure_predicate({MeasureKind::subword_complexity, Anchor::center}), PreconditionError);
	CHECK_THROWS_AS(measure_predicate({MeasureKind::longest_fractional_power_at, Anchor::center}),
	                PreconditionError);
	CHECK_THROWS_AS(indicator(thue_morse(), IndicatorKind::overlap, Anchor::center), PreconditionError);
}

TEST_CASE("indicators on Thue-Morse") {
	Dfao tm = thue_morse();
	Dfao sq = indicator(tm, IndicatorKind::square, Anchor::begin);
	CHECK(sq.evaluate(0) == 0);
	CHECK(sq.evaluate(1) == 1);
	CHECK(sq.evaluate(2) == 1);
	Dfao ov = indicator(tm, IndicatorKind::overlap, Anchor::begin);
	for (Natural i = 0; i < 200; ++i)
		CHECK(ov.evaluate(i) == 0);
	auto w = prefix(tm, 400);
	auto pal = indicator(tm, IndicatorKind::palindrome, Anchor::end);
	// every letter is a palindrome of length 1
	for (Natural i = 0; i < 50; ++i)
		CHECK(pal.evaluate(i) == 1);
	Dfao sq_end = indicator(tm, IndicatorKind::square, Anchor::end);
	for (Natural i = 0; i < 100; ++i) {
		bool found = false;
		for (Natural l = 1; 2 * l <= i + 1 && !found; ++l) {
			Natural s = i + 1 - 2 * l;
			found = std::equal(w.begin() + s, w.begin() + s + l, w.begin() + s + l);
		}
		CAPTURE(i);
		CHECK(sq_end.evaluate(i) == (found ? 1 : 0));
	}
}

TEST_CASE("unbordered factor lengths of Thue-Morse") {
	Dfao b = unbordered_characteristic(thue_morse());
	for (Natural n = 0; n <= 120; ++n) {
		CAPTURE(n);
		if (n % 6 != 1)
			CHECK(b.evaluate(n) == 1);
		CHECK(b.evaluate(n) == (oracle::has_unbordered_factor(tm_prefix(), n) ? 1 : 0));
	}
	CHECK(b.evaluate(31) == 1);
	auto w = prefix(thue_morse(), 70);
	std::string f;
	for (Natural i = 39; i <= 69; ++i)
		f += char('0' + w[i]);
	CHECK(f == "0011010010110100110010110100101");
	CHECK(has_arbitrarily_large_unbordered(thue_morse()));
	// 0101...: only 0, 1, 01 and 10 are unbordered
	CHECK_FALSE(has_arbitrarily_large_unbordered(builtin_sequence("period2")));
	CHECK_FALSE(has_arbitrarily_large_unbordered(builtin_sequence("const0")));
	Dfao one = unbordered_characteristic(builtin_sequence("const1"));
	CHECK(one.evaluate(1) == 1);
	CHECK(one.evaluate(2) == 0);
}

TEST_CASE("unbounded exponents") {
	CHECK_FALSE(has_unbounded_exponent(thue_morse()));
	CHECK(has_unbounded_exponent(builtin_sequence("const0")));
	CHECK(has_unbounded_exponent(builtin_sequence("period2")));
	CHECK(has_unbounded_exponent(builtin_sequence("powers2")));
	CHECK_FALSE(has_unbounded_exponent(builtin_sequence("rudin-shapiro")));
}

TEST_CASE("recurrence flags") {
	auto tm = recurrence_flags(thue_morse());
	CHECK(tm.recurrent);
	CHECK(tm.uniformly_recurrent);
	CHECK_FALSE(tm.ultimately_periodic);
	auto c = recurrence_flags(builtin_sequence("const1"));
	CHECK(c.recurrent);
	CHECK(c.uniformly_recurrent);
	CHECK(c.ultimately_periodic);
	auto p = recurrence_flags(builtin_sequence("powers2"));
	CHECK_FALSE(p.recurrent);
	CHECK_FALSE(p.uniformly_recurrent);
	CHECK_FALSE(p.ultimately_periodic);
	auto z = recurrence_flags(builtin_sequence("zero-only"));
	CHECK_FALSE(z.recurrent);
	CHECK(z.ultimately_periodic);
}

TEST_CASE("factor set comparison") {
	Dfao tm = thue_morse();
	auto same = factor_set_compare(tm, tm);
	CHECK(same.equal);
	CHECK_FALSE(same.distinguishing_length);
	auto swapped = factor_set_compare(tm, builtin_sequence("tm-swapped"));
	CHECK(swapped.equal);
	CHECK(swapped.tower_bound == "2^(2^(2^(2*2^2)))");

	auto zero = factor_set_compare(tm, builtin_sequence("const0"));
	CHECK_FALSE(zero.equal);
	CHECK_FALSE(zero.y_subset_of_x); // 000 is not a factor of Thue-Morse
	CHECK(zero.distinguishing_length == Natural(1));
	CHECK(zero.distinguishing_factor == std::vector<Output>{1});
	CHECK(zero.factor_owner == "x");

	auto ctx_rs = oracle::context(builtin_sequence("rudin-shapiro"), 10000);
	auto cmp = factor_set_compare(tm, builtin_sequence("rudin-shapiro"));
	CHECK_FALSE(cmp.equal);
	REQUIRE(cmp.distinguishing_length);
	Natural n = *cmp.distinguishing_length;
	for (Natural m = 0; m <= n; ++m) {
		auto ft = oracle::factors(tm_prefix(), m), fr = oracle::factors(ctx_rs, m);
		CAPTURE(m);
		CHECK((ft == fr) == (m < n));
	}
	auto& owner = cmp.factor_owner == "x" ? tm_prefix() : ctx_rs;
	auto& other = cmp.factor_owner == "x" ? ctx_rs : tm_prefix();
	auto fo = oracle::factors(owner, n), fn = oracle::factors(other, n);
	CHECK(std::binary_search(fo.begin(), fo.end(), cmp.distinguishing_factor));
	CHECK_FALSE(std::binary_search(fn.begin(), fn.end(), cmp.distinguishing_factor));
}

TEST_CASE("linear bound check") {
	CountingRep sub = measure(thue_morse(), {MeasureKind::subword_complexity});
	LinearVerdict v = linear_complexity_check(sub);
	REQUIRE(v.bounded);
	for (Natural n = 0; n < 200; ++n)
		CHECK(Nat(value(sub, n)) <= v.slope * Nat(n) + v.intercept);
	CountingRep flat = measure(builtin_sequence("const0"), {MeasureKind::subword_complexity});
	CHECK(linear_complexity_check(flat).bounded);
	CHECK(value(flat, 0) == 1);
	CHECK(value(flat, 9) == 1);
	// every (n, i) with i > n: infinitely many witnesses at each n
	Dfa always = minimize(pad_closure(linear_relation(2, {-1, 1}, 0, Relop::gt)));
	LinearVerdict u = linear_complexity_check(count_parameter(always));
	CHECK_FALSE(u.bounded);
}

TEST_CASE("permutation order") {
	Dfa lt = permutation_order(thue_morse());
	auto ctx = tm_prefix();
	CHECK(lt.accepts(encode_tuple({0, 1}, 2)));
	const auto& w = ctx.word();
	for (Natural i = 0; i < 64; ++i)
		for (Natural j = 0; j < 64; ++j) {
			bool a = lt.accepts(encode_tuple({i, j}, 2)), b = lt.accepts(encode_tuple({j, i}, 2));
			CHECK(!(a && b));
			CHECK((i == j) == (!a && !b));
			if (i != j) {
				std::size_t k = 0;
				while (w[i + k] == w[j + k])
					++k;
				CHECK(a == (w[i + k] < w[j + k]));
			}
		}
}

TEST_CASE("msd regex lengths") {
	Dfa r = msd_regex_lengths("1(01*0)*10*1", 2);
	auto matches = [](Natural n) {
		std::string s = to_msd_string(n, 2);
		// 1 (0 1* 0)* 1 0* 1
		std::size_t i = 0;
		if (s.size() < 3 || s[0] != '1')
			return false;
		i = 1;
		while (i < s.size() && s[i] == '0') {
			std::size_t j = i + 1;
			while (j < s.size() && s[j] == '1')
				++j;
			if (j >= s.size() || s[j] != '0')
				break;
			i = j + 1;
		}
		if (i >= s.size() || s[i] != '1')
			return false;
		++i;
		while (i < s.size() && s[i] == '0')
			++i;
		return i + 1 == s.size() && s[i] == '1';
	};
	for (Natural n = 0; n < 2048; ++n) {
		CAPTURE(n);
		CHECK(r.accepts(encode_lsd(n, 2)) == matches(n));
	}
	CHECK(r.accepts(encode_lsd(7, 2)));
	CHECK_THROWS_AS(msd_regex_lengths("1(0", 2), ParseError);
	CHECK_THROWS_AS(msd_regex_lengths("12", 2), ParseError);
}

TEST_CASE("oracle basics") {
	oracle::PrefixContext small(std::vector<Output>{0, 1, 1, 0}, 2);
	CHECK(small.certified_n() == 2);
	CHECK(oracle::brute(MeasureKind::subword_complexity, small, 0) == 1);
	CHECK_THROWS_AS(oracle::brute(MeasureKind::subword_complexity, small, 3), CertificationError);
	CHECK(oracle::brute(MeasureKind::unbordered_count, tm_prefix(), 12) == 12);
	CHECK(oracle::brute(MeasureKind::unbordered_count, tm_prefix(), 7) == 0);
	CHECK(oracle::find_square(tm_prefix()) == 1);
	CHECK(oracle::find_overlap(tm_prefix()) == -1);
	CHECK(oracle::find_overlap(oracle::PrefixContext({0, 1, 0, 1, 0})) == 0);
	// subword complexity is monotone in the prefix length
	for (std::size_t len : {200, 400, 800})
		for (Natural n = 1; n <= 2; ++n)
			CHECK(oracle::brute(MeasureKind::subword_complexity, oracle::context(thue_morse(), len, 1), n) <=
			      oracle::brute(MeasureKind::subword_complexity, oracle::context(thue_morse(), 2 * len, 1), n));
}
