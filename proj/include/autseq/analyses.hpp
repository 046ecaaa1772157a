#ifndef AUTSEQ_ANALYSES_HPP
#define AUTSEQ_ANALYSES_HPP

#include <optional>
#include <string>
#include <vector>

#include "autseq/logic.hpp"
#include "autseq/regseq.hpp"
#include "autseq/seqgen.hpp"

namespace autseq {

enum class MeasureKind {
	subword_complexity,
	palindrome_complexity,
	unbordered_count,
	square_count_at,
	longest_square_at,
	palindrome_count_at,
	longest_palindrome_at,
	longest_fractional_power_at,
	recurrent_factor_count,
	factors_in_x_not_y,
	factors_in_both,
	recurrence_R,
	appearance_A,
	separator_S,
	repetitivity_I,
	permutation_complexity,
};

enum class Anchor { none, begin, center, end };

std::string to_string(MeasureKind k);
std::string to_string(Anchor a);
/// Kebab-case names such as "subword-complexity" or "recurrence-R".
std::optional<MeasureKind> parse_measure_kind(const std::string& name);
std::optional<Anchor> parse_anchor(const std::string& name);
const std::vector<MeasureKind>& all_measure_kinds();

/// Anchors a kind accepts; {none} for kinds that take no anchor.
std::vector<Anchor> allowed_anchors(MeasureKind k);
bool needs_second_sequence(MeasureKind k);

struct MeasureSpec {
	MeasureKind kind;
	/// none means the kind's default (begin for anchored kinds).
	Anchor anchor = Anchor::none;
	/// Exponent p/q for the fractional power kind.
	unsigned p = 2;
	unsigned q = 1;
};

/// The predicate behind a measure: its text over sequences x (and y), the
/// parameter variable, the counted variable, and whether the count is of
/// witnesses (count_parameter) or of t with measure(n) > t (count_measure).
struct MeasurePredicate {
	std::string text;
	std::string parameter;
	std::string counted;
	bool threshold;
};

MeasurePredicate measure_predicate(const MeasureSpec& spec);

/// Value at n of the measure. Kinds that can be unbounded come back as
/// NAT-INF with their InfDecomposition in `parts`.
CountingRep measure(const Dfao& x, const MeasureSpec& spec, const Dfao* y = nullptr, const Limits& limits = {});

enum class IndicatorKind { square, overlap, palindrome, unbordered };

std::string to_string(IndicatorKind k);
std::vector<Anchor> allowed_anchors(IndicatorKind k);

/// b(i) = 1 iff an object of the kind (of positive length) sits at i.
Dfao indicator(const Dfao& x, IndicatorKind kind, Anchor anchor, const Limits& limits = {});

/// Automaton over n for "x has an unbordered factor of length n".
Compiled unbordered_lengths(const Dfao& x, const Limits& limits = {});
Dfao unbordered_characteristic(const Dfao& x, const Limits& limits = {});

bool has_unbounded_exponent(const Dfao& x, const Limits& limits = {});
bool has_arbitrarily_large_unbordered(const Dfao& x, const Limits& limits = {});

struct RecurrenceFlags {
	bool recurrent;
	bool uniformly_recurrent;
	bool ultimately_periodic;
};

RecurrenceFlags recurrence_flags(const Dfao& x, const Limits& limits = {});

struct FactorComparison {
	bool equal;
	bool x_subset_of_y;
	bool y_subset_of_x;
	/// Smallest length with a factor in one sequence but not the other.
	std::optional<Natural> distinguishing_length;
	/// A factor of that length, and which sequence it occurs in ("x" or "y").
	std::vector<Output> distinguishing_factor;
	std::string factor_owner;
	/// Upper bound on the shortest distinguishing length, as a formula.
	std::string tower_bound;
};

FactorComparison factor_set_compare(const Dfao& x, const Dfao& y, const Limits& limits = {});

struct LinearVerdict {
	bool bounded;
	/// f(n) <= slope*n + intercept for all n, when bounded.
	Nat slope;
	Nat intercept;
};

LinearVerdict linear_complexity_check(const CountingRep& count);

/// Pairs (i, j) with x[i..] lexicographically below x[j..], outputs
/// compared as integers.
Dfa permutation_order(const Dfao& x, const Limits& limits = {});

/// Automaton over n, padding-closed, for the msd-first numerals matching a
/// regular expression over the digits (concatenation, |, *, +, ?, parens).
Dfa msd_regex_lengths(const std::string& regex, unsigned base, const Limits& limits = {});

} // namespace autseq

#endif
