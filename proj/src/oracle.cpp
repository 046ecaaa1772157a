#include "autseq/oracle.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <map>
#include <set>

#include "autseq/error.hpp"

namespace autseq::oracle {

namespace {

using Word = std::vector<Output>;

Word slice(const Word& w, std::size_t i, std::size_t n) {
	return Word(w.begin() + std::ptrdiff_t(i), w.begin() + std::ptrdiff_t(i + n));
}

bool equal_at(const Word& a, std::size_t i, const Word& b, std::size_t j, std::size_t n) {
	return std::equal(a.begin() + std::ptrdiff_t(i), a.begin() + std::ptrdiff_t(i + n), b.begin() + std::ptrdiff_t(j));
}

bool is_palindrome(const Word& w, std::size_t s, std::size_t m) {
	for (std::size_t u = 0; u < m / 2; ++u)
		if (w[s + u] != w[s + m - 1 - u])
			return false;
	return true;
}

bool is_bordered(const Word& w, std::size_t s, std::size_t m) {
	for (std::size_t l = 1; l < m; ++l)
		if (equal_at(w, s, w, s + m - l, l))
			return true;
	return false;
}

bool has_period(const Word& w, std::size_t s, std::size_t m, std::size_t d) {
	for (std::size_t u = 0; u + d < m; ++u)
		if (w[s + u] != w[s + u + d])
			return false;
	return true;
}

std::set<Word> factor_set(const Word& w, std::size_t n) {
	std::set<Word> out;
	for (std::size_t i = 0; i + n <= w.size(); ++i)
		out.insert(slice(w, i, n));
	return out;
}

// Start of the object of length m anchored at position p, if any.
std::optional<std::size_t> anchored_start(Anchor a, std::size_t p, std::size_t m) {
	switch (a) {
	case Anchor::center:
		// odd m: center letter at p; even m: second half starts at p
		if (2 * p + (m % 2) < m)
			return std::nullopt;
		return (2 * p + (m % 2) - m) / 2;
	case Anchor::end:
		if (p + 1 < m)
			return std::nullopt;
		return p + 1 - m;
	default:
		return p;
	}
}

Anchor default_anchor(const MeasureSpec& spec) {
	return spec.anchor == Anchor::none ? Anchor::begin : spec.anchor;
}

// Lexicographic comparison of the shifts at a and b; refuses if the prefix
// runs out before they differ.
bool shift_less(const Word& w, std::size_t a, std::size_t b) {
	for (std::size_t k = 0; std::max(a, b) + k < w.size(); ++k)
		if (w[a + k] != w[b + k])
			return w[a + k] < w[b + k];
	throw CertificationError("shifts at " + std::to_string(a) + " and " + std::to_string(b) +
	                         " agree to the end of the prefix");
}

std::uint64_t count_distinct(const Word& w, std::size_t n, const std::function<bool(std::size_t)>& keep) {
	std::set<Word> seen;
	for (std::size_t i = 0; i + n <= w.size(); ++i)
		if (keep(i))
			seen.insert(slice(w, i, n));
	return seen.size();
}

} // namespace

PrefixContext::PrefixContext(std::vector<Output> word, std::size_t safety) : word_(std::move(word)) {
	if (safety == 0)
		throw PreconditionError("safety factor must be positive");
	certified_ = word_.size() / safety;
}

void PrefixContext::require(std::uint64_t n) const {
	if (n > certified_)
		throw CertificationError("n = " + std::to_string(n) + " is beyond the certified range " +
		                         std::to_string(certified_) + " of a prefix of length " +
		                         std::to_string(word_.size()));
}

PrefixContext context(const Dfao& s, std::size_t length, std::size_t safety) {
	return PrefixContext(prefix(s, length), safety);
}

std::uint64_t brute(MeasureKind kind, const PrefixContext& x, std::uint64_t n, const PrefixContext* y) {
	return brute(MeasureSpec{kind}, x, n, y);
}

std::uint64_t brute(const MeasureSpec& spec, const PrefixContext& x, std::uint64_t n, const PrefixContext* y) {
	x.require(n);
	const Word& w = x.word();
	const std::size_t N = w.size();
	const std::size_t len = std::size_t(n);
	Anchor anchor = default_anchor(spec);

	switch (spec.kind) {
	case MeasureKind::subword_complexity:
		return factor_set(w, len).size();
	case MeasureKind::palindrome_complexity:
		return count_distinct(w, len, [&](std::size_t i) { return is_palindrome(w, i, len); });
	case MeasureKind::unbordered_count:
		return count_distinct(w, len, [&](std::size_t i) { return !is_bordered(w, i, len); });

	case MeasureKind::square_count_at:
	case MeasureKind::longest_square_at: {
		std::uint64_t count = 0, longest = 0;
		for (std::size_t l = 1; 2 * l <= N; ++l) {
			std::optional<std::size_t> s;
			if (anchor == Anchor::center)
				s = len >= l ? std::optional<std::size_t>(len - l) : std::nullopt;
			else
				s = anchored_start(anchor, len, 2 * l);
			if (s && *s + 2 * l <= N && equal_at(w, *s, w, *s + l, l)) {
				++count;
				longest = 2 * l;
			}
		}
		return spec.kind == MeasureKind::square_count_at ? count : longest;
	}
	case MeasureKind::palindrome_count_at:
	case MeasureKind::longest_palindrome_at: {
		std::uint64_t count = 0, longest = 0;
		for (std::size_t m = 1; m <= N; ++m) {
			auto s = anchored_start(anchor, len, m);
			if (s && *s + m <= N && is_palindrome(w, *s, m)) {
				++count;
				longest = m;
			}
		}
		return spec.kind == MeasureKind::palindrome_count_at ? count : longest;
	}
	case MeasureKind::longest_fractional_power_at: {
		if (spec.p == 0 || spec.q == 0)
			throw PreconditionError("fractional exponent must be positive");
		std::uint64_t longest = 0;
		for (std::size_t m = 1; m <= N; ++m) {
			auto s = anchored_start(anchor, len, m);
			if (!s || *s + m > N)
				continue;
			for (std::size_t d = 1; std::uint64_t(spec.p) * d <= std::uint64_t(spec.q) * m; ++d)
				if (has_period(w, *s, m, d)) {
					longest = m;
					break;
				}
		}
		return longest;
	}

	case MeasureKind::recurrent_factor_count: {
		// Recurrent is approximated by "occurs again in the second half".
		std::set<Word> late;
		for (std::size_t i = N / 2; i + len <= N; ++i)
			late.insert(slice(w, i, len));
		return late.size();
	}
	case MeasureKind::factors_in_x_not_y:
	case MeasureKind::factors_in_both: {
		if (!y)
			throw PreconditionError(to_string(spec.kind) + " needs a second sequence");
		y->require(n);
		auto fx = factor_set(w, len), fy = factor_set(y->word(), len);
		std::uint64_t shared = 0;
		for (auto& f : fx)
			shared += fy.count(f);
		return spec.kind == MeasureKind::factors_in_both ? shared : fx.size() - shared;
	}

	case MeasureKind::recurrence_R: {
		// Smallest t such that every window of length t holds every factor
		// of length n; windows start in the first half.
		if (len == 0)
			return 0;
		auto all = factor_set(w, len);
		std::map<Word, std::size_t> present;
		std::uint64_t worst = 0;
		for (std::size_t i = 0; i < N / 2; ++i) {
			present.clear();
			std::size_t l = i;
			while (present.size() < all.size()) {
				if (l + len > N)
					throw CertificationError("window at " + std::to_string(i) + " runs off the prefix");
				++present[slice(w, l, len)];
				++l;
			}
			worst = std::max<std::uint64_t>(worst, l - 1 + len - i);
		}
		return worst;
	}
	case MeasureKind::appearance_A: {
		if (len == 0)
			return 0;
		std::set<Word> seen;
		std::size_t last = 0;
		for (std::size_t i = 0; i + len <= N; ++i)
			if (seen.insert(slice(w, i, len)).second)
				last = i;
		return last + len;
	}
	case MeasureKind::separator_S: {
		// Shortest t such that x[n..n+t-1] occurs at no earlier position.
		for (std::size_t t = 0; len + t <= N; ++t) {
			bool earlier = false;
			for (std::size_t j = 0; j < len && !earlier; ++j)
				earlier = equal_at(w, len, w, j, t);
			if (!earlier)
				return t;
		}
		throw CertificationError("separator at " + std::to_string(n) + " runs off the prefix");
	}
	case MeasureKind::repetitivity_I: {
		std::map<Word, std::size_t> last;
		std::uint64_t best = 0;
		for (std::size_t i = 0; i + len <= N; ++i) {
			auto [it, fresh] = last.emplace(slice(w, i, len), i);
			if (!fresh) {
				std::uint64_t gap = i - it->second;
				best = best == 0 ? gap : std::min(best, gap);
				it->second = i;
			}
		}
		if (best == 0)
			throw CertificationError("no factor of length " + std::to_string(n) + " repeats in the prefix");
		return best;
	}
	case MeasureKind::permutation_complexity: {
		if (len <= 1)
			return 1;
		// Order pattern of the n shifts at i, for i in the first half.
		std::set<std::vector<std::size_t>> patterns;
		std::vector<std::size_t> order(len);
		for (std::size_t i = 0; i + len <= N / 2; ++i) {
			for (std::size_t l = 0; l < len; ++l)
				order[l] = l;
			std::sort(order.begin(), order.end(),
			          [&](std::size_t a, std::size_t b) { return shift_less(w, i + a, i + b); });
			patterns.insert(order);
		}
		return patterns.size();
	}
	}
	throw Error("internal: unknown measure kind");
}

bool has_unbordered_factor(const PrefixContext& x, std::size_t n) {
	const Word& w = x.word();
	for (std::size_t i = 0; i + n <= w.size(); ++i)
		if (!is_bordered(w, i, n))
			return true;
	return false;
}

long long find_square(const PrefixContext& x) {
	const Word& w = x.word();
	long long best = -1;
	for (std::size_t d = 1; 2 * d <= w.size(); ++d) {
		std::size_t run = 0;
		for (std::size_t i = 0; i + d < w.size(); ++i) {
			run = w[i] == w[i + d] ? run + 1 : 0;
			if (run == d) {
				long long start = static_cast<long long>(i + 1 - d);
				if (best < 0 || start < best)
					best = start;
				break;
			}
		}
	}
	return best;
}

long long find_overlap(const PrefixContext& x) {
	const Word& w = x.word();
	long long best = -1;
	for (std::size_t d = 1; 2 * d < w.size(); ++d) {
		std::size_t run = 0;
		for (std::size_t i = 0; i + d < w.size(); ++i) {
			run = w[i] == w[i + d] ? run + 1 : 0;
			if (run == d + 1) {
				long long start = static_cast<long long>(i - d);
				if (best < 0 || start < best)
					best = start;
				break;
			}
		}
	}
	return best;
}

std::vector<std::vector<Output>> factors(const PrefixContext& x, std::size_t n) {
	auto s = factor_set(x.word(), n);
	return {s.begin(), s.end()};
}

} // namespace autseq::oracle
