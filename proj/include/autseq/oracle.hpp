#ifndef AUTSEQ_ORACLE_HPP
#define AUTSEQ_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "autseq/analyses.hpp"

// Brute-force reference values computed from a finite prefix. Nothing here
// touches the automata code.
namespace autseq::oracle {

class PrefixContext {
public:
	/// Answers about length-n factors are trusted for n <= size / safety.
	explicit PrefixContext(std::vector<Output> word, std::size_t safety = 100);

	const std::vector<Output>& word() const { return word_; }
	std::size_t size() const { return word_.size(); }
	std::size_t certified_n() const { return certified_; }

	/// Throws CertificationError if n > certified_n().
	void require(std::uint64_t n) const;

private:
	std::vector<Output> word_;
	std::size_t certified_;
};

PrefixContext context(const Dfao& s, std::size_t length, std::size_t safety = 100);

/// Value of the measure at n. `y` is needed for the two-sequence kinds.
std::uint64_t brute(const MeasureSpec& spec, const PrefixContext& x, std::uint64_t n,
                    const PrefixContext* y = nullptr);
std::uint64_t brute(MeasureKind kind, const PrefixContext& x, std::uint64_t n, const PrefixContext* y = nullptr);

/// Does the prefix contain a factor of length n that is unbordered?
bool has_unbordered_factor(const PrefixContext& x, std::size_t n);
/// Start of the first square (ww) or overlap (awawa) in the prefix, or -1.
long long find_square(const PrefixContext& x);
long long find_overlap(const PrefixContext& x);
/// Distinct factors of length n, sorted.
std::vector<std::vector<Output>> factors(const PrefixContext& x, std::size_t n);

} // namespace autseq::oracle

#endif
