#ifndef AUTSEQ_NUMERATION_HPP
#define AUTSEQ_NUMERATION_HPP

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace autseq {

using Natural = std::uint64_t;
using Digit = std::uint32_t;

/// A word of r-tuples of base-k digits, least significant digit first.
///
/// Symbols are stored row-major: symbol i occupies digits [i*r, (i+1)*r).
/// Trailing all-zero symbols are padding and never change the value of a
/// track.
class DigitWord {
public:
	DigitWord(unsigned base, unsigned arity);
	DigitWord(unsigned base, unsigned arity, std::vector<Digit> flat);

	/// Single-track word from a list of digits.
	static DigitWord from_digits(unsigned base, std::initializer_list<Digit> digits);
	/// Multi-track word from a list of symbols (each an r-tuple).
	static DigitWord from_symbols(unsigned base, std::initializer_list<std::initializer_list<Digit>> symbols);

	unsigned base() const { return base_; }
	unsigned arity() const { return arity_; }
	std::size_t size() const { return arity_ == 0 ? length0_ : digits_.size() / arity_; }
	bool empty() const { return size() == 0; }

	std::span<const Digit> symbol(std::size_t i) const {
		return {digits_.data() + i * arity_, arity_};
	}
	Digit at(std::size_t i, unsigned track) const { return digits_[i * arity_ + track]; }

	void push_back(std::span<const Digit> symbol);
	void push_back(std::initializer_list<Digit> symbol) { push_back(std::span<const Digit>(symbol.begin(), symbol.size())); }
	/// Appends one all-zero symbol.
	void pad();

	const std::vector<Digit>& flat() const { return digits_; }

	/// Digits of a single-track word as text, e.g. "1011". Tuples print as
	/// "[0,1][0,0]".
	std::string str() const;

	friend bool operator==(const DigitWord&, const DigitWord&) = default;

private:
	unsigned base_;
	unsigned arity_;
	std::vector<Digit> digits_;
	std::size_t length0_ = 0; // length of arity-0 words
};

void check_base(unsigned base);

DigitWord encode_lsd(Natural n, unsigned base);
Natural decode_lsd(const DigitWord& w);

/// Encodes each value on its own track, padding shorter ones with trailing
/// zeros up to the longest canonical length.
DigitWord encode_tuple(std::span<const Natural> values, unsigned base);
inline DigitWord encode_tuple(std::initializer_list<Natural> values, unsigned base) {
	return encode_tuple(std::span<const Natural>(values.begin(), values.size()), base);
}
std::vector<Natural> decode_tuple(const DigitWord& w);

DigitWord project_track(const DigitWord& w, unsigned track);

/// Number of digits in the canonical representation (0 for n = 0).
std::size_t canonical_length(Natural n, unsigned base);

/// msd-first decimal-free digit string, as used at the CLI boundary.
std::string to_msd_string(Natural n, unsigned base);
Natural parse_msd_string(const std::string& digits, unsigned base);

} // namespace autseq

#endif
