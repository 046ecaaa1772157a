#include "autseq/numeration.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "autseq/error.hpp"

namespace autseq {

void check_base(unsigned base) {
	if (base < 2)
		throw InvalidBaseError("base must be at least 2, got " + std::to_string(base));
}

DigitWord::DigitWord(unsigned base, unsigned arity) : base_(base), arity_(arity) {
	check_base(base);
}

DigitWord::DigitWord(unsigned base, unsigned arity, std::vector<Digit> flat)
	: base_(base), arity_(arity), digits_(std::move(flat)) {
	check_base(base);
	if (arity_ == 0) {
		if (!digits_.empty())
			throw ArityError("arity-0 word cannot carry digits");
		return;
	}
	if (digits_.size() % arity_ != 0)
		throw ArityError("digit count is not a multiple of the arity");
	for (Digit d : digits_)
		if (d >= base_)
			throw InvalidBaseError("digit " + std::to_string(d) + " out of range for base " + std::to_string(base_));
}

DigitWord DigitWord::from_digits(unsigned base, std::initializer_list<Digit> digits) {
	return DigitWord(base, 1, std::vector<Digit>(digits));
}

DigitWord DigitWord::from_symbols(unsigned base, std::initializer_list<std::initializer_list<Digit>> symbols) {
	unsigned arity = symbols.size() == 0 ? 1 : static_cast<unsigned>(symbols.begin()->size());
	std::vector<Digit> flat;
	for (const auto& s : symbols) {
		if (s.size() != arity)
			throw ArityError("symbols of differing arity");
		flat.insert(flat.end(), s.begin(), s.end());
	}
	return DigitWord(base, arity, std::move(flat));
}

void DigitWord::push_back(std::span<const Digit> symbol) {
	if (symbol.size() != arity_)
		throw ArityError("symbol has " + std::to_string(symbol.size()) + " coordinates, expected " + std::to_string(arity_));
	for (Digit d : symbol)
		if (d >= base_)
			throw InvalidBaseError("digit out of range");
	if (arity_ == 0)
		++length0_;
	digits_.insert(digits_.end(), symbol.begin(), symbol.end());
}

void DigitWord::pad() {
	if (arity_ == 0)
		++length0_;
	digits_.insert(digits_.end(), arity_, 0);
}

std::string DigitWord::str() const {
	std::string out;
	for (std::size_t i = 0; i < size(); ++i) {
		if (arity_ == 1) {
			out += std::to_string(at(i, 0));
			continue;
		}
		out += '[';
		for (unsigned t = 0; t < arity_; ++t) {
			if (t != 0)
				out += ',';
			out += std::to_string(at(i, t));
		}
		out += ']';
	}
	return out;
}

DigitWord encode_lsd(Natural n, unsigned base) {
	check_base(base);
	DigitWord w(base, 1);
	while (n != 0) {
		Digit d = static_cast<Digit>(n % base);
		w.push_back({d});
		n /= base;
	}
	return w;
}

namespace {

Natural decode_track(const DigitWord& w, unsigned track) {
	Natural value = 0;
	for (std::size_t i = w.size(); i-- > 0;) {
		Digit d = w.at(i, track);
		if (value > (std::numeric_limits<Natural>::max() - d) / w.base())
			throw std::overflow_error("value does not fit in 64 bits");
		value = value * w.base() + d;
	}
	return value;
}

} // namespace

Natural decode_lsd(const DigitWord& w) {
	if (w.arity() != 1)
		throw ArityError("decode_lsd expects a single-track word, got arity " + std::to_string(w.arity()));
	return decode_track(w, 0);
}

DigitWord encode_tuple(std::span<const Natural> values, unsigned base) {
	check_base(base);
	if (values.empty())
		throw ArityError("cannot encode an empty tuple");
	std::size_t length = 0;
	for (Natural v : values)
		length = std::max(length, canonical_length(v, base));
	std::vector<Digit> flat(length * values.size(), 0);
	for (std::size_t t = 0; t < values.size(); ++t) {
		Natural v = values[t];
		for (std::size_t i = 0; v != 0; ++i, v /= base)
			flat[i * values.size() + t] = static_cast<Digit>(v % base);
	}
	return DigitWord(base, static_cast<unsigned>(values.size()), std::move(flat));
}

std::vector<Natural> decode_tuple(const DigitWord& w) {
	std::vector<Natural> out;
	for (unsigned t = 0; t < w.arity(); ++t)
		out.push_back(decode_track(w, t));
	return out;
}

DigitWord project_track(const DigitWord& w, unsigned track) {
	if (track >= w.arity())
		throw IndexError("track " + std::to_string(track) + " out of range for arity " + std::to_string(w.arity()));
	std::vector<Digit> flat;
	flat.reserve(w.size());
	for (std::size_t i = 0; i < w.size(); ++i)
		flat.push_back(w.at(i, track));
	return DigitWord(w.base(), 1, std::move(flat));
}

std::size_t canonical_length(Natural n, unsigned base) {
	check_base(base);
	std::size_t len = 0;
	for (; n != 0; n /= base)
		++len;
	return len;
}

std::string to_msd_string(Natural n, unsigned base) {
	DigitWord w = encode_lsd(n, base);
	if (w.empty())
		return "0";
	std::string out;
	for (std::size_t i = w.size(); i-- > 0;) {
		if (base <= 10)
			out += static_cast<char>('0' + w.at(i, 0));
		else
			out += (out.empty() ? "" : ",") + std::to_string(w.at(i, 0));
	}
	return out;
}

Natural parse_msd_string(const std::string& digits, unsigned base) {
	check_base(base);
	if (base > 10)
		throw InvalidBaseError("msd digit strings are only supported for bases up to 10");
	Natural value = 0;
	for (char c : digits) {
		if (c < '0' || c >= static_cast<char>('0' + base))
			throw ParseError(std::string("invalid digit '") + c + "'", 1);
		value = value * base + static_cast<Natural>(c - '0');
	}
	return value;
}

} // namespace autseq
