#ifndef AUTSEQ_SEMIRING_HPP
#define AUTSEQ_SEMIRING_HPP

#include <compare>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace autseq {

using Nat = mpz_class;
using Rat = mpq_class;

/// Extended naturals N ∪ {∞} with 0·∞ = ∞·0 = 0.
class NatInf {
public:
	NatInf() = default;
	NatInf(long v) : value_(v) {}
	NatInf(const Nat& v) : value_(v) {}

	static NatInf infinity() {
		NatInf x;
		x.inf_ = true;
		return x;
	}

	bool is_infinite() const { return inf_; }
	bool is_zero() const { return !inf_ && value_ == 0; }
	/// Finite value; 0 for ∞ (the ξ map that erases infinities).
	const Nat& finite() const { return inf_ ? zero_ : value_; }

	friend NatInf operator+(const NatInf& a, const NatInf& b) {
		if (a.inf_ || b.inf_)
			return infinity();
		return NatInf(Nat(a.value_ + b.value_));
	}
	friend NatInf operator*(const NatInf& a, const NatInf& b) {
		if (a.is_zero() || b.is_zero())
			return NatInf();
		if (a.inf_ || b.inf_)
			return infinity();
		return NatInf(Nat(a.value_ * b.value_));
	}
	NatInf& operator+=(const NatInf& b) { return *this = *this + b; }
	NatInf& operator*=(const NatInf& b) { return *this = *this * b; }

	friend bool operator==(const NatInf& a, const NatInf& b) {
		return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
	}
	friend std::strong_ordering operator<=>(const NatInf& a, const NatInf& b) {
		if (a.inf_ || b.inf_)
			return a.inf_ == b.inf_ ? std::strong_ordering::equal
			       : a.inf_          ? std::strong_ordering::greater
			                         : std::strong_ordering::less;
		int c = cmp(a.value_, b.value_);
		return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
	}

	std::string str() const { return inf_ ? "inf" : value_.get_str(); }
	friend std::ostream& operator<<(std::ostream& os, const NatInf& x) { return os << x.str(); }

private:
	static inline const Nat zero_{0};
	Nat value_{0};
	bool inf_ = false;
};

/// The three-element abstraction {0, p, ∞} of N∞ ("p" = some positive
/// integer). Values are encoded 0, 1, 2 so addition is max.
enum class Sign : unsigned char { zero = 0, positive = 1, infinite = 2 };

inline Sign sign_add(Sign a, Sign b) { return a > b ? a : b; }
inline Sign sign_mul(Sign a, Sign b) {
	if (a == Sign::zero || b == Sign::zero)
		return Sign::zero;
	return a > b ? a : b;
}
inline Sign sign_of(const NatInf& x) {
	return x.is_infinite() ? Sign::infinite : x.is_zero() ? Sign::zero : Sign::positive;
}

} // namespace autseq

#endif
