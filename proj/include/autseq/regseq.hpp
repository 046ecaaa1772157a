#ifndef AUTSEQ_REGSEQ_HPP
#define AUTSEQ_REGSEQ_HPP

#include <optional>
#include <string>
#include <vector>

#include "autseq/automata.hpp"
#include "autseq/semiring.hpp"

namespace autseq {

enum class Semiring { nat, natinf, rat };

std::string to_string(Semiring s);

/// Entry of a linear representation: an exact rational or ∞. Which values
/// are legal depends on the representation's semiring; arithmetic follows
/// N∞ (0·∞ = 0) whenever ∞ is involved.
class Scalar {
public:
	Scalar() = default;
	Scalar(long v) : q_(v) {}
	Scalar(const Nat& v) : q_(v) {}
	Scalar(const Rat& v) : q_(v) { q_.canonicalize(); }
	Scalar(const NatInf& v) : q_(v.finite()), inf_(v.is_infinite()) {}

	static Scalar infinity() {
		Scalar s;
		s.inf_ = true;
		return s;
	}

	bool is_infinite() const { return inf_; }
	bool is_zero() const { return !inf_ && sgn(q_) == 0; }
	bool is_integer() const { return !inf_ && q_.get_den() == 1; }
	bool is_natural() const { return is_integer() && sgn(q_) >= 0; }
	/// Rational value; 0 for ∞.
	const Rat& rational() const { return q_; }

	friend Scalar operator+(const Scalar& a, const Scalar& b) {
		if (a.inf_ || b.inf_)
			return infinity();
		return Scalar(Rat(a.q_ + b.q_));
	}
	friend Scalar operator*(const Scalar& a, const Scalar& b) {
		if (a.is_zero() || b.is_zero())
			return Scalar();
		if (a.inf_ || b.inf_)
			return infinity();
		return Scalar(Rat(a.q_ * b.q_));
	}
	Scalar& operator+=(const Scalar& b);
	friend bool operator==(const Scalar& a, const Scalar& b) {
		return a.inf_ == b.inf_ && (a.inf_ || a.q_ == b.q_);
	}

	/// "inf", an integer, or "p/q".
	std::string str() const;
	static Scalar parse(const std::string& s);

private:
	Rat q_{0};
	bool inf_ = false;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Linear representation (u, μ, v): the value on a word d_0 d_1 ... d_{m-1}
/// is u·μ(d_0)·μ(d_1)···μ(d_{m-1})·v. Words are read lsd-first, so the
/// value at n is taken on the canonical representation of n.
class LinRep {
public:
	/// `mu[d]` is row-major r×r.
	LinRep(Semiring semiring, unsigned base, std::vector<Scalar> u, std::vector<std::vector<Scalar>> mu,
	       std::vector<Scalar> v);

	Semiring semiring() const { return semiring_; }
	unsigned base() const { return base_; }
	std::size_t rank() const { return u_.size(); }
	const std::vector<Scalar>& u() const { return u_; }
	const std::vector<Scalar>& v() const { return v_; }
	const std::vector<Scalar>& mu(Digit d) const { return mu_[d]; }
	const Scalar& mu(Digit d, std::size_t i, std::size_t j) const { return mu_[d][i * rank() + j]; }

	Scalar evaluate(const DigitWord& w) const;
	Scalar evaluate(Natural n) const;
	/// x·μ(d) for a row vector x.
	std::vector<Scalar> step(const std::vector<Scalar>& x, Digit d) const;
	/// μ(d)·y for a column vector y.
	std::vector<Scalar> step_column(Digit d, const std::vector<Scalar>& y) const;

	bool has_infinity() const;
	/// Same entries under another semiring tag; throws PreconditionError if
	/// an entry does not belong to it.
	LinRep retag(Semiring s) const;

	friend bool operator==(const LinRep& a, const LinRep& b) {
		return a.semiring_ == b.semiring_ && a.base_ == b.base_ && a.u_ == b.u_ && a.mu_ == b.mu_ && a.v_ == b.v_;
	}

private:
	Semiring semiring_;
	unsigned base_;
	std::vector<Scalar> u_;
	std::vector<std::vector<Scalar>> mu_;
	std::vector<Scalar> v_;
	// Nonzero entries of each μ(d), by row.
	std::vector<std::vector<std::vector<std::pair<std::uint32_t, Scalar>>>> rows_;
};

/// Text format:
///   linrep semiring=<nat|natinf|rat> base=<k> rank=<r>
///   u <r entries>
///   mu <d>            (then r rows of r entries, for d = 0..k-1)
///   v <r entries>
std::string to_text(const LinRep& l);
LinRep linrep_from_text(const std::string& text);

/// One path per transition copy: μ(a)_{ij} = summed multiplicities, u
/// marks initial states, v holds final weights. NAT unless ∞ occurs.
LinRep linrep_from_nfa(const Nfa& a);

/// NFA whose number of accepting paths on every nonempty word equals the
/// series value (the value on ε is dropped). Entries must be naturals.
Nfa nfa_from_linrep(const LinRep& l);

/// Removes ε-moves while preserving path counts: with D = Σ_i D_ε^i,
/// μ(a) becomes D·D_a and final weights become D·v. Entries of D are ∞
/// exactly where an ε-path can run through an ε-cycle.
Nfa eps_saturate(const Nfa& a);

/// (g, 0^i w) = (f, w) for every w not starting with 0; u'μ'(0) = u'.
LinRep normalize_leading(const LinRep& l);
/// (g, w 0^i) = (f, w) for every w not ending with 0; μ'(0)v' = v'.
LinRep normalize_trailing(const LinRep& l);
/// (g, w) = (f, reversed w).
LinRep reverse_series(const LinRep& l);

struct InfDecomposition {
	/// Words on which the series is ∞.
	Dfa infinite;
	/// The series with every ∞ entry replaced by 0; agrees with the
	/// original wherever that is finite.
	LinRep finite;
};

InfDecomposition decompose_infinity(const LinRep& l, const Limits& limits = {});

/// Equivalent representation whose only ∞ entries are in u.
LinRep push_infinity_to_u(const LinRep& l, const Limits& limits = {});

/// Result of counting the second track of a pair automaton.
struct CountingRep {
	LinRep rep;
	InfDecomposition parts;
	/// States of the ε-NFA that spells out the witnesses, before saturation.
	std::size_t nfa_states = 0;
};

/// n ↦ |{ i : (n, i) accepted }| for a padding-closed automaton over
/// tracks (n, i). ∞ where infinitely many i exist. The representation
/// satisfies μ(0)v = v, so padded inputs give the same value.
CountingRep count_parameter(const Dfa& p, const Limits& limits = {});

/// n ↦ the number of t >= 0 with (n, t) accepted, for an automaton that is
/// downward closed in t (it encodes measure(n) > t). The closure property
/// is sampled and a violation throws PreconditionError.
CountingRep count_measure(const Dfa& p, const Limits& limits = {});

/// n ↦ number of words over the digit set `digits` with no trailing 0
/// whose value Σ e_i k^i equals n. Digits may be negative or >= k.
LinRep representation_count(const std::vector<long long>& digits, unsigned base, const Limits& limits = {});

/// f(k^e n + c).
struct KernelTerm {
	unsigned exponent = 0;
	Natural offset = 0;
	friend bool operator==(const KernelTerm&, const KernelTerm&) = default;
};

/// lhs(n) = Σ coefficient·term(n) + constant, for all n >= 0.
struct KernelRelation {
	KernelTerm lhs;
	std::vector<std::pair<Rat, KernelTerm>> terms;
	Rat constant{0};

	/// e.g. "f(4n+1) = f(2n+1)".
	std::string str(unsigned base, const std::string& name = "f") const;
};

struct KernelReport {
	/// Kernel elements that span the rest, in discovery order.
	std::vector<KernelTerm> basis;
	/// One relation for each explored element outside the basis.
	std::vector<KernelRelation> relations;
	/// False if some basis element at the maximal depth still had
	/// unexplored children.
	bool closed = false;
};

/// Explores f(k^e n + c) for e <= depth breadth first and finds the exact
/// linear relations among them (with a constant term) by rational
/// elimination over the space spanned by μ(w)v. Requires μ(0)v = v and
/// finite entries.
KernelReport kernel_relations(const LinRep& l, unsigned depth);

/// Checks a relation exactly; same requirements as kernel_relations.
bool verify_relation(const LinRep& l, const KernelRelation& r);

/// Parses "f(8n+2) = f(2n+1) - 8f(4n) + f(4n+3) + 4f(8n)". Multipliers
/// must be powers of `base`; constants and rational coefficients ("3/2f(n)")
/// are allowed.
KernelRelation parse_kernel_relation(const std::string& text, unsigned base);

} // namespace autseq

#endif
