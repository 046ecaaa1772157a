#include "autseq/regseq.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "autseq/error.hpp"
#include "text_util.hpp"

namespace autseq {

std::string to_string(Semiring s) {
	switch (s) {
	case Semiring::nat: return "nat";
	case Semiring::natinf: return "natinf";
	case Semiring::rat: return "rat";
	}
	return "?";
}

Scalar& Scalar::operator+=(const Scalar& b) {
	if (b.inf_)
		inf_ = true;
	if (!inf_)
		q_ += b.q_;
	else
		q_ = 0;
	return *this;
}

std::string Scalar::str() const {
	if (inf_)
		return "inf";
	if (q_.get_den() == 1)
		return q_.get_num().get_str();
	return q_.get_str();
}

Scalar Scalar::parse(const std::string& s) {
	if (s == "inf")
		return infinity();
	std::string num = s, den = "1";
	if (auto slash = s.find('/'); slash != std::string::npos) {
		num = s.substr(0, slash);
		den = s.substr(slash + 1);
	}
	auto digits = [](const std::string& t, bool sign) {
		std::size_t i = sign && !t.empty() && t[0] == '-' ? 1 : 0;
		return i < t.size() && t.find_first_not_of("0123456789", i) == std::string::npos;
	};
	if (!digits(num, true) || !digits(den, false))
		throw ParseError("bad scalar '" + s + "'", 1);
	Nat d(den);
	if (d == 0)
		throw ParseError("zero denominator in '" + s + "'", 1);
	return Scalar(Rat(Nat(num), d));
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

namespace {

void check_entry(Semiring s, const Scalar& x) {
	bool ok = s == Semiring::rat ? !x.is_infinite() : s == Semiring::natinf ? x.is_infinite() || x.is_natural()
	                                                                       : x.is_natural();
	if (!ok)
		throw PreconditionError("entry " + x.str() + " is not in the " + to_string(s) + " semiring");
}

Semiring tag_for(bool infinite) { return infinite ? Semiring::natinf : Semiring::nat; }

std::vector<Scalar> zeros(std::size_t n) { return std::vector<Scalar>(n); }

} // namespace

LinRep::LinRep(Semiring semiring, unsigned base, std::vector<Scalar> u, std::vector<std::vector<Scalar>> mu,
               std::vector<Scalar> v)
    : semiring_(semiring), base_(base), u_(std::move(u)), mu_(std::move(mu)), v_(std::move(v)) {
	check_base(base_);
	std::size_t r = u_.size();
	if (v_.size() != r)
		throw IncompatibleError("u has " + std::to_string(r) + " entries but v has " + std::to_string(v_.size()));
	if (mu_.size() != base_)
		throw IncompatibleError("expected " + std::to_string(base_) + " matrices, got " +
		                        std::to_string(mu_.size()));
	for (auto& m : mu_)
		if (m.size() != r * r)
			throw IncompatibleError("matrix is not " + std::to_string(r) + "x" + std::to_string(r));
	for (auto& x : u_)
		check_entry(semiring_, x);
	for (auto& x : v_)
		check_entry(semiring_, x);
	rows_.resize(base_);
	for (unsigned d = 0; d < base_; ++d) {
		rows_[d].resize(r);
		for (std::size_t i = 0; i < r; ++i)
			for (std::size_t j = 0; j < r; ++j) {
				const Scalar& x = mu_[d][i * r + j];
				check_entry(semiring_, x);
				if (!x.is_zero())
					rows_[d][i].emplace_back(std::uint32_t(j), x);
			}
	}
}

std::vector<Scalar> LinRep::step(const std::vector<Scalar>& x, Digit d) const {
	std::vector<Scalar> y = zeros(rank());
	for (std::size_t i = 0; i < x.size(); ++i) {
		if (x[i].is_zero())
			continue;
		for (auto& [j, m] : rows_[d][i])
			y[j] += x[i] * m;
	}
	return y;
}

std::vector<Scalar> LinRep::step_column(Digit d, const std::vector<Scalar>& y) const {
	std::vector<Scalar> x = zeros(rank());
	for (std::size_t i = 0; i < rank(); ++i)
		for (auto& [j, m] : rows_[d][i])
			if (!y[j].is_zero())
				x[i] += m * y[j];
	return x;
}

Scalar LinRep::evaluate(const DigitWord& w) const {
	if (w.arity() != 1)
		throw ArityError("series are evaluated on arity-1 words");
	if (w.base() != base_)
		throw IncompatibleError("word base " + std::to_string(w.base()) + " differs from series base " +
		                        std::to_string(base_));
	std::vector<Scalar> x = u_;
	for (std::size_t i = 0; i < w.size(); ++i)
		x = step(x, w.at(i, 0));
	Scalar s;
	for (std::size_t i = 0; i < x.size(); ++i)
		s += x[i] * v_[i];
	return s;
}

Scalar LinRep::evaluate(Natural n) const { return evaluate(encode_lsd(n, base_)); }

bool LinRep::has_infinity() const {
	auto any = [](const std::vector<Scalar>& xs) {
		return std::any_of(xs.begin(), xs.end(), [](const Scalar& x) { return x.is_infinite(); });
	};
	return any(u_) || any(v_) || std::any_of(mu_.begin(), mu_.end(), any);
}

LinRep LinRep::retag(Semiring s) const { return LinRep(s, base_, u_, mu_, v_); }

std::string to_text(const LinRep& l) {
	std::ostringstream os;
	std::size_t r = l.rank();
	auto row = [&](const char* head, const std::vector<Scalar>& xs, std::size_t from, std::size_t n) {
		os << head;
		for (std::size_t i = 0; i < n; ++i)
			os << (i || *head ? " " : "") << xs[from + i].str();
		os << '\n';
	};
	os << "linrep semiring=" << to_string(l.semiring()) << " base=" << l.base() << " rank=" << r << '\n';
	row("u", l.u(), 0, r);
	for (Digit d = 0; d < l.base(); ++d) {
		os << "mu " << d << '\n';
		for (std::size_t i = 0; i < r; ++i)
			row("", l.mu(d), i * r, r);
	}
	row("v", l.v(), 0, r);
	return os.str();
}

LinRep linrep_from_text(const std::string& text) {
	auto lines = text::lines(text);
	if (lines.empty())
		throw ParseError("empty linear representation", 1);
	auto head = text::split_ws(lines[0].second);
	if (head.empty() || head[0] != "linrep")
		throw ParseError("expected 'linrep' header", lines[0].first, 1);
	auto kv = text::key_values(head, 1, lines[0].first);
	const std::string& tag = text::require(kv, "semiring", lines[0].first);
	Semiring s = tag == "nat" ? Semiring::nat : tag == "natinf" ? Semiring::natinf
	             : tag == "rat" ? Semiring::rat
	                            : throw ParseError("unknown semiring '" + tag + "'", lines[0].first);
	unsigned base = unsigned(text::parse_unsigned(text::require(kv, "base", lines[0].first), lines[0].first));
	std::size_t r = text::parse_unsigned(text::require(kv, "rank", lines[0].first), lines[0].first);
	if (base < 2)
		throw ParseError("base must be at least 2", lines[0].first);

	std::size_t at = 1;
	auto next = [&](const std::string& what) -> std::pair<std::size_t, std::vector<std::string>> {
		if (at >= lines.size())
			throw ParseError("unexpected end of input, expected " + what, lines.back().first);
		auto& [no, line] = lines[at++];
		return {no, text::split_ws(line)};
	};
	auto entries = [&](std::size_t no, const std::vector<std::string>& fields, std::size_t from) {
		if (fields.size() - from != r)
			throw ParseError("expected " + std::to_string(r) + " entries", no);
		std::vector<Scalar> out;
		for (std::size_t i = from; i < fields.size(); ++i) {
			try {
				out.push_back(Scalar::parse(fields[i]));
			} catch (const ParseError&) {
				throw ParseError("bad entry '" + fields[i] + "'", no);
			}
		}
		return out;
	};
	auto [uno, ufields] = next("u");
	if (ufields.empty() || ufields[0] != "u")
		throw ParseError("expected 'u' row", uno, 1);
	auto u = entries(uno, ufields, 1);
	std::vector<std::vector<Scalar>> mu(base);
	for (unsigned d = 0; d < base; ++d) {
		auto [no, fields] = next("mu " + std::to_string(d));
		if (fields.size() != 2 || fields[0] != "mu" || fields[1] != std::to_string(d))
			throw ParseError("expected 'mu " + std::to_string(d) + "'", no, 1);
		for (std::size_t i = 0; i < r; ++i) {
			auto [rno, rfields] = next("matrix row");
			auto row = entries(rno, rfields, 0);
			mu[d].insert(mu[d].end(), row.begin(), row.end());
		}
	}
	auto [vno, vfields] = next("v");
	if (vfields.empty() || vfields[0] != "v")
		throw ParseError("expected 'v' row", vno, 1);
	auto v = entries(vno, vfields, 1);
	if (at != lines.size())
		throw ParseError("trailing content", lines[at].first);
	try {
		return LinRep(s, base, std::move(u), std::move(mu), std::move(v));
	} catch (const PreconditionError& e) {
		throw ParseError(e.what(), lines[0].first);
	}
}

LinRep linrep_from_nfa(const Nfa& a) {
	if (a.arity() != 1)
		throw ArityError("series need an arity-1 automaton, got arity " + std::to_string(a.arity()));
	if (a.has_epsilon())
		throw PreconditionError("automaton has epsilon transitions; saturate first");
	std::size_t r = a.num_states();
	std::vector<Scalar> u = zeros(r), v = zeros(r);
	std::vector<std::vector<Scalar>> mu(a.base(), zeros(r * r));
	bool inf = false;
	for (State q : a.initials())
		u[q] += Scalar(1L);
	for (auto& t : a.transitions()) {
		mu[t.symbol][t.from * r + t.to] += Scalar(t.multiplicity);
		inf = inf || t.multiplicity.is_infinite();
	}
	for (State q = 0; q < r; ++q) {
		v[q] = Scalar(a.final_weight(q));
		inf = inf || a.final_weight(q).is_infinite();
	}
	return LinRep(tag_for(inf), a.base(), std::move(u), std::move(mu), std::move(v));
}

Nfa nfa_from_linrep(const LinRep& l) {
	for (auto* xs : {&l.u(), &l.v()})
		for (auto& x : *xs)
			if (!x.is_natural())
				throw PreconditionError("entry " + x.str() + " is not a natural number");
	for (Digit d = 0; d < l.base(); ++d)
		for (auto& x : l.mu(d))
			if (!x.is_natural())
				throw PreconditionError("entry " + x.str() + " is not a natural number");

	// Rank t+2 form with u' = e_first, v' = e_last, so ε has value 0.
	std::size_t t = l.rank(), n = t + 2;
	std::vector<std::vector<Nat>> mu(l.base(), std::vector<Nat>(n * n));
	for (Digit d = 0; d < l.base(); ++d) {
		auto um = l.step(l.u(), d);
		auto mv = l.step_column(d, l.v());
		Scalar umv;
		for (std::size_t j = 0; j < t; ++j)
			umv += um[j] * l.v()[j];
		auto& m = mu[d];
		for (std::size_t j = 0; j < t; ++j) {
			m[0 * n + 1 + j] = um[j].rational().get_num();
			m[(1 + j) * n + n - 1] = mv[j].rational().get_num();
			for (std::size_t i = 0; i < t; ++i)
				m[(1 + i) * n + 1 + j] = l.mu(d, i, j).rational().get_num();
		}
		m[n - 1] = umv.rational().get_num();
	}
	Nat top = 1;
	for (auto& m : mu)
		for (auto& x : m)
			top = std::max(top, x);
	Limits limits;
	if (top * n > Nat(static_cast<unsigned long>(limits.max_states)))
		throw ResourceError("copies construction needs " + Nat(top * n).get_str() + " states");
	std::size_t copies = top.get_ui();

	// State [i, s] is i * copies + s; only states reachable from [0, 0] are built.
	std::unordered_map<std::size_t, State> id;
	std::vector<std::size_t> order;
	auto get = [&](std::size_t key) {
		auto [it, fresh] = id.emplace(key, State(order.size()));
		if (fresh)
			order.push_back(key);
		return it->second;
	};
	get(0);
	struct Edge {
		State from;
		Digit d;
		std::size_t to;
	};
	std::vector<Edge> edges;
	for (std::size_t k = 0; k < order.size(); ++k) {
		std::size_t i = order[k] / copies;
		for (Digit d = 0; d < l.base(); ++d)
			for (std::size_t r = 0; r < n; ++r) {
				std::size_t c = mu[d][i * n + r].get_ui();
				for (std::size_t s = 0; s < c; ++s)
					edges.push_back({State(k), d, get(r * copies + s)});
			}
	}
	Nfa out(l.base(), 1, State(order.size()));
	out.add_initial(0);
	for (auto& e : edges)
		out.add_transition(e.from, e.d, State(e.to));
	for (std::size_t k = 0; k < order.size(); ++k)
		if (order[k] / copies == n - 1)
			out.set_final(State(k));
	return out;
}

Nfa eps_saturate(const Nfa& a) {
	if (!a.has_epsilon())
		return a;
	std::size_t n = a.num_states();
	std::vector<std::vector<std::pair<State, NatInf>>> eps(n);
	std::vector<std::vector<const NfaTransition*>> sym(n);
	for (auto& t : a.transitions()) {
		if (t.multiplicity.is_zero())
			continue;
		if (t.is_epsilon())
			eps[t.from].emplace_back(t.to, t.multiplicity);
		else
			sym[t.from].push_back(&t);
	}

	// Tarjan over the ε-graph; components come out in reverse topological order.
	std::vector<int> comp(n, -1), low(n), index(n, -1);
	std::vector<State> stack;
	std::vector<char> on_stack(n, 0);
	int counter = 0, ncomp = 0;
	std::vector<char> cyclic;
	for (State root = 0; root < n; ++root) {
		if (index[root] >= 0)
			continue;
		std::vector<std::pair<State, std::size_t>> work{{root, 0}};
		index[root] = low[root] = counter++;
		stack.push_back(root);
		on_stack[root] = 1;
		while (!work.empty()) {
			auto& [q, next] = work.back();
			if (next < eps[q].size()) {
				State r = eps[q][next++].first;
				if (index[r] < 0) {
					index[r] = low[r] = counter++;
					stack.push_back(r);
					on_stack[r] = 1;
					work.emplace_back(r, 0);
				} else if (on_stack[r]) {
					low[q] = std::min(low[q], index[r]);
				}
				continue;
			}
			State done = q;
			work.pop_back();
			if (!work.empty())
				low[work.back().first] = std::min(low[work.back().first], low[done]);
			if (low[done] == index[done]) {
				std::size_t size = 0;
				State x;
				do {
					x = stack.back();
					stack.pop_back();
					on_stack[x] = 0;
					comp[x] = ncomp;
					++size;
				} while (x != done);
				bool loop = size > 1;
				for (auto& [r, m] : eps[done])
					loop = loop || r == done;
				cyclic.push_back(loop);
				++ncomp;
			}
		}
	}
	// Topological position: higher component number comes first.
	std::vector<std::vector<State>> members(ncomp);
	for (State q = 0; q < n; ++q)
		members[comp[q]].push_back(q);
	std::vector<std::vector<std::pair<State, NatInf>>> incoming(n);
	for (State q = 0; q < n; ++q)
		for (auto& [r, m] : eps[q])
			incoming[r].emplace_back(q, m);

	Nfa out(a.base(), a.arity(), State(n));
	for (State q : a.initials())
		out.add_initial(q);
	std::vector<NatInf> val(n);
	std::vector<char> seen(n, 0);
	for (State s = 0; s < n; ++s) {
		// Components reachable from s by ε.
		std::vector<State> reach{s};
		seen[s] = 1;
		for (std::size_t k = 0; k < reach.size(); ++k)
			for (auto& [r, m] : eps[reach[k]])
				if (!seen[r]) {
					seen[r] = 1;
					reach.push_back(r);
				}
		std::vector<int> comps;
		for (State q : reach)
			comps.push_back(comp[q]);
		std::sort(comps.begin(), comps.end(), std::greater<>());
		comps.erase(std::unique(comps.begin(), comps.end()), comps.end());
		for (int c : comps) {
			NatInf inflow = 0;
			for (State x : members[c]) {
				if (!seen[x])
					continue;
				for (auto& [y, m] : incoming[x])
					if (seen[y] && comp[y] != c)
						inflow += val[y] * m;
				if (x == s)
					inflow += NatInf(1);
				if (!cyclic[c])
					val[x] = inflow;
			}
			if (cyclic[c])
				for (State x : members[c])
					if (seen[x])
						val[x] = inflow.is_zero() ? NatInf() : NatInf::infinity();
		}
		std::map<std::pair<Symbol, State>, NatInf> moves;
		NatInf weight;
		for (State q : reach) {
			if (val[q].is_zero())
				continue;
			weight += val[q] * a.final_weight(q);
			for (auto* t : sym[q])
				moves[{t->symbol, t->to}] += val[q] * t->multiplicity;
		}
		for (auto& [key, m] : moves)
			out.add_transition(s, key.first, m, key.second);
		if (!weight.is_zero())
			out.set_final(s, weight);
		for (State q : reach) {
			seen[q] = 0;
			val[q] = NatInf();
		}
	}
	return out;
}

LinRep reverse_series(const LinRep& l) {
	std::size_t r = l.rank();
	std::vector<std::vector<Scalar>> mu(l.base(), zeros(r * r));
	for (Digit d = 0; d < l.base(); ++d)
		for (std::size_t i = 0; i < r; ++i)
			for (std::size_t j = 0; j < r; ++j)
				mu[d][j * r + i] = l.mu(d, i, j);
	return LinRep(l.semiring(), l.base(), l.v(), std::move(mu), l.u());
}

LinRep normalize_leading(const LinRep& l) {
	std::size_t r = l.rank(), n = 2 * r;
	std::vector<Scalar> u = zeros(n), v = zeros(n);
	for (std::size_t i = 0; i < r; ++i) {
		u[r + i] = l.u()[i];
		v[i] = v[r + i] = l.v()[i];
	}
	std::vector<std::vector<Scalar>> mu(l.base(), zeros(n * n));
	for (Digit d = 0; d < l.base(); ++d) {
		auto& m = mu[d];
		for (std::size_t i = 0; i < r; ++i)
			for (std::size_t j = 0; j < r; ++j) {
				m[i * n + j] = l.mu(d, i, j);
				if (d != 0)
					m[(r + i) * n + j] = l.mu(d, i, j);
			}
		if (d == 0)
			for (std::size_t i = 0; i < r; ++i)
				m[(r + i) * n + r + i] = Scalar(1L);
	}
	return LinRep(l.semiring(), l.base(), std::move(u), std::move(mu), std::move(v));
}

LinRep normalize_trailing(const LinRep& l) { return reverse_series(normalize_leading(reverse_series(l))); }

InfDecomposition decompose_infinity(const LinRep& l, const Limits& limits) {
	std::size_t r = l.rank();
	unsigned k = l.base();
	auto tau = [](const Scalar& x) {
		return x.is_infinite() ? Sign::infinite : x.is_zero() ? Sign::zero : Sign::positive;
	};
	std::vector<std::vector<std::vector<std::pair<std::uint32_t, Sign>>>> rows(k, std::vector<std::vector<std::pair<std::uint32_t, Sign>>>(r));
	for (Digit d = 0; d < k; ++d)
		for (std::size_t i = 0; i < r; ++i)
			for (std::size_t j = 0; j < r; ++j)
				if (Sign s = tau(l.mu(d, i, j)); s != Sign::zero)
					rows[d][i].emplace_back(std::uint32_t(j), s);

	using Vec = std::string; // one byte per coordinate
	std::unordered_map<Vec, State> id;
	std::vector<Vec> states;
	auto get = [&](Vec x) {
		auto [it, fresh] = id.emplace(x, State(states.size()));
		if (fresh) {
			if (states.size() >= limits.max_states)
				throw ResourceError("infinity decomposition exceeds " + std::to_string(limits.max_states) +
				                    " states");
			states.push_back(std::move(x));
		}
		return it->second;
	};
	Vec start(r, 0);
	for (std::size_t i = 0; i < r; ++i)
		start[i] = char(tau(l.u()[i]));
	get(start);
	std::vector<State> delta;
	std::vector<char> finals;
	for (std::size_t q = 0; q < states.size(); ++q) {
		for (Digit d = 0; d < k; ++d) {
			Vec y(r, 0);
			const Vec& x = states[q];
			for (std::size_t i = 0; i < r; ++i) {
				if (x[i] == 0)
					continue;
				for (auto& [j, s] : rows[d][i])
					y[j] = char(sign_add(Sign(y[j]), sign_mul(Sign(x[i]), s)));
			}
			delta.push_back(get(std::move(y)));
		}
		Sign acc = Sign::zero;
		for (std::size_t i = 0; i < r; ++i)
			acc = sign_add(acc, sign_mul(Sign(states[q][i]), tau(l.v()[i])));
		finals.push_back(acc == Sign::infinite);
	}
	Dfa inf = minimize(Dfa(k, 1, State(states.size()), 0, std::move(delta), std::move(finals)));

	auto xi = [](std::vector<Scalar> xs) {
		for (auto& x : xs)
			if (x.is_infinite())
				x = Scalar();
		return xs;
	};
	std::vector<std::vector<Scalar>> mu;
	for (Digit d = 0; d < k; ++d)
		mu.push_back(xi(l.mu(d)));
	Semiring tag = l.semiring() == Semiring::rat ? Semiring::rat : Semiring::nat;
	return {std::move(inf), LinRep(tag, k, xi(l.u()), std::move(mu), xi(l.v()))};
}

LinRep push_infinity_to_u(const LinRep& l, const Limits& limits) {
	if (!l.has_infinity())
		return l;
	auto parts = decompose_infinity(l, limits);
	const Dfa& a = parts.infinite;
	const LinRep& g = parts.finite;
	std::size_t rg = g.rank(), m = a.num_states(), n = rg * m + m;
	unsigned k = l.base();
	// g ⊙ χ(complement) as a Kronecker product, then χ(L)·∞.
	std::vector<Scalar> u = zeros(n), v = zeros(n);
	std::vector<std::vector<Scalar>> mu(k, zeros(n * n));
	for (std::size_t i = 0; i < rg; ++i) {
		u[i * m + a.initial()] = g.u()[i];
		for (State q = 0; q < m; ++q)
			if (!a.is_final(q))
				v[i * m + q] = g.v()[i];
	}
	for (Digit d = 0; d < k; ++d)
		for (std::size_t i = 0; i < rg; ++i)
			for (std::size_t j = 0; j < rg; ++j) {
				const Scalar& x = g.mu(d, i, j);
				if (x.is_zero())
					continue;
				for (State q = 0; q < m; ++q)
					mu[d][(i * m + q) * n + j * m + a.next(q, d)] = x;
			}
	std::size_t off = rg * m;
	u[off + a.initial()] = Scalar::infinity();
	for (State q = 0; q < m; ++q) {
		if (a.is_final(q))
			v[off + q] = Scalar(1L);
		for (Digit d = 0; d < k; ++d)
			mu[d][(off + q) * n + off + a.next(q, d)] = Scalar(1L);
	}
	return LinRep(Semiring::natinf, k, std::move(u), std::move(mu), std::move(v));
}

namespace {

// Removes states that are unreachable or cannot reach a final state.
Nfa trim(const Nfa& a) {
	std::size_t n = a.num_states();
	std::vector<std::vector<State>> fwd(n), bwd(n);
	for (auto& t : a.transitions()) {
		if (t.multiplicity.is_zero())
			continue;
		fwd[t.from].push_back(t.to);
		bwd[t.to].push_back(t.from);
	}
	auto sweep = [&](std::vector<State> from, const std::vector<std::vector<State>>& g) {
		std::vector<char> mark(n, 0);
		for (State q : from)
			mark[q] = 1;
		for (std::size_t k = 0; k < from.size(); ++k)
			for (State r : g[from[k]])
				if (!mark[r]) {
					mark[r] = 1;
					from.push_back(r);
				}
		return mark;
	};
	std::vector<State> finals;
	for (State q = 0; q < n; ++q)
		if (a.is_final(q))
			finals.push_back(q);
	auto reach = sweep(a.initials(), fwd);
	auto useful = sweep(finals, bwd);
	std::vector<State> id(n, kEpsilon);
	State count = 0;
	for (State q = 0; q < n; ++q)
		if (reach[q] && useful[q])
			id[q] = count++;
	Nfa out(a.base(), a.arity(), count);
	for (State q : a.initials())
		if (id[q] != kEpsilon)
			out.add_initial(id[q]);
	for (auto& t : a.transitions())
		if (id[t.from] != kEpsilon && id[t.to] != kEpsilon && !t.multiplicity.is_zero())
			out.add_transition(id[t.from], t.symbol, t.multiplicity, id[t.to]);
	for (State q = 0; q < n; ++q)
		if (id[q] != kEpsilon && a.is_final(q))
			out.set_final(id[q], a.final_weight(q));
	return out;
}

// Adds a state T with μ(0)[q][T] = v_q, μ(0)[T][T] = 1 and v_T = 1, so a
// trailing 0 moves the value into T where further 0s keep it. When μ(0)v = 0
// this gives μ'(0)v' = v' and leaves values on words not ending in 0 alone.
LinRep add_zero_tail(const LinRep& l) {
	std::size_t r = l.rank(), n = r + 1;
	std::vector<Scalar> u = l.u(), v = zeros(n);
	u.emplace_back();
	v[r] = Scalar(1L);
	std::vector<std::vector<Scalar>> mu(l.base(), zeros(n * n));
	for (Digit d = 0; d < l.base(); ++d)
		for (std::size_t i = 0; i < r; ++i)
			for (std::size_t j = 0; j < r; ++j)
				mu[d][i * n + j] = l.mu(d, i, j);
	for (std::size_t i = 0; i < r; ++i) {
		mu[0][i * n + r] = l.v()[i];
		v[i] = l.v()[i];
	}
	mu[0][r * n + r] = Scalar(1L);
	return LinRep(l.semiring(), l.base(), std::move(u), std::move(mu), std::move(v));
}

} // namespace

CountingRep count_parameter(const Dfa& p, const Limits& limits) {
	if (p.arity() != 2)
		throw ArityError("count_parameter needs tracks (n, i), got arity " + std::to_string(p.arity()));
	Dfa mp = minimize(p);
	if (!(minimize(pad_closure(mp, limits)) == mp))
		throw PreconditionError("automaton is not closed under padding");

	// Phases of the unique representative: S0 start, N1/N0 reading n with the
	// last n-digit nonzero/zero, B1/B0 past the end of n with the last
	// i-digit nonzero/zero. B positions are ε-moves on the n input.
	enum Phase : unsigned { S0, N1, N0, B1, B0, phases };
	unsigned k = p.base();
	State m = mp.num_states();
	auto id = [&](State q, unsigned c) { return State(q * phases + c); };
	if (std::size_t(m) * phases > limits.max_states)
		throw ResourceError("counting automaton exceeds " + std::to_string(limits.max_states) + " states");
	Nfa a(k, 1, State(m * phases));
	a.add_initial(id(mp.initial(), S0));
	const TupleAlphabet& sigma = mp.alphabet();
	for (State q = 0; q < m; ++q) {
		for (unsigned c = 0; c < phases; ++c) {
			if (mp.is_final(q) && (c == S0 || c == N1 || c == B1))
				a.set_final(id(q, c));
			if (c == S0 || c == N1 || c == N0) {
				for (Digit d = 0; d < k; ++d) {
					std::map<State, long> targets;
					for (Digit e = 0; e < k; ++e) {
						Digit pair[2] = {d, e};
						++targets[mp.next(q, sigma.encode(pair))];
					}
					for (auto& [r, mult] : targets)
						a.add_transition(id(q, c), d, NatInf(mult), id(r, d ? N1 : N0));
				}
			}
			if (c == S0 || c == N1 || c == B1 || c == B0) {
				for (Digit e = 0; e < k; ++e) {
					Digit pair[2] = {0, e};
					a.add_epsilon(id(q, c), id(mp.next(q, sigma.encode(pair)), e ? B1 : B0));
				}
			}
		}
	}
	Nfa spelled = trim(a);
	Nfa counting = eps_saturate(spelled);
	// Saturation keeps every state; trim again so the rank stays small.
	counting = trim(counting);
	LinRep raw = counting.num_states() == 0
	                 ? LinRep(Semiring::nat, k, {}, std::vector<std::vector<Scalar>>(k), {})
	                 : linrep_from_nfa(counting);
	LinRep rep = add_zero_tail(raw);
	if (rep.semiring() == Semiring::nat)
		rep = rep.retag(Semiring::natinf);
	InfDecomposition parts = decompose_infinity(rep, limits);
	bool finite = is_empty(parts.infinite).empty;
	return {finite ? parts.finite : rep, std::move(parts), spelled.num_states()};
}

CountingRep count_measure(const Dfa& p, const Limits& limits) {
	if (p.arity() != 2)
		throw ArityError("count_measure needs tracks (n, t), got arity " + std::to_string(p.arity()));
	constexpr Natural sample = 48;
	for (Natural n = 0; n < sample; ++n)
		for (Natural t = 0; t + 1 < sample; ++t)
			if (p.accepts(encode_tuple({n, t + 1}, p.base())) && !p.accepts(encode_tuple({n, t}, p.base())))
				throw PreconditionError("automaton is not downward closed in t: accepts (" + std::to_string(n) +
				                        ", " + std::to_string(t + 1) + ") but not (" + std::to_string(n) + ", " +
				                        std::to_string(t) + ")");
	return count_parameter(p, limits);
}

LinRep representation_count(const std::vector<long long>& digits, unsigned base, const Limits& limits) {
	check_base(base);
	std::vector<long long> E = digits;
	std::sort(E.begin(), E.end());
	E.erase(std::unique(E.begin(), E.end()), E.end());
	long long k = base;
	auto fdiv = [](long long a, long long b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); };
	auto fmod = [&](long long a, long long b) { return a - fdiv(a, b) * b; };

	// (carry, last guessed digit was 0, guessed word has ended, past the end of n).
	struct Key {
		long long carry;
		bool zero, ended, beyond;
		bool operator<(const Key& o) const {
			return std::tie(carry, zero, ended, beyond) < std::tie(o.carry, o.zero, o.ended, o.beyond);
		}
	};
	std::map<Key, State> id;
	std::vector<Key> states;
	auto get = [&](Key key) {
		auto [it, fresh] = id.emplace(key, State(states.size()));
		if (fresh) {
			if (states.size() >= limits.max_states)
				throw ResourceError("representation automaton exceeds " + std::to_string(limits.max_states) +
				                    " states");
			states.push_back(key);
		}
		return it->second;
	};
	get({0, false, false, false});
	struct Edge {
		State from;
		Symbol symbol;
		State to;
	};
	std::vector<Edge> edges;
	for (std::size_t q = 0; q < states.size(); ++q) {
		Key s = states[q];
		if (s.ended) {
			for (long long d = 0; d < k; ++d)
				if (fmod(s.carry, k) == d)
					edges.push_back({State(q), Symbol(d), get({fdiv(s.carry, k), false, true, false})});
			continue;
		}
		if (!s.beyond) {
			for (long long d = 0; d < k; ++d) {
				for (long long e : E)
					if (fmod(s.carry + e - d, k) == 0)
						edges.push_back({State(q), Symbol(d), get({(s.carry + e - d) / k, e == 0, false, false})});
				if (!s.zero && fmod(s.carry, k) == d)
					edges.push_back({State(q), Symbol(d), get({fdiv(s.carry, k), false, true, false})});
			}
		}
		for (long long e : E)
			if (fmod(s.carry + e, k) == 0)
				edges.push_back({State(q), kEpsilon, get({(s.carry + e) / k, e == 0, false, true})});
	}
	Nfa a(base, 1, State(states.size()));
	a.add_initial(0);
	for (auto& e : edges)
		a.add_transition(e.from, e.symbol, e.to);
	for (std::size_t q = 0; q < states.size(); ++q)
		if (states[q].carry == 0 && (states[q].ended || !states[q].zero))
			a.set_final(State(q));
	Nfa counting = trim(eps_saturate(trim(a)));
	if (counting.num_states() == 0)
		return LinRep(Semiring::natinf, base, {}, std::vector<std::vector<Scalar>>(base), {});
	return linrep_from_nfa(counting).retag(Semiring::natinf);
}

// ---- kernel relations ----

namespace {

using RatVec = std::vector<Rat>;

std::string term_str(const KernelTerm& t, unsigned base, const std::string& name) {
	Nat a;
	mpz_ui_pow_ui(a.get_mpz_t(), base, t.exponent);
	std::string s = name + "(";
	if (t.exponent > 0)
		s += a.get_str();
	s += "n";
	if (t.offset > 0)
		s += "+" + std::to_string(t.offset);
	return s + ")";
}

Natural power(unsigned base, unsigned e) {
	Natural p = 1;
	for (unsigned i = 0; i < e; ++i) {
		if (p > std::numeric_limits<Natural>::max() / base)
			throw PreconditionError("kernel exponent too large");
		p *= base;
	}
	return p;
}

// Exact rational view of a trailing-normalized finite representation: the
// generators of span{(μ(w)v, 1)} (the extra coordinate carries constants).
class KernelSpace {
public:
	explicit KernelSpace(const LinRep& l) : l_(l), r_(l.rank()) {
		if (l.has_infinity())
			throw PreconditionError("kernel relations need finite entries");
		if (!(l.step_column(0, l.v()) == l.v()))
			throw PreconditionError("representation is not trailing-normalized (mu(0)v != v)");
		std::vector<RatVec> echelon;
		std::vector<std::size_t> pivots;
		auto add = [&](const RatVec& y) {
			RatVec t = y;
			for (std::size_t k = 0; k < echelon.size(); ++k)
				if (sgn(t[pivots[k]]) != 0) {
					Rat f = t[pivots[k]] / echelon[k][pivots[k]];
					for (std::size_t j = 0; j <= r_; ++j)
						t[j] -= f * echelon[k][j];
				}
			auto nz = std::find_if(t.begin(), t.end(), [](const Rat& x) { return sgn(x) != 0; });
			if (nz == t.end())
				return false;
			pivots.push_back(std::size_t(nz - t.begin()));
			echelon.push_back(std::move(t));
			gens_.push_back(y);
			return true;
		};
		RatVec start(r_ + 1);
		for (std::size_t i = 0; i < r_; ++i)
			start[i] = l.v()[i].rational();
		start[r_] = 1;
		add(start);
		for (std::size_t k = 0; k < gens_.size(); ++k)
			for (Digit d = 0; d < l.base(); ++d) {
				RatVec y(r_ + 1);
				for (std::size_t i = 0; i < r_; ++i)
					for (std::size_t j = 0; j < r_; ++j) {
						const Scalar& m = l.mu(d, i, j);
						if (!m.is_zero() && sgn(gens_[k][j]) != 0)
							y[i] += m.rational() * gens_[k][j];
					}
				y[r_] = 1;
				add(y);
			}
	}

	std::size_t dimension() const { return gens_.size(); }

	// Row vector u·μ(pad_e(c)).
	RatVec row(const KernelTerm& t) const {
		if (t.offset >= power(l_.base(), t.exponent))
			throw PreconditionError("offset " + std::to_string(t.offset) + " needs exponent above " +
			                        std::to_string(t.exponent));
		std::vector<Scalar> x = l_.u();
		Natural c = t.offset;
		for (unsigned i = 0; i < t.exponent; ++i) {
			x = l_.step(x, Digit(c % l_.base()));
			c /= l_.base();
		}
		RatVec out(r_);
		for (std::size_t i = 0; i < r_; ++i)
			out[i] = x[i].rational();
		return out;
	}

	RatVec coordinates(const RatVec& x) const {
		RatVec y(gens_.size());
		for (std::size_t g = 0; g < gens_.size(); ++g)
			for (std::size_t i = 0; i < r_; ++i)
				if (sgn(x[i]) != 0)
					y[g] += x[i] * gens_[g][i];
		return y;
	}
	RatVec constant_coordinates() const { return RatVec(gens_.size(), Rat(1)); }

	const LinRep& series() const { return l_; }

private:
	const LinRep& l_;
	std::size_t r_;
	std::vector<RatVec> gens_;
};

} // namespace

std::string KernelRelation::str(unsigned base, const std::string& name) const {
	std::string s = term_str(lhs, base, name) + " =";
	bool first = true;
	auto coefficient = [&](Rat c, const std::string& body) {
		bool neg = sgn(c) < 0;
		if (neg)
			c = -c;
		s += first ? (neg ? " -" : " ") : (neg ? " - " : " + ");
		if (!body.empty()) {
			if (c != 1)
				s += c.get_str();
			s += body;
		} else {
			s += c.get_str();
		}
		first = false;
	};
	for (auto& [c, t] : terms)
		coefficient(c, term_str(t, base, name));
	if (sgn(constant) != 0)
		coefficient(constant, "");
	if (first)
		s += " 0";
	return s;
}

KernelReport kernel_relations(const LinRep& l, unsigned depth) {
	KernelSpace space(l);
	std::size_t d = space.dimension();
	unsigned k = l.base();

	// Basis element 0 is the constant function; element b > 0 is report.basis[b-1].
	struct Pivot {
		RatVec row;
		RatVec combo;
		std::size_t pivot;
	};
	std::vector<Pivot> pivots;
	KernelReport report;
	std::size_t nbasis = 0;
	// Returns the combination if y lies in the span, else registers it.
	auto reduce = [&](const RatVec& y) -> std::optional<RatVec> {
		RatVec t = y, coeff(nbasis + 1);
		for (auto& p : pivots) {
			if (sgn(t[p.pivot]) == 0)
				continue;
			Rat f = t[p.pivot] / p.row[p.pivot];
			for (std::size_t j = 0; j < d; ++j)
				t[j] -= f * p.row[j];
			for (std::size_t j = 0; j < p.combo.size(); ++j)
				coeff[j] += f * p.combo[j];
		}
		auto nz = std::find_if(t.begin(), t.end(), [](const Rat& x) { return sgn(x) != 0; });
		if (nz == t.end()) {
			coeff.resize(nbasis);
			return coeff;
		}
		std::size_t pivot = std::size_t(nz - t.begin());
		RatVec combo(nbasis + 1);
		for (std::size_t j = 0; j < nbasis; ++j)
			combo[j] = -coeff[j];
		combo[nbasis] = 1;
		pivots.push_back({std::move(t), std::move(combo), pivot});
		++nbasis;
		return std::nullopt;
	};
	reduce(space.constant_coordinates());

	struct Item {
		KernelTerm term;
		std::vector<Scalar> x;
	};
	std::deque<Item> queue{{KernelTerm{0, 0}, l.u()}};
	report.closed = true;
	while (!queue.empty()) {
		Item item = std::move(queue.front());
		queue.pop_front();
		RatVec x(l.rank());
		for (std::size_t i = 0; i < x.size(); ++i)
			x[i] = item.x[i].rational();
		if (auto combo = reduce(space.coordinates(x))) {
			KernelRelation rel;
			rel.lhs = item.term;
			rel.constant = (*combo)[0];
			for (std::size_t b = 1; b < combo->size(); ++b)
				if (sgn((*combo)[b]) != 0)
					rel.terms.emplace_back((*combo)[b], report.basis[b - 1]);
			report.relations.push_back(std::move(rel));
			continue;
		}
		report.basis.push_back(item.term);
		if (item.term.exponent >= depth) {
			report.closed = false;
			continue;
		}
		Natural weight = power(k, item.term.exponent);
		for (Digit dgt = 0; dgt < k; ++dgt)
			queue.push_back({KernelTerm{item.term.exponent + 1, item.term.offset + weight * dgt}, l.step(item.x, dgt)});
	}
	return report;
}

bool verify_relation(const LinRep& l, const KernelRelation& r) {
	KernelSpace space(l);
	RatVec total = space.coordinates(space.row(r.lhs));
	auto sub = [&](const RatVec& y, const Rat& c) {
		for (std::size_t j = 0; j < total.size(); ++j)
			total[j] -= c * y[j];
	};
	for (auto& [c, t] : r.terms)
		sub(space.coordinates(space.row(t)), c);
	sub(space.constant_coordinates(), r.constant);
	return std::all_of(total.begin(), total.end(), [](const Rat& x) { return sgn(x) == 0; });
}

KernelRelation parse_kernel_relation(const std::string& text, unsigned base) {
	check_base(base);
	std::string s;
	for (char c : text)
		if (!std::isspace(static_cast<unsigned char>(c)))
			s += c;
	std::size_t pos = 0;
	auto fail = [&](const std::string& msg) -> void {
		throw ParseError(msg + " in '" + text + "'", 1, pos + 1);
	};
	auto number = [&]() {
		std::size_t start = pos;
		while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
			++pos;
		if (start == pos)
			fail("expected a number");
		return Nat(s.substr(start, pos - start));
	};
	auto is_name = [&](std::size_t i) {
		return i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_');
	};
	auto term = [&]() {
		if (!is_name(pos))
			fail("expected a sequence name");
		while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
			++pos;
		if (pos >= s.size() || s[pos] != '(')
			fail("expected '('");
		++pos;
		Nat a = 1;
		if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
			a = number();
		if (pos >= s.size() || s[pos] != 'n')
			fail("expected 'n'");
		++pos;
		Nat b = 0;
		if (pos < s.size() && s[pos] == '+') {
			++pos;
			b = number();
		}
		if (pos >= s.size() || s[pos] != ')')
			fail("expected ')'");
		++pos;
		KernelTerm t;
		Nat p = 1;
		while (p < a) {
			p *= base;
			++t.exponent;
		}
		if (p != a)
			fail("multiplier " + a.get_str() + " is not a power of " + std::to_string(base));
		if (b >= a)
			fail("offset " + b.get_str() + " is not below " + a.get_str());
		t.offset = b.get_ui();
		return t;
	};
	KernelRelation rel;
	rel.lhs = term();
	if (pos >= s.size() || s[pos] != '=')
		fail("expected '='");
	++pos;
	bool first = true;
	while (pos < s.size()) {
		bool neg = false;
		if (s[pos] == '+' || s[pos] == '-') {
			neg = s[pos] == '-';
			++pos;
		} else if (!first) {
			fail("expected '+' or '-'");
		}
		first = false;
		Rat c = 1;
		bool has_number = pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
		if (has_number) {
			Nat num = number();
			Nat den = 1;
			if (pos < s.size() && s[pos] == '/') {
				++pos;
				den = number();
				if (den == 0)
					fail("zero denominator");
			}
			c = Rat(num, den);
			c.canonicalize();
			if (pos < s.size() && s[pos] == '*')
				++pos;
		}
		if (neg)
			c = -c;
		if (pos < s.size() && is_name(pos)) {
			KernelTerm t = term();
			auto it = std::find_if(rel.terms.begin(), rel.terms.end(), [&](auto& e) { return e.second == t; });
			if (it != rel.terms.end())
				it->first += c;
			else
				rel.terms.emplace_back(c, t);
		} else if (has_number) {
			rel.constant += c;
		} else {
			fail("expected a term");
		}
	}
	if (first)
		fail("empty right-hand side");
	return rel;
}

} // namespace autseq
