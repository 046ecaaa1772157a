// autseq: command-line front end. Numbers on the command line and in
// printed output are ordinary decimal; files use the library's lsd formats.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "acceptance.hpp"
#include "autseq/analyses.hpp"
#include "autseq/error.hpp"
#include "autseq/oracle.hpp"

using namespace autseq;

namespace {

enum Exit { ok = 0, negative = 1, usage = 2, resource = 3, internal = 4 };

struct Session {
	std::vector<std::string> bindings; // name=file-or-builtin
	unsigned base = 0;
	std::size_t max_states = Limits{}.max_states;
	std::string export_path;
	std::size_t prefix_len = 10000;

	std::map<std::string, Dfao> sequences;

	Limits limits() const { return Limits{max_states}; }

	void bind() {
		for (const auto& b : bindings) {
			auto eq = b.find('=');
			if (eq == std::string::npos || eq == 0)
				throw PreconditionError("--seq expects name=file, got '" + b + "'");
			sequences.insert_or_assign(b.substr(0, eq), load(b.substr(eq + 1)));
		}
		std::optional<unsigned> common;
		for (auto& [name, s] : sequences) {
			if (common && *common != s.base())
				throw IncompatibleError("bound sequences have different bases");
			common = s.base();
		}
		if (common && base != 0 && base != *common)
			throw IncompatibleError("--base " + std::to_string(base) + " disagrees with the sequences' base " +
			                        std::to_string(*common));
	}

	// A bound name, a built-in name, or a DFAO file.
	Dfao load(const std::string& what) const {
		if (auto it = sequences.find(what); it != sequences.end())
			return it->second;
		auto names = builtin_sequence_names();
		if (std::find(names.begin(), names.end(), what) != names.end() || what == "thue-morse")
			return builtin_sequence(what);
		std::ifstream in(what);
		if (!in)
			throw PreconditionError("'" + what + "' is neither a sequence name nor a readable file");
		std::stringstream ss;
		ss << in.rdbuf();
		return load_dfao(ss.str());
	}

	Environment environment() const {
		Environment env;
		env.sequences = sequences;
		env.base = base;
		env.limits = limits();
		return env;
	}
};

struct Range {
	Natural first = 0, last = 0;
};

Range parse_range(const std::string& text) {
	auto dots = text.find("..");
	try {
		std::size_t used = 0;
		if (dots == std::string::npos) {
			Natural n = std::stoull(text, &used);
			if (used != text.size())
				throw std::invalid_argument(text);
			return {n, n};
		}
		Range r{std::stoull(text.substr(0, dots), &used), 0};
		if (used != dots)
			throw std::invalid_argument(text);
		std::string tail = text.substr(dots + 2);
		r.last = std::stoull(tail, &used);
		if (used != tail.size() || r.last < r.first)
			throw std::invalid_argument(text);
		return r;
	} catch (const std::logic_error&) {
		throw PreconditionError("bad range '" + text + "'; use N or A..B");
	}
}

void write_file(const std::string& path, const std::string& text) {
	std::ofstream out(path);
	if (!out)
		throw PreconditionError("cannot write '" + path + "'");
	out << text;
}

std::string tuple_text(const std::vector<std::pair<std::string, Natural>>& a) {
	std::string out;
	for (auto& [name, v] : a)
		out += (out.empty() ? "" : ", ") + name + " = " + std::to_string(v);
	return out;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
	return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

struct MeasureArgs {
	std::string kind;
	std::string anchor = "none";
	std::string exponent = "2/1";
	std::string other;

	MeasureSpec spec() const {
		auto k = parse_measure_kind(kind);
		if (!k) {
			std::string names;
			for (auto m : all_measure_kinds())
				names += " " + to_string(m);
			throw PreconditionError("unknown measure '" + kind + "'; one of:" + names);
		}
		auto a = parse_anchor(anchor);
		if (!a)
			throw PreconditionError("unknown anchor '" + anchor + "'");
		MeasureSpec s{*k, *a};
		auto slash = exponent.find('/');
		try {
			s.p = unsigned(std::stoul(exponent.substr(0, slash)));
			s.q = slash == std::string::npos ? 1 : unsigned(std::stoul(exponent.substr(slash + 1)));
		} catch (const std::logic_error&) {
			throw PreconditionError("bad exponent '" + exponent + "'; use p/q");
		}
		return s;
	}
};

void add_measure_options(CLI::App* cmd, MeasureArgs& m) {
	cmd->add_option("--anchor", m.anchor, "begin, center or end for positional kinds");
	cmd->add_option("--exponent", m.exponent, "p/q for longest-fractional-power-at");
	cmd->add_option("--other", m.other, "second sequence for the two-sequence kinds");
}

std::string value_text(const Scalar& s) {
	return s.is_infinite() ? "inf" : s.str();
}

int cmd_decide(Session& s, const std::string& text) {
	auto start = std::chrono::steady_clock::now();
	Decision d = decide(text, s.environment());
	std::cout << (d.value ? "TRUE" : "FALSE") << "\n";
	if (!d.assignment.empty())
		std::cout << (d.counterexample ? "counterexample: " : "witness: ") << tuple_text(d.assignment) << "\n";
	std::cout << "states: " << d.states << "\n";
	std::cout << "time: " << seconds_since(start) << " s\n";
	return d.value ? ok : negative;
}

int cmd_characteristic(Session& s, const std::string& text, const std::string& range) {
	Dfao c = characteristic(text, s.environment());
	if (!s.export_path.empty())
		write_file(s.export_path, store(c));
	std::cout << "states: " << c.num_states() << "\n";
	Range r = parse_range(range);
	for (Natural n = r.first; n <= r.last; ++n)
		std::cout << n << " " << c.evaluate(n) << "\n";
	return ok;
}

int cmd_measure(Session& s, const MeasureArgs& m, const std::string& seq, const std::string& range) {
	MeasureSpec spec = m.spec();
	Dfao x = s.load(seq);
	std::optional<Dfao> y;
	if (!m.other.empty())
		y = s.load(m.other);
	CountingRep c = measure(x, spec, y ? &*y : nullptr, s.limits());
	Range r = parse_range(range);
	for (Natural n = r.first; n <= r.last; ++n)
		std::cout << n << " " << value_text(c.rep.evaluate(n)) << "\n";
	if (!s.export_path.empty()) {
		write_file(s.export_path, "# " + to_string(spec.kind) + " of " + seq + ", order=lsd\n" + to_text(c.rep));
		if (!is_empty(c.parts.infinite).empty) {
			write_file(s.export_path + ".inf.dfa",
			           "# values n where the measure is infinite, order=lsd\n" + to_text(c.parts.infinite));
			std::cerr << "infinite part written to " << s.export_path << ".inf.dfa\n";
		}
	}
	return ok;
}

int cmd_verify_conjecture(Session& s, const std::string& seq, const std::string& regex, unsigned depth) {
	Dfao x = s.load(seq);
	Limits limits = s.limits();
	auto start = std::chrono::steady_clock::now();
	Dfa bordered_only = minimize(complement(unbordered_lengths(x, limits).dfa));
	Dfa pattern = msd_regex_lengths(regex, x.base(), limits);
	std::optional<Natural> sample;
	for (Natural n = 0; n < 10000 && !sample; ++n)
		if (bordered_only.accepts(encode_lsd(n, x.base())) != pattern.accepts(encode_lsd(n, x.base())))
			sample = n;
	std::cout << "sample n < 10000: "
	          << (sample ? "differs at " + std::to_string(*sample) : std::string("agree")) << "\n";
	Equivalence eq = equivalent(bordered_only, pattern);
	bool all_good = eq.equivalent;
	if (eq.equivalent)
		std::cout << "EQUIVALENT: no unbordered factor exactly for lengths matching " << regex << "\n";
	else
		std::cout << "NOT EQUIVALENT: counterexample n = " << decode_lsd(*eq.counterexample) << "\n";
	std::cout << "automata: " << bordered_only.num_states() << " and " << pattern.num_states() << " states, "
	          << seconds_since(start) << " s\n";

	CountingRep count = measure(x, {MeasureKind::unbordered_count}, nullptr, limits);
	if (x.base() == 2) {
		const char* relations[] = {
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
		for (const char* r : relations) {
			bool holds = verify_relation(count.rep, parse_kernel_relation(r, 2));
			all_good = all_good && holds;
			std::cout << (holds ? "holds  " : "FAILS  ") << r << "\n";
		}
	}
	KernelReport k = kernel_relations(count.rep, depth);
	std::cout << "kernel relations found to depth " << depth << (k.closed ? " (closed)" : " (not closed)")
	          << ":\n";
	for (const auto& r : k.relations)
		std::cout << "  " << r.str(x.base()) << "\n";
	return all_good ? ok : negative;
}

int cmd_oracle_compare(Session& s, const MeasureArgs& m, const std::string& seq, Natural max_n,
                       const std::string& linrep_path, std::size_t safety) {
	MeasureSpec spec = m.spec();
	Dfao x = s.load(seq);
	oracle::PrefixContext ctx = oracle::context(x, s.prefix_len, safety);
	std::optional<oracle::PrefixContext> yctx;
	std::optional<Dfao> y;
	if (!m.other.empty()) {
		y = s.load(m.other);
		yctx = oracle::context(*y, s.prefix_len, safety);
	}
	ctx.require(max_n);
	std::optional<LinRep> rep;
	if (!linrep_path.empty()) {
		std::ifstream in(linrep_path);
		if (!in)
			throw PreconditionError("cannot read '" + linrep_path + "'");
		std::stringstream ss;
		ss << in.rdbuf();
		rep = linrep_from_text(ss.str());
	} else {
		rep = measure(x, spec, y ? &*y : nullptr, s.limits()).rep;
	}
	for (Natural n = 0; n <= max_n; ++n) {
		Scalar engine = rep->evaluate(n);
		std::uint64_t brute = oracle::brute(spec, ctx, n, yctx ? &*yctx : nullptr);
		if (!(engine == Scalar(Nat(std::to_string(brute))))) {
			std::cout << "FAIL " << to_string(spec.kind) << " on " << seq << ": first mismatch at n = " << n
			          << ", engine " << value_text(engine) << ", oracle " << brute << "\n";
			return negative;
		}
		std::cout << n << " " << brute << "\n";
	}
	std::cout << "PASS " << to_string(spec.kind) << " on " << seq << " for n <= " << max_n << " (prefix "
	          << s.prefix_len << ")\n";
	return ok;
}

int cmd_export_automaton(Session& s, const std::string& text) {
	Compiled c = compile(text, s.environment());
	std::string tracks;
	for (auto& v : c.vars)
		tracks += (tracks.empty() ? "" : ",") + v;
	std::string out = "# tracks=" + tracks + " order=lsd\n" + to_text(c.dfa);
	if (s.export_path.empty())
		std::cout << out;
	else
		write_file(s.export_path, out);
	return ok;
}

int cmd_eval_seq(Session& s, const std::string& seq, const std::string& range) {
	Dfao x = s.load(seq);
	Range r = parse_range(range);
	for (Natural n = r.first; n <= r.last; ++n)
		std::cout << n << " " << x.evaluate(n) << "\n";
	return ok;
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"Decide first-order properties of automatic sequences and count with them."};
	app.require_subcommand(1);
	app.fallthrough();
	Session s;
	app.add_option("--seq", s.bindings, "bind a sequence: name=file or name=builtin (tm, rudin-shapiro, ...)");
	app.add_option("--base", s.base, "numeration base when no sequence is bound");
	app.add_option("--max-states", s.max_states, "state ceiling for intermediate automata");
	app.add_option("--export", s.export_path, "write the resulting automaton or representation here");
	app.add_option("--prefix-len", s.prefix_len, "prefix length used by the oracle");

	std::string text, range = "0..31", seq, regex = "1(01*0)*10*1", linrep;
	Natural max_n = 0;
	unsigned depth = 4;
	std::size_t safety = 100;
	std::vector<int> criteria;
	MeasureArgs m;

	auto* decide_cmd = app.add_subcommand("decide", "decide a first-order sentence");
	decide_cmd->add_option("predicate", text)->required();

	auto* char_cmd = app.add_subcommand("characteristic", "0/1 sequence of a one-variable predicate");
	char_cmd->add_option("predicate", text)->required();
	char_cmd->add_option("range", range, "values to print, N or A..B");

	auto* measure_cmd = app.add_subcommand("measure", "values of a counting measure");
	measure_cmd->add_option("kind", m.kind)->required();
	measure_cmd->add_option("sequence", seq)->required();
	measure_cmd->add_option("range", range)->required();
	add_measure_options(measure_cmd, m);

	auto* conj_cmd = app.add_subcommand("verify-conjecture", "check the unbordered-length conjecture");
	conj_cmd->add_option("--sequence", seq, "defaults to tm");
	conj_cmd->add_option("--regex", regex, "msd regular expression for the lengths with no unbordered factor");
	conj_cmd->add_option("--depth", depth, "kernel exploration depth");

	auto* oracle_cmd = app.add_subcommand("oracle-compare", "compare a measure with the brute-force oracle");
	oracle_cmd->add_option("kind", m.kind)->required();
	oracle_cmd->add_option("sequence", seq)->required();
	oracle_cmd->add_option("max-n", max_n)->required();
	oracle_cmd->add_option("--linrep", linrep, "compare this representation file instead of computing one");
	oracle_cmd->add_option("--safety", safety, "certified n is prefix length / safety");
	add_measure_options(oracle_cmd, m);

	auto* export_cmd = app.add_subcommand("export-automaton", "print or --export the automaton of a predicate");
	export_cmd->add_option("predicate", text)->required();

	auto* eval_cmd = app.add_subcommand("eval-seq", "print sequence values");
	eval_cmd->add_option("sequence", seq)->required();
	eval_cmd->add_option("range", range)->required();

	auto* acc_cmd = app.add_subcommand("acceptance", "run the acceptance checks");
	acc_cmd->add_option("criteria", criteria, "only these criterion numbers");

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp& e) {
		return app.exit(e);
	} catch (const CLI::CallForAllHelp& e) {
		return app.exit(e);
	} catch (const CLI::ParseError& e) {
		app.exit(e);
		return usage;
	}

	try {
		s.bind();
		if (*decide_cmd)
			return cmd_decide(s, text);
		if (*char_cmd)
			return cmd_characteristic(s, text, range);
		if (*measure_cmd)
			return cmd_measure(s, m, seq, range);
		if (*conj_cmd)
			return cmd_verify_conjecture(s, seq.empty() ? "tm" : seq, regex, depth);
		if (*oracle_cmd)
			return cmd_oracle_compare(s, m, seq, max_n, linrep, safety);
		if (*export_cmd)
			return cmd_export_automaton(s, text);
		if (*eval_cmd)
			return cmd_eval_seq(s, seq, range);
		if (*acc_cmd)
			return acceptance::run(std::cout, {criteria.begin(), criteria.end()}, s.limits()) == 0 ? ok : negative;
	} catch (const ResourceError& e) {
		std::cerr << "resource ceiling: " << e.what() << "\n";
		return resource;
	} catch (const CertificationError& e) {
		std::cerr << "certification refused: " << e.what() << "\n";
		return usage;
	} catch (const ParseError& e) {
		std::cerr << "parse error: " << e.what() << "\n";
		return usage;
	} catch (const Error& e) {
		std::cerr << "error: " << e.what() << "\n";
		return usage;
	} catch (const std::exception& e) {
		std::cerr << "internal error: " << e.what() << "\n";
		return internal;
	}
	return internal;
}
