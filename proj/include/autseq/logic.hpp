#ifndef AUTSEQ_LOGIC_HPP
#define AUTSEQ_LOGIC_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "autseq/automata.hpp"
#include "autseq/seqgen.hpp"

namespace autseq {

struct SourcePos {
	std::size_t line = 1;
	std::size_t column = 1;
};

/// Addition-only term. Subtraction is removed by the parser.
struct Term {
	enum class Kind { variable, constant, sum, scaled };

	Kind kind;
	std::string name;              // variable
	Natural value = 0;             // constant, or the coefficient of `scaled`
	std::shared_ptr<const Term> lhs; // sum, scaled (operand)
	std::shared_ptr<const Term> rhs; // sum

	static std::shared_ptr<const Term> var(std::string name);
	static std::shared_ptr<const Term> constant(Natural value);
	static std::shared_ptr<const Term> sum(std::shared_ptr<const Term> a, std::shared_ptr<const Term> b);
	static std::shared_ptr<const Term> scaled(Natural c, std::shared_ptr<const Term> t);
};
using TermPtr = std::shared_ptr<const Term>;

enum class Relop { eq, ne, lt, le, gt, ge };

/// One side of a sequence comparison: x[t] or an output constant.
struct SeqOperand {
	std::optional<std::string> sequence; // empty: constant
	TermPtr index;
	long long constant = 0;
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
	enum class Kind { truth, compare, seq_compare, relation, negation, conj, disj, implies, iff, exists, forall };

	Kind kind;
	SourcePos pos;
	bool truth = true;
	TermPtr lhs, rhs;                 // compare
	Relop op = Relop::eq;             // compare, seq_compare
	SeqOperand left, right;           // seq_compare
	std::string name;                 // relation name, or the quantified variable
	std::vector<TermPtr> args;        // relation
	FormulaPtr a, b;                  // subformulas (negation and quantifiers use `a`)
};

FormulaPtr make_not(FormulaPtr f);
FormulaPtr make_binary(Formula::Kind kind, FormulaPtr a, FormulaPtr b);
FormulaPtr make_quantifier(Formula::Kind kind, std::string var, FormulaPtr body);
FormulaPtr make_compare(TermPtr lhs, Relop op, TermPtr rhs);

/// Parses the predicate language:
///
///   formula  := quant | iff
///   quant    := (E|A) var[,var...] [relop term] [:] formula   (body extends right)
///   iff      := implies [<=> implies]...
///   implies  := or [=> implies]
///   or       := and [| and]...
///   and      := unary [& unary]...
///   unary    := ~ unary | quant | true | false | ( formula ) | atom
///   atom     := operand relop operand | mod(term, m, a) | term ≡ a mod m
///             | $rel(term, ...)
///   operand  := term | x[term]
///   term     := product [(+|-) product]...
///   product  := number | var | ( term ) | number * product | product * number
///
/// Subtraction and congruences are expanded here; an index that would be
/// negative makes its atom false. Throws ParseError with line and column.
FormulaPtr parse_formula(const std::string& text);

std::string to_string(const Formula& f);
std::string to_string(const Term& t);

/// Free variables, sorted by name.
std::vector<std::string> free_variables(const Formula& f);

/// A named relation usable as $name(...) in formulas; track j is params[j].
struct Relation {
	std::vector<std::string> params;
	Dfa dfa;
};

struct Environment {
	std::map<std::string, Dfao> sequences;
	std::map<std::string, Relation> relations;
	/// 0 means: take the base of the bound sequences, or 2 if none.
	unsigned base = 0;
	Limits limits;

	unsigned effective_base() const;
};

/// Automaton over the free variables of a formula, one track per variable
/// in `vars` order (sorted by name). Always minimal and padding-closed.
struct Compiled {
	std::vector<std::string> vars;
	Dfa dfa;
};

Compiled compile(const Formula& f, const Environment& env);
Compiled compile(const std::string& text, const Environment& env);

/// Compiles `text` and stores it as a relation whose tracks follow `params`.
/// Every free variable must be listed in `params`.
void define_relation(Environment& env, const std::string& name, const std::vector<std::string>& params,
                     const std::string& text);

struct Decision {
	bool value;
	/// Variables of the leading quantifier block with their values: a
	/// witness when the block is ∃ and the sentence holds, a counterexample
	/// when the block is ∀ and it fails. Empty otherwise.
	std::vector<std::pair<std::string, Natural>> assignment;
	bool counterexample = false;
	std::size_t states = 0; // size of the last automaton consulted
};

/// Decides a sentence. Throws PreconditionError naming a free variable if
/// the formula is not closed.
Decision decide(const Formula& f, const Environment& env);
Decision decide(const std::string& text, const Environment& env);

/// 0/1 sequence of the values of the single free variable satisfying f.
Dfao characteristic(const Formula& f, const Environment& env);
Dfao characteristic(const std::string& text, const Environment& env);

/// Converts a padding-closed arity-1 automaton into a 0/1 DFAO.
Dfao to_dfao(const Dfa& a);

/// Base automaton for Σ coeffs[v]·x_v + constant relop 0 over `arity`
/// tracks. Coefficients may be negative.
Dfa linear_relation(unsigned base, const std::vector<long long>& coeffs, long long constant, Relop op,
                    const Limits& limits = {});

} // namespace autseq

#endif
