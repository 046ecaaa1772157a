#ifndef AUTSEQ_ERROR_HPP
#define AUTSEQ_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace autseq {

// Base of every error thrown by the library. The CLI maps the subclasses
// onto distinct exit codes.
class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

class InvalidBaseError : public Error {
public:
	using Error::Error;
};

class ArityError : public Error {
public:
	using Error::Error;
};

class IndexError : public Error {
public:
	using Error::Error;
};

// Two automata (or a sequence and an automaton) disagree on base or arity.
class IncompatibleError : public Error {
public:
	using Error::Error;
};

class PreconditionError : public Error {
public:
	using Error::Error;
};

// Malformed text input. `line` is 1-based, `column` is 1-based or 0 when
// the error is not tied to a column.
class ParseError : public Error {
public:
	ParseError(const std::string& what, std::size_t line, std::size_t column = 0)
		: Error(format(what, line, column)), line_(line), column_(column) {}

	std::size_t line() const { return line_; }
	std::size_t column() const { return column_; }

private:
	static std::string format(const std::string& what, std::size_t line, std::size_t column) {
		std::string out = "line " + std::to_string(line);
		if (column != 0)
			out += ", column " + std::to_string(column);
		return out + ": " + what;
	}

	std::size_t line_;
	std::size_t column_;
};

// A DFAO whose output changes when a trailing zero is read, so its value
// would depend on the representation rather than on n.
class PaddingError : public Error {
public:
	PaddingError(const std::string& what, unsigned state) : Error(what), state_(state) {}
	unsigned state() const { return state_; }

private:
	unsigned state_;
};

// An intermediate automaton exceeded the configured state ceiling.
class ResourceError : public Error {
public:
	using Error::Error;
};

// The brute-force oracle was asked about a length it cannot certify.
class CertificationError : public Error {
public:
	using Error::Error;
};

} // namespace autseq

#endif
