#ifndef AUTSEQ_TEXT_UTIL_HPP
#define AUTSEQ_TEXT_UTIL_HPP

// Small helpers shared by the text formats. Not part of the public API.

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "autseq/error.hpp"
#include "autseq/semiring.hpp"

namespace autseq::text {

// Non-blank lines that are not `#` comments, with 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::string>> lines(const std::string& text) {
	std::vector<std::pair<std::size_t, std::string>> out;
	std::istringstream is(text);
	std::string line;
	for (std::size_t no = 1; std::getline(is, line); ++no) {
		if (!line.empty() && line.back() == '\r')
			line.pop_back();
		auto first = line.find_first_not_of(" \t");
		if (first == std::string::npos || line[first] == '#')
			continue;
		out.emplace_back(no, line);
	}
	return out;
}

inline std::vector<std::string> split_ws(const std::string& s) {
	std::istringstream is(s);
	std::vector<std::string> out;
	for (std::string tok; is >> tok;)
		out.push_back(tok);
	return out;
}

// Splits on `sep`; an empty input yields no fields.
inline std::vector<std::string> split(const std::string& s, char sep) {
	std::vector<std::string> out;
	if (s.empty())
		return out;
	std::size_t start = 0;
	for (;;) {
		auto pos = s.find(sep, start);
		out.push_back(s.substr(start, pos - start));
		if (pos == std::string::npos)
			break;
		start = pos + 1;
	}
	return out;
}

inline std::map<std::string, std::string> key_values(const std::vector<std::string>& fields, std::size_t from,
                                                     std::size_t line) {
	std::map<std::string, std::string> kv;
	for (std::size_t i = from; i < fields.size(); ++i) {
		auto eq = fields[i].find('=');
		if (eq == std::string::npos)
			throw ParseError("expected key=value, got '" + fields[i] + "'", line);
		kv[fields[i].substr(0, eq)] = fields[i].substr(eq + 1);
	}
	return kv;
}

inline const std::string& require(const std::map<std::string, std::string>& kv, const std::string& key,
                                  std::size_t line) {
	auto it = kv.find(key);
	if (it == kv.end())
		throw ParseError("missing '" + key + "=' field", line);
	return it->second;
}

inline unsigned long long parse_unsigned(const std::string& s, std::size_t line) {
	if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
		throw ParseError("expected a non-negative integer, got '" + s + "'", line);
	try {
		return std::stoull(s);
	} catch (const std::out_of_range&) {
		throw ParseError("integer out of range: '" + s + "'", line);
	}
}

inline Nat parse_nat(const std::string& s, std::size_t line) {
	if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
		throw ParseError("expected a non-negative integer, got '" + s + "'", line);
	return Nat(s);
}

inline NatInf parse_natinf(const std::string& s, std::size_t line) {
	if (s == "inf")
		return NatInf::infinity();
	return NatInf(parse_nat(s, line));
}

} // namespace autseq::text

#endif
