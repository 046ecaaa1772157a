#ifndef AUTSEQ_TOOLS_ACCEPTANCE_HPP
#define AUTSEQ_TOOLS_ACCEPTANCE_HPP

#include <ostream>
#include <set>

#include "autseq/automata.hpp"

namespace autseq::acceptance {

/// Runs the selected criteria (all when empty), printing one
/// "PASS <n> ..." or "FAIL <n> ..." line per criterion plus indented detail.
/// Returns the number of failures.
int run(std::ostream& out, const std::set<int>& only = {}, const Limits& limits = {});

} // namespace autseq::acceptance

#endif
