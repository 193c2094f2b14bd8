#pragma once
// N-Triples and Turtle output.

#include "ottr/prefix.hpp"
#include "ottr/term.hpp"

#include <string>

namespace ottr {

/// Canonical N-Triples form of a single ground term.
std::string to_ntriples(const Term& term);
std::string to_ntriples(const Triple& triple);

/// One triple per line, lines sorted bytewise.
std::string write_ntriples(const TripleGraph& graph);

/// Prefix header followed by one sorted triple per line, IRIs compacted.
std::string write_turtle(const TripleGraph& graph, const PrefixMap& prefixes);

/// Escapes `"`, `\`, newline, carriage return and tab.
std::string escape_string(std::string_view text);

}  // namespace ottr
