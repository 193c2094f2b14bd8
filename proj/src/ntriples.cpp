#include "ottr/ntriples.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace ottr {

std::string escape_string(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    return out;
}

namespace {

std::string literal_text(const Literal& lit, const PrefixMap* prefixes) {
    std::string out = "\"" + escape_string(lit.lexical) + "\"";
    if (!lit.language.empty()) return out + "@" + lit.language;
    if (lit.datatype == xsd("string")) return out;
    if (prefixes) return out + "^^" + compact_or_bracket(lit.datatype, *prefixes);
    return out + "^^<" + lit.datatype + ">";
}

std::string term_text(const Term& term, const PrefixMap* prefixes) {
    if (term.is_iri()) {
        if (prefixes) return compact_or_bracket(term.as_iri().value, *prefixes);
        return "<" + term.as_iri().value + ">";
    }
    if (term.is_literal()) return literal_text(term.as_literal(), prefixes);
    if (term.is_blank()) return "_:" + term.as_blank().label;
    throw std::invalid_argument("term has no RDF serialization");
}

}  // namespace

std::string to_ntriples(const Term& term) { return term_text(term, nullptr); }

std::string to_ntriples(const Triple& triple) {
    return to_ntriples(triple.subject()) + " " + to_ntriples(triple.predicate()) + " " +
           to_ntriples(triple.object()) + " .";
}

std::string write_ntriples(const TripleGraph& graph) {
    std::vector<std::string> lines;
    lines.reserve(graph.size());
    for (const Triple& t : graph) lines.push_back(to_ntriples(t));
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& line : lines) out += line + "\n";
    return out;
}

std::string write_turtle(const TripleGraph& graph, const PrefixMap& prefixes) {
    PrefixMap merged = prefixes;
    for (const auto& [label, ns] : PrefixMap::standard().bindings())
        if (!merged.lookup(label)) merged.declare(label, ns);

    std::ostringstream out;
    for (const auto& [label, ns] : merged.bindings()) out << "@prefix " << label << ": <" << ns << "> .\n";
    if (!graph.empty()) out << "\n";

    std::vector<std::string> lines;
    for (const Triple& t : graph)
        lines.push_back(term_text(t.subject(), &merged) + " " + term_text(t.predicate(), &merged) + " " +
                        term_text(t.object(), &merged) + " .");
    std::sort(lines.begin(), lines.end());
    for (const auto& line : lines) out << line << "\n";
    return out.str();
}

}  // namespace ottr
