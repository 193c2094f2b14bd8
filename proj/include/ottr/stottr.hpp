#pragma once
// Reader and writer for the stOTTR subset used by template libraries and
// instance files.
//
//   file        = { prefixDecl | stmt } ;
//   prefixDecl  = "@prefix" PNAME ":" IRIREF "." ;
//   stmt        = templateDef | instance "." ;
//   templateDef = name "[" [ param { "," param } ] "]" [ "::" "{" [ instance { "," instance } ] "}" ] "." ;
//   param       = [ "?" | "!" | "?!" | "!?" ] [ ptype ] VARIABLE [ "=" term ] ;
//   ptype       = name | "List" "<" ptype ">" ;
//   instance    = [ ("cross"|"zipMin"|"zipMax") "|" ] name "(" [ arg { "," arg } ] ")" ;
//   arg         = [ "++" ] ( term | VARIABLE | "none" | "(" [ arg { "," arg } ] ")" ) ;
//   term        = name | IRIREF | LITERAL | BLANK ;
//
// `#` starts a comment that runs to the end of the line.

#include "ottr/model.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ottr {

struct ParseDiagnostic {
    std::size_t line = 0;    // 1-based
    std::size_t column = 0;  // 1-based, in bytes
    std::string message;

    bool operator==(const ParseDiagnostic&) const = default;
};

std::string to_string(const ParseDiagnostic& d);

/// Either a value or at least one diagnostic, never both.
template <typename T>
struct ParseResult {
    std::optional<T> value;
    std::vector<ParseDiagnostic> diagnostics;

    bool ok() const { return value.has_value(); }
};

class ParseError : public std::runtime_error {
public:
    explicit ParseError(std::vector<ParseDiagnostic> diagnostics);
    const std::vector<ParseDiagnostic>& diagnostics() const { return diagnostics_; }

private:
    std::vector<ParseDiagnostic> diagnostics_;
};

/// Parses prefix declarations and template definitions.
ParseResult<Library> parse_library(std::string_view text);

struct InstanceFile {
    PrefixMap prefixes;  // library prefixes plus the file's own declarations
    std::vector<Instance> instances;
};

/// Parses ground instances; prefixes come from `prefixes_from` and from the file itself.
ParseResult<InstanceFile> parse_instance_file(std::string_view text, const Library& prefixes_from);
ParseResult<std::vector<Instance>> parse_instances(std::string_view text, const Library& prefixes_from);

/// Parses a single ground argument term (e.g. `ex:a`, `"x"@en`, `(ex:a, ex:b)`, `none`).
/// Throws ParseError.
Term parse_term(std::string_view text, const PrefixMap& prefixes);

/// Parses a parameter type such as `ottr:IRI`, `xsd:double` or `List<ottr:IRI>`.
/// Throws ParseError.
ParamType parse_param_type(std::string_view text, const PrefixMap& prefixes);

/// Deterministic text: prefixes sorted by label, templates sorted by IRI.
std::string serialize_library(const Library& library);

std::string serialize_term(const Term& term, const PrefixMap& prefixes);
/// `[mode | ]name(args)` without the trailing dot.
std::string serialize_instance(const Instance& instance, const PrefixMap& prefixes);
/// One instance per line, each terminated with ` .`.
std::string serialize_instances(const std::vector<Instance>& instances, const PrefixMap& prefixes,
                                bool with_prefixes = true);

}  // namespace ottr
