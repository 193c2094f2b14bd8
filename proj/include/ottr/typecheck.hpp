#pragma once

#include "ottr/model.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ottr {

enum class Severity { Error, Warning, Info };

std::string_view to_string(Severity severity);

/// A library-level finding. Codes:
///   E_UNKNOWN_TEMPLATE, E_ARITY, E_TYPE, E_CYCLE, E_DUP_PARAM, E_DEFAULT_TYPE,
///   E_NONE_NONOPTIONAL, E_BLANK_NONBLANK, W_UNUSED_PARAM
/// Workflow validation reuses this type with E_WF_* codes.
struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::optional<std::string> template_iri;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

/// `severity code template: message`
std::string format_diagnostic(const Diagnostic& d, const PrefixMap& prefixes);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// Sorted by (template IRI, code, message).
void sort_diagnostics(std::vector<Diagnostic>& diagnostics);

std::vector<Diagnostic> check_library(const Library& library);

/// Checks one instance against its callee signature: existence, arity, argument
/// types, none/blank restrictions. `variable_types` gives the types of
/// variables in scope (empty for ground instances). Diagnostics carry
/// `context` as their template.
std::vector<Diagnostic> check_instance(const Instance& instance, const Library& library,
                                       const std::vector<Parameter>& variables_in_scope,
                                       const std::optional<std::string>& context);

/// One edge per distinct (caller, callee) pair, sorted.
std::vector<std::pair<std::string, std::string>> dependency_graph(const Library& library);

}  // namespace ottr
