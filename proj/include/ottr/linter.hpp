#pragma once
// Lint rules for template libraries and instance sets.
//
//   R_OUTPUT_REDUNDANCY   a triple produced by two or more instances
//   R_INSTANCE_DUPLICATE  identical instances
//   R_SHARED_VALUE        the same non-IRI value repeated across instances
//   R_AXIOM_SCATTER       axioms about one term defined in several templates
//   R_PARAM_COUNT         templates with too many parameters
//   R_NAMING              IRIs violating a naming rule

#include "ottr/model.hpp"
#include "ottr/typecheck.hpp"

#include "json.hpp"

#include <regex>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace ottr {

struct NamingRule {
    std::string iri_prefix;
    std::string pattern;  // ECMAScript regex, matched against the local part
};

struct LintConfig {
    std::size_t param_count_threshold = 7;
    std::size_t shared_value_threshold = 3;
    std::vector<NamingRule> naming_rules;
    std::set<std::string> axiom_predicates = default_axiom_predicates();

    static std::set<std::string> default_axiom_predicates();
};

/// Reads thresholds, naming rules and axiom predicates from a JSON object.
/// Names may be prefixed with `prefixes`. Throws std::invalid_argument.
LintConfig lint_config_from_json(const nlohmann::json& doc, const PrefixMap& prefixes);

struct InstanceRef {
    std::size_t index;
    auto operator<=>(const InstanceRef&) const = default;
};

struct TemplateRef {
    std::string iri;
    auto operator<=>(const TemplateRef&) const = default;
};

using LintSubject = std::variant<InstanceRef, TemplateRef, Term>;

struct LintFinding {
    std::string rule;
    Severity severity = Severity::Warning;
    std::vector<LintSubject> subjects;
    std::string message;

    bool operator==(const LintFinding&) const = default;
};

/// Sorted by (rule, subjects, message).
void sort_findings(std::vector<LintFinding>& findings);

std::vector<LintFinding> lint_output_redundancy(const std::vector<Instance>& instances, const Library& library);
std::vector<LintFinding> lint_instantiation_redundancy(const std::vector<Instance>& instances,
                                                       const LintConfig& config);
std::vector<LintFinding> lint_axiom_encapsulation(const Library& library, const LintConfig& config);
std::vector<LintFinding> lint_headers(const Library& library, const LintConfig& config);

/// All library rules, plus instance rules when `instances` is non-empty.
std::vector<LintFinding> lint_all(const Library& library, const std::vector<Instance>& instances,
                                  const LintConfig& config);

bool has_errors(const std::vector<LintFinding>& findings);

/// `severity rule subjects: message`
std::string format_finding(const LintFinding& finding, const PrefixMap& prefixes);

/// {"findings": n, "rules": {rule: [{severity, subjects, message}]}}
nlohmann::json lint_report(const std::vector<LintFinding>& findings, const PrefixMap& prefixes);

}  // namespace ottr
