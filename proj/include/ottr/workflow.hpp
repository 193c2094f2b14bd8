#pragma once
// Instantiation-order workflows over a template library.

#include "ottr/model.hpp"
#include "ottr/typecheck.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ottr {

struct ConstBinding {
    Term value;
    bool operator==(const ConstBinding&) const = default;
};
struct MintBinding {
    bool operator==(const MintBinding&) const = default;
};
struct RefBinding {
    std::string step;
    std::string parameter;
    bool operator==(const RefBinding&) const = default;
};
struct InputBinding {
    ParamType type;
    bool operator==(const InputBinding&) const = default;
};

using Binding = std::variant<ConstBinding, MintBinding, RefBinding, InputBinding>;

struct WorkflowStep {
    std::string id;
    Iri template_iri;
    std::vector<std::string> after;
    std::map<std::string, Binding> bindings;  // parameter name -> binding
};

struct Workflow {
    std::string name;
    std::vector<WorkflowStep> steps;

    const WorkflowStep* find_step(std::string_view id) const;
};

class WorkflowError : public std::runtime_error {
public:
    WorkflowError(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

/// Reads a workflow document:
///   {"name": ..., "prefixes": {label: ns}?, "steps": [{"id", "template", "after": [...],
///    "bindings": {param: "const:<term>" | "mint:auto" | "ref:<step>.<param>" | "input:<type>"}}]}
/// Names resolve against `prefixes` plus the document's own prefixes. Throws WorkflowError.
Workflow workflow_from_json(const nlohmann::json& doc, const PrefixMap& prefixes);

/// Renders a binding back to its document form.
std::string binding_text(const Binding& binding, const PrefixMap& prefixes);

/// Codes: E_WF_UNKNOWN_TEMPLATE, E_WF_UNBOUND_PARAM, E_WF_BAD_REF, E_WF_ORDER.
std::vector<Diagnostic> validate_workflow(const Workflow& workflow, const Library& library);

/// Topological order over `after` and ref edges; ties go to the earlier-declared
/// step. Throws WorkflowError("E_WF_CYCLE") on cycles.
std::vector<std::string> suggest_order(const Workflow& workflow);

/// (step id, parameter) -> sample value for input bindings.
using SampleInputs = std::map<std::pair<std::string, std::string>, Term>;

/// Reads [{"step", "param", "term"}] with terms in stOTTR syntax.
SampleInputs sample_inputs_from_json(const nlohmann::json& doc, const PrefixMap& prefixes);

struct StepReport {
    std::string step_id;
    std::size_t components_after = 0;
    bool flagged = false;  // more than one component after this step
    Instance instance;
    std::size_t triples_after = 0;
};

/// `<base>/{workflow}/{step}/{n}` with n counting minted IRIs within the step from 1.
std::string mint_iri(const std::string& base, const std::string& workflow, const std::string& step, std::size_t n);

/// Instantiates the steps in declaration order and reports the number of
/// connected components of the cumulative output after each step. Input
/// bindings without a sample value get `<base>/sample/{step}/{param}`
/// placeholders. Throws WorkflowError wrapping expansion errors.
std::vector<StepReport> simulate_connectivity(const Workflow& workflow, const Library& library,
                                              const SampleInputs& sample_inputs, const std::string& base);

}  // namespace ottr
