#pragma once
// Library documentation: template inventory, call hierarchy, parameter tables
// and instantiation orders.

#include "ottr/model.hpp"
#include "ottr/workflow.hpp"

#include "json.hpp"

#include <map>
#include <string>
#include <vector>

namespace ottr {

/// A template is user-facing iff no other template's body instantiates it.
/// ottr:Triple is never user-facing and is not listed.
std::map<std::string, bool> classify_user_facing(const Library& library);

enum class HierarchyFormat { Text, Dot };

std::string render_hierarchy(const Library& library, HierarchyFormat format);

struct ParameterDoc {
    std::string name;
    std::string type;
    bool optional = false;
    std::string default_value;  // empty if none
    std::string description;
    std::string example;
};

struct TemplateDoc {
    std::string iri;
    bool user_facing = false;
    std::vector<ParameterDoc> parameters;  // one row per signature parameter, same order
    std::string description;
    std::string limitations;
    std::vector<std::string> changelog;
};

/// Reads the sidecar documentation file:
///   {"templates": {"<name>": {"description", "limitations",
///     "params": {"<param>": {"description", "example"}}, "changelog": [...]}}}
/// Keys may be prefixed names. Entries for unknown templates throw std::invalid_argument.
std::map<std::string, TemplateDoc> docs_from_json(const nlohmann::json& doc, const Library& library);

/// A TemplateDoc with signature rows only (no descriptions).
TemplateDoc signature_doc(const TemplateDefinition& def, bool user_facing, const PrefixMap& prefixes);

/// Markdown: inventory (user-facing first), call hierarchy, per-template
/// tables (templates without docs are flagged `undocumented`), workflows.
std::string render_library_doc(const Library& library, const std::map<std::string, TemplateDoc>& docs,
                               const std::vector<Workflow>& workflows);

}  // namespace ottr
