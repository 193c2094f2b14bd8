#include "ottr/workflow.hpp"

#include "ottr/expander.hpp"
#include "ottr/stottr.hpp"

#include <algorithm>
#include <set>

namespace ottr {

const WorkflowStep* Workflow::find_step(std::string_view id) const {
    for (const auto& s : steps)
        if (s.id == id) return &s;
    return nullptr;
}

namespace {

std::string strip_sigil(std::string name) {
    if (!name.empty() && name.front() == '?') name.erase(0, 1);
    return name;
}

Binding parse_binding(const std::string& text, const PrefixMap& prefixes) {
    if (text == "mint:auto") return MintBinding{};
    if (text.starts_with("const:")) return ConstBinding{parse_term(text.substr(6), prefixes)};
    if (text.starts_with("input:")) return InputBinding{parse_param_type(text.substr(6), prefixes)};
    if (text.starts_with("ref:")) {
        std::string rest = text.substr(4);
        auto dot = rest.rfind('.');
        if (dot == std::string::npos || dot == 0 || dot + 1 == rest.size())
            throw WorkflowError("E_WF_BAD_REF", "malformed reference '" + text + "'");
        return RefBinding{rest.substr(0, dot), strip_sigil(rest.substr(dot + 1))};
    }
    throw WorkflowError("E_WF_UNBOUND_PARAM", "unrecognised binding '" + text + "'");
}

}  // namespace

Workflow workflow_from_json(const nlohmann::json& doc, const PrefixMap& library_prefixes) {
    try {
        PrefixMap prefixes = library_prefixes;
        if (doc.contains("prefixes"))
            for (const auto& [label, ns] : doc.at("prefixes").items()) prefixes.declare(label, ns.get<std::string>());

        Workflow wf;
        wf.name = doc.at("name").get<std::string>();
        for (const auto& s : doc.at("steps")) {
            WorkflowStep step;
            step.id = s.at("id").get<std::string>();
            step.template_iri = parse_iri_text(s.at("template").get<std::string>(), prefixes);
            if (s.contains("after")) step.after = s.at("after").get<std::vector<std::string>>();
            if (s.contains("bindings"))
                for (const auto& [param, value] : s.at("bindings").items())
                    step.bindings.emplace(strip_sigil(param), parse_binding(value.get<std::string>(), prefixes));
            wf.steps.push_back(std::move(step));
        }
        return wf;
    } catch (const WorkflowError&) {
        throw;
    } catch (const std::exception& e) {
        throw WorkflowError("E_WF_DOCUMENT", e.what());
    }
}

std::string binding_text(const Binding& binding, const PrefixMap& prefixes) {
    if (auto* c = std::get_if<ConstBinding>(&binding)) return "const:" + serialize_term(c->value, prefixes);
    if (std::holds_alternative<MintBinding>(binding)) return "mint:auto";
    if (auto* r = std::get_if<RefBinding>(&binding)) return "ref:" + r->step + "." + r->parameter;
    return "input:" + to_string(std::get<InputBinding>(binding).type, prefixes);
}

std::vector<Diagnostic> validate_workflow(const Workflow& workflow, const Library& library) {
    std::vector<Diagnostic> out;
    const PrefixMap& px = library.prefixes;

    std::set<std::string> callees;
    for (const auto& [caller, callee] : dependency_graph(library)) callees.insert(callee);

    std::map<std::string, std::size_t> declared;  // step id -> position
    for (std::size_t i = 0; i < workflow.steps.size(); ++i) {
        const WorkflowStep& step = workflow.steps[i];
        const std::string& iri = step.template_iri.value;
        auto emit = [&](const char* code, const std::string& message) {
            out.push_back(Diagnostic{Severity::Error, code, iri, "step '" + step.id + "': " + message});
        };

        if (declared.count(step.id)) emit("E_WF_ORDER", "duplicate step id");
        for (const auto& dep : step.after) {
            auto it = declared.find(dep);
            if (it == declared.end())
                emit("E_WF_ORDER", "'after' names '" + dep + "', which is not an earlier step");
        }

        auto lib_it = library.templates.find(iri);
        if (lib_it == library.templates.end()) {
            emit("E_WF_UNKNOWN_TEMPLATE", "unknown template " + display_name(iri, px));
            declared.emplace(step.id, i);
            continue;
        }
        const TemplateDefinition& def = lib_it->second;
        if (callees.count(iri)) emit("E_WF_UNKNOWN_TEMPLATE", display_name(iri, px) + " is not user-facing");

        for (const auto& [param, binding] : step.bindings) {
            const Parameter* p = def.find_parameter(param);
            if (!p) {
                emit("E_WF_UNBOUND_PARAM", "binds ?" + param + ", which " + display_name(iri, px) + " does not declare");
                continue;
            }
            if (auto* c = std::get_if<ConstBinding>(&binding); c && !p->type.accepts_term(c->value))
                emit("E_WF_UNBOUND_PARAM", "constant for ?" + param + " is not a " + to_string(p->type, px));
            if (auto* r = std::get_if<RefBinding>(&binding)) {
                auto target = declared.find(r->step);
                if (target == declared.end()) {
                    emit("E_WF_BAD_REF", "?" + param + " refers to '" + r->step + "', which is not an earlier step");
                    continue;
                }
                const WorkflowStep& ref_step = workflow.steps[target->second];
                auto rb = ref_step.bindings.find(r->parameter);
                bool ok = rb != ref_step.bindings.end() && (std::holds_alternative<ConstBinding>(rb->second) ||
                                                             std::holds_alternative<MintBinding>(rb->second));
                if (!ok)
                    emit("E_WF_BAD_REF", "?" + param + " refers to " + r->step + "." + r->parameter +
                                             ", which is not bound by a constant or minted IRI");
            }
        }
        for (const auto& p : def.parameters)
            if (!p.optional && !p.default_value && !step.bindings.count(p.name))
                emit("E_WF_UNBOUND_PARAM", "non-optional ?" + p.name + " is not bound");

        declared.emplace(step.id, i);
    }
    sort_diagnostics(out);
    return out;
}

std::vector<std::string> suggest_order(const Workflow& workflow) {
    std::map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < workflow.steps.size(); ++i) position.emplace(workflow.steps[i].id, i);

    std::size_t n = workflow.steps.size();
    std::vector<std::set<std::size_t>> successors(n);
    std::vector<std::size_t> indegree(n, 0);
    auto add_edge = [&](const std::string& from, std::size_t to) {
        auto it = position.find(from);
        if (it == position.end())
            throw WorkflowError("E_WF_BAD_REF", "step '" + workflow.steps[to].id + "' depends on unknown step '" + from + "'");
        if (successors[it->second].insert(to).second) ++indegree[to];
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& dep : workflow.steps[i].after) add_edge(dep, i);
        for (const auto& [param, binding] : workflow.steps[i].bindings)
            if (auto* r = std::get_if<RefBinding>(&binding)) add_edge(r->step, i);
    }

    std::set<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i)
        if (indegree[i] == 0) ready.insert(i);
    std::vector<std::string> order;
    while (!ready.empty()) {
        std::size_t next = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(workflow.steps[next].id);
        for (std::size_t s : successors[next])
            if (--indegree[s] == 0) ready.insert(s);
    }
    if (order.size() != n) {
        std::string stuck;
        for (std::size_t i = 0; i < n; ++i)
            if (indegree[i] > 0) stuck += (stuck.empty() ? "" : ", ") + workflow.steps[i].id;
        throw WorkflowError("E_WF_CYCLE", "dependency cycle among steps " + stuck);
    }
    return order;
}

SampleInputs sample_inputs_from_json(const nlohmann::json& doc, const PrefixMap& prefixes) {
    SampleInputs out;
    for (const auto& entry : doc)
        out[{entry.at("step").get<std::string>(), strip_sigil(entry.at("param").get<std::string>())}] =
            parse_term(entry.at("term").get<std::string>(), prefixes);
    return out;
}

std::string mint_iri(const std::string& base, const std::string& workflow, const std::string& step, std::size_t n) {
    std::string root = base;
    while (!root.empty() && root.back() == '/') root.pop_back();
    return root + "/" + workflow + "/" + step + "/" + std::to_string(n);
}

std::vector<StepReport> simulate_connectivity(const Workflow& workflow, const Library& library,
                                              const SampleInputs& sample_inputs, const std::string& base) {
    std::map<std::pair<std::string, std::string>, Term> bound;
    TripleGraph graph;
    std::vector<StepReport> reports;
    std::string root = base;
    while (!root.empty() && root.back() == '/') root.pop_back();

    for (std::size_t index = 0; index < workflow.steps.size(); ++index) {
        const WorkflowStep& step = workflow.steps[index];
        const TemplateDefinition* def = library.find(step.template_iri.value);
        if (!def) throw WorkflowError("E_WF_UNKNOWN_TEMPLATE", "step '" + step.id + "': unknown template");

        std::vector<Term> args;
        std::size_t minted = 0;
        for (const auto& p : def->parameters) {
            auto it = step.bindings.find(p.name);
            Term value = Term::none();
            if (it != step.bindings.end()) {
                const Binding& b = it->second;
                if (auto* c = std::get_if<ConstBinding>(&b)) {
                    value = c->value;
                } else if (std::holds_alternative<MintBinding>(b)) {
                    value = Term(Iri{mint_iri(root, workflow.name, step.id, ++minted)});
                } else if (auto* r = std::get_if<RefBinding>(&b)) {
                    auto ref = bound.find({r->step, r->parameter});
                    if (ref == bound.end())
                        throw WorkflowError("E_WF_BAD_REF", "step '" + step.id + "': " + r->step + "." + r->parameter +
                                                                " has no value yet");
                    value = ref->second;
                } else {
                    const auto& input = std::get<InputBinding>(b);
                    auto sample = sample_inputs.find({step.id, p.name});
                    if (sample != sample_inputs.end()) {
                        value = sample->second;
                    } else {
                        std::string placeholder = root + "/sample/" + step.id + "/" + p.name;
                        value = input.type.kind() == ParamType::Kind::Literal
                                    ? Term::literal(placeholder, input.type.datatype())
                                    : Term(Iri{placeholder});
                    }
                }
            }
            bound[{step.id, p.name}] = value;
            args.push_back(std::move(value));
        }

        Instance inst = make_instance(step.template_iri.value, std::move(args));
        ExpansionContext ctx{&library, index};
        try {
            graph.merge(expand_instance(inst, ctx));
        } catch (const ExpansionError& e) {
            throw WorkflowError("E_WF_EXPANSION", "step '" + step.id + "': " + e.what());
        }
        std::size_t components = connected_components(graph, default_excluded_namespaces()).size();
        reports.push_back(StepReport{step.id, components, components > 1, std::move(inst), graph.size()});
    }
    return reports;
}

}  // namespace ottr
