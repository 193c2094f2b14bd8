#include "ottr/typecheck.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace ottr {

std::string_view to_string(Severity severity) {
    switch (severity) {
        case Severity::Error: return "error";
        case Severity::Warning: return "warning";
        case Severity::Info: return "info";
    }
    return {};
}

std::string format_diagnostic(const Diagnostic& d, const PrefixMap& prefixes) {
    std::string out = std::string(to_string(d.severity)) + " " + d.code + " ";
    out += d.template_iri ? display_name(*d.template_iri, prefixes) : std::string("-");
    return out + ": " + d.message;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

void sort_diagnostics(std::vector<Diagnostic>& diagnostics) {
    std::stable_sort(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return std::tie(a.template_iri, a.code, a.message) < std::tie(b.template_iri, b.code, b.message);
    });
}

namespace {

const Parameter* find_in_scope(const std::vector<Parameter>& scope, const std::string& name) {
    for (const auto& p : scope)
        if (p.name == name) return &p;
    return nullptr;
}

// Does `term` (possibly containing variables) fit `type`?
bool term_fits(const ParamType& type, const Term& term, const std::vector<Parameter>& scope) {
    if (term.is_variable()) {
        const Parameter* p = find_in_scope(scope, term.as_variable().name);
        return p && type.accepts_type(p->type);
    }
    if (term.is_list()) {
        const auto& items = term.as_list().items;
        if (type.kind() == ParamType::Kind::Top)
            return std::all_of(items.begin(), items.end(),
                               [&](const Term& t) { return term_fits(type, t, scope); });
        if (!type.is_list()) return false;
        return std::all_of(items.begin(), items.end(), [&](const Term& t) {
            return !t.is_none() && term_fits(type.element(), t, scope);
        });
    }
    return type.accepts_term(term);
}

bool contains_blank(const Term& term) {
    if (term.is_blank()) return true;
    if (!term.is_list()) return false;
    const auto& items = term.as_list().items;
    return std::any_of(items.begin(), items.end(), contains_blank);
}

void collect_variables(const Term& term, std::set<std::string>& out) {
    if (term.is_variable()) out.insert(term.as_variable().name);
    if (term.is_list())
        for (const auto& t : term.as_list().items) collect_variables(t, out);
}

}  // namespace

std::vector<Diagnostic> check_instance(const Instance& instance, const Library& library,
                                       const std::vector<Parameter>& variables_in_scope,
                                       const std::optional<std::string>& context) {
    std::vector<Diagnostic> out;
    const PrefixMap& px = library.prefixes;
    auto emit = [&](std::string code, std::string message) {
        out.push_back(Diagnostic{Severity::Error, std::move(code), context, std::move(message)});
    };

    const std::string& callee_iri = instance.template_iri.value;
    const TemplateDefinition* callee = library.find(callee_iri);
    std::string callee_name = display_name(callee_iri, px);
    if (!callee) {
        emit("E_UNKNOWN_TEMPLATE", "unknown template " + callee_name);
        return out;
    }
    if (instance.arguments.size() != callee->parameters.size()) {
        emit("E_ARITY", callee_name + " expects " + std::to_string(callee->parameters.size()) +
                            " arguments, got " + std::to_string(instance.arguments.size()));
        return out;
    }

    bool explicit_marks = std::any_of(instance.arguments.begin(), instance.arguments.end(),
                                      [](const Argument& a) { return a.expand; });
    for (std::size_t i = 0; i < instance.arguments.size(); ++i) {
        const Argument& arg = instance.arguments[i];
        const Parameter& param = callee->parameters[i];
        const Term& term = arg.term;
        std::string where = callee_name + " argument " + std::to_string(i + 1) + " (?" + param.name + ")";

        const Parameter* var = term.is_variable() ? find_in_scope(variables_in_scope, term.as_variable().name)
                                                  : nullptr;
        bool list_valued = term.is_list() || (var && var->type.is_list());
        bool marked = instance.expansion && (explicit_marks ? arg.expand : list_valued);

        if (term.is_none()) {
            if (!param.optional && !param.default_value)
                emit("E_NONE_NONOPTIONAL", "none passed to non-optional " + where);
            continue;
        }
        if (param.nonblank && (marked ? contains_blank(term) : term.is_blank()))
            emit("E_BLANK_NONBLANK", "blank node passed to nonblank " + where);

        if (marked) {
            if (var) {
                if (!var->type.is_list() || !param.type.accepts_type(var->type.element()))
                    emit("E_TYPE", "?" + var->name + " : " + to_string(var->type, px) + " cannot be expanded into " +
                                       where + " : " + to_string(param.type, px));
            } else if (!term.is_list()) {
                emit("E_TYPE", "expanded " + where + " is not a list");
            } else {
                for (const auto& item : term.as_list().items)
                    if (item.is_none() || !term_fits(param.type, item, variables_in_scope)) {
                        emit("E_TYPE", "list element of expanded " + where + " is not a " + to_string(param.type, px));
                        break;
                    }
            }
            continue;
        }
        if (term.is_variable() && !var) {
            emit("E_TYPE", "variable ?" + term.as_variable().name + " is not in scope for " + where);
            continue;
        }
        if (!term_fits(param.type, term, variables_in_scope)) {
            std::string actual = var ? "?" + var->name + " : " + to_string(var->type, px) : "value";
            emit("E_TYPE", where + " expects " + to_string(param.type, px) + ", got " + actual);
        }
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> dependency_graph(const Library& library) {
    std::set<std::pair<std::string, std::string>> edges;
    for (const auto& [iri, def] : library.templates) {
        if (!def.body) continue;
        for (const auto& inst : *def.body) edges.emplace(iri, inst.template_iri.value);
    }
    return {edges.begin(), edges.end()};
}

namespace {

// Tarjan's strongly connected components over the dependency edges.
std::vector<std::vector<std::string>> cycles(const Library& library) {
    std::map<std::string, std::vector<std::string>> adjacency;
    std::set<std::pair<std::string, std::string>> self_loops;
    for (const auto& [from, to] : dependency_graph(library)) {
        adjacency[from].push_back(to);
        adjacency[to];
        if (from == to) self_loops.emplace(from, to);
    }

    std::map<std::string, int> index, lowlink;
    std::set<std::string> on_stack;
    std::vector<std::string> stack;
    std::vector<std::vector<std::string>> result;
    int counter = 0;

    std::function<void(const std::string&)> visit = [&](const std::string& v) {
        index[v] = lowlink[v] = counter++;
        stack.push_back(v);
        on_stack.insert(v);
        for (const auto& w : adjacency[v]) {
            if (!index.count(w)) {
                visit(w);
                lowlink[v] = std::min(lowlink[v], lowlink[w]);
            } else if (on_stack.count(w)) {
                lowlink[v] = std::min(lowlink[v], index[w]);
            }
        }
        if (lowlink[v] == index[v]) {
            std::vector<std::string> component;
            std::string w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack.erase(w);
                component.push_back(w);
            } while (w != v);
            if (component.size() > 1 || self_loops.count({v, v})) {
                std::sort(component.begin(), component.end());
                result.push_back(std::move(component));
            }
        }
    };
    for (const auto& [v, targets] : adjacency)
        if (!index.count(v)) visit(v);
    return result;
}

}  // namespace

std::vector<Diagnostic> check_library(const Library& library) {
    std::vector<Diagnostic> out;
    const PrefixMap& px = library.prefixes;

    for (const auto& [iri, def] : library.templates) {
        std::set<std::string> seen;
        for (const auto& p : def.parameters) {
            if (!seen.insert(p.name).second)
                out.push_back({Severity::Error, "E_DUP_PARAM", iri, "duplicate parameter ?" + p.name});
            if (p.default_value) {
                bool ok = p.default_value->is_ground() && !p.default_value->is_none() &&
                          p.type.accepts_term(*p.default_value) && !(p.nonblank && p.default_value->is_blank());
                if (!ok)
                    out.push_back({Severity::Error, "E_DEFAULT_TYPE", iri,
                                   "default of ?" + p.name + " is not a " + to_string(p.type, px)});
            }
        }
        if (!def.body) continue;

        std::set<std::string> used;
        for (const auto& inst : *def.body) {
            for (const auto& arg : inst.arguments) collect_variables(arg.term, used);
            auto found = check_instance(inst, library, def.parameters, iri);
            out.insert(out.end(), found.begin(), found.end());
        }
        for (const auto& p : def.parameters)
            if (!used.count(p.name))
                out.push_back({Severity::Warning, "W_UNUSED_PARAM", iri, "parameter ?" + p.name + " is never used"});
    }

    for (const auto& cycle : cycles(library)) {
        std::string members;
        for (const auto& t : cycle) {
            if (!members.empty()) members += ", ";
            members += display_name(t, px);
        }
        out.push_back({Severity::Error, "E_CYCLE", cycle.front(), "dependency cycle through " + members});
    }

    sort_diagnostics(out);
    return out;
}

}  // namespace ottr
