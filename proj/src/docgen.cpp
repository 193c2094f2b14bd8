#include "ottr/docgen.hpp"

#include "ottr/stottr.hpp"
#include "ottr/typecheck.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ottr {

std::map<std::string, bool> classify_user_facing(const Library& library) {
    std::set<std::string> called;
    for (const auto& [caller, callee] : dependency_graph(library))
        if (caller != callee) called.insert(callee);
    std::map<std::string, bool> out;
    for (const auto& [iri, def] : library.templates) out[iri] = !called.count(iri);
    return out;
}

std::string render_hierarchy(const Library& library, HierarchyFormat format) {
    const PrefixMap& px = library.prefixes;
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& [caller, callee] : dependency_graph(library))
        edges.emplace_back(display_name(caller, px), display_name(callee, px));
    std::sort(edges.begin(), edges.end());

    std::ostringstream out;
    if (format == HierarchyFormat::Text) {
        for (const auto& [from, to] : edges) out << from << " -> " << to << "\n";
        return out.str();
    }

    std::set<std::string> nodes;
    for (const auto& [iri, def] : library.templates) nodes.insert(display_name(iri, px));
    for (const auto& [from, to] : edges) nodes.insert(to);
    out << "digraph templates {\n";
    out << "  rankdir=LR;\n";
    for (const auto& n : nodes) out << "  \"" << n << "\";\n";
    for (const auto& [from, to] : edges) out << "  \"" << from << "\" -> \"" << to << "\";\n";
    out << "}\n";
    return out.str();
}

TemplateDoc signature_doc(const TemplateDefinition& def, bool user_facing, const PrefixMap& prefixes) {
    TemplateDoc doc;
    doc.iri = def.iri.value;
    doc.user_facing = user_facing;
    for (const auto& p : def.parameters) {
        ParameterDoc row;
        row.name = p.name;
        row.type = to_string(p.type, prefixes);
        row.optional = p.optional;
        if (p.default_value) row.default_value = serialize_term(*p.default_value, prefixes);
        doc.parameters.push_back(std::move(row));
    }
    return doc;
}

std::map<std::string, TemplateDoc> docs_from_json(const nlohmann::json& doc, const Library& library) {
    auto user_facing = classify_user_facing(library);
    std::map<std::string, TemplateDoc> out;
    if (!doc.contains("templates")) return out;
    for (const auto& [key, entry] : doc.at("templates").items()) {
        std::string iri = parse_iri_text(key, library.prefixes).value;
        auto it = library.templates.find(iri);
        if (it == library.templates.end()) throw std::invalid_argument("documentation for unknown template " + key);
        TemplateDoc td = signature_doc(it->second, user_facing[iri], library.prefixes);
        td.description = entry.value("description", "");
        td.limitations = entry.value("limitations", "");
        if (entry.contains("changelog")) td.changelog = entry.at("changelog").get<std::vector<std::string>>();
        if (entry.contains("params")) {
            for (const auto& [name, pdoc] : entry.at("params").items()) {
                std::string bare = !name.empty() && name.front() == '?' ? name.substr(1) : name;
                auto row = std::find_if(td.parameters.begin(), td.parameters.end(),
                                        [&](const ParameterDoc& r) { return r.name == bare; });
                if (row == td.parameters.end())
                    throw std::invalid_argument("documentation for unknown parameter ?" + bare + " of " + key);
                row->description = pdoc.value("description", "");
                row->example = pdoc.value("example", "");
            }
        }
        out.emplace(iri, std::move(td));
    }
    return out;
}

namespace {

std::string cell(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '|') out += "\\|";
        else if (c == '\n') out += ' ';
        else out += c;
    }
    return out;
}

void parameter_table(std::ostringstream& out, const TemplateDoc& doc) {
    if (doc.parameters.empty()) {
        out << "No parameters.\n\n";
        return;
    }
    out << "| Parameter | Type | Optional | Default | Example | Description |\n";
    out << "|---|---|---|---|---|---|\n";
    for (const auto& p : doc.parameters)
        out << "| ?" << cell(p.name) << " | " << cell(p.type) << " | " << (p.optional ? "yes" : "no") << " | "
            << cell(p.default_value) << " | " << cell(p.example) << " | " << cell(p.description) << " |\n";
    out << "\n";
}

}  // namespace

std::string render_library_doc(const Library& library, const std::map<std::string, TemplateDoc>& docs,
                               const std::vector<Workflow>& workflows) {
    const PrefixMap& px = library.prefixes;
    auto user_facing = classify_user_facing(library);

    std::vector<std::string> ordered;
    for (bool facing : {true, false})
        for (const auto& [iri, uf] : user_facing)
            if (uf == facing) ordered.push_back(iri);

    std::ostringstream out;
    out << "# Template library\n\n";

    out << "## Templates\n\n";
    if (ordered.empty()) {
        out << "The library defines no templates.\n\n";
    } else {
        out << "| Template | Role | Parameters | Documented |\n";
        out << "|---|---|---|---|\n";
        for (const auto& iri : ordered)
            out << "| " << cell(display_name(iri, px)) << " | " << (user_facing[iri] ? "user-facing" : "sub-template")
                << " | " << library.templates.at(iri).parameters.size() << " | " << (docs.count(iri) ? "yes" : "no")
                << " |\n";
        out << "\n";
    }

    out << "## Call hierarchy\n\n";
    std::string hierarchy = render_hierarchy(library, HierarchyFormat::Text);
    if (hierarchy.empty()) {
        out << "No template calls another template.\n\n";
    } else {
        out << "```\n" << hierarchy << "```\n\n";
    }

    out << "## Template documentation\n\n";
    for (const auto& iri : ordered) {
        const TemplateDefinition& def = library.templates.at(iri);
        out << "### " << display_name(iri, px) << "\n\n";
        auto it = docs.find(iri);
        if (it == docs.end()) {
            out << "_undocumented_\n\n";
            parameter_table(out, signature_doc(def, user_facing[iri], px));
            continue;
        }
        const TemplateDoc& doc = it->second;
        if (!doc.description.empty()) out << doc.description << "\n\n";
        if (!doc.limitations.empty()) out << "**Limitations:** " << doc.limitations << "\n\n";
        parameter_table(out, doc);
        if (!doc.changelog.empty()) {
            out << "Changes:\n\n";
            for (const auto& c : doc.changelog) out << "- " << c << "\n";
            out << "\n";
        }
    }

    out << "## Instantiation order\n\n";
    if (workflows.empty()) {
        out << "No workflows: none defined.\n";
        return out.str();
    }
    for (const auto& wf : workflows) {
        out << "### " << wf.name << "\n\n";
        std::vector<std::string> order;
        try {
            order = suggest_order(wf);
        } catch (const WorkflowError& e) {
            out << "Cannot order steps: " << e.what() << "\n\n";
            continue;
        }
        std::size_t n = 0;
        for (const auto& id : order) {
            const WorkflowStep* step = wf.find_step(id);
            out << ++n << ". `" << id << "`: " << display_name(step->template_iri.value, px);
            std::string bindings;
            for (const auto& [param, b] : step->bindings) {
                if (!bindings.empty()) bindings += ", ";
                bindings += "?" + param + " = " + binding_text(b, px);
            }
            if (!bindings.empty()) out << " (" << bindings << ")";
            out << "\n";
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace ottr
