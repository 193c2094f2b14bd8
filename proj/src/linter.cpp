#include "ottr/linter.hpp"

#include "ottr/expander.hpp"
#include "ottr/ntriples.hpp"
#include "ottr/stottr.hpp"

#include <algorithm>
#include <map>

namespace ottr {

std::set<std::string> LintConfig::default_axiom_predicates() {
    return {rdfs("domain"),     rdfs("range"),         rdfs("subClassOf"), rdfs("subPropertyOf"),
            owl("inverseOf"),   owl("equivalentClass"), owl("disjointWith")};
}

namespace {

std::string expand_name(const std::string& text, const PrefixMap& prefixes) {
    if (is_absolute_iri(text)) {
        auto colon = text.find(':');
        std::string label = text.substr(0, colon);
        auto ns = prefixes.lookup(label);
        if (!ns) ns = PrefixMap::standard().lookup(label);
        // A bare `label:` names the namespace; `label:local` is a prefixed name.
        if (ns && text.find("//") == std::string::npos) return *ns + text.substr(colon + 1);
        return text;
    }
    throw std::invalid_argument("not an IRI or prefixed name: " + text);
}

}  // namespace

LintConfig lint_config_from_json(const nlohmann::json& doc, const PrefixMap& prefixes) {
    LintConfig config;
    if (!doc.is_object()) throw std::invalid_argument("lint config must be a JSON object");
    if (doc.contains("paramCountThreshold")) config.param_count_threshold = doc.at("paramCountThreshold").get<std::size_t>();
    if (doc.contains("sharedValueThreshold"))
        config.shared_value_threshold = doc.at("sharedValueThreshold").get<std::size_t>();
    if (config.param_count_threshold < 1 || config.shared_value_threshold < 1)
        throw std::invalid_argument("lint thresholds must be at least 1");
    if (doc.contains("namingRules")) {
        for (const auto& rule : doc.at("namingRules")) {
            NamingRule r{expand_name(rule.at("prefix").get<std::string>(), prefixes),
                         rule.at("pattern").get<std::string>()};
            try {
                std::regex check(r.pattern);
            } catch (const std::regex_error& e) {
                throw std::invalid_argument("invalid naming pattern '" + r.pattern + "': " + e.what());
            }
            config.naming_rules.push_back(std::move(r));
        }
    }
    if (doc.contains("axiomPredicates")) {
        config.axiom_predicates.clear();
        for (const auto& p : doc.at("axiomPredicates"))
            config.axiom_predicates.insert(expand_name(p.get<std::string>(), prefixes));
    }
    return config;
}

void sort_findings(std::vector<LintFinding>& findings) {
    std::sort(findings.begin(), findings.end(), [](const LintFinding& a, const LintFinding& b) {
        return std::tie(a.rule, a.subjects, a.message) < std::tie(b.rule, b.subjects, b.message);
    });
}

bool has_errors(const std::vector<LintFinding>& findings) {
    return std::any_of(findings.begin(), findings.end(),
                       [](const LintFinding& f) { return f.severity == Severity::Error; });
}

std::vector<LintFinding> lint_output_redundancy(const std::vector<Instance>& instances, const Library& library) {
    ExpansionContext ctx{&library};
    std::vector<LintFinding> out;
    for (const auto& [triple, producers] : provenance_expand(instances, ctx)) {
        if (producers.size() < 2) continue;
        LintFinding f{"R_OUTPUT_REDUNDANCY", Severity::Warning, {}, {}};
        for (std::size_t i : producers) f.subjects.emplace_back(InstanceRef{i});
        f.message = "triple " + to_ntriples(triple) + " is produced by " + std::to_string(producers.size()) +
                    " instances";
        out.push_back(std::move(f));
    }
    sort_findings(out);
    return out;
}

namespace {

void collect_values(const Term& term, std::set<Term>& out) {
    if (term.is_list()) {
        for (const auto& t : term.as_list().items) collect_values(t, out);
    } else if (term.is_literal() || term.is_blank()) {
        out.insert(term);
    }
}

}  // namespace

std::vector<LintFinding> lint_instantiation_redundancy(const std::vector<Instance>& instances,
                                                       const LintConfig& config) {
    std::vector<LintFinding> out;
    const PrefixMap no_prefixes;

    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < instances.size(); ++i)
        groups[serialize_instance(instances[i], no_prefixes)].push_back(i);
    for (const auto& [text, members] : groups) {
        if (members.size() < 2) continue;
        LintFinding f{"R_INSTANCE_DUPLICATE", Severity::Warning, {}, {}};
        for (std::size_t i : members) f.subjects.emplace_back(InstanceRef{i});
        f.message = std::to_string(members.size()) + " identical instances of " + text;
        out.push_back(std::move(f));
    }

    // Occurrences count distinct instance texts, so exact duplicates count once.
    std::map<Term, std::set<std::string>> occurrences;
    std::map<Term, std::set<std::size_t>> indices;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        std::set<Term> values;
        for (const auto& a : instances[i].arguments) collect_values(a.term, values);
        std::string text = serialize_instance(instances[i], no_prefixes);
        for (const auto& v : values) {
            occurrences[v].insert(text);
            indices[v].insert(i);
        }
    }
    for (const auto& [value, texts] : occurrences) {
        if (texts.size() < config.shared_value_threshold) continue;
        LintFinding f{"R_SHARED_VALUE", Severity::Info, {value}, {}};
        for (std::size_t i : indices[value]) f.subjects.emplace_back(InstanceRef{i});
        f.message = "value " + serialize_term(value, no_prefixes) + " occurs in " + std::to_string(texts.size()) +
                    " instances; consider a shared entity or sub-template";
        out.push_back(std::move(f));
    }
    sort_findings(out);
    return out;
}

namespace {

// A term during symbolic inlining, tagged with the template whose body wrote it.
// Parameters of the template under analysis stay as variables (non-ground).
struct Traced {
    Term term;
    std::optional<std::string> origin;
};

class AxiomTracer {
public:
    AxiomTracer(const Library& library, const std::set<std::string>& predicates)
        : library_(library), predicates_(predicates) {}

    void trace(const TemplateDefinition& def) {
        std::vector<Traced> args;
        for (const auto& p : def.parameters) args.push_back({Term::variable(p.name), std::nullopt});
        inline_body(def, args, 0);
    }

    const std::map<std::string, std::set<std::string>>& definers() const { return definers_; }

private:
    static constexpr std::size_t max_depth = 64;

    void inline_body(const TemplateDefinition& def, const std::vector<Traced>& args, std::size_t depth) {
        if (!def.body || depth > max_depth) return;
        std::map<std::string, const Traced*> binding;
        for (std::size_t i = 0; i < def.parameters.size() && i < args.size(); ++i)
            binding[def.parameters[i].name] = &args[i];

        for (const auto& inner : *def.body) {
            const TemplateDefinition* callee = library_.find(inner.template_iri.value);
            if (!callee || callee->parameters.size() != inner.arguments.size()) continue;

            std::vector<Traced> bound;
            for (const auto& a : inner.arguments) bound.push_back(bind(a.term, binding, def.iri.value));

            for (auto& row : expand_rows(inner, bound)) {
                if (!apply_defaults(*callee, row)) continue;
                if (callee->iri.value == triple_template_iri()) {
                    record(row);
                } else {
                    inline_body(*callee, row, depth + 1);
                }
            }
        }
    }

    Traced bind(const Term& term, const std::map<std::string, const Traced*>& binding,
                const std::string& writer) const {
        if (term.is_variable()) {
            auto it = binding.find(term.as_variable().name);
            return it == binding.end() ? Traced{term, std::nullopt} : *it->second;
        }
        if (term.is_list()) {
            std::vector<Term> items;
            for (const auto& t : term.as_list().items) items.push_back(bind(t, binding, writer).term);
            return {Term::list(std::move(items)), writer};
        }
        return {term, writer};
    }

    // List expansion over traced arguments; unresolved lists stay symbolic.
    static std::vector<std::vector<Traced>> expand_rows(const Instance& inner, const std::vector<Traced>& bound) {
        if (!inner.expansion) return {bound};
        Instance probe{inner.template_iri, {}, inner.expansion};
        for (std::size_t i = 0; i < bound.size(); ++i) {
            const Term& t = bound[i].term;
            bool symbolic = inner.arguments[i].expand && !t.is_list() && !t.is_none();
            probe.arguments.push_back(Argument{symbolic ? Term::list({t}) : t, inner.arguments[i].expand});
        }
        std::vector<std::vector<Term>> rows;
        try {
            rows = expand_list_arguments(probe);
        } catch (const ExpansionError&) {
            return {};
        }
        std::vector<std::vector<Traced>> out;
        for (auto& row : rows) {
            std::vector<Traced> traced;
            for (std::size_t i = 0; i < row.size(); ++i) traced.push_back({std::move(row[i]), bound[i].origin});
            out.push_back(std::move(traced));
        }
        return out;
    }

    static bool apply_defaults(const TemplateDefinition& callee, std::vector<Traced>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (!row[i].term.is_none()) continue;
            const Parameter& p = callee.parameters[i];
            if (p.default_value) {
                row[i] = {*p.default_value, callee.iri.value};
            } else if (!p.optional) {
                return false;
            }
        }
        return true;
    }

    void record(const std::vector<Traced>& row) {
        const Traced& subject = row[0];
        const Traced& predicate = row[1];
        if (!predicate.term.is_iri() || !predicates_.count(predicate.term.as_iri().value)) return;
        if (!subject.term.is_iri() || !subject.origin) return;
        definers_[subject.term.as_iri().value].insert(*subject.origin);
    }

    const Library& library_;
    const std::set<std::string>& predicates_;
    std::map<std::string, std::set<std::string>> definers_;
};

}  // namespace

std::vector<LintFinding> lint_axiom_encapsulation(const Library& library, const LintConfig& config) {
    AxiomTracer tracer(library, config.axiom_predicates);
    for (const auto& [iri, def] : library.templates) tracer.trace(def);

    std::vector<LintFinding> out;
    for (const auto& [subject, templates] : tracer.definers()) {
        if (templates.size() < 2) continue;
        LintFinding f{"R_AXIOM_SCATTER", Severity::Error, {Term(Iri{subject})}, {}};
        std::string names;
        for (const auto& t : templates) {
            f.subjects.emplace_back(TemplateRef{t});
            if (!names.empty()) names += ", ";
            names += display_name(t, library.prefixes);
        }
        f.message = "axioms about " + display_name(subject, library.prefixes) + " are defined in " +
                    std::to_string(templates.size()) + " templates (" + names +
                    "); encapsulate them in a single template";
        out.push_back(std::move(f));
    }
    sort_findings(out);
    return out;
}

namespace {

void collect_iris(const Term& term, std::set<std::string>& out) {
    if (term.is_iri()) out.insert(term.as_iri().value);
    if (term.is_list())
        for (const auto& t : term.as_list().items) collect_iris(t, out);
}

}  // namespace

std::vector<LintFinding> lint_headers(const Library& library, const LintConfig& config) {
    std::vector<LintFinding> out;
    const PrefixMap& px = library.prefixes;

    std::set<std::string> body_iris;
    for (const auto& [iri, def] : library.templates) {
        if (def.parameters.size() > config.param_count_threshold)
            out.push_back({"R_PARAM_COUNT", Severity::Warning, {TemplateRef{iri}},
                           display_name(iri, px) + " has " + std::to_string(def.parameters.size()) +
                               " parameters (threshold " + std::to_string(config.param_count_threshold) +
                               "); consider splitting it"});
        if (def.body)
            for (const auto& inst : *def.body)
                for (const auto& a : inst.arguments) collect_iris(a.term, body_iris);
    }

    std::vector<std::pair<std::string, bool>> candidates;  // (iri, is template)
    for (const auto& [iri, def] : library.templates) candidates.emplace_back(iri, true);
    for (const auto& iri : body_iris)
        if (!library.templates.count(iri)) candidates.emplace_back(iri, false);

    for (const auto& rule : config.naming_rules) {
        std::regex pattern(rule.pattern);
        for (const auto& [iri, is_template] : candidates) {
            if (!iri.starts_with(rule.iri_prefix)) continue;
            std::string local = iri.substr(rule.iri_prefix.size());
            if (std::regex_search(local, pattern)) continue;
            LintSubject subject = is_template ? LintSubject{TemplateRef{iri}} : LintSubject{Term(Iri{iri})};
            out.push_back({"R_NAMING", Severity::Warning, {subject},
                           std::string(is_template ? "template name " : "IRI ") + display_name(iri, px) +
                               ": local name '" + local + "' does not match " + rule.pattern});
        }
    }
    sort_findings(out);
    return out;
}

std::vector<LintFinding> lint_all(const Library& library, const std::vector<Instance>& instances,
                                  const LintConfig& config) {
    std::vector<LintFinding> out = lint_headers(library, config);
    auto add = [&](std::vector<LintFinding> more) { out.insert(out.end(), more.begin(), more.end()); };
    add(lint_axiom_encapsulation(library, config));
    if (!instances.empty()) {
        add(lint_output_redundancy(instances, library));
        add(lint_instantiation_redundancy(instances, config));
    }
    sort_findings(out);
    return out;
}

namespace {

std::string subject_text(const LintSubject& s, const PrefixMap& prefixes) {
    if (auto* i = std::get_if<InstanceRef>(&s)) return "#" + std::to_string(i->index);
    if (auto* t = std::get_if<TemplateRef>(&s)) return display_name(t->iri, prefixes);
    return serialize_term(std::get<Term>(s), prefixes);
}

}  // namespace

std::string format_finding(const LintFinding& finding, const PrefixMap& prefixes) {
    std::string subjects;
    for (const auto& s : finding.subjects) {
        if (!subjects.empty()) subjects += ",";
        subjects += subject_text(s, prefixes);
    }
    return std::string(to_string(finding.severity)) + " " + finding.rule + " " + subjects + ": " + finding.message;
}

nlohmann::json lint_report(const std::vector<LintFinding>& findings, const PrefixMap& prefixes) {
    nlohmann::json rules = nlohmann::json::object();
    std::size_t errors = 0;
    for (const auto& f : findings) {
        nlohmann::json subjects = nlohmann::json::array();
        for (const auto& s : f.subjects) {
            if (auto* i = std::get_if<InstanceRef>(&s)) subjects.push_back({{"instance", i->index}});
            else if (auto* t = std::get_if<TemplateRef>(&s)) subjects.push_back({{"template", t->iri}});
            else subjects.push_back({{"term", serialize_term(std::get<Term>(s), prefixes)}});
        }
        if (f.severity == Severity::Error) ++errors;
        rules[f.rule].push_back(
            {{"severity", to_string(f.severity)}, {"subjects", subjects}, {"message", f.message}});
    }
    return {{"findings", findings.size()}, {"errors", errors}, {"rules", rules}};
}

}  // namespace ottr
