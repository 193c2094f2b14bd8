#include "ottr/expander.hpp"

#include "ottr/ntriples.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace ottr {

std::string_view to_string(ExpansionError::Kind kind) {
    switch (kind) {
        case ExpansionError::Kind::UnknownTemplate: return "UnknownTemplate";
        case ExpansionError::Kind::SignatureOnlyTemplate: return "SignatureOnlyTemplate";
        case ExpansionError::Kind::DepthExceeded: return "DepthExceeded";
        case ExpansionError::Kind::ArityMismatch: return "ArityMismatch";
        case ExpansionError::Kind::InvalidArgument: return "InvalidArgument";
    }
    return {};
}

namespace {

std::string error_text(ExpansionError::Kind kind, const std::string& message, std::optional<std::size_t> index) {
    std::string out;
    if (index) out += "instance " + std::to_string(*index) + ": ";
    return out + std::string(to_string(kind)) + ": " + message;
}

std::string join_errors(const std::vector<ExpansionError>& errors) {
    std::string out;
    for (const auto& e : errors) {
        if (!out.empty()) out += "\n";
        out += e.what();
    }
    return out;
}

}  // namespace

ExpansionError::ExpansionError(Kind kind, std::string message, std::optional<std::size_t> instance_index)
    : std::runtime_error(error_text(kind, message, instance_index)),
      kind_(kind),
      detail_(std::move(message)),
      instance_index_(instance_index) {}

ExpansionErrors::ExpansionErrors(std::vector<ExpansionError> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

std::vector<std::vector<Term>> expand_list_arguments(const Instance& instance) {
    std::vector<Term> base;
    base.reserve(instance.arguments.size());
    for (const auto& a : instance.arguments) base.push_back(a.term);
    if (!instance.expansion) return {base};

    bool explicit_marks = std::any_of(instance.arguments.begin(), instance.arguments.end(),
                                      [](const Argument& a) { return a.expand; });
    std::vector<std::size_t> marked;
    for (std::size_t i = 0; i < instance.arguments.size(); ++i) {
        const Term& t = instance.arguments[i].term;
        if (explicit_marks ? instance.arguments[i].expand : t.is_list()) marked.push_back(i);
    }

    // A none in an expanded position behaves as the empty list.
    std::vector<std::vector<Term>> lists;
    for (std::size_t i : marked) {
        const Term& t = base[i];
        if (t.is_none()) {
            lists.emplace_back();
        } else if (t.is_list()) {
            lists.push_back(t.as_list().items);
        } else {
            throw ExpansionError(ExpansionError::Kind::InvalidArgument,
                                 "argument " + std::to_string(i + 1) + " is marked for expansion but is not a list");
        }
    }
    if (marked.empty()) return {base};

    std::vector<std::vector<Term>> out;
    switch (*instance.expansion) {
        case ExpansionMode::Cross: {
            std::vector<std::size_t> position(lists.size(), 0);
            if (std::any_of(lists.begin(), lists.end(), [](const auto& l) { return l.empty(); })) return out;
            while (true) {
                std::vector<Term> args = base;
                for (std::size_t k = 0; k < marked.size(); ++k) args[marked[k]] = lists[k][position[k]];
                out.push_back(std::move(args));
                std::size_t k = lists.size();
                while (k > 0) {
                    --k;
                    if (++position[k] < lists[k].size()) break;
                    position[k] = 0;
                    if (k == 0) return out;
                }
            }
        }
        case ExpansionMode::ZipMin:
        case ExpansionMode::ZipMax: {
            std::size_t n = lists.front().size();
            for (const auto& l : lists)
                n = *instance.expansion == ExpansionMode::ZipMin ? std::min(n, l.size()) : std::max(n, l.size());
            for (std::size_t j = 0; j < n; ++j) {
                std::vector<Term> args = base;
                for (std::size_t k = 0; k < marked.size(); ++k)
                    args[marked[k]] = j < lists[k].size() ? lists[k][j] : Term::none();
                out.push_back(std::move(args));
            }
            return out;
        }
    }
    return out;
}

namespace {

class Expander {
public:
    Expander(const Library& library, std::size_t counter, std::size_t max_depth, TripleGraph& out)
        : library_(library), counter_(counter), max_depth_(max_depth), out_(out) {}

    void expand(const Instance& instance, std::size_t depth) {
        if (depth > max_depth_)
            throw ExpansionError(ExpansionError::Kind::DepthExceeded,
                                 "maximum depth " + std::to_string(max_depth_) + " exceeded");
        const std::string& iri = instance.template_iri.value;
        const TemplateDefinition* def = library_.find(iri);
        if (!def)
            throw ExpansionError(ExpansionError::Kind::UnknownTemplate, "unknown template <" + iri + ">");
        if (instance.arguments.size() != def->parameters.size())
            throw ExpansionError(ExpansionError::Kind::ArityMismatch,
                                 "<" + iri + "> expects " + std::to_string(def->parameters.size()) +
                                     " arguments, got " + std::to_string(instance.arguments.size()));

        for (auto& args : expand_list_arguments(instance)) {
            if (!apply_defaults(*def, args)) continue;
            if (iri == triple_template_iri()) {
                emit_triple(args);
                continue;
            }
            if (!def->body)
                throw ExpansionError(ExpansionError::Kind::SignatureOnlyTemplate,
                                     "<" + iri + "> has no body");
            std::map<std::string, const Term*> binding;
            for (std::size_t i = 0; i < args.size(); ++i) binding[def->parameters[i].name] = &args[i];
            std::size_t body = ++bodies_;
            for (const auto& inner : *def->body) expand(substitute(inner, binding, body), depth + 1);
        }
    }

private:
    // Replaces none by defaults; false if a non-optional parameter stays none.
    static bool apply_defaults(const TemplateDefinition& def, std::vector<Term>& args) {
        for (std::size_t i = 0; i < args.size(); ++i) {
            const Parameter& p = def.parameters[i];
            if (!args[i].is_none()) continue;
            if (p.default_value) {
                args[i] = *p.default_value;
            } else if (!p.optional) {
                return false;
            }
        }
        return true;
    }

    void emit_triple(const std::vector<Term>& args) {
        try {
            out_.insert(Triple(args[0], args[1], args[2]));
        } catch (const std::invalid_argument& e) {
            throw ExpansionError(ExpansionError::Kind::InvalidArgument, e.what());
        }
    }

    // Body blanks become `b{counter}_{body}_{label}`, where body numbers the
    // expanded bodies of one top-level instance in depth-first order.
    Term substitute(const Term& term, const std::map<std::string, const Term*>& binding, std::size_t body) const {
        if (term.is_variable()) {
            auto it = binding.find(term.as_variable().name);
            if (it == binding.end())
                throw ExpansionError(ExpansionError::Kind::InvalidArgument,
                                     "unbound variable ?" + term.as_variable().name);
            return *it->second;
        }
        if (term.is_blank())
            return Term::blank("b" + std::to_string(counter_) + "_" + std::to_string(body) + "_" + term.as_blank().label);
        if (term.is_list()) {
            std::vector<Term> items;
            items.reserve(term.as_list().items.size());
            for (const auto& t : term.as_list().items) items.push_back(substitute(t, binding, body));
            return Term::list(std::move(items));
        }
        return term;
    }

    Instance substitute(const Instance& instance, const std::map<std::string, const Term*>& binding,
                        std::size_t body) const {
        Instance out{instance.template_iri, {}, instance.expansion};
        out.arguments.reserve(instance.arguments.size());
        for (const auto& a : instance.arguments)
            out.arguments.push_back(Argument{substitute(a.term, binding, body), a.expand});
        return out;
    }

    const Library& library_;
    std::size_t counter_;
    std::size_t max_depth_;
    std::size_t bodies_ = 0;
    TripleGraph& out_;
};

void require_ground(const Instance& instance) {
    for (const auto& a : instance.arguments)
        if (!a.term.is_ground())
            throw ExpansionError(ExpansionError::Kind::InvalidArgument, "top-level instance contains a variable");
}

}  // namespace

TripleGraph expand_instance(const Instance& instance, const ExpansionContext& ctx) {
    if (!ctx.library) throw std::invalid_argument("expansion context has no library");
    if (ctx.max_depth < 1) throw std::invalid_argument("max depth must be at least 1");
    require_ground(instance);
    TripleGraph out;
    Expander(*ctx.library, ctx.counter, ctx.max_depth, out).expand(instance, 1);
    return out;
}

namespace {

template <typename Sink>
void expand_each(const std::vector<Instance>& instances, const ExpansionContext& ctx, Sink&& sink) {
    std::vector<ExpansionError> errors;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        ExpansionContext local = ctx;
        local.counter = ctx.counter + i;
        try {
            sink(i, expand_instance(instances[i], local));
        } catch (const ExpansionError& e) {
            errors.emplace_back(e.kind(), e.detail(), i);
        }
    }
    if (!errors.empty()) throw ExpansionErrors(std::move(errors));
}

}  // namespace

TripleGraph expand_all(const std::vector<Instance>& instances, const ExpansionContext& ctx) {
    TripleGraph out;
    expand_each(instances, ctx, [&](std::size_t, const TripleGraph& g) { out.merge(g); });
    return out;
}

std::vector<std::pair<Triple, std::set<std::size_t>>> provenance_expand(const std::vector<Instance>& instances,
                                                                      const ExpansionContext& ctx) {
    std::map<Triple, std::set<std::size_t>> producers;
    expand_each(instances, ctx, [&](std::size_t i, const TripleGraph& g) {
        for (const Triple& t : g) producers[t].insert(i);
    });
    return {producers.begin(), producers.end()};
}

namespace {

bool is_published_value(const Term& term) {
    std::string value;
    if (term.is_literal()) {
        value = term.as_literal().lexical;
    } else if (term.is_iri()) {
        const std::string& iri = term.as_iri().value;
        auto cut = iri.find_last_of("/#:");
        value = cut == std::string::npos ? iri : iri.substr(cut + 1);
    } else {
        return false;
    }
    std::transform(value.begin(), value.end(), value.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return value == "published";
}

}  // namespace

std::vector<Instance> retain_published(const std::vector<Instance>& instances, const Library& library) {
    std::vector<Instance> out;
    for (const auto& inst : instances) {
        const TemplateDefinition* def = library.find(inst.template_iri.value);
        auto index = def ? def->parameter_index(publication_status_parameter) : std::nullopt;
        if (!index || *index >= inst.arguments.size() || is_published_value(inst.arguments[*index].term))
            out.push_back(inst);
    }
    return out;
}

}  // namespace ottr
