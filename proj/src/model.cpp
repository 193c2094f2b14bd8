#include "ottr/model.hpp"

#include <algorithm>

namespace ottr {

ParamType ParamType::literal(std::string datatype) {
    ParamType t(Kind::Literal);
    t.datatype_ = std::move(datatype);
    return t;
}

ParamType ParamType::list(ParamType element) {
    ParamType t(Kind::List);
    t.element_ = std::make_shared<const ParamType>(std::move(element));
    return t;
}

int ParamType::list_depth() const { return is_list() ? 1 + element_->list_depth() : 0; }

bool ParamType::operator==(const ParamType& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case Kind::Top:
        case Kind::Iri: return true;
        case Kind::Literal: return datatype_ == other.datatype_;
        case Kind::List: return *element_ == *other.element_;
    }
    return false;
}

bool ParamType::accepts_type(const ParamType& sub) const {
    switch (kind_) {
        case Kind::Top: return true;
        case Kind::Iri: return sub.kind_ == Kind::Iri;
        case Kind::Literal:
            return sub.kind_ == Kind::Literal && (datatype_ == rdfs("Literal") || datatype_ == sub.datatype_);
        case Kind::List: return sub.kind_ == Kind::List && element_->accepts_type(*sub.element_);
    }
    return false;
}

bool ParamType::accepts_term(const Term& term) const {
    if (term.is_none()) return true;
    switch (kind_) {
        case Kind::Top: return !term.is_variable();
        case Kind::Iri: return term.is_iri() || term.is_blank();
        case Kind::Literal:
            return term.is_literal() &&
                   (datatype_ == rdfs("Literal") || term.as_literal().datatype == datatype_);
        case Kind::List:
            if (!term.is_list()) return false;
            return std::all_of(term.as_list().items.begin(), term.as_list().items.end(),
                               [&](const Term& t) { return !t.is_none() && element_->accepts_term(t); });
    }
    return false;
}

std::string to_string(const ParamType& type, const PrefixMap& prefixes) {
    switch (type.kind()) {
        case ParamType::Kind::Top: return display_name(rdfs("Resource"), prefixes);
        case ParamType::Kind::Iri: return display_name(ottr_ns("IRI"), prefixes);
        case ParamType::Kind::Literal: return display_name(type.datatype(), prefixes);
        case ParamType::Kind::List: return "List<" + to_string(type.element(), prefixes) + ">";
    }
    return {};
}

std::string_view to_string(ExpansionMode mode) {
    switch (mode) {
        case ExpansionMode::Cross: return "cross";
        case ExpansionMode::ZipMin: return "zipMin";
        case ExpansionMode::ZipMax: return "zipMax";
    }
    return {};
}

Instance make_instance(std::string template_iri, std::vector<Term> arguments,
                       std::optional<ExpansionMode> mode) {
    Instance inst{Iri{std::move(template_iri)}, {}, mode};
    for (auto& t : arguments) inst.arguments.push_back(Argument{std::move(t), false});
    return inst;
}

const Parameter* TemplateDefinition::find_parameter(std::string_view name) const {
    for (const auto& p : parameters)
        if (p.name == name) return &p;
    return nullptr;
}

std::optional<std::size_t> TemplateDefinition::parameter_index(std::string_view name) const {
    for (std::size_t i = 0; i < parameters.size(); ++i)
        if (parameters[i].name == name) return i;
    return std::nullopt;
}

const std::string& triple_template_iri() {
    static const std::string iri = ottr_ns("Triple");
    return iri;
}

const TemplateDefinition& triple_template() {
    static const TemplateDefinition def{
        Iri{triple_template_iri()},
        {Parameter{"subject", ParamType::top(), false, false, std::nullopt},
         Parameter{"predicate", ParamType::iri(), false, false, std::nullopt},
         Parameter{"object", ParamType::top(), false, false, std::nullopt}},
        std::nullopt};
    return def;
}

const TemplateDefinition* Library::find(const std::string& iri) const {
    if (iri == triple_template_iri()) return &triple_template();
    auto it = templates.find(iri);
    return it == templates.end() ? nullptr : &it->second;
}

std::string display_name(const std::string& iri, const PrefixMap& prefixes) {
    return compact_or_bracket(iri, prefixes);
}

}  // namespace ottr
