#pragma once
// Templates, parameters, instances and libraries.

#include "ottr/prefix.hpp"
#include "ottr/term.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ottr {

/// Parameter types: Top, IRI, a literal datatype, or a list of another type.
class ParamType {
public:
    enum class Kind { Top, Iri, Literal, List };

    static ParamType top() { return ParamType(Kind::Top); }
    static ParamType iri() { return ParamType(Kind::Iri); }
    static ParamType literal(std::string datatype);
    /// Any literal (rdfs:Literal).
    static ParamType any_literal() { return literal(rdfs("Literal")); }
    static ParamType list(ParamType element);

    Kind kind() const { return kind_; }
    bool is_list() const { return kind_ == Kind::List; }
    const std::string& datatype() const { return datatype_; }
    const ParamType& element() const { return *element_; }
    /// 0 for non-list types, 1 for List<T>, 2 for List<List<T>>.
    int list_depth() const;

    /// True if every value of type `sub` is also a value of this type.
    bool accepts_type(const ParamType& sub) const;
    /// True if the ground (or None) term is a value of this type.
    bool accepts_term(const Term& term) const;

    bool operator==(const ParamType& other) const;

private:
    explicit ParamType(Kind kind) : kind_(kind) {}

    Kind kind_;
    std::string datatype_;
    std::shared_ptr<const ParamType> element_;
};

/// Renders a type with compact names, e.g. `List<ottr:IRI>`.
std::string to_string(const ParamType& type, const PrefixMap& prefixes);

struct Parameter {
    std::string name;  // without the leading '?'
    ParamType type = ParamType::top();
    bool optional = false;
    bool nonblank = false;
    std::optional<Term> default_value;

    bool operator==(const Parameter&) const = default;
};

enum class ExpansionMode { Cross, ZipMin, ZipMax };

std::string_view to_string(ExpansionMode mode);

struct Argument {
    Term term;
    /// Marked with `++` for list expansion.
    bool expand = false;

    bool operator==(const Argument&) const = default;
};

struct Instance {
    Iri template_iri;
    std::vector<Argument> arguments;
    std::optional<ExpansionMode> expansion;

    bool operator==(const Instance&) const = default;
};

Instance make_instance(std::string template_iri, std::vector<Term> arguments,
                       std::optional<ExpansionMode> mode = std::nullopt);

struct TemplateDefinition {
    Iri iri;
    std::vector<Parameter> parameters;
    /// Absent for signature-only declarations.
    std::optional<std::vector<Instance>> body;

    const Parameter* find_parameter(std::string_view name) const;
    std::optional<std::size_t> parameter_index(std::string_view name) const;

    bool operator==(const TemplateDefinition&) const = default;
};

/// IRI of the built-in base template.
const std::string& triple_template_iri();

/// ottr:Triple(subject: Top, predicate: IRI, object: Top).
const TemplateDefinition& triple_template();

struct Library {
    PrefixMap prefixes;
    std::map<std::string, TemplateDefinition> templates;

    /// Looks up a library template or the built-in ottr:Triple.
    const TemplateDefinition* find(const std::string& iri) const;

    bool operator==(const Library&) const = default;
};

/// Compacts an IRI with the library prefixes (standard prefixes as fallback).
std::string display_name(const std::string& iri, const PrefixMap& prefixes);

}  // namespace ottr
