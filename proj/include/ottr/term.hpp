#pragma once
// Terms, triples and triple graphs.

#include <compare>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ottr {

namespace ns {
inline constexpr std::string_view rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view rdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view owl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view xsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view ottr = "http://ns.ottr.xyz/0.4/";
}  // namespace ns

inline std::string rdf(std::string_view local) { return std::string(ns::rdf) + std::string(local); }
inline std::string rdfs(std::string_view local) { return std::string(ns::rdfs) + std::string(local); }
inline std::string owl(std::string_view local) { return std::string(ns::owl) + std::string(local); }
inline std::string xsd(std::string_view local) { return std::string(ns::xsd) + std::string(local); }
inline std::string ottr_ns(std::string_view local) { return std::string(ns::ottr) + std::string(local); }

/// True if `value` starts with a URI scheme followed by ':'.
bool is_absolute_iri(std::string_view value);

struct Iri {
    std::string value;
    auto operator<=>(const Iri&) const = default;
};

struct Literal {
    std::string lexical;
    std::string datatype;
    std::string language;  // empty unless datatype is rdf:langString
    auto operator<=>(const Literal&) const = default;
};

struct Blank {
    std::string label;
    auto operator<=>(const Blank&) const = default;
};

struct Variable {
    std::string name;
    auto operator<=>(const Variable&) const = default;
};

struct NoneTerm {
    auto operator<=>(const NoneTerm&) const = default;
};

struct Term;

struct TermList {
    std::vector<Term> items;
    bool operator==(const TermList& other) const;
    std::strong_ordering operator<=>(const TermList& other) const;
};

/// The atoms of arguments and triples.
struct Term {
    std::variant<Iri, Literal, Blank, Variable, NoneTerm, TermList> value;

    Term() : value(NoneTerm{}) {}
    Term(Iri v) : value(std::move(v)) {}
    Term(Literal v) : value(std::move(v)) {}
    Term(Blank v) : value(std::move(v)) {}
    Term(Variable v) : value(std::move(v)) {}
    Term(NoneTerm v) : value(v) {}
    Term(TermList v) : value(std::move(v)) {}

    /// Throws std::invalid_argument if `value` is not an absolute IRI.
    static Term iri(std::string value);
    /// Plain literal; datatype defaults to xsd:string.
    static Term literal(std::string lexical, std::string datatype = xsd("string"));
    static Term lang_literal(std::string lexical, std::string language);
    static Term blank(std::string label) { return Term(Blank{std::move(label)}); }
    static Term variable(std::string name) { return Term(Variable{std::move(name)}); }
    static Term none() { return Term(NoneTerm{}); }
    static Term list(std::vector<Term> items) { return Term(TermList{std::move(items)}); }

    bool is_iri() const { return std::holds_alternative<Iri>(value); }
    bool is_literal() const { return std::holds_alternative<Literal>(value); }
    bool is_blank() const { return std::holds_alternative<Blank>(value); }
    bool is_variable() const { return std::holds_alternative<Variable>(value); }
    bool is_none() const { return std::holds_alternative<NoneTerm>(value); }
    bool is_list() const { return std::holds_alternative<TermList>(value); }

    const Iri& as_iri() const { return std::get<Iri>(value); }
    const Literal& as_literal() const { return std::get<Literal>(value); }
    const Blank& as_blank() const { return std::get<Blank>(value); }
    const Variable& as_variable() const { return std::get<Variable>(value); }
    const TermList& as_list() const { return std::get<TermList>(value); }

    /// No Variable anywhere inside (None and lists of ground terms are ground).
    bool is_ground() const;

    bool operator==(const Term& other) const { return value == other.value; }
    std::strong_ordering operator<=>(const Term& other) const;
};

/// A ground RDF triple. Construction validates positions.
class Triple {
public:
    /// Throws std::invalid_argument when a position holds a disallowed term.
    Triple(Term subject, Term predicate, Term object);

    const Term& subject() const { return subject_; }
    const Term& predicate() const { return predicate_; }
    const Term& object() const { return object_; }

    bool operator==(const Triple&) const = default;
    std::strong_ordering operator<=>(const Triple&) const = default;

private:
    Term subject_;
    Term predicate_;
    Term object_;
};

/// A set of ground triples.
class TripleGraph {
public:
    TripleGraph() = default;

    /// Returns true if the triple was not already present.
    bool insert(Triple triple) { return triples_.insert(std::move(triple)).second; }
    void merge(const TripleGraph& other) { triples_.insert(other.triples_.begin(), other.triples_.end()); }

    bool contains(const Triple& triple) const { return triples_.count(triple) != 0; }
    std::size_t size() const { return triples_.size(); }
    bool empty() const { return triples_.empty(); }

    auto begin() const { return triples_.begin(); }
    auto end() const { return triples_.end(); }

    bool operator==(const TripleGraph&) const = default;

private:
    std::set<Triple> triples_;
};

TripleGraph graph_union(const TripleGraph& a, const TripleGraph& b);

/// Namespaces left out of connectivity analysis by default: rdf, rdfs, owl, xsd.
std::vector<std::string> default_excluded_namespaces();

/// Undirected connected components over Iri/Blank nodes in subject or object
/// position. Literals and IRIs under an excluded namespace are not nodes.
/// Components are sorted by their smallest member; members are sorted.
std::vector<std::set<Term>> connected_components(const TripleGraph& graph,
                                                 const std::vector<std::string>& excluded_namespaces);

}  // namespace ottr
