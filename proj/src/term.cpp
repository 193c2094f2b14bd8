#include "ottr/term.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

namespace ottr {

bool is_absolute_iri(std::string_view value) {
    // scheme = ALPHA *( ALPHA / DIGIT / "+" / "-" / "." ) ":"
    if (value.empty() || !std::isalpha(static_cast<unsigned char>(value[0]))) return false;
    for (std::size_t i = 1; i < value.size(); ++i) {
        char c = value[i];
        if (c == ':') return true;
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') return false;
    }
    return false;
}

bool TermList::operator==(const TermList& other) const { return items == other.items; }

std::strong_ordering TermList::operator<=>(const TermList& other) const {
    return std::lexicographical_compare_three_way(items.begin(), items.end(), other.items.begin(),
                                                  other.items.end());
}

std::strong_ordering Term::operator<=>(const Term& other) const { return value <=> other.value; }

Term Term::iri(std::string value) {
    if (!is_absolute_iri(value)) throw std::invalid_argument("not an absolute IRI: " + value);
    return Term(Iri{std::move(value)});
}

Term Term::literal(std::string lexical, std::string datatype) {
    return Term(Literal{std::move(lexical), std::move(datatype), {}});
}

Term Term::lang_literal(std::string lexical, std::string language) {
    return Term(Literal{std::move(lexical), rdf("langString"), std::move(language)});
}

bool Term::is_ground() const {
    if (is_variable()) return false;
    if (is_list()) {
        const auto& items = as_list().items;
        return std::all_of(items.begin(), items.end(), [](const Term& t) { return t.is_ground(); });
    }
    return true;
}

Triple::Triple(Term subject, Term predicate, Term object)
    : subject_(std::move(subject)), predicate_(std::move(predicate)), object_(std::move(object)) {
    if (!subject_.is_iri() && !subject_.is_blank())
        throw std::invalid_argument("triple subject must be an IRI or blank node");
    if (!predicate_.is_iri()) throw std::invalid_argument("triple predicate must be an IRI");
    if (!object_.is_iri() && !object_.is_blank() && !object_.is_literal())
        throw std::invalid_argument("triple object must be an IRI, blank node or literal");
}

TripleGraph graph_union(const TripleGraph& a, const TripleGraph& b) {
    TripleGraph out = a;
    out.merge(b);
    return out;
}

std::vector<std::string> default_excluded_namespaces() {
    return {std::string(ns::rdf), std::string(ns::rdfs), std::string(ns::owl), std::string(ns::xsd)};
}

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_;
};

bool is_node(const Term& term, const std::vector<std::string>& excluded) {
    if (term.is_blank()) return true;
    if (!term.is_iri()) return false;
    const std::string& iri = term.as_iri().value;
    return std::none_of(excluded.begin(), excluded.end(),
                        [&](const std::string& ns) { return iri.starts_with(ns); });
}

}  // namespace

std::vector<std::set<Term>> connected_components(const TripleGraph& graph,
                                                 const std::vector<std::string>& excluded_namespaces) {
    std::map<Term, std::size_t> index;
    std::vector<const Term*> nodes;
    auto intern = [&](const Term& t) {
        auto [it, inserted] = index.emplace(t, nodes.size());
        if (inserted) nodes.push_back(&it->first);
        return it->second;
    };

    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const Triple& triple : graph) {
        bool s = is_node(triple.subject(), excluded_namespaces);
        bool o = is_node(triple.object(), excluded_namespaces);
        std::size_t si = s ? intern(triple.subject()) : 0;
        std::size_t oi = o ? intern(triple.object()) : 0;
        if (s && o) edges.emplace_back(si, oi);
    }

    DisjointSets sets(nodes.size());
    for (auto [a, b] : edges) sets.unite(a, b);

    std::map<std::size_t, std::set<Term>> grouped;
    for (std::size_t i = 0; i < nodes.size(); ++i) grouped[sets.find(i)].insert(*nodes[i]);

    std::vector<std::set<Term>> components;
    components.reserve(grouped.size());
    for (auto& [root, members] : grouped) components.push_back(std::move(members));
    std::sort(components.begin(), components.end(),
              [](const std::set<Term>& a, const std::set<Term>& b) { return *a.begin() < *b.begin(); });
    return components;
}

}  // namespace ottr
