#include "ottr/prefix.hpp"

#include <cctype>

namespace ottr {

namespace {

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

}  // namespace

bool is_valid_prefix_label(std::string_view label) {
    if (label.empty()) return true;
    if (!std::isalpha(static_cast<unsigned char>(label[0]))) return false;
    for (char c : label)
        if (!is_name_char(c)) return false;
    return true;
}

bool is_valid_local_name(std::string_view local) {
    if (local.empty() || !is_name_char(local.front()) || !is_name_char(local.back())) return false;
    for (char c : local)
        if (!is_name_char(c) && c != '.') return false;
    return true;
}

const PrefixMap& PrefixMap::standard() {
    static const PrefixMap map = [] {
        PrefixMap m;
        m.declare("rdf", std::string(ns::rdf));
        m.declare("rdfs", std::string(ns::rdfs));
        m.declare("owl", std::string(ns::owl));
        m.declare("xsd", std::string(ns::xsd));
        m.declare("ottr", std::string(ns::ottr));
        return m;
    }();
    return map;
}

void PrefixMap::declare(const std::string& label, const std::string& ns) {
    auto [it, inserted] = bindings_.emplace(label, ns);
    if (!inserted && it->second != ns)
        throw PrefixConflict("prefix '" + label + "' already bound to <" + it->second + ">");
}

std::optional<std::string> PrefixMap::lookup(std::string_view label) const {
    auto it = bindings_.find(std::string(label));
    if (it == bindings_.end()) return std::nullopt;
    return it->second;
}

Term PrefixMap::resolve(std::string_view prefixed_name) const {
    auto colon = prefixed_name.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("not a prefixed name: " + std::string(prefixed_name));
    auto label = prefixed_name.substr(0, colon);
    auto ns = lookup(label);
    if (!ns) throw UnboundPrefix(std::string(label));
    return Term(Iri{*ns + std::string(prefixed_name.substr(colon + 1))});
}

std::optional<std::string> PrefixMap::compact(std::string_view iri) const {
    std::optional<std::string> best;
    std::size_t best_ns = 0;
    for (const auto& [label, ns] : bindings_) {
        if (!iri.starts_with(ns)) continue;
        auto local = iri.substr(ns.size());
        if (!is_valid_local_name(local)) continue;
        // Prefer the longest namespace; ties resolve to the first label in order.
        if (!best || ns.size() > best_ns) {
            best = label + ":" + std::string(local);
            best_ns = ns.size();
        }
    }
    return best;
}

Term resolve(std::string_view prefixed_name, const PrefixMap& prefixes) {
    auto colon = prefixed_name.find(':');
    if (colon != std::string_view::npos && !prefixes.lookup(prefixed_name.substr(0, colon)) &&
        PrefixMap::standard().lookup(prefixed_name.substr(0, colon)))
        return PrefixMap::standard().resolve(prefixed_name);
    return prefixes.resolve(prefixed_name);
}

Iri parse_iri_text(std::string_view text, const PrefixMap& prefixes) {
    if (text.size() >= 2 && text.front() == '<' && text.back() == '>') {
        std::string inner(text.substr(1, text.size() - 2));
        if (!is_absolute_iri(inner)) throw std::invalid_argument("not an absolute IRI: " + inner);
        return Iri{inner};
    }
    auto colon = text.find(':');
    if (colon != std::string_view::npos) {
        auto label = text.substr(0, colon);
        if (prefixes.lookup(label) || PrefixMap::standard().lookup(label)) return resolve(text, prefixes).as_iri();
    }
    if (!is_absolute_iri(text)) throw std::invalid_argument("not an IRI or prefixed name: " + std::string(text));
    return Iri{std::string(text)};
}

std::string compact_or_bracket(std::string_view iri, const PrefixMap& prefixes) {
    if (auto c = prefixes.compact(iri)) return *c;
    for (const auto& [label, ns] : PrefixMap::standard().bindings()) {
        if (prefixes.lookup(label) || !iri.starts_with(ns)) continue;
        auto local = iri.substr(ns.size());
        if (is_valid_local_name(local)) return label + ":" + std::string(local);
    }
    return "<" + std::string(iri) + ">";
}

}  // namespace ottr
