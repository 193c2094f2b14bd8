#pragma once

#include "ottr/term.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ottr {

class UnboundPrefix : public std::runtime_error {
public:
    explicit UnboundPrefix(std::string label)
        : std::runtime_error("unbound prefix '" + label + "'"), label_(std::move(label)) {}
    const std::string& label() const { return label_; }

private:
    std::string label_;
};

class PrefixConflict : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Prefix label -> namespace IRI bindings.
class PrefixMap {
public:
    PrefixMap() = default;

    /// The rdf, rdfs, owl, xsd and ottr bindings.
    static const PrefixMap& standard();

    /// Binding the same label twice to different namespaces throws PrefixConflict.
    void declare(const std::string& label, const std::string& ns);
    std::optional<std::string> lookup(std::string_view label) const;
    bool empty() const { return bindings_.empty(); }
    const std::map<std::string, std::string>& bindings() const { return bindings_; }

    /// Resolves `label:local`. Throws UnboundPrefix.
    Term resolve(std::string_view prefixed_name) const;

    /// Shortest `label:local` form for `iri`, if some namespace matches and the
    /// remainder is a valid local name.
    std::optional<std::string> compact(std::string_view iri) const;

    bool operator==(const PrefixMap&) const = default;

private:
    std::map<std::string, std::string> bindings_;
};

/// Resolves using `prefixes`, falling back to PrefixMap::standard().
Term resolve(std::string_view prefixed_name, const PrefixMap& prefixes);

/// Compacts with `prefixes` first, then the standard map; `<iri>` otherwise.
std::string compact_or_bracket(std::string_view iri, const PrefixMap& prefixes);

/// Accepts `<iri>`, a prefixed name with a bound label, or an absolute IRI.
/// Throws std::invalid_argument.
Iri parse_iri_text(std::string_view text, const PrefixMap& prefixes);

/// The empty label (default prefix) is valid.
bool is_valid_prefix_label(std::string_view label);
bool is_valid_local_name(std::string_view local);

}  // namespace ottr
