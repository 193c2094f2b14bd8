#pragma once
// Instance expansion: instances are replaced by their templates' bodies until
// only ottr:Triple instances remain, which become RDF triples.

#include "ottr/model.hpp"
#include "ottr/term.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ottr {

struct ExpansionContext {
    const Library* library = nullptr;
    /// Body blank nodes of the i-th top-level instance are renamed
    /// `b{counter + i}_{k}_{label}`, k numbering expanded bodies depth-first from 1.
    std::size_t counter = 0;
    std::size_t max_depth = 64;
};

class ExpansionError : public std::runtime_error {
public:
    enum class Kind { UnknownTemplate, SignatureOnlyTemplate, DepthExceeded, ArityMismatch, InvalidArgument };

    ExpansionError(Kind kind, std::string message, std::optional<std::size_t> instance_index = std::nullopt);

    Kind kind() const { return kind_; }
    std::optional<std::size_t> instance_index() const { return instance_index_; }
    const std::string& detail() const { return detail_; }

private:
    Kind kind_;
    std::string detail_;
    std::optional<std::size_t> instance_index_;
};

std::string_view to_string(ExpansionError::Kind kind);

/// Raised by expand_all and provenance_expand with one entry per failing instance.
class ExpansionErrors : public std::runtime_error {
public:
    explicit ExpansionErrors(std::vector<ExpansionError> errors);
    const std::vector<ExpansionError>& errors() const { return errors_; }

private:
    std::vector<ExpansionError> errors_;
};

/// Expands one top-level instance with blank-node counter `ctx.counter`.
TripleGraph expand_instance(const Instance& instance, const ExpansionContext& ctx);

/// Union of per-instance expansions; instance i uses counter `ctx.counter + i`.
TripleGraph expand_all(const std::vector<Instance>& instances, const ExpansionContext& ctx);

/// Each distinct triple with the indices of the top-level instances producing it, sorted by triple.
std::vector<std::pair<Triple, std::set<std::size_t>>> provenance_expand(const std::vector<Instance>& instances,
                                                                      const ExpansionContext& ctx);

/// Expands the list arguments of an instance with an expansion mode into plain
/// argument vectors. Instances without a mode yield their own arguments.
std::vector<std::vector<Term>> expand_list_arguments(const Instance& instance);

/// Name of the parameter that marks instances as internal or published.
inline constexpr std::string_view publication_status_parameter = "publicationStatus";

/// Keeps instances whose template has no publicationStatus parameter, or whose
/// publicationStatus argument is "published" (literal value or IRI local name).
std::vector<Instance> retain_published(const std::vector<Instance>& instances, const Library& library);

}  // namespace ottr
