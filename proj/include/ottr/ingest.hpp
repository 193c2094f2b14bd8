#pragma once
// Tabular data to template instances.

#include "ottr/model.hpp"
#include "ottr/term.hpp"

#include "json.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ottr {

/// A file-level ingestion failure: malformed CSV or a mapping that does not fit the data or library.
class IngestError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// RFC 4180 style records; `""` escapes a quote inside a quoted field. Cells
/// are whitespace-trimmed and blank lines are dropped. Throws IngestError on an
/// unterminated quoted field.
std::vector<std::vector<std::string>> parse_csv(std::string_view text, char delimiter = ',');

struct ColumnValue {
    enum class As { Iri, Literal, LangLiteral };
    std::string column;
    As as = As::Literal;
    std::string datatype = xsd("string");  // for As::Literal
    std::string language;                  // for As::LangLiteral
};

struct ConstantValue {
    Term value;
};

/// IRI built from a pattern with `{column}` placeholders.
struct MintPattern {
    std::string pattern;
};

/// Like ColumnValue, but an empty cell skips the whole row.
struct SkipIfEmpty {
    ColumnValue value;
};

using ColumnBinding = std::variant<ColumnValue, ConstantValue, MintPattern, SkipIfEmpty>;

struct MappingConfig {
    Iri template_iri;
    char delimiter = ',';
    /// Prepended to relative IRI cells; empty means relative cells are errors.
    std::string base;
    std::map<std::string, ColumnBinding> bindings;  // parameter name -> binding
};

/// Reads a mapping document:
///   {"template": "pz:Pizza", "delimiter": ",", "base": "http://...",
///    "bindings": {"name": {"column": "name", "as": "iri"},
///                 "label": {"column": "label", "as": "langLiteral", "lang": "en"},
///                 "mass": {"column": "mass", "as": "literal", "datatype": "xsd:double"},
///                 "status": {"constant": "\"internal\""},
///                 "id": {"mint": "http://ex.org/material/{id}"},
///                 "note": {"skipIfEmpty": {"column": "note"}}}}
/// Throws IngestError.
MappingConfig mapping_from_json(const nlohmann::json& doc, const PrefixMap& prefixes);

struct RowDiagnostic {
    std::size_t row = 0;  // record number in the file; the header is row 1
    std::string column;
    std::string message;

    bool operator==(const RowDiagnostic&) const = default;
};

struct IngestResult {
    std::vector<Instance> instances;
    std::vector<std::size_t> instance_rows;  // source row of each instance
    std::vector<RowDiagnostic> diagnostics;  // in row order
    std::size_t data_rows = 0;
    std::size_t skipped_rows = 0;
};

/// One instance per valid data row, in row order. Throws IngestError for
/// malformed CSV or a mapping inconsistent with the header or the library.
IngestResult ingest_csv(std::string_view csv, const MappingConfig& config, const Library& library);

/// expand_all(ingest_csv(...).instances). Row diagnostics are ignored.
TripleGraph ingest_to_graph(std::string_view csv, const MappingConfig& config, const Library& library);

}  // namespace ottr
