#include "ottr/ingest.hpp"

#include "ottr/expander.hpp"
#include "ottr/stottr.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <regex>
#include <set>

namespace ottr {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace

std::vector<std::vector<std::string>> parse_csv(std::string_view text, char delimiter) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    std::size_t line = 1, quote_line = 0;

    auto end_field = [&] {
        record.push_back(trim(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        bool blank = record.size() == 1 && record.front().empty();
        if (!blank) records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        if (c == '"' && !field_started) {
            quoted = true;
            field_started = true;
            quote_line = line;
            field.clear();
        } else if (c == delimiter) {
            end_field();
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            end_record();
            ++line;
        } else {
            if (!std::isspace(static_cast<unsigned char>(c))) field_started = true;
            field += c;
        }
    }
    if (quoted) throw IngestError("unbalanced quotes: quoted field starting on line " + std::to_string(quote_line) +
                                  " is never closed");
    if (!field.empty() || !record.empty()) end_record();
    return records;
}

namespace {

ColumnValue column_value_from_json(const nlohmann::json& j, const PrefixMap& prefixes) {
    ColumnValue v;
    v.column = j.at("column").get<std::string>();
    std::string as = j.value("as", "literal");
    if (as == "iri") {
        v.as = ColumnValue::As::Iri;
    } else if (as == "langLiteral") {
        v.as = ColumnValue::As::LangLiteral;
        v.language = j.at("lang").get<std::string>();
    } else if (as == "literal") {
        v.as = ColumnValue::As::Literal;
        if (j.contains("datatype")) v.datatype = parse_iri_text(j.at("datatype").get<std::string>(), prefixes).value;
    } else {
        throw IngestError("unknown cell conversion '" + as + "'");
    }
    return v;
}

}  // namespace

MappingConfig mapping_from_json(const nlohmann::json& doc, const PrefixMap& library_prefixes) {
    try {
        PrefixMap prefixes = library_prefixes;
        if (doc.contains("prefixes"))
            for (const auto& [label, ns] : doc.at("prefixes").items()) prefixes.declare(label, ns.get<std::string>());

        MappingConfig config;
        config.template_iri = parse_iri_text(doc.at("template").get<std::string>(), prefixes);
        if (doc.contains("delimiter")) {
            std::string d = doc.at("delimiter").get<std::string>();
            if (d.size() != 1) throw IngestError("delimiter must be a single character");
            config.delimiter = d.front();
        }
        config.base = doc.value("base", "");
        for (const auto& [param, b] : doc.at("bindings").items()) {
            std::string name = !param.empty() && param.front() == '?' ? param.substr(1) : param;
            ColumnBinding binding;
            if (b.contains("column")) {
                binding = column_value_from_json(b, prefixes);
            } else if (b.contains("constant")) {
                binding = ConstantValue{parse_term(b.at("constant").get<std::string>(), prefixes)};
            } else if (b.contains("mint")) {
                binding = MintPattern{b.at("mint").get<std::string>()};
            } else if (b.contains("skipIfEmpty")) {
                binding = SkipIfEmpty{column_value_from_json(b.at("skipIfEmpty"), prefixes)};
            } else {
                throw IngestError("binding for ?" + name + " needs one of column, constant, mint, skipIfEmpty");
            }
            config.bindings.emplace(name, std::move(binding));
        }
        return config;
    } catch (const IngestError&) {
        throw;
    } catch (const std::exception& e) {
        throw IngestError(std::string("invalid mapping: ") + e.what());
    }
}

namespace {

const std::regex placeholder_pattern(R"(\{([^{}]+)\})");

bool valid_iri_chars(std::string_view iri) {
    return std::none_of(iri.begin(), iri.end(), [](char c) {
        return std::isspace(static_cast<unsigned char>(c)) || std::string_view("<>\"{}|^`\\").find(c) != std::string_view::npos;
    });
}

bool valid_lexical(const std::string& value, const std::string& datatype) {
    static const std::regex integer(R"([+-]?[0-9]+)");
    static const std::regex decimal(R"([+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+))");
    static const std::regex floating(R"([+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)([eE][+-]?[0-9]+)?|[+-]?INF|NaN)");
    static const std::regex boolean(R"(true|false|0|1)");
    static const std::regex date(R"(-?[0-9]{4,}-[0-9]{2}-[0-9]{2}(Z|[+-][0-9]{2}:[0-9]{2})?)");
    static const std::set<std::string> integer_types = {
        xsd("integer"), xsd("int"), xsd("long"), xsd("short"), xsd("byte"), xsd("nonNegativeInteger"),
        xsd("positiveInteger"), xsd("negativeInteger"), xsd("nonPositiveInteger")};
    if (integer_types.count(datatype)) return std::regex_match(value, integer);
    if (datatype == xsd("decimal")) return std::regex_match(value, decimal);
    if (datatype == xsd("double") || datatype == xsd("float")) return std::regex_match(value, floating);
    if (datatype == xsd("boolean")) return std::regex_match(value, boolean);
    if (datatype == xsd("date")) return std::regex_match(value, date);
    return true;
}

void validate_config(const MappingConfig& config, const TemplateDefinition& def,
                     const std::vector<std::string>& header) {
    auto require_column = [&](const std::string& column, const std::string& param) {
        if (std::find(header.begin(), header.end(), column) == header.end())
            throw IngestError("binding for ?" + param + " uses column '" + column + "', which is not in the header");
    };
    for (const auto& [param, binding] : config.bindings) {
        if (!def.find_parameter(param))
            throw IngestError("mapping binds ?" + param + ", which the template does not declare");
        if (auto* c = std::get_if<ColumnValue>(&binding)) require_column(c->column, param);
        if (auto* s = std::get_if<SkipIfEmpty>(&binding)) require_column(s->value.column, param);
        if (auto* m = std::get_if<MintPattern>(&binding)) {
            for (std::sregex_iterator it(m->pattern.begin(), m->pattern.end(), placeholder_pattern), end; it != end; ++it)
                require_column((*it)[1].str(), param);
        }
    }
    for (const auto& p : def.parameters)
        if (!p.optional && !p.default_value && !config.bindings.count(p.name))
            throw IngestError("non-optional parameter ?" + p.name + " has no binding");
}

struct CellOutcome {
    std::optional<Term> value;  // none means the cell was empty
    std::optional<std::string> error;
};

CellOutcome convert_cell(const std::string& cell, const ColumnValue& column, const MappingConfig& config) {
    if (cell.empty()) return {};
    switch (column.as) {
        case ColumnValue::As::Iri: {
            std::string iri = is_absolute_iri(cell) ? cell : config.base.empty() ? std::string{} : config.base + cell;
            if (iri.empty()) return {std::nullopt, "'" + cell + "' is not an absolute IRI and no base is configured"};
            if (!valid_iri_chars(iri)) return {std::nullopt, "'" + cell + "' is not a valid IRI"};
            return {Term(Iri{iri}), std::nullopt};
        }
        case ColumnValue::As::LangLiteral: return {Term::lang_literal(cell, column.language), std::nullopt};
        case ColumnValue::As::Literal:
            if (!valid_lexical(cell, column.datatype))
                return {std::nullopt, "'" + cell + "' is not a valid <" + column.datatype + "> value"};
            return {Term::literal(cell, column.datatype), std::nullopt};
    }
    return {};
}

}  // namespace

IngestResult ingest_csv(std::string_view csv, const MappingConfig& config, const Library& library) {
    auto records = parse_csv(csv, config.delimiter);
    if (records.empty()) throw IngestError("missing header row");
    const auto& header = records.front();

    const TemplateDefinition* def = library.find(config.template_iri.value);
    if (!def) throw IngestError("unknown template <" + config.template_iri.value + ">");
    validate_config(config, *def, header);

    std::map<std::string, std::size_t> column_index;
    for (std::size_t i = 0; i < header.size(); ++i) column_index.emplace(header[i], i);

    IngestResult result;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& record = records[r];
        std::size_t row = r + 1;
        ++result.data_rows;
        std::vector<RowDiagnostic> problems;
        bool skip = false;

        if (record.size() != header.size()) {
            problems.push_back({row, "*", "expected " + std::to_string(header.size()) + " fields, found " +
                                              std::to_string(record.size())});
        } else {
            std::vector<Term> args;
            for (const auto& p : def->parameters) {
                auto it = config.bindings.find(p.name);
                if (it == config.bindings.end()) {
                    args.push_back(Term::none());
                    continue;
                }
                const ColumnBinding& binding = it->second;
                std::string column;
                CellOutcome outcome;
                if (auto* c = std::get_if<ConstantValue>(&binding)) {
                    outcome.value = c->value.is_none() ? std::nullopt : std::optional<Term>(c->value);
                } else if (auto* m = std::get_if<MintPattern>(&binding)) {
                    std::string iri;
                    std::size_t last = 0;
                    for (std::sregex_iterator it2(m->pattern.begin(), m->pattern.end(), placeholder_pattern), end;
                         it2 != end; ++it2) {
                        iri += m->pattern.substr(last, it2->position() - last);
                        const std::string& cell = record[column_index.at((*it2)[1].str())];
                        if (cell.empty()) {
                            column = (*it2)[1].str();
                            outcome.error = "empty cell in minted IRI pattern";
                        }
                        iri += cell;
                        last = it2->position() + it2->length();
                    }
                    iri += m->pattern.substr(last);
                    if (!outcome.error) {
                        if (is_absolute_iri(iri) && valid_iri_chars(iri)) {
                            outcome.value = Term(Iri{iri});
                        } else {
                            outcome.error = "minted '" + iri + "' is not a valid IRI";
                        }
                    }
                } else {
                    bool skip_if_empty = std::holds_alternative<SkipIfEmpty>(binding);
                    const ColumnValue& cv = skip_if_empty ? std::get<SkipIfEmpty>(binding).value : std::get<ColumnValue>(binding);
                    column = cv.column;
                    const std::string& cell = record[column_index.at(cv.column)];
                    if (skip_if_empty && cell.empty()) {
                        problems.push_back({row, column, "row skipped: '" + column + "' is empty"});
                        skip = true;
                        break;
                    }
                    outcome = convert_cell(cell, cv, config);
                }

                if (outcome.error) {
                    problems.push_back({row, column, *outcome.error});
                    args.push_back(Term::none());
                } else if (outcome.value) {
                    args.push_back(std::move(*outcome.value));
                } else if (p.optional || p.default_value) {
                    args.push_back(Term::none());
                } else {
                    problems.push_back({row, column, "empty value for non-optional ?" + p.name});
                    args.push_back(Term::none());
                }
            }
            if (problems.empty() && !skip) {
                result.instances.push_back(make_instance(config.template_iri.value, std::move(args)));
                result.instance_rows.push_back(row);
                continue;
            }
        }
        ++result.skipped_rows;
        result.diagnostics.insert(result.diagnostics.end(), problems.begin(), problems.end());
    }
    return result;
}

TripleGraph ingest_to_graph(std::string_view csv, const MappingConfig& config, const Library& library) {
    ExpansionContext ctx{&library};
    return expand_all(ingest_csv(csv, config, library).instances, ctx);
}

}  // namespace ottr
