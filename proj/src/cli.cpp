#include "ottr/cli.hpp"

#include "ottr/docgen.hpp"
#include "ottr/expander.hpp"
#include "ottr/ingest.hpp"
#include "ottr/linter.hpp"
#include "ottr/ntriples.hpp"
#include "ottr/service.hpp"
#include "ottr/stottr.hpp"
#include "ottr/typecheck.hpp"
#include "ottr/workflow.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace ottr {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_findings = 1;
constexpr int exit_usage = 2;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Carries an exit code out of a subcommand after its message was printed.
struct Exit {
    int code;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!(f << text)) throw IoError("cannot write " + path);
}

nlohmann::json read_json(const std::string& path) {
    try {
        return nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError(path + ": " + e.what());
    }
}

void print_parse_errors(const std::string& path, const std::vector<ParseDiagnostic>& diags, std::ostream& err) {
    for (const auto& d : diags) err << path << ":" << to_string(d) << "\n";
}

/// Parses and checks the library. Exits 1 when it does not parse or has type errors.
Library load_library(const std::string& path, std::ostream& out, std::ostream& err, bool print_warnings = false) {
    auto parsed = parse_library(read_file(path));
    if (!parsed.ok()) {
        print_parse_errors(path, parsed.diagnostics, err);
        throw Exit{exit_findings};
    }
    auto diags = check_library(*parsed.value);
    if (has_errors(diags) || print_warnings)
        for (const auto& d : diags) out << format_diagnostic(d, parsed.value->prefixes) << "\n";
    if (has_errors(diags)) throw Exit{exit_findings};
    return std::move(*parsed.value);
}

std::vector<Instance> load_instances(const std::string& path, const Library& library, std::ostream& out,
                                     std::ostream& err) {
    auto parsed = parse_instances(read_file(path), library);
    if (!parsed.ok()) {
        print_parse_errors(path, parsed.diagnostics, err);
        throw Exit{exit_findings};
    }
    std::vector<Diagnostic> diags;
    for (const auto& inst : *parsed.value) {
        auto d = check_instance(inst, library, {}, std::nullopt);
        diags.insert(diags.end(), d.begin(), d.end());
    }
    for (const auto& d : diags) out << format_diagnostic(d, library.prefixes) << "\n";
    if (has_errors(diags)) throw Exit{exit_findings};
    return std::move(*parsed.value);
}

std::vector<Workflow> load_workflows(const std::vector<std::string>& paths, const Library& library) {
    std::vector<Workflow> out;
    for (const auto& p : paths) out.push_back(workflow_from_json(read_json(p), library.prefixes));
    return out;
}

std::string render_graph(const TripleGraph& graph, const std::string& format, const PrefixMap& prefixes) {
    return format == "turtle" ? write_turtle(graph, prefixes) : write_ntriples(graph);
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Template library toolchain: check, expand, lint, document, ingest and serve.", "ottr"};
    app.require_subcommand(1);

    std::string lib_path, instances_path, output_path, format, config_path, docs_path, mapping_path, data_path,
        workflow_path, inputs_path, base_iri, state_dir, host = "127.0.0.1";
    std::vector<std::string> workflow_paths;
    bool published_only = false;
    int port = 8080;

    auto* check = app.add_subcommand("check", "Parse and type-check a template library");
    check->add_option("-l,--library", lib_path, "Template library (stOTTR)")->required();

    auto* expand = app.add_subcommand("expand", "Expand instances to RDF");
    expand->add_option("-l,--library", lib_path, "Template library")->required();
    expand->add_option("-i,--instances", instances_path, "Instance file")->required();
    expand->add_option("-o,--output", output_path, "Output file, '-' for stdout")->required();
    expand->add_option("--format", format, "ntriples or turtle")
        ->default_val("ntriples")
        ->check(CLI::IsMember({"ntriples", "turtle"}));
    expand->add_flag("--published-only", published_only, "Drop instances whose publicationStatus is not published");

    auto* lint = app.add_subcommand("lint", "Run the linter");
    lint->add_option("-l,--library", lib_path, "Template library")->required();
    lint->add_option("-i,--instances", instances_path, "Instance file");
    lint->add_option("--config", config_path, "Lint configuration (JSON)");
    lint->add_option("--format", format, "text or json")->default_val("text")->check(CLI::IsMember({"text", "json"}));

    auto* doc = app.add_subcommand("doc", "Generate library documentation");
    doc->add_option("-l,--library", lib_path, "Template library")->required();
    doc->add_option("--docs", docs_path, "Sidecar documentation (JSON)");
    doc->add_option("-w,--workflow", workflow_paths, "Workflow documents to include");
    doc->add_option("--format", format, "md or dot")->default_val("md")->check(CLI::IsMember({"md", "dot"}));
    doc->add_option("-o,--output", output_path, "Output file");

    auto* workflow = app.add_subcommand("workflow", "Workflow tools");
    workflow->require_subcommand(1);
    auto* validate = workflow->add_subcommand("validate", "Validate a workflow and simulate connectivity");
    validate->add_option("-l,--library", lib_path, "Template library")->required();
    validate->add_option("-w,--workflow", workflow_path, "Workflow document (JSON)")->required();
    validate->add_option("--inputs", inputs_path, "Sample inputs (JSON)");
    validate->add_option("--base", base_iri, "Base IRI for minted and placeholder IRIs")
        ->default_val("http://example.org/ottr");

    auto* ingest = app.add_subcommand("ingest", "Map CSV rows to instances");
    ingest->add_option("-l,--library", lib_path, "Template library")->required();
    ingest->add_option("--mapping", mapping_path, "Mapping configuration (JSON)")->required();
    ingest->add_option("--data", data_path, "CSV file")->required();
    ingest->add_option("-o,--output", output_path, "Output file, stdout if omitted");
    ingest->add_option("--format", format, "stottr, ntriples or turtle")
        ->default_val("stottr")
        ->check(CLI::IsMember({"stottr", "ntriples", "turtle"}));

    auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
    serve->add_option("-l,--library", lib_path, "Template library")->required();
    serve->add_option("--port", port, "TCP port")->default_val(8080);
    serve->add_option("--host", host, "Bind address")->default_val("127.0.0.1");
    serve->add_option("--base", base_iri, "Base IRI for minted IRIs (default: $OTTR_BASE_IRI)");
    serve->add_option("--state", state_dir, "Directory for session logs");
    serve->add_option("--docs", docs_path, "Sidecar documentation (JSON)");
    serve->add_option("-w,--workflow", workflow_paths, "Workflow documents");
    serve->add_option("--config", config_path, "Lint configuration (JSON)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        err << app.help();
        return exit_usage;
    }

    try {
        if (*check) {
            load_library(lib_path, out, err, true);
            return exit_ok;
        }

        if (*expand) {
            Library library = load_library(lib_path, out, err);
            auto instances = load_instances(instances_path, library, out, err);
            if (published_only) instances = retain_published(instances, library);
            ExpansionContext ctx{&library};
            TripleGraph graph;
            try {
                graph = expand_all(instances, ctx);
            } catch (const ExpansionErrors& e) {
                err << e.what() << "\n";
                return exit_findings;
            }
            write_output(output_path, render_graph(graph, format, library.prefixes), out);
            return exit_ok;
        }

        if (*lint) {
            Library library = load_library(lib_path, out, err);
            std::vector<Instance> instances;
            if (!instances_path.empty()) instances = load_instances(instances_path, library, out, err);
            LintConfig config;
            if (!config_path.empty()) config = lint_config_from_json(read_json(config_path), library.prefixes);
            auto findings = lint_all(library, instances, config);
            if (format == "json") {
                out << lint_report(findings, library.prefixes).dump(2) << "\n";
            } else {
                for (const auto& f : findings) out << format_finding(f, library.prefixes) << "\n";
            }
            return has_errors(findings) ? exit_findings : exit_ok;
        }

        if (*doc) {
            Library library = load_library(lib_path, out, err);
            std::string text;
            if (format == "dot") {
                text = render_hierarchy(library, HierarchyFormat::Dot);
            } else {
                std::map<std::string, TemplateDoc> docs;
                if (!docs_path.empty()) docs = docs_from_json(read_json(docs_path), library);
                text = render_library_doc(library, docs, load_workflows(workflow_paths, library));
            }
            write_output(output_path, text, out);
            return exit_ok;
        }

        if (*validate) {
            Library library = load_library(lib_path, out, err);
            Workflow wf = workflow_from_json(read_json(workflow_path), library.prefixes);
            auto diags = validate_workflow(wf, library);
            for (const auto& d : diags) out << format_diagnostic(d, library.prefixes) << "\n";
            if (has_errors(diags)) return exit_findings;
            auto order = suggest_order(wf);
            out << "order:";
            for (const auto& id : order) out << " " << id;
            out << "\n";
            SampleInputs samples;
            if (!inputs_path.empty()) samples = sample_inputs_from_json(read_json(inputs_path), library.prefixes);
            for (const auto& r : simulate_connectivity(wf, library, samples, base_iri)) {
                out << "step " << r.step_id << ": " << r.components_after << " component"
                    << (r.components_after == 1 ? "" : "s") << ", " << r.triples_after << " triples";
                if (r.flagged) out << " (disconnected)";
                out << "\n";
            }
            return exit_ok;
        }

        if (*ingest) {
            Library library = load_library(lib_path, out, err);
            MappingConfig mapping = mapping_from_json(read_json(mapping_path), library.prefixes);
            IngestResult result = ingest_csv(read_file(data_path), mapping, library);
            for (const auto& d : result.diagnostics)
                err << data_path << ":" << d.row << ": " << d.column << ": " << d.message << "\n";
            std::string text;
            if (format == "stottr") {
                text = serialize_instances(result.instances, library.prefixes);
            } else {
                ExpansionContext ctx{&library};
                text = render_graph(expand_all(result.instances, ctx), format, library.prefixes);
            }
            write_output(output_path, text, out);
            err << result.instances.size() << " instances from " << result.data_rows << " rows, "
                << result.skipped_rows << " skipped\n";
            return result.diagnostics.empty() ? exit_ok : exit_findings;
        }

        if (*serve) {
            Library library = load_library(lib_path, out, err);
            ServiceConfig config;
            if (!base_iri.empty()) config.base_iri = base_iri;
            else if (const char* env = std::getenv("OTTR_BASE_IRI"); env && *env) config.base_iri = env;
            if (!state_dir.empty()) config.state_dir = state_dir;
            if (!docs_path.empty()) config.docs = docs_from_json(read_json(docs_path), library);
            if (!config_path.empty()) config.lint = lint_config_from_json(read_json(config_path), library.prefixes);
            config.workflows = load_workflows(workflow_paths, library);
            Service service(std::move(library), std::move(config));
            err << "listening on " << host << ":" << port << "\n";
            if (!run_http_server(service, host, port)) {
                err << "cannot listen on " << host << ":" << port << "\n";
                return exit_usage;
            }
            return exit_ok;
        }
    } catch (const Exit& e) {
        return e.code;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_findings;
    }
    return exit_usage;
}

}  // namespace ottr
