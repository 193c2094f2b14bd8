#include "ottr/service.hpp"

#include "ottr/expander.hpp"
#include "ottr/ntriples.hpp"
#include "ottr/stottr.hpp"
#include "ottr/typecheck.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ottr {

namespace {

using nlohmann::json;

struct RejectedInstance {
    int status;
    std::vector<Diagnostic> diagnostics;
};

std::string url_decode(std::string_view s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '%' && i + 2 < s.size() && std::isxdigit(static_cast<unsigned char>(s[i + 1])) &&
            std::isxdigit(static_cast<unsigned char>(s[i + 2]))) {
            out += static_cast<char>(std::stoi(std::string(s.substr(i + 1, 2)), nullptr, 16));
            i += 2;
        } else {
            out += s[i];
        }
    }
    return out;
}

std::vector<std::string> split_path(std::string_view path) {
    std::vector<std::string> parts;
    std::size_t i = 0;
    while (i < path.size()) {
        if (path[i] == '/') {
            ++i;
            continue;
        }
        std::size_t j = path.find('/', i);
        if (j == std::string_view::npos) j = path.size();
        parts.push_back(url_decode(path.substr(i, j - i)));
        i = j;
    }
    return parts;
}

Response error(int status, const std::string& message) { return Response{status, json{{"error", message}}}; }

json diagnostics_json(const std::vector<Diagnostic>& diags, const PrefixMap& px) {
    json out = json::array();
    for (const auto& d : diags)
        out.push_back({{"severity", std::string(to_string(d.severity))},
                       {"code", d.code},
                       {"template", d.template_iri ? display_name(*d.template_iri, px) : std::string("-")},
                       {"message", d.message}});
    return out;
}

Response rejected(const RejectedInstance& r, const PrefixMap& px) {
    return Response{r.status, json{{"error", "instance rejected"}, {"diagnostics", diagnostics_json(r.diagnostics, px)}}};
}

std::string step_key(const std::string& wf, const std::string& step) { return wf + "/" + step; }

}  // namespace

Service::Service(Library library, ServiceConfig config)
    : library_(std::move(library)), config_(std::move(config)), user_facing_(classify_user_facing(library_)) {
    while (!config_.base_iri.empty() && config_.base_iri.back() == '/') config_.base_iri.pop_back();
    if (!config_.state_dir) return;
    std::filesystem::create_directories(*config_.state_dir);
    std::vector<std::filesystem::path> logs;
    for (const auto& entry : std::filesystem::directory_iterator(*config_.state_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".log") logs.push_back(entry.path());
    std::sort(logs.begin(), logs.end());
    for (const auto& log : logs) replay(log);
}

std::filesystem::path Service::log_path(const std::string& id) const { return *config_.state_dir / (id + ".log"); }

std::shared_ptr<Service::Session> Service::find_session(const std::string& id) const {
    std::lock_guard lock(sessions_mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

std::shared_ptr<Service::Session> Service::add_session(const std::string& id) {
    auto s = std::make_shared<Session>();
    s->id = id;
    std::lock_guard lock(sessions_mutex_);
    sessions_[id] = s;
    if (id.size() > 1 && id.front() == 's' && std::all_of(id.begin() + 1, id.end(), ::isdigit))
        next_session_ = std::max(next_session_, std::stoul(id.substr(1)) + 1);
    return s;
}

std::string Service::create_session() {
    std::string id;
    {
        std::lock_guard lock(sessions_mutex_);
        id = "s" + std::to_string(next_session_++);
    }
    add_session(id);
    if (config_.state_dir) std::ofstream(log_path(id), std::ios::trunc);
    return id;
}

std::vector<std::string> Service::session_ids() const {
    std::lock_guard lock(sessions_mutex_);
    std::vector<std::string> ids;
    for (const auto& [id, s] : sessions_) ids.push_back(id);
    return ids;
}

TripleGraph Service::session_graph(const std::string& id) const {
    auto s = find_session(id);
    if (!s) throw std::out_of_range("unknown session " + id);
    std::lock_guard lock(s->mutex);
    return s->graph;
}

std::vector<Instance> Service::session_instances(const std::string& id) const {
    auto s = find_session(id);
    if (!s) throw std::out_of_range("unknown session " + id);
    std::lock_guard lock(s->mutex);
    return s->instances;
}

void Service::append_log(const std::string& id, const std::string& text) const {
    if (!config_.state_dir) return;
    std::ofstream out(log_path(id), std::ios::app);
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("cannot write session log for " + id);
}

// Log records: optional `# minted <param> <iri>` and `# step <wf> <step>` lines,
// then the instance on one line. `# advance <wf> <step>` records a position.
void Service::replay(const std::filesystem::path& log) {
    auto s = add_session(log.stem().string());
    std::ifstream in(log);
    std::string line;
    std::size_t line_no = 0;
    std::map<std::string, std::string> minted;
    std::optional<StepRecord> step;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string hash, keyword, a, b;
        if (line.front() == '#') {
            fields >> hash >> keyword >> a >> b;
            if (keyword == "minted") minted[a] = b;
            else if (keyword == "step") step = StepRecord{a, b};
            else if (keyword == "advance") s->position = {a, b};
            continue;
        }
        auto parsed = parse_instances(line, library_);
        if (!parsed.ok() || parsed.value->size() != 1)
            throw std::runtime_error(log.string() + ":" + std::to_string(line_no) + ": unreadable instance record");
        try {
            accept(*s, parsed.value->front(), minted, step);
        } catch (const RejectedInstance&) {
            throw std::runtime_error(log.string() + ":" + std::to_string(line_no) + ": instance no longer valid");
        }
        minted.clear();
        step.reset();
    }
}

InstanceReceipt Service::accept(Session& s, Instance inst, const std::map<std::string, std::string>& minted,
                                const std::optional<StepRecord>& step) {
    auto diags = check_instance(inst, library_, {}, std::nullopt);
    if (has_errors(diags)) throw RejectedInstance{422, diags};

    ExpansionContext ctx{&library_, s.instances.size()};
    TripleGraph produced;
    try {
        produced = expand_instance(inst, ctx);
    } catch (const ExpansionError& e) {
        throw RejectedInstance{422, {Diagnostic{Severity::Error, "E_EXPANSION", inst.template_iri.value, e.what()}}};
    }

    InstanceReceipt receipt;
    std::size_t before = s.graph.size();
    s.graph.merge(produced);
    receipt.instance_index = s.instances.size();
    receipt.minted_iris = minted;
    receipt.triples_added = s.graph.size() - before;
    receipt.total_triples = s.graph.size();
    receipt.connected_components = connected_components(s.graph, default_excluded_namespaces()).size();
    s.mint_counter += minted.size();

    if (step) {
        const TemplateDefinition* def = library_.find(inst.template_iri.value);
        auto& values = s.completed[step_key(step->workflow, step->step)];
        for (std::size_t i = 0; i < def->parameters.size(); ++i) values[def->parameters[i].name] = inst.arguments[i].term;
        if (s.position && s.position->first == step->workflow && s.position->second == step->step) s.position.reset();
    }
    s.instances.push_back(std::move(inst));
    return receipt;
}

const Workflow* Service::find_workflow(const std::string& name) const {
    for (const auto& wf : config_.workflows)
        if (wf.name == name) return &wf;
    return nullptr;
}

std::set<std::string> Service::prerequisites(const Workflow&, const WorkflowStep& step) const {
    std::set<std::string> out(step.after.begin(), step.after.end());
    for (const auto& [param, b] : step.bindings)
        if (auto* r = std::get_if<RefBinding>(&b)) out.insert(r->step);
    return out;
}

Response Service::handle(const std::string& method, const std::string& raw_path, const std::string& body,
                         const std::map<std::string, std::string>& query) {
    try {
        std::string_view path = raw_path;
        if (auto q = path.find('?'); q != std::string_view::npos) path = path.substr(0, q);

        constexpr std::string_view templates_prefix = "/api/templates/";
        constexpr std::string_view schema_suffix = "/schema";
        if (method == "GET" && path.starts_with(templates_prefix) && path.ends_with(schema_suffix) &&
            path.size() > templates_prefix.size() + schema_suffix.size())
            return template_schema(url_decode(path.substr(
                templates_prefix.size(), path.size() - templates_prefix.size() - schema_suffix.size())));

        auto seg = split_path(path);
        if (seg.size() < 2 || seg[0] != "api") return error(404, "no such endpoint");
        if (method == "GET" && seg.size() == 2 && seg[1] == "templates") return list_templates();
        if (method == "GET" && seg.size() == 2 && seg[1] == "workflows") return list_workflows();
        if (seg[1] == "sessions") {
            if (method == "POST" && seg.size() == 2) return Response{201, json{{"sessionId", create_session()}}};
            if (method == "POST" && seg.size() == 4 && seg[3] == "instances") return post_instance(seg[2], body);
            if (method == "GET" && seg.size() == 4 && seg[3] == "graph") return get_graph(seg[2], query);
            if (method == "POST" && seg.size() == 4 && seg[3] == "lint") return lint_session(seg[2]);
            if (method == "POST" && seg.size() == 6 && seg[3] == "workflow" && seg[5] == "advance")
                return advance(seg[2], seg[4], body);
        }
        return error(404, "no such endpoint");
    } catch (const json::exception& e) {
        return error(400, std::string("malformed request body: ") + e.what());
    } catch (const std::exception& e) {
        return error(500, e.what());
    }
}

Response Service::list_templates() const {
    json out = json::array();
    for (const auto& [iri, facing] : user_facing_) out.push_back({{"iri", iri}, {"userFacing", facing}});
    return Response{200, out};
}

Response Service::template_schema(const std::string& iri_text) const {
    std::string iri;
    try {
        iri = parse_iri_text(iri_text, library_.prefixes).value;
    } catch (const std::exception&) {
        return error(404, "unknown template " + iri_text);
    }
    auto it = library_.templates.find(iri);
    if (it == library_.templates.end()) return error(404, "unknown template " + iri_text);
    const PrefixMap& px = library_.prefixes;
    auto doc_it = config_.docs.find(iri);
    TemplateDoc doc = doc_it != config_.docs.end() ? doc_it->second : signature_doc(it->second, user_facing_.at(iri), px);

    json params = json::array();
    for (std::size_t i = 0; i < it->second.parameters.size(); ++i) {
        const Parameter& p = it->second.parameters[i];
        const ParameterDoc& pd = doc.parameters[i];
        params.push_back({{"name", p.name},
                          {"type", to_string(p.type, px)},
                          {"optional", p.optional},
                          {"default", p.default_value ? json(serialize_term(*p.default_value, px)) : json(nullptr)},
                          {"description", pd.description},
                          {"exampleValue", pd.example.empty() ? json(nullptr) : json(pd.example)}});
    }
    return Response{200, json{{"iri", iri},
                              {"name", display_name(iri, px)},
                              {"userFacing", user_facing_.at(iri)},
                              {"description", doc.description},
                              {"parameters", params}}};
}

Response Service::post_instance(const std::string& id, const std::string& body) {
    auto s = find_session(id);
    if (!s) return error(404, "unknown session " + id);
    json req = json::parse(body);
    const PrefixMap& px = library_.prefixes;

    std::string template_text = req.at("template").get<std::string>();
    const TemplateDefinition* def = nullptr;
    try {
        def = library_.find(parse_iri_text(template_text, px).value);
    } catch (const std::exception&) {
    }
    if (!def) return error(404, "unknown template " + template_text);

    std::vector<Term> args;
    std::vector<Diagnostic> syntax;
    for (const auto& a : req.value("args", json::array())) {
        try {
            args.push_back(parse_term(a.get<std::string>(), px));
        } catch (const std::exception& e) {
            syntax.push_back(Diagnostic{Severity::Error, "E_SYNTAX", def->iri.value,
                                        "argument " + std::to_string(args.size() + syntax.size()) + ": " + e.what()});
            args.push_back(Term::none());
        }
    }
    if (!syntax.empty()) return rejected(RejectedInstance{422, syntax}, px);

    std::optional<StepRecord> step;
    if (req.contains("workflow")) {
        const json& w = req.at("workflow");
        step = StepRecord{w.at("name").get<std::string>(), w.at("stepId").get<std::string>()};
        const Workflow* wf = find_workflow(step->workflow);
        if (!wf) return error(404, "unknown workflow " + step->workflow);
        const WorkflowStep* ws = wf->find_step(step->step);
        if (!ws) return error(404, "unknown step " + step->step);
        if (ws->template_iri.value != def->iri.value)
            return rejected(RejectedInstance{422, {Diagnostic{Severity::Error, "E_WF_UNKNOWN_TEMPLATE", def->iri.value,
                                                              "step '" + ws->id + "' instantiates " +
                                                                  display_name(ws->template_iri.value, px)}}},
                            px);
    }

    std::lock_guard lock(s->mutex);
    if (step) {
        const Workflow* wf = find_workflow(step->workflow);
        std::vector<std::string> missing;
        for (const auto& dep : prerequisites(*wf, *wf->find_step(step->step)))
            if (!s->completed.count(step_key(wf->name, dep))) missing.push_back(dep);
        if (!missing.empty()) return Response{409, json{{"error", "prerequisite steps not completed"}, {"missing", missing}}};
    }

    std::map<std::string, std::string> minted;
    std::size_t n = s->mint_counter;
    for (const auto& name_json : req.value("mint", json::array())) {
        std::string name = name_json.get<std::string>();
        if (!name.empty() && name.front() == '?') name.erase(0, 1);
        auto index = def->parameter_index(name);
        if (!index)
            return rejected(RejectedInstance{422, {Diagnostic{Severity::Error, "E_UNKNOWN_PARAM", def->iri.value,
                                                              "cannot mint ?" + name + ": no such parameter"}}},
                            px);
        std::string iri = config_.base_iri + "/" + id + "/" + std::to_string(++n);
        minted[name] = iri;
        if (*index < args.size()) args[*index] = Term(Iri{iri});
    }

    Instance inst = make_instance(def->iri.value, std::move(args));
    InstanceReceipt receipt;
    try {
        receipt = accept(*s, inst, minted, step);
    } catch (const RejectedInstance& r) {
        return rejected(r, px);
    }

    std::string record;
    for (const auto& [param, iri] : minted) record += "# minted " + param + " " + iri + "\n";
    if (step) record += "# step " + step->workflow + " " + step->step + "\n";
    record += serialize_instance(inst, px) + " .\n";
    append_log(id, record);

    json minted_json = json::object();
    for (const auto& [param, iri] : receipt.minted_iris) minted_json[param] = iri;
    return Response{201, json{{"instanceIndex", receipt.instance_index},
                              {"mintedIris", minted_json},
                              {"triplesAdded", receipt.triples_added},
                              {"totalTriples", receipt.total_triples},
                              {"connectedComponents", receipt.connected_components}}};
}

Response Service::get_graph(const std::string& id, const std::map<std::string, std::string>& query) const {
    auto s = find_session(id);
    if (!s) return error(404, "unknown session " + id);
    auto f = query.find("format");
    std::string format = f == query.end() ? "ntriples" : f->second;
    std::lock_guard lock(s->mutex);
    Response r;
    if (format == "ntriples") {
        r.text = write_ntriples(s->graph);
        r.content_type = "application/n-triples";
    } else if (format == "turtle") {
        r.text = write_turtle(s->graph, library_.prefixes);
        r.content_type = "text/turtle";
    } else {
        return error(400, "unsupported format " + format);
    }
    return r;
}

Response Service::lint_session(const std::string& id) const {
    auto s = find_session(id);
    if (!s) return error(404, "unknown session " + id);
    std::lock_guard lock(s->mutex);
    return Response{200, lint_report(lint_all(library_, s->instances, config_.lint), library_.prefixes)};
}

Response Service::list_workflows() const {
    const PrefixMap& px = library_.prefixes;
    json out = json::array();
    for (const auto& wf : config_.workflows) {
        json steps = json::array();
        for (const auto& step : wf.steps) {
            json bindings = json::object();
            for (const auto& [param, b] : step.bindings) bindings[param] = binding_text(b, px);
            steps.push_back({{"id", step.id},
                             {"template", step.template_iri.value},
                             {"after", step.after},
                             {"bindings", bindings}});
        }
        json entry = {{"name", wf.name}, {"steps", steps}};
        try {
            entry["order"] = suggest_order(wf);
        } catch (const WorkflowError& e) {
            entry["order"] = nullptr;
            entry["error"] = e.what();
        }
        out.push_back(std::move(entry));
    }
    return Response{200, out};
}

Response Service::advance(const std::string& id, const std::string& name, const std::string& body) {
    auto s = find_session(id);
    if (!s) return error(404, "unknown session " + id);
    const Workflow* wf = find_workflow(name);
    if (!wf) return error(404, "unknown workflow " + name);
    std::vector<std::string> order;
    try {
        order = suggest_order(*wf);
    } catch (const WorkflowError& e) {
        return error(409, e.what());
    }
    std::optional<std::string> requested;
    if (!body.empty()) {
        json req = json::parse(body);
        if (req.contains("stepId")) requested = req.at("stepId").get<std::string>();
    }

    std::lock_guard lock(s->mutex);
    const WorkflowStep* next = nullptr;
    if (requested) {
        next = wf->find_step(*requested);
        if (!next) return error(404, "unknown step " + *requested);
    } else {
        for (const auto& step_id : order)
            if (!s->completed.count(step_key(name, step_id))) {
                next = wf->find_step(step_id);
                break;
            }
        if (!next) return Response{200, json{{"nextStep", nullptr}, {"complete", true}}};
    }

    std::vector<std::string> missing;
    for (const auto& dep : prerequisites(*wf, *next))
        if (!s->completed.count(step_key(name, dep))) missing.push_back(dep);
    if (!missing.empty()) return Response{409, json{{"error", "prerequisite steps not completed"}, {"missing", missing}}};

    const PrefixMap& px = library_.prefixes;
    json prefilled = json::object();
    for (const auto& [param, b] : next->bindings) {
        if (auto* c = std::get_if<ConstBinding>(&b)) {
            prefilled[param] = {{"kind", "const"}, {"value", serialize_term(c->value, px)}};
        } else if (std::holds_alternative<MintBinding>(b)) {
            prefilled[param] = {{"kind", "mint"}};
        } else if (auto* r = std::get_if<RefBinding>(&b)) {
            const auto& values = s->completed.at(step_key(name, r->step));
            auto v = values.find(r->parameter);
            prefilled[param] = {{"kind", "ref"},
                                {"ref", r->step + "." + r->parameter},
                                {"value", v == values.end() ? json(nullptr) : json(serialize_term(v->second, px))}};
        } else {
            prefilled[param] = {{"kind", "input"}, {"type", to_string(std::get<InputBinding>(b).type, px)}};
        }
    }
    s->position = {name, next->id};
    append_log(id, "# advance " + name + " " + next->id + "\n");
    return Response{200, json{{"nextStep", {{"stepId", next->id},
                                            {"template", next->template_iri.value},
                                            {"prefilledBindings", prefilled}}},
                              {"complete", false}}};
}

}  // namespace ottr
