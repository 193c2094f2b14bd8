#pragma once
// Session store and HTTP API for interactive instantiation.

#include "ottr/docgen.hpp"
#include "ottr/linter.hpp"
#include "ottr/model.hpp"
#include "ottr/workflow.hpp"

#include "json.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace httplib {
class Server;
}

namespace ottr {

struct ServiceConfig {
    std::string base_iri = "http://example.org/ottr";
    /// Directory holding one append-only log per session. No persistence if unset.
    std::optional<std::filesystem::path> state_dir;
    std::vector<Workflow> workflows;
    std::map<std::string, TemplateDoc> docs;
    LintConfig lint;
};

struct Response {
    Response() = default;
    Response(int status_code, nlohmann::json json_body) : status(status_code), body(std::move(json_body)) {}

    int status = 200;
    nlohmann::json body;
    /// Non-JSON payload (graph documents); used when non-empty.
    std::string text;
    std::string content_type = "application/json";
};

/// Result of accepting an instance into a session.
struct InstanceReceipt {
    std::size_t instance_index = 0;
    std::map<std::string, std::string> minted_iris;  // parameter -> IRI
    std::size_t triples_added = 0;
    std::size_t total_triples = 0;
    std::size_t connected_components = 0;
};

/// Transport-independent request handler. Requests on distinct sessions may run
/// concurrently; requests on one session are serialized.
class Service {
public:
    /// Replays every session log found in `config.state_dir`.
    Service(Library library, ServiceConfig config);

    /// `path` may carry percent-encoding; `query` holds decoded parameters.
    Response handle(const std::string& method, const std::string& path, const std::string& body,
                    const std::map<std::string, std::string>& query = {});

    std::string create_session();
    std::vector<std::string> session_ids() const;
    /// Copy of a session's graph. Throws std::out_of_range for unknown ids.
    TripleGraph session_graph(const std::string& id) const;
    std::vector<Instance> session_instances(const std::string& id) const;

    const Library& library() const { return library_; }

private:
    struct StepRecord {
        std::string workflow;
        std::string step;
    };
    struct Session {
        mutable std::mutex mutex;
        std::string id;
        std::vector<Instance> instances;
        TripleGraph graph;
        std::size_t mint_counter = 0;
        std::map<std::string, std::map<std::string, Term>> completed;  // "wf/step" -> bound values
        std::optional<std::pair<std::string, std::string>> position;  // (workflow, next step)
    };

    std::shared_ptr<Session> find_session(const std::string& id) const;
    std::shared_ptr<Session> add_session(const std::string& id);
    std::filesystem::path log_path(const std::string& id) const;
    void replay(const std::filesystem::path& log);
    void append_log(const std::string& id, const std::string& text) const;

    /// Checks and expands `inst` into `s` (caller holds the lock). Throws
    /// RejectedInstance on type or expansion errors.
    InstanceReceipt accept(Session& s, Instance inst, const std::map<std::string, std::string>& minted,
                           const std::optional<StepRecord>& step);

    const Workflow* find_workflow(const std::string& name) const;
    std::set<std::string> prerequisites(const Workflow& wf, const WorkflowStep& step) const;

    Response list_templates() const;
    Response template_schema(const std::string& iri_text) const;
    Response post_instance(const std::string& id, const std::string& body);
    Response get_graph(const std::string& id, const std::map<std::string, std::string>& query) const;
    Response lint_session(const std::string& id) const;
    Response list_workflows() const;
    Response advance(const std::string& id, const std::string& workflow, const std::string& body);

    Library library_;
    ServiceConfig config_;
    std::map<std::string, bool> user_facing_;
    mutable std::mutex sessions_mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::size_t next_session_ = 1;
};

/// HTTP transport for a Service.
class HttpServer {
public:
    explicit HttpServer(Service& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Port 0 picks a free port. Returns the bound port, or -1 on failure.
    int bind(const std::string& host, int port);
    /// Blocks until stop() is called.
    bool run();
    void stop();
    void wait_until_ready() const;

private:
    std::unique_ptr<httplib::Server> server_;
};

/// Serves `service` over HTTP until the process is stopped. Returns false if
/// the port cannot be bound.
bool run_http_server(Service& service, const std::string& host, int port);

}  // namespace ottr
