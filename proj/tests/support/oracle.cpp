#include "oracle.hpp"

#include <map>
#include <optional>
#include <variant>

namespace gen {

namespace {

std::string nt(const GTerm& t) {
    switch (t.kind) {
        case GTerm::Kind::Iri: return "<" + t.value + ">";
        case GTerm::Kind::Blank: return "_:" + t.value;
        case GTerm::Kind::Literal: return "\"" + t.value + "\"";
        default: throw OracleError("term cannot appear in a triple");
    }
}

GTerm substitute(const GTerm& t, const std::map<std::string, GTerm>& env, const std::string& blank_prefix) {
    switch (t.kind) {
        case GTerm::Kind::Variable: {
            auto it = env.find(t.value);
            if (it == env.end()) throw OracleError("unbound variable ?" + t.value);
            return it->second;
        }
        case GTerm::Kind::Blank: return GTerm::blank(blank_prefix + t.value);
        case GTerm::Kind::List: {
            std::vector<GTerm> items;
            for (const auto& i : t.items) items.push_back(substitute(i, env, blank_prefix));
            return GTerm::list(std::move(items));
        }
        default: return t;
    }
}

std::vector<std::vector<GTerm>> argument_vectors(const GCall& call) {
    std::vector<GTerm> base;
    std::vector<std::size_t> marked;
    for (std::size_t i = 0; i < call.args.size(); ++i) {
        base.push_back(call.args[i].term);
        if (call.args[i].marked) marked.push_back(i);
    }
    if (call.mode == GMode::None || marked.empty()) return {base};

    std::vector<std::vector<GTerm>> lists;
    for (std::size_t i : marked) {
        const GTerm& t = call.args[i].term;
        if (t.kind == GTerm::Kind::None) lists.push_back({});
        else if (t.kind == GTerm::Kind::List) lists.push_back(t.items);
        else throw OracleError("marked argument is not a list");
    }

    std::vector<std::vector<GTerm>> out;
    if (call.mode == GMode::Cross) {
        // Odometer over the marked lists, last list fastest.
        for (const auto& l : lists)
            if (l.empty()) return {};
        std::vector<std::size_t> idx(lists.size(), 0);
        while (true) {
            auto v = base;
            for (std::size_t k = 0; k < marked.size(); ++k) v[marked[k]] = lists[k][idx[k]];
            out.push_back(std::move(v));
            std::size_t k = lists.size();
            while (k > 0) {
                --k;
                if (++idx[k] < lists[k].size()) break;
                idx[k] = 0;
                if (k == 0) return out;
            }
        }
    }
    std::size_t n = lists.front().size();
    for (const auto& l : lists)
        n = call.mode == GMode::ZipMin ? std::min(n, l.size()) : std::max(n, l.size());
    for (std::size_t j = 0; j < n; ++j) {
        auto v = base;
        for (std::size_t k = 0; k < marked.size(); ++k) v[marked[k]] = j < lists[k].size() ? lists[k][j] : GTerm::none();
        out.push_back(std::move(v));
    }
    return out;
}

// Worklist items: a call still to be split into argument vectors, or a body
// ready to be instantiated with one argument vector.
struct PendingCall {
    GCall call;
};
struct PendingBody {
    int tmpl;
    std::vector<GTerm> args;
};
using Work = std::variant<PendingCall, PendingBody>;

}  // namespace

std::set<std::string> oracle_expand(const GLibrary& lib, const std::vector<GCall>& instances) {
    std::set<std::string> triples;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        std::size_t bodies = 0;
        std::vector<Work> stack{PendingCall{instances[i]}};
        while (!stack.empty()) {
            Work w = std::move(stack.back());
            stack.pop_back();

            if (auto* pc = std::get_if<PendingCall>(&w)) {
                auto params = callee_params(lib, pc->call.callee);
                std::vector<Work> next;
                for (auto& args : argument_vectors(pc->call)) {
                    bool keep = true;
                    for (std::size_t k = 0; k < params.size(); ++k) {
                        if (args[k].kind != GTerm::Kind::None) continue;
                        if (params[k].default_value) args[k] = *params[k].default_value;
                        else if (!params[k].optional) keep = false;
                    }
                    if (!keep) continue;
                    if (pc->call.callee < 0) {
                        if (args[0].kind == GTerm::Kind::Literal || args[1].kind != GTerm::Kind::Iri)
                            throw OracleError("ill-formed triple");
                        triples.insert(nt(args[0]) + " " + nt(args[1]) + " " + nt(args[2]) + " .");
                    } else {
                        next.push_back(PendingBody{pc->call.callee, std::move(args)});
                    }
                }
                for (auto it = next.rbegin(); it != next.rend(); ++it) stack.push_back(std::move(*it));
                continue;
            }

            auto& pb = std::get<PendingBody>(w);
            const GTemplate& t = lib.templates[pb.tmpl];
            std::map<std::string, GTerm> env;
            for (std::size_t k = 0; k < t.params.size(); ++k) env[t.params[k].name] = pb.args[k];
            std::string prefix = "b" + std::to_string(i) + "_" + std::to_string(++bodies) + "_";
            for (auto it = t.body.rbegin(); it != t.body.rend(); ++it) {
                GCall c = *it;
                for (auto& a : c.args) a.term = substitute(a.term, env, prefix);
                stack.push_back(PendingCall{std::move(c)});
            }
        }
    }
    return triples;
}

}  // namespace gen
