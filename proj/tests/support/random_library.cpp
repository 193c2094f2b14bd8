#include "random_library.hpp"

#include <algorithm>
#include <sstream>

namespace gen {

namespace {

int pick(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool chance(std::mt19937& rng, double p) { return std::bernoulli_distribution(p)(rng); }

GTerm const_iri(std::mt19937& rng) { return GTerm::iri("c" + std::to_string(pick(rng, 1, 6))); }
GTerm const_literal(std::mt19937& rng) { return GTerm::literal("v" + std::to_string(pick(rng, 1, 6))); }
GTerm predicate(std::mt19937& rng) { return GTerm::iri("p" + std::to_string(pick(rng, 1, 4))); }

GTerm const_list(std::mt19937& rng, int max_len, bool nonempty = false) {
    std::vector<GTerm> items;
    int n = pick(rng, nonempty ? 1 : 0, max_len);
    for (int i = 0; i < n; ++i) items.push_back(const_iri(rng));
    return GTerm::list(std::move(items));
}

std::vector<const GParam*> of_kind(const GTemplate& t, PKind k) {
    std::vector<const GParam*> out;
    for (const auto& p : t.params)
        if (p.kind == k) out.push_back(&p);
    return out;
}

template <typename T>
const T& choose(std::mt19937& rng, const std::vector<T>& v) {
    return v[pick(rng, 0, static_cast<int>(v.size()) - 1)];
}

// A value for an Iri-typed position inside a body.
GTerm body_iri(std::mt19937& rng, const GTemplate& caller) {
    auto vars = of_kind(caller, PKind::Iri);
    int r = pick(rng, 0, 9);
    if (!vars.empty() && r < 6) return GTerm::var(choose(rng, vars)->name);
    if (r < 8) return const_iri(rng);
    return GTerm::blank("x" + std::to_string(pick(rng, 1, 2)));
}

GTerm body_literal(std::mt19937& rng, const GTemplate& caller) {
    auto vars = of_kind(caller, PKind::Literal);
    if (!vars.empty() && chance(rng, 0.7)) return GTerm::var(choose(rng, vars)->name);
    return const_literal(rng);
}

GTerm body_list(std::mt19937& rng, const GTemplate& caller, int max_list) {
    auto vars = of_kind(caller, PKind::IriList);
    if (!vars.empty() && chance(rng, 0.7)) return GTerm::var(choose(rng, vars)->name);
    return const_list(rng, max_list);
}

GMode random_mode(std::mt19937& rng) {
    switch (pick(rng, 0, 2)) {
        case 0: return GMode::Cross;
        case 1: return GMode::ZipMin;
        default: return GMode::ZipMax;
    }
}

// Marks one or two Iri positions of `call` with list values from the caller.
void add_list_expansion(std::mt19937& rng, GCall& call, const std::vector<GParam>& params, const GTemplate& caller,
                        int max_list) {
    std::vector<std::size_t> iri_positions;
    for (std::size_t i = 0; i < params.size(); ++i)
        if (params[i].kind == PKind::Iri && !(call.callee == -1 && i == 1)) iri_positions.push_back(i);
    if (iri_positions.empty()) return;
    std::shuffle(iri_positions.begin(), iri_positions.end(), rng);
    std::size_t marks = std::min<std::size_t>(iri_positions.size(), pick(rng, 1, 2));
    for (std::size_t m = 0; m < marks; ++m) {
        GArg& a = call.args[iri_positions[m]];
        a.term = body_list(rng, caller, max_list);
        a.marked = true;
    }
    call.mode = random_mode(rng);
}

GCall random_body_call(std::mt19937& rng, const GLibrary& lib, const GTemplate& caller, int self,
                       const Limits& limits) {
    std::vector<int> callees = {-1};
    for (int j = 0; j < self; ++j)
        if (lib.templates[j].level < caller.level) callees.push_back(j);
    GCall call;
    call.callee = caller.level > 1 && callees.size() > 1 && chance(rng, 0.6)
                      ? callees[pick(rng, 1, static_cast<int>(callees.size()) - 1)]
                      : -1;
    auto params = callee_params(lib, call.callee);
    for (std::size_t i = 0; i < params.size(); ++i) {
        const GParam& p = params[i];
        GArg a;
        if (call.callee == -1) {
            if (i == 0) a.term = body_iri(rng, caller);
            else if (i == 1) a.term = predicate(rng);
            else a.term = chance(rng, 0.5) ? body_iri(rng, caller) : body_literal(rng, caller);
        } else if ((p.optional || p.default_value) && chance(rng, 0.2)) {
            a.term = GTerm::none();
        } else if (p.kind == PKind::Iri) {
            a.term = body_iri(rng, caller);
        } else if (p.kind == PKind::Literal) {
            a.term = body_literal(rng, caller);
        } else {
            a.term = body_list(rng, caller, limits.max_list);
        }
        call.args.push_back(std::move(a));
    }
    if (chance(rng, 0.3)) add_list_expansion(rng, call, params, caller, limits.max_list);
    return call;
}

}  // namespace

std::vector<GParam> callee_params(const GLibrary& lib, int callee) {
    if (callee >= 0) return lib.templates[callee].params;
    // Subject and object are Top in the real signature; the generator only
    // places IRIs, blanks and literals there.
    return {GParam{"s", PKind::Iri, false, {}}, GParam{"p", PKind::Iri, false, {}}, GParam{"o", PKind::Iri, false, {}}};
}

GLibrary random_library(std::mt19937& rng, const Limits& limits) {
    GLibrary lib;
    int n = pick(rng, 1, limits.max_templates);
    int level = 1;
    for (int i = 0; i < n; ++i) {
        GTemplate t;
        t.local = "T" + std::to_string(i);
        if (i > 0 && level < limits.max_depth && chance(rng, 0.5)) ++level;
        t.level = level;
        int np = pick(rng, 1, limits.max_params);
        for (int k = 0; k < np; ++k) {
            GParam p;
            p.name = "a" + std::to_string(k);
            int r = pick(rng, 0, 9);
            p.kind = r < 6 ? PKind::Iri : r < 8 ? PKind::Literal : PKind::IriList;
            if (k > 0) {
                if (chance(rng, 0.25)) p.optional = true;
                if (p.kind != PKind::IriList && chance(rng, 0.2))
                    p.default_value = p.kind == PKind::Iri ? GTerm::iri("d1") : GTerm::literal("dv");
            }
            t.params.push_back(std::move(p));
        }
        lib.templates.push_back(std::move(t));
        int nb = pick(rng, 1, limits.max_body);
        for (int b = 0; b < nb; ++b)
            lib.templates.back().body.push_back(random_body_call(rng, lib, lib.templates.back(), i, limits));
    }
    return lib;
}

std::vector<GCall> random_instances(std::mt19937& rng, const GLibrary& lib, int count, const Limits& limits) {
    std::vector<GCall> out;
    for (int c = 0; c < count; ++c) {
        GCall call;
        call.callee = pick(rng, 0, static_cast<int>(lib.templates.size()) - 1);
        const auto& params = lib.templates[call.callee].params;
        std::vector<std::size_t> iri_positions;
        for (std::size_t i = 0; i < params.size(); ++i) {
            const GParam& p = params[i];
            GArg a;
            if ((p.optional || p.default_value) && chance(rng, 0.25)) a.term = GTerm::none();
            else if (p.kind == PKind::Iri) a.term = chance(rng, 0.1) ? GTerm::blank("top") : const_iri(rng);
            else if (p.kind == PKind::Literal) a.term = const_literal(rng);
            else a.term = const_list(rng, limits.max_list);
            if (p.kind == PKind::Iri) iri_positions.push_back(i);
            call.args.push_back(std::move(a));
        }
        if (!iri_positions.empty() && chance(rng, 0.25)) {
            GArg& a = call.args[choose(rng, iri_positions)];
            a.term = const_list(rng, limits.max_list, true);
            a.marked = true;
            call.mode = random_mode(rng);
        }
        out.push_back(std::move(call));
    }
    return out;
}

namespace {

std::string term_text(const GTerm& t) {
    switch (t.kind) {
        case GTerm::Kind::Iri: return "ex:" + t.value.substr(std::string(ns).size());
        case GTerm::Kind::Literal: return "\"" + t.value + "\"";
        case GTerm::Kind::Blank: return "_:" + t.value;
        case GTerm::Kind::None: return "none";
        case GTerm::Kind::Variable: return "?" + t.value;
        case GTerm::Kind::List: {
            std::string s = "(";
            for (std::size_t i = 0; i < t.items.size(); ++i) s += (i ? ", " : "") + term_text(t.items[i]);
            return s + ")";
        }
    }
    return {};
}

std::string call_text(const GLibrary& lib, const GCall& call) {
    std::string s;
    switch (call.mode) {
        case GMode::Cross: s += "cross | "; break;
        case GMode::ZipMin: s += "zipMin | "; break;
        case GMode::ZipMax: s += "zipMax | "; break;
        case GMode::None: break;
    }
    s += call.callee < 0 ? "ottr:Triple" : "ex:" + lib.templates[call.callee].local;
    s += "(";
    for (std::size_t i = 0; i < call.args.size(); ++i) {
        if (i) s += ", ";
        if (call.args[i].marked) s += "++";
        s += term_text(call.args[i].term);
    }
    return s + ")";
}

std::string type_text(PKind k) {
    switch (k) {
        case PKind::Iri: return "ottr:IRI";
        case PKind::IriList: return "List<ottr:IRI>";
        case PKind::Literal: return "xsd:string";
    }
    return {};
}

}  // namespace

std::string library_text(const GLibrary& lib) {
    std::ostringstream out;
    out << "@prefix ex: <" << ns << "> .\n";
    for (const auto& t : lib.templates) {
        out << "\nex:" << t.local << "[";
        for (std::size_t i = 0; i < t.params.size(); ++i) {
            const GParam& p = t.params[i];
            if (i) out << ", ";
            if (p.optional) out << "? ";
            out << type_text(p.kind) << " ?" << p.name;
            if (p.default_value) out << " = " << term_text(*p.default_value);
        }
        out << "] :: {\n";
        for (std::size_t b = 0; b < t.body.size(); ++b)
            out << "    " << call_text(lib, t.body[b]) << (b + 1 < t.body.size() ? ",\n" : "\n");
        out << "} .\n";
    }
    return out.str();
}

std::string instances_text(const GLibrary& lib, const std::vector<GCall>& instances) {
    std::ostringstream out;
    for (const auto& c : instances) out << call_text(lib, c) << " .\n";
    return out.str();
}

}  // namespace gen
