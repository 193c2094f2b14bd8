#include "doctest.h"

#include "fixtures.hpp"

#include "ottr/expander.hpp"
#include "ottr/linter.hpp"

#include <random>

using namespace ottr;

namespace {

std::vector<LintFinding> with_rule(const std::vector<LintFinding>& findings, const std::string& rule) {
    std::vector<LintFinding> out;
    for (const auto& f : findings)
        if (f.rule == rule) out.push_back(f);
    return out;
}

Library ex_library(const std::string& body) {
    return fixtures::library_from_text("@prefix ex: <http://ex.org/> .\n" + body);
}

std::vector<LintSubject> instance_refs(std::initializer_list<std::size_t> ids) {
    std::vector<LintSubject> out;
    for (auto i : ids) out.emplace_back(InstanceRef{i});
    return out;
}

}  // namespace

TEST_CASE("output redundancy") {
    Library lib = fixtures::library("redundancy.stottr");
    SUBCASE("two instances sharing a triple") {
        auto f = lint_output_redundancy(fixtures::instances("redundancy_shared.stottr", lib), lib);
        REQUIRE(f.size() == 1);
        CHECK(f[0].rule == "R_OUTPUT_REDUNDANCY");
        CHECK(f[0].subjects == instance_refs({0, 1}));
    }
    SUBCASE("disjoint instances") {
        CHECK(lint_output_redundancy(fixtures::instances("redundancy_disjoint.stottr", lib), lib).empty());
    }
    SUBCASE("three producers of one triple") {
        auto insts = fixtures::instances_from_text(
            "ex:Person(ex:a, ex:lab) .\nex:Person(ex:b, ex:lab) .\nex:Person(ex:c, ex:lab) .", lib);
        auto f = lint_output_redundancy(insts, lib);
        REQUIRE(f.size() == 1);
        CHECK(f[0].subjects == instance_refs({0, 1, 2}));
    }
}

TEST_CASE("output redundancy matches a pairwise intersection oracle") {
    Library lib = fixtures::library("redundancy.stottr");
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> pick(1, 3), count(1, 5);
    for (int round = 0; round < 50; ++round) {
        std::string text;
        int n = count(rng);
        for (int i = 0; i < n; ++i)
            text += "ex:Person(ex:p" + std::to_string(pick(rng)) + ", ex:o" + std::to_string(pick(rng)) + ") .\n";
        auto insts = fixtures::instances_from_text(text, lib);
        ExpansionContext ctx{&lib};
        std::vector<TripleGraph> graphs;
        for (std::size_t i = 0; i < insts.size(); ++i) graphs.push_back(expand_instance(insts[i], ctx));
        std::set<Triple> shared;
        for (std::size_t i = 0; i < graphs.size(); ++i)
            for (std::size_t j = i + 1; j < graphs.size(); ++j)
                for (const auto& t : graphs[i])
                    if (graphs[j].contains(t)) shared.insert(t);
        CHECK(lint_output_redundancy(insts, lib).size() == shared.size());
    }
}

TEST_CASE("instantiation redundancy") {
    Library lib = ex_library("ex:T[?x] .");
    LintConfig config;
    SUBCASE("duplicates") {
        auto f = lint_instantiation_redundancy(fixtures::instances_from_text("ex:T(ex:a) .\nex:T(ex:a) .", lib), config);
        REQUIRE(f.size() == 1);
        CHECK(f[0].rule == "R_INSTANCE_DUPLICATE");
        CHECK(f[0].subjects == instance_refs({0, 1}));
    }
    SUBCASE("a shared literal at the threshold") {
        auto insts = fixtures::instances_from_text(
            "ex:T((\"21.5\"^^xsd:double, ex:a)) .\nex:T((\"21.5\"^^xsd:double, ex:b)) .\n"
            "ex:T((\"21.5\"^^xsd:double, ex:c)) .",
            lib);
        auto f = with_rule(lint_instantiation_redundancy(insts, config), "R_SHARED_VALUE");
        REQUIRE(f.size() == 1);
        CHECK(std::get<Term>(f[0].subjects[0]) == Term::literal("21.5", xsd("double")));
        config.shared_value_threshold = 4;
        CHECK(with_rule(lint_instantiation_redundancy(insts, config), "R_SHARED_VALUE").empty());
    }
    SUBCASE("all distinct") {
        auto insts = fixtures::instances_from_text("ex:T(\"a\") .\nex:T(\"b\") .\nex:T(\"c\") .", lib);
        CHECK(lint_instantiation_redundancy(insts, config).empty());
    }
}

TEST_CASE("axiom encapsulation") {
    LintConfig config;
    SUBCASE("two definers") {
        Library lib = fixtures::library("scatter.stottr");
        auto f = lint_axiom_encapsulation(lib, config);
        REQUIRE(f.size() == 1);
        CHECK(f[0].severity == Severity::Error);
        CHECK(std::get<Term>(f[0].subjects[0]) == Term::iri("http://tpl.ex.org/pizza/hasTopping"));
        CHECK(std::get<TemplateRef>(f[0].subjects[1]).iri == "http://tpl.ex.org/pizza/T1");
        CHECK(std::get<TemplateRef>(f[0].subjects[2]).iri == "http://tpl.ex.org/pizza/T2");
    }
    SUBCASE("a single encapsulating template used by several templates") {
        CHECK(lint_axiom_encapsulation(fixtures::library("axioms.stottr"), config).empty());
    }
    SUBCASE("no axiom predicates") {
        CHECK(lint_axiom_encapsulation(fixtures::library("redundancy.stottr"), config).empty());
    }
    SUBCASE("axioms built from parameters are attributed to the caller that supplies the subject") {
        Library lib = ex_library(
            "ex:Dom[ottr:IRI ?p, ottr:IRI ?c] :: { ottr:Triple(?p, rdfs:domain, ?c) } .\n"
            "ex:A[] :: { ex:Dom(ex:prop, ex:C1) } .\n"
            "ex:B[] :: { ex:Dom(ex:prop, ex:C2) } .\n"
            "ex:C[] :: { ex:Dom(ex:other, ex:C2) } .\n");
        auto f = lint_axiom_encapsulation(lib, config);
        REQUIRE(f.size() == 1);
        CHECK(std::get<Term>(f[0].subjects[0]) == Term::iri("http://ex.org/prop"));
    }
}

TEST_CASE("header rules") {
    LintConfig config;
    SUBCASE("parameter count boundary") {
        Library eight = ex_library("ex:Big[?a, ?b, ?c, ?d, ?e, ?f, ?g, ?h] .");
        auto f = lint_headers(eight, config);
        REQUIRE(f.size() == 1);
        CHECK(f[0].rule == "R_PARAM_COUNT");
        CHECK(lint_headers(ex_library("ex:Ok[?a, ?b, ?c, ?d, ?e, ?f, ?g] ."), config).empty());
    }
    SUBCASE("naming rules") {
        config.naming_rules.push_back({"http://ex.org/material/", "^[a-z0-9-]+$"});
        Library lib = fixtures::library_from_text(
            "@prefix m: <http://ex.org/material/> .\n"
            "m:sample[?x] :: { ottr:Triple(?x, rdf:type, m:Sample_01), ottr:Triple(?x, m:ok-name, m:mg-7) } .\n");
        auto f = lint_headers(lib, config);
        REQUIRE(f.size() == 1);
        CHECK(f[0].rule == "R_NAMING");
        CHECK(std::get<Term>(f[0].subjects[0]) == Term::iri("http://ex.org/material/Sample_01"));
    }
    SUBCASE("no naming rules") {
        Library lib = fixtures::library_from_text(
            "@prefix m: <http://ex.org/material/> .\nm:Sample_01[?x] :: { ottr:Triple(?x, rdf:type, m:Bad_Name) } .");
        CHECK(with_rule(lint_headers(lib, config), "R_NAMING").empty());
    }
}

TEST_CASE("configuration from JSON") {
    PrefixMap px;
    auto config = lint_config_from_json(nlohmann::json::parse(fixtures::read("lint_config.json")), px);
    CHECK(config.param_count_threshold == 7);
    CHECK(config.shared_value_threshold == 3);
    REQUIRE(config.naming_rules.size() == 1);
    CHECK(config.naming_rules[0].iri_prefix == "http://ex.org/material/");
    CHECK(config.axiom_predicates.count(rdfs("domain")) == 1);

    auto custom = lint_config_from_json(nlohmann::json{{"axiomPredicates", {"owl:inverseOf"}}}, px);
    CHECK(custom.axiom_predicates == std::set<std::string>{owl("inverseOf")});
    CHECK_THROWS(lint_config_from_json(nlohmann::json{{"paramCountThreshold", "many"}}, px));
}

TEST_CASE("reports") {
    Library lib = fixtures::library("redundancy.stottr");
    auto insts = fixtures::instances("redundancy_shared.stottr", lib);
    auto findings = lint_all(lib, insts, LintConfig{});
    CHECK_FALSE(has_errors(findings));
    auto report = lint_report(findings, lib.prefixes);
    CHECK(report["findings"] == findings.size());
    CHECK(report["rules"]["R_OUTPUT_REDUNDANCY"].size() == 1);
    CHECK(report["rules"]["R_OUTPUT_REDUNDANCY"][0]["subjects"][0]["instance"] == 0);
    CHECK(format_finding(findings[0], lib.prefixes).starts_with("warning R_OUTPUT_REDUNDANCY #0,#1: "));

    auto scatter = lint_all(fixtures::library("scatter.stottr"), {}, LintConfig{});
    CHECK(has_errors(scatter));
}
