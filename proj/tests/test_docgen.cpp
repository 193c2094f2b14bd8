#include "doctest.h"

#include "fixtures.hpp"

#include "ottr/docgen.hpp"

using namespace ottr;

namespace {

std::size_t count(const std::string& haystack, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
    return n;
}

const std::string pz = "http://tpl.ex.org/pizza/";
const std::string ax = "http://tpl.ex.org/axiom/";

}  // namespace

TEST_CASE("user-facing classification") {
    auto uf = classify_user_facing(fixtures::library("pizza.stottr"));
    CHECK(uf == std::map<std::string, bool>{{ax + "SubClassOf", false}, {pz + "Pizza", true}});

    auto single = classify_user_facing(fixtures::library_from_text("@prefix ex: <http://ex.org/> .\nex:A[?x] ."));
    CHECK(single == std::map<std::string, bool>{{"http://ex.org/A", true}});

    auto independent = classify_user_facing(
        fixtures::library_from_text("@prefix ex: <http://ex.org/> .\nex:A[?x] .\nex:B[?x] ."));
    CHECK(independent.at("http://ex.org/A"));
    CHECK(independent.at("http://ex.org/B"));

    auto self = classify_user_facing(
        fixtures::library_from_text("@prefix ex: <http://ex.org/> .\nex:A[?x] :: { ex:A(?x) } ."));
    CHECK(self.at("http://ex.org/A"));
}

TEST_CASE("text hierarchy") {
    CHECK(render_hierarchy(fixtures::library("pizza.stottr"), HierarchyFormat::Text) ==
          "ax:SubClassOf -> ottr:Triple\n"
          "pz:Pizza -> ax:SubClassOf\n"
          "pz:Pizza -> ottr:Triple\n");
    CHECK(render_hierarchy(Library{}, HierarchyFormat::Text).empty());
}

TEST_CASE("dot hierarchy") {
    std::string dot = render_hierarchy(fixtures::library("pizza.stottr"), HierarchyFormat::Dot);
    CHECK(dot.starts_with("digraph templates {\n"));
    CHECK(dot.ends_with("}\n"));
    CHECK(count(dot, " -> ") == 3);
    CHECK(count(dot, "\";\n") - count(dot, " -> ") == 3);  // node lines
    CHECK(dot.find("\"pz:Pizza\" -> \"ax:SubClassOf\";") != std::string::npos);

    std::string empty = render_hierarchy(Library{}, HierarchyFormat::Dot);
    CHECK(empty == "digraph templates {\n  rankdir=LR;\n}\n");
}

TEST_CASE("library documentation") {
    Library lib = fixtures::library("pizza.stottr");
    SUBCASE("one documented template") {
        auto docs = docs_from_json(nlohmann::json::parse(fixtures::read("pizza_docs.json")), lib);
        REQUIRE(docs.size() == 1);
        const auto& d = docs.at(pz + "Pizza");
        CHECK(d.user_facing);
        CHECK(d.parameters[0].example == "p:Margherita");
        std::string md = render_library_doc(lib, docs, {});
        CHECK(count(md, "undocumented") == 1);
        CHECK(md.find("Declares a named pizza as a subclass") != std::string::npos);
        CHECK(md.find("| ?name | ottr:IRI | no |") != std::string::npos);
        CHECK(md.find("none defined") != std::string::npos);
        CHECK(md.find("- Initial version") != std::string::npos);
        // User-facing templates are listed first.
        CHECK(md.find("| pz:Pizza |") < md.find("| ax:SubClassOf |"));
    }
    SUBCASE("everything documented") {
        auto docs = docs_from_json(nlohmann::json::parse(fixtures::read("pizza_docs_full.json")), lib);
        CHECK(count(render_library_doc(lib, docs, {}), "undocumented") == 0);
    }
    SUBCASE("unknown entries are rejected") {
        CHECK_THROWS_AS(docs_from_json(nlohmann::json::parse(R"({"templates": {"pz:Nope": {}}})"), lib),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            docs_from_json(nlohmann::json::parse(R"({"templates": {"pz:Pizza": {"params": {"nope": {}}}}})"), lib),
            std::invalid_argument);
    }
}

TEST_CASE("workflows in the documentation") {
    Library lib = fixtures::library("material.stottr");
    auto wf = workflow_from_json(nlohmann::json::parse(fixtures::read("material_workflow.json")), lib.prefixes);
    std::string md = render_library_doc(lib, {}, {wf});
    CHECK(md.find("none defined") == std::string::npos);
    CHECK(md.find("### characterize") != std::string::npos);
    CHECK(md.find("1. `m`: mat:Material") != std::string::npos);
    CHECK(md.find("2. `p`: mat:PropertyMeasurement") != std::string::npos);
    CHECK(md.find("?material = ref:m.material") != std::string::npos);
}
