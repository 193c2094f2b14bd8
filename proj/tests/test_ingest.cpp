#include "doctest.h"

#include "fixtures.hpp"

#include "ottr/expander.hpp"
#include "ottr/ingest.hpp"

using namespace ottr;

namespace {

MappingConfig mapping(const std::string& name, const Library& lib) {
    return mapping_from_json(nlohmann::json::parse(fixtures::read(name)), lib.prefixes);
}

MappingConfig mapping_text(const std::string& text, const Library& lib) {
    return mapping_from_json(nlohmann::json::parse(text), lib.prefixes);
}

const char* material_mapping = R"({
  "template": "mat:Material",
  "bindings": {
    "material": {"mint": "http://ex.org/material/{id}"},
    "name": {"column": "name"}
  }
})";

}  // namespace

TEST_CASE("csv records") {
    CHECK(parse_csv("a,b\n1,2\n") == std::vector<std::vector<std::string>>{{"a", "b"}, {"1", "2"}});
    CHECK(parse_csv("a,b\r\n1,2") == std::vector<std::vector<std::string>>{{"a", "b"}, {"1", "2"}});
    CHECK(parse_csv("a\n\"x, \"\"y\"\"\"\n") == std::vector<std::vector<std::string>>{{"a"}, {"x, \"y\""}});
    CHECK(parse_csv("a\n\"multi\nline\"\n") == std::vector<std::vector<std::string>>{{"a"}, {"multi\nline"}});
    CHECK(parse_csv(" a , b \n\n 1 ,2\n") == std::vector<std::vector<std::string>>{{"a", "b"}, {"1", "2"}});
    CHECK(parse_csv("a;b\n1;2", ';') == std::vector<std::vector<std::string>>{{"a", "b"}, {"1", "2"}});
    CHECK(parse_csv("a,b\n1,\n") == std::vector<std::vector<std::string>>{{"a", "b"}, {"1", ""}});
    CHECK(parse_csv("").empty());
    CHECK_THROWS_AS(parse_csv("a\n\"open\n"), IngestError);
}

TEST_CASE("valid rows become instances") {
    Library lib = fixtures::library("material.stottr");
    auto r = ingest_csv("id,name\nmg-7,Magnesium\nal-1,Aluminium\n", mapping_text(material_mapping, lib), lib);
    REQUIRE(r.instances.size() == 2);
    CHECK(r.diagnostics.empty());
    CHECK(r.data_rows == 2);
    CHECK(r.instance_rows == std::vector<std::size_t>{2, 3});
    CHECK(r.instances[0].arguments[0].term == Term::iri("http://ex.org/material/mg-7"));
    CHECK(r.instances[0].arguments[1].term == Term::literal("Magnesium"));
}

TEST_CASE("an empty required cell skips the row") {
    Library lib = fixtures::library("material.stottr");
    auto r = ingest_csv("id,name\nmg-7,\nal-1,Aluminium\n", mapping_text(material_mapping, lib), lib);
    CHECK(r.instances.size() == 1);
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].row == 2);
    CHECK(r.diagnostics[0].column == "name");
    CHECK(r.skipped_rows == 1);
}

TEST_CASE("cell conversions") {
    Library lib = fixtures::library("material.stottr");
    auto config = mapping("samples_mapping.json", lib);
    SUBCASE("numeric lexical forms are validated") {
        auto r = ingest_csv("id,name,density,status\na,A,1e3,\nb,B,-.5,\nc,C,abc,\n", config, lib);
        CHECK(r.instances.size() == 2);
        REQUIRE(r.diagnostics.size() == 1);
        CHECK(r.diagnostics[0].row == 4);
        CHECK(r.diagnostics[0].column == "density");
    }
    SUBCASE("empty optional cells become none") {
        auto r = ingest_csv("id,name,density,status\na,A,1.0,\n", config, lib);
        REQUIRE(r.instances.size() == 1);
        CHECK(r.instances[0].arguments[3].term.is_none());
    }
    SUBCASE("field count mismatches are row diagnostics") {
        auto r = ingest_csv("id,name,density,status\na,A,1.0\n", config, lib);
        CHECK(r.instances.empty());
        REQUIRE(r.diagnostics.size() == 1);
        CHECK(r.diagnostics[0].column == "*");
    }
    SUBCASE("minted IRIs need their cells") {
        auto r = ingest_csv("id,name,density,status\n,A,1.0,\n", config, lib);
        REQUIRE(r.diagnostics.size() == 1);
        CHECK(r.diagnostics[0].column == "id");
    }
    SUBCASE("minted IRIs must be valid") {
        auto r = ingest_csv("id,name,density,status\nhas space,A,1.0,\n", config, lib);
        CHECK(r.diagnostics.size() == 1);
    }
}

TEST_CASE("iri cells") {
    Library lib = fixtures::library("pizza.stottr");
    auto config = mapping("pizzas_mapping.json", lib);
    auto r = ingest_csv("name,label\nMargherita,Margherita\nhttp://other.org/Funghi,Funghi\nbad name,Bad\n", config, lib);
    REQUIRE(r.instances.size() == 2);
    CHECK(r.instances[0].arguments[0].term == Term::iri("http://data.ex.org/pizza/Margherita"));
    CHECK(r.instances[0].arguments[1].term == Term::lang_literal("Margherita", "en"));
    CHECK(r.instances[1].arguments[0].term == Term::iri("http://other.org/Funghi"));
    CHECK(r.diagnostics.size() == 1);

    config.base.clear();
    auto no_base = ingest_csv("name,label\nMargherita,Margherita\n", config, lib);
    CHECK(no_base.instances.empty());
    CHECK(no_base.diagnostics.size() == 1);
}

TEST_CASE("constants and skip-if-empty") {
    Library lib = fixtures::library("material.stottr");
    auto config = mapping_text(R"({
      "template": "mat:PropertyMeasurement",
      "bindings": {
        "measurement": {"mint": "http://ex.org/m/{id}"},
        "material": {"constant": "<http://ex.org/material/mg-7>"},
        "value": {"skipIfEmpty": {"column": "value", "as": "literal", "datatype": "xsd:double"}},
        "unit": {"constant": "\"K\""}
      }
    })",
                               lib);
    auto r = ingest_csv("id,value\nm1,293\nm2,\n", config, lib);
    REQUIRE(r.instances.size() == 1);
    CHECK(r.instances[0].arguments[1].term == Term::iri("http://ex.org/material/mg-7"));
    CHECK(r.instances[0].arguments[3].term == Term::literal("K"));
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].row == 3);
    CHECK(r.instances.size() + r.skipped_rows == r.data_rows);
}

TEST_CASE("mapping problems are file-level errors") {
    Library lib = fixtures::library("material.stottr");
    CHECK_THROWS_AS(ingest_csv("nope\nx\n", mapping_text(material_mapping, lib), lib), IngestError);
    CHECK_THROWS_AS(ingest_csv("", mapping_text(material_mapping, lib), lib), IngestError);
    CHECK_THROWS_AS(ingest_csv("id,name\n", mapping_text(R"({"template": "mat:Missing", "bindings": {}})", lib), lib),
                    IngestError);
    CHECK_THROWS_AS(ingest_csv("id,name\n",
                               mapping_text(R"({"template": "mat:Material", "bindings": {"name": {"column": "name"}}})", lib),
                               lib),
                    IngestError);
    CHECK_THROWS_AS(ingest_csv("id,name\n",
                               mapping_text(R"({"template": "mat:Material", "bindings": {
                                   "material": {"mint": "http://ex.org/{id}"}, "name": {"column": "name"},
                                   "colour": {"column": "name"}}})",
                                            lib),
                               lib),
                    IngestError);
    CHECK_THROWS_AS(mapping_text(R"({"template": "mat:Material", "bindings": {"name": {"weird": 1}}})", lib), IngestError);
    CHECK_THROWS_AS(mapping_text(R"({"bindings": {}})", lib), IngestError);
}

TEST_CASE("the sample file: conservation and composition") {
    Library lib = fixtures::library("material.stottr");
    auto config = mapping("samples_mapping.json", lib);
    std::string csv = fixtures::read("samples.csv");
    auto r = ingest_csv(csv, config, lib);
    CHECK(r.data_rows == 10);
    CHECK(r.instances.size() == 8);
    CHECK(r.diagnostics.size() == 2);
    CHECK(r.instances.size() + r.skipped_rows == r.data_rows);
    ExpansionContext ctx{&lib};
    CHECK(ingest_to_graph(csv, config, lib) == expand_all(r.instances, ctx));
}

TEST_CASE("graph examples") {
    Library lib = fixtures::library("pizza.stottr");
    auto config = mapping("pizzas_mapping.json", lib);
    CHECK(ingest_to_graph("name,label\n", config, lib).empty());
    CHECK(ingest_to_graph(fixtures::read("pizzas.csv"), config, lib).size() == 3);
    CHECK(ingest_to_graph("name,label\nMargherita,Margherita\nMargherita,Margherita\n", config, lib) ==
          ingest_to_graph("name,label\nMargherita,Margherita\n", config, lib));
}
