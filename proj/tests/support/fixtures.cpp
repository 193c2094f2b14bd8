#include "fixtures.hpp"

#include "ottr/stottr.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fixtures {

namespace {

template <typename T>
T unwrap(ottr::ParseResult<T> result, const std::string& what) {
    if (!result.ok()) {
        std::string msg = what + ":";
        for (const auto& d : result.diagnostics) msg += " " + ottr::to_string(d);
        throw std::runtime_error(msg);
    }
    return std::move(*result.value);
}

}  // namespace

std::string path(const std::string& name) { return std::string(OTTR_FIXTURE_DIR) + "/" + name; }

std::string read(const std::string& name) {
    std::ifstream in(path(name), std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ottr::Library library(const std::string& name) { return unwrap(ottr::parse_library(read(name)), name); }

ottr::Library library_from_text(const std::string& text) { return unwrap(ottr::parse_library(text), "library"); }

std::vector<ottr::Instance> instances(const std::string& name, const ottr::Library& lib) {
    return unwrap(ottr::parse_instances(read(name), lib), name);
}

std::vector<ottr::Instance> instances_from_text(const std::string& text, const ottr::Library& lib) {
    return unwrap(ottr::parse_instances(text, lib), "instances");
}

}  // namespace fixtures
