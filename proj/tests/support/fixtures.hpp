#pragma once

#include "ottr/model.hpp"

#include <string>
#include <vector>

namespace fixtures {

std::string path(const std::string& name);
std::string read(const std::string& name);
/// Parses a fixture library; throws std::runtime_error with the diagnostics on failure.
ottr::Library library(const std::string& name);
ottr::Library library_from_text(const std::string& text);
std::vector<ottr::Instance> instances(const std::string& name, const ottr::Library& lib);
std::vector<ottr::Instance> instances_from_text(const std::string& text, const ottr::Library& lib);

}  // namespace fixtures
