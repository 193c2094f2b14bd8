#include "ottr/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return ottr::cli_main(argc, argv, std::cout, std::cerr); }
