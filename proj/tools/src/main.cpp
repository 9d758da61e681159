#include <iostream>

#include "spinboson_cli/app.hpp"

int main(int argc, char** argv) { return spinboson::cli::run(argc, argv, std::cout, std::cerr); }
