#include <iostream>

#include "srh_cli/commands.hpp"

int main(int argc, char** argv) { return srh::cli::run(argc, argv, std::cout, std::cerr); }
