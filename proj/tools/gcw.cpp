#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return gcw::cli::run(argc, argv, std::cout, std::cerr); }
