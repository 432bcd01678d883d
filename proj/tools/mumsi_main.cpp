#include <iostream>

#include <mumsi/cli.hpp>

int main(int argc, char** argv) { return mumsi::cli::run(argc, argv, std::cout, std::cerr); }
