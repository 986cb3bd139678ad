#include <iostream>

#include "dqho/cli.hpp"

int main(int argc, char** argv) { return dqho::cli::run(argc, argv, std::cout, std::cerr); }
