#include <iostream>

#include "markov/commands.hpp"

int main(int argc, char** argv) { return markov::run_cli(argc, argv, std::cout, std::cerr); }
