#include <iostream>

#include "kuiper/cli.hpp"

int main(int argc, char** argv) { return kuiper::cli::run(argc, argv, std::cout, std::cerr); }
