#include <iostream>

#include "citerank/app.hpp"

int main(int argc, char** argv) { return citerank::cli_main(argc, argv, std::cout, std::cerr); }
