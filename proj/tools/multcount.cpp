#include "multcount/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return multcount::dispatch(argc, argv, std::cout, std::cerr); }
