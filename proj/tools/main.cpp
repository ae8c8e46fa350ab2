#include <iostream>

#include "nilcover/cli.hpp"

int main(int argc, char** argv) {
  return nilcover::cli::run(argc, argv, std::cout, std::cerr);
}
