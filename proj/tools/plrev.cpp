#include <iostream>

#include "plrev/cli.hpp"

int main(int argc, char** argv) {
  return plrev::run(std::vector<std::string>(argv + 1, argv + argc), std::cin, std::cout, std::cerr);
}
