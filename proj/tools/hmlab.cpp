#include <iostream>
#include <string>
#include <vector>

#include "hml/cli/cli.hpp"

int main(int argc, char** argv) {
  return hml::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
