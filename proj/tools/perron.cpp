#include <iostream>
#include <string>
#include <vector>

#include "perron/cli.hpp"

int main(int argc, char** argv) {
  return perron::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
