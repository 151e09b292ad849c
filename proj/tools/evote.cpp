#include <iostream>

#include "evote/app/cli.hpp"

int main(int argc, char** argv) {
  return evote::app::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
