#include <iostream>
#include <string>
#include <vector>

#include "squeeze/scenario.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const auto config = squeeze::parse_config(args, std::cout);
    if (!config) return 0;
    return squeeze::run_scenario(*config, std::cout, std::cerr);
  } catch (const squeeze::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nrun 'squeeze --help' for the list of scenarios\n";
    return 2;
  }
}
