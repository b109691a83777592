#include <cstdlib>
#include <iostream>

#include "suite.hpp"

int main(int argc, char** argv) {
  acceptance::Options options;
  if (argc > 1) options.seed = std::strtoull(argv[1], nullptr, 10);
  bool all = true;
  acceptance::run(options, [&](const acceptance::Outcome& o) {
    std::cout << acceptance::format_line(o) << std::endl;
    all = all && o.passed;
  });
  return all ? 0 : 1;
}
