#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace acceptance {

struct Outcome {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double budget = 0;  // wall-clock limit in seconds
};

struct Options {
  std::uint64_t seed = 0;
  /// Criterion ids to run; empty runs all eleven.
  std::vector<int> only;
};

/// Runs the criteria in order, calling progress after each one.
std::vector<Outcome> run(const Options& options, const std::function<void(const Outcome&)>& progress = {});

/// "criterion 3 PASS  12.4 s / 300 s  <title>: <detail>"
std::string format_line(const Outcome& outcome);

}  // namespace acceptance
