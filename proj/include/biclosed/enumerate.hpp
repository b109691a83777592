#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "biclosed/mask.hpp"
#include "biclosed/rootset.hpp"

namespace biclosed {

/// Calls visit(B) for every biclosed subset B of the set, deciding membership of
/// elements in their stored order and pruning as soon as the decided part of
/// some plane stops being an initial or final segment. visit returns false to
/// stop the enumeration; the function returns false iff it was stopped.
template <class S>
bool for_each_biclosed(const RootSet<S>& set, const std::function<bool(const Mask&)>& visit) {
  const std::size_t n = set.size();
  // For each element, the planes through it with their members in angular order.
  const auto& planes = set.planes();
  Mask current(n);
  bool stopped = false;

  // Decided members of a plane (index <= i) switch between in and out at most once.
  auto plane_ok = [&](const Plane& plane, std::size_t i) {
    int changes = 0;
    int last = -1;
    for (int m : plane.members) {
      if (static_cast<std::size_t>(m) > i) continue;
      const int in = current.test(m) ? 1 : 0;
      if (last >= 0 && in != last) ++changes;
      last = in;
    }
    return changes <= 1;
  };

  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stopped) return;
    if (i == n) {
      if (!visit(current)) stopped = true;
      return;
    }
    for (int choice = 0; choice < 2 && !stopped; ++choice) {
      if (choice) current.set(i);
      bool ok = true;
      for (int p : set.planes_through(i))
        if (!plane_ok(planes[p], i)) {
          ok = false;
          break;
        }
      if (ok) rec(i + 1);
      if (choice) current.reset(i);
    }
  };
  rec(0);
  return !stopped;
}

/// All biclosed subsets, sorted by (cardinality, member list).
template <class S>
std::vector<Mask> enumerate_biclosed(const RootSet<S>& set) {
  std::vector<Mask> out;
  for_each_biclosed<S>(set, [&](const Mask& m) {
    out.push_back(m);
    return true;
  });
  std::sort(out.begin(), out.end(), MaskOrder{});
  return out;
}

}  // namespace biclosed
