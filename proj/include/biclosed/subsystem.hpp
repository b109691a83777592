#pragma once

#include <vector>

#include "biclosed/convexity.hpp"
#include "biclosed/linprog.hpp"
#include "biclosed/rootset.hpp"
#include "biclosed/rootsys.hpp"

namespace biclosed {

/// Elements of the set that are not nonnegative combinations of the others.
template <class S>
std::vector<int> fundamental_roots(const RootSet<S>& set) {
  const std::size_t n = set.size();
  std::vector<char> interior_of_plane(n, 0);
  for (const auto& plane : set.planes())
    for (std::size_t k = 1; k + 1 < plane.members.size(); ++k) interior_of_plane[plane.members[k]] = 1;
  std::vector<int> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (interior_of_plane[i]) continue;
    std::vector<Vec<S>> others;
    others.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) others.push_back(set.vec(j));
    if (!cone_coefficients<S>(others, set.vec(i))) out.push_back(static_cast<int>(i));
  }
  return out;
}

template <class S>
struct Subsystem {
  /// Members among the roots of the working system (level <= K).
  Mask members;
  /// Members among the roots of the headroom system.
  Mask headroom_members;
  /// Headroom indices of the fundamental roots of the fixpoint.
  std::vector<int> fundamental;
  int rank() const { return static_cast<int>(fundamental.size()); }
};

/// Root subsystems and full subsystems generated by sets of positive roots.
/// Affine fixpoints run inside a copy of the system truncated at level 2K+2 and
/// are then cut back to level K.
template <class S>
class SubsystemEngine {
 public:
  explicit SubsystemEngine(const RootSystem<S>& system) : system_(&system) {
    headroom_ = system.is_affine() ? system.at_level(2 * system.level() + 2) : system;
    headroom_set_ = RootSet<S>::of_system(headroom_);
    const std::size_t n = headroom_.size();
    to_headroom_.resize(system.size());
    for (std::size_t i = 0; i < system.size(); ++i)
      to_headroom_[i] = static_cast<int>(headroom_.index_of(system.coords(i)));
    reflect_.assign(n * n, -1);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        Vec<S> r = headroom_.reflect(headroom_.coords(a), headroom_.coords(b));
        bool negative = false;
        for (Eigen::Index k = 0; k < r.size(); ++k)
          if (sign(r[k]) < 0) negative = true;
        if (negative) r = -r;
        if (auto idx = headroom_.find(r)) reflect_[a * n + b] = static_cast<int>(*idx);
      }
  }

  const RootSystem<S>& system() const { return *system_; }
  const RootSystem<S>& headroom() const { return headroom_; }
  const RootSet<S>& headroom_set() const { return headroom_set_; }

  /// Least reflection-closed set containing the seeds (indices of system roots).
  Subsystem<S> generated(const Mask& seeds) const { return fixpoint(seeds, false); }

  /// Least set containing the seeds closed under reflections and plane saturation.
  Subsystem<S> full(const Mask& seeds) const { return fixpoint(seeds, true); }

 private:
  Subsystem<S> fixpoint(const Mask& seeds, bool saturate) const {
    const std::size_t n = headroom_.size();
    Mask t(n);
    std::vector<int> work;
    auto add = [&](int x) {
      if (x >= 0 && !t.test(x)) {
        t.set(x);
        work.push_back(x);
      }
    };
    for (auto i = seeds.find_first(); i != Mask::npos; i = seeds.find_next(i)) add(to_headroom_[i]);
    while (!work.empty()) {
      const int x = work.back();
      work.pop_back();
      for (auto y = t.find_first(); y != Mask::npos; y = t.find_next(y)) {
        if (static_cast<int>(y) == x) continue;
        add(reflect_[x * n + y]);
        add(reflect_[y * n + x]);
        if (saturate) {
          const int p = headroom_set_.plane_of(x, y);
          if (p >= 0)
            for (int m : headroom_set_.planes()[p].members) add(m);
        }
      }
    }
    Subsystem<S> out;
    out.headroom_members = t;
    out.members = Mask(system_->size());
    for (std::size_t i = 0; i < system_->size(); ++i)
      if (t.test(to_headroom_[i])) out.members.set(i);
    const RootSet<S> restricted = headroom_set_.restrict_to(t);
    for (int f : fundamental_roots(restricted)) out.fundamental.push_back(restricted.id(f));
    check_overflow(out);
    return out;
  }

  // The fundamental roots of a root subsystem generated by roots of level <= K
  // have level <= K and pair nonpositively with each other. A fixpoint that
  // violates either was cut short by the headroom.
  void check_overflow(const Subsystem<S>& sub) const {
    if (!system_->is_affine()) return;
    for (int f : sub.fundamental)
      if (headroom_.root(f).level > system_->level())
        throw LevelOverflow("subsystem fixpoint has a fundamental root above level " +
                            std::to_string(system_->level()));
    for (std::size_t a = 0; a < sub.fundamental.size(); ++a)
      for (std::size_t b = a + 1; b < sub.fundamental.size(); ++b)
        if (sign(headroom_.pairing(headroom_.coords(sub.fundamental[a]), headroom_.coords(sub.fundamental[b]))) > 0)
          throw LevelOverflow("subsystem fixpoint did not reach its simple roots within the headroom");
  }

  const RootSystem<S>* system_;
  RootSystem<S> headroom_;
  RootSet<S> headroom_set_;
  std::vector<int> to_headroom_;
  std::vector<int> reflect_;
};

}  // namespace biclosed
