#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "biclosed/cleanlab.hpp"
#include "biclosed/convexity.hpp"
#include "biclosed/enumerate.hpp"
#include "biclosed/rootset.hpp"
#include "biclosed/rootsys.hpp"
#include "biclosed/subsystem.hpp"

namespace biclosed {

/// An ordering gamma_1, gamma_2, ... of the roots of a built system together
/// with a cut m; X_i denotes the first i roots.
template <class S>
class OrderedPrefix {
 public:
  /// order lists system root indices; throws unless it refines the root poset
  /// and puts the fundamental vectors of every plane first.
  OrderedPrefix(const RootSystem<S>& system, std::vector<int> order, std::size_t cut)
      : OrderedPrefix(system, std::move(order), cut, true) {}

  static OrderedPrefix canonical(const RootSystem<S>& system, std::optional<std::size_t> cut = {}) {
    std::vector<int> order(system.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    return OrderedPrefix(system, std::move(order), cut.value_or(system.size()), true);
  }

  /// Same, without validating the order (for auditing arbitrary orders).
  static OrderedPrefix unchecked(const RootSystem<S>& system, std::vector<int> order, std::size_t cut) {
    return OrderedPrefix(system, std::move(order), cut, false);
  }

  const RootSystem<S>& system() const { return *system_; }
  /// All roots, in this order; element k has id order[k].
  const RootSet<S>& ambient() const { return ambient_; }
  std::size_t cut() const { return cut_; }
  RootSet<S> X(std::size_t i) const { return ambient_.prefix(i); }
  RootSet<S> prefix_set() const { return X(cut_); }

  bool refines_poset() const { return refines_; }
  /// Planes of the ambient whose fundamental vectors are not its two earliest members.
  const std::vector<int>& bad_planes() const { return bad_planes_; }

 private:
  OrderedPrefix(const RootSystem<S>& system, std::vector<int> order, std::size_t cut, bool validate)
      : system_(&system), cut_(cut) {
    if (order.size() != system.size()) throw PreconditionViolation("order must list every stored root once");
    std::vector<char> seen(system.size(), 0);
    std::vector<Vec<S>> vs;
    for (int id : order) {
      if (id < 0 || static_cast<std::size_t>(id) >= system.size() || seen[id])
        throw PreconditionViolation("order must list every stored root once");
      seen[id] = 1;
      vs.push_back(system.coords(id));
    }
    if (cut_ > system.size()) throw PreconditionViolation("cut exceeds the number of roots");
    ambient_ = RootSet<S>(std::move(vs), order);
    const RootPoset<S> poset(system);
    refines_ = true;
    for (std::size_t a = 0; a < order.size() && refines_; ++a)
      for (std::size_t b = a + 1; b < order.size(); ++b)
        if (poset.less(order[b], order[a])) {
          refines_ = false;
          break;
        }
    for (std::size_t p = 0; p < ambient_.planes().size(); ++p) {
      const auto& ms = ambient_.planes()[p].members;
      std::vector<int> sorted = ms;
      std::sort(sorted.begin(), sorted.end());
      if (std::set<int>{ms.front(), ms.back()} != std::set<int>{sorted[0], sorted[1]})
        bad_planes_.push_back(static_cast<int>(p));
    }
    if (validate && !refines_) throw PreconditionViolation("order does not refine the root poset");
    if (validate && !bad_planes_.empty())
      throw PreconditionViolation("order puts a non-fundamental vector of a plane before a fundamental one");
  }

  const RootSystem<S>* system_;
  RootSet<S> ambient_;
  std::size_t cut_;
  bool refines_ = true;
  std::vector<int> bad_planes_;
};

/// The incremental extension V_N of a coclosed U in X_m: gamma_i joins when it
/// is in U or lies in the positive span of two earlier members.
template <class S>
Mask extend_coclosed(const OrderedPrefix<S>& prefix, const Mask& U, std::size_t target) {
  const std::size_t m = prefix.cut();
  if (U.size() != m) throw PreconditionViolation("U must be a subset of X_m");
  if (target < m || target > prefix.ambient().size()) throw PreconditionViolation("target must satisfy m <= N <= |X|");
  if (!is_coclosed(prefix.X(m), U)) throw PreconditionViolation("U is not coclosed in X_m");
  const RootSet<S>& amb = prefix.ambient();
  Mask V(target);
  for (std::size_t i = 0; i < target; ++i) {
    if (i < m && U.test(i)) {
      V.set(i);
      continue;
    }
    for (int p : amb.planes_through(i)) {
      // gamma_i is spanned by two earlier members iff V has earlier members on both angular sides.
      const auto& ms = amb.planes()[p].members;
      bool before = false, after = false, passed = false;
      for (int x : ms) {
        if (static_cast<std::size_t>(x) == i) {
          passed = true;
          continue;
        }
        if (static_cast<std::size_t>(x) < i && V.test(x)) (passed ? after : before) = true;
      }
      if (before && after) {
        V.set(i);
        break;
      }
    }
  }
  return V;
}

template <class S>
struct BiclosedFamily {
  const OrderedPrefix<S>* prefix = nullptr;
  /// Sorted by MaskOrder, no duplicates.
  std::vector<Mask> members;
  std::size_t size() const { return members.size(); }
};

/// All biclosed subsets of X_m.
template <class S>
BiclosedFamily<S> enumerate_biclosed(const OrderedPrefix<S>& prefix) {
  return {&prefix, enumerate_biclosed(prefix.prefix_set())};
}

template <class S>
Mask join(const RootSet<S>& X, const Mask& a, const Mask& b) {
  if (!is_biclosed(X, a) || !is_biclosed(X, b)) throw PreconditionViolation("join needs biclosed arguments");
  return closure(X, a | b);
}

template <class S>
Mask meet(const RootSet<S>& X, const Mask& a, const Mask& b) {
  if (!is_biclosed(X, a) || !is_biclosed(X, b)) throw PreconditionViolation("meet needs biclosed arguments");
  return interior(X, a & b);
}

struct LatticeAudit {
  std::size_t size = 0;
  bool closed_under_operations = true;  // join and meet land in the family
  bool commutative = true;
  bool associative = true;
  bool absorptive = true;
  bool idempotent = true;
  bool least_upper_bound = true;
  bool greatest_lower_bound = true;
  bool ok() const {
    return closed_under_operations && commutative && associative && absorptive && idempotent && least_upper_bound &&
           greatest_lower_bound;
  }
};

/// Exhaustive lattice-axiom audit of join/meet over a complete biclosed family.
template <class S>
LatticeAudit audit_lattice(const RootSet<S>& X, const std::vector<Mask>& family) {
  LatticeAudit audit;
  const std::size_t n = family.size();
  audit.size = n;
  std::map<Mask, int, MaskOrder> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(family[i], static_cast<int>(i));
  std::vector<int> J(n * n, -1), M(n * n, -1);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto j = index.find(join(X, family[a], family[b]));
      auto m = index.find(meet(X, family[a], family[b]));
      if (j == index.end() || m == index.end()) {
        audit.closed_under_operations = false;
        return audit;
      }
      J[a * n + b] = j->second;
      M[a * n + b] = m->second;
    }
  for (std::size_t a = 0; a < n; ++a) {
    if (J[a * n + a] != static_cast<int>(a) || M[a * n + a] != static_cast<int>(a)) audit.idempotent = false;
    for (std::size_t b = 0; b < n; ++b) {
      const int jab = J[a * n + b], mab = M[a * n + b];
      if (jab != J[b * n + a] || mab != M[b * n + a]) audit.commutative = false;
      if (J[a * n + mab] != static_cast<int>(a) || M[a * n + jab] != static_cast<int>(a)) audit.absorptive = false;
      // Bounds: compare with every biclosed upper / lower bound in the family.
      const Mask& A = family[a];
      const Mask& B = family[b];
      if (!A.is_subset_of(family[jab]) || !B.is_subset_of(family[jab])) audit.least_upper_bound = false;
      if (!family[mab].is_subset_of(A) || !family[mab].is_subset_of(B)) audit.greatest_lower_bound = false;
      for (std::size_t c = 0; c < n; ++c) {
        const Mask& C = family[c];
        if (A.is_subset_of(C) && B.is_subset_of(C) && !family[jab].is_subset_of(C)) audit.least_upper_bound = false;
        if (C.is_subset_of(A) && C.is_subset_of(B) && !C.is_subset_of(family[mab])) audit.greatest_lower_bound = false;
        if (J[jab * n + c] != J[a * n + J[b * n + c]] || M[mab * n + c] != M[a * n + M[b * n + c]])
          audit.associative = false;
      }
    }
  }
  return audit;
}

/// Cover relations (i, j) of the containment order on a family sorted by size.
inline std::vector<std::pair<int, int>> hasse_covers(const std::vector<Mask>& family) {
  std::vector<std::pair<int, int>> covers;
  const std::size_t n = family.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !family[a].is_proper_subset_of(family[b])) continue;
      bool between = false;
      for (std::size_t c = 0; c < n && !between; ++c)
        between = c != a && c != b && family[a].is_proper_subset_of(family[c]) &&
                  family[c].is_proper_subset_of(family[b]);
      if (!between) covers.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  return covers;
}

/// Every cover relation adds exactly one root.
inline bool check_cover_sizes(const std::vector<Mask>& family) {
  for (const auto& [a, b] : hasse_covers(family))
    if ((family[b] - family[a]).count() != 1) return false;
  return true;
}

template <class S>
bool check_cover_sizes(const BiclosedFamily<S>& family) {
  return check_cover_sizes(family.members);
}

struct ConjectureAReport {
  /// Every maximal chain separates every pair of roots (explicit chain walk).
  bool chains_separate = true;
  /// Number of maximal chains, counted by dynamic programming.
  double chains = 0;
  /// False when the chain count exceeded the cap and the walk was skipped.
  bool walked = true;
  /// Every cover relation has a singleton difference.
  bool singleton_covers = true;
  bool ok() const { return chains_separate && singleton_covers; }
  /// The two formulations agree (always true when the walk ran).
  bool consistent() const { return !walked || chains_separate == singleton_covers; }
};

/// Walks every maximal chain of the containment order (paths from the minimum
/// to the maximum through cover relations) and checks that each pair of roots
/// enters the chain at different steps; compares with the singleton-cover test.
inline ConjectureAReport conjecture_a_check(const std::vector<Mask>& family, std::size_t universe,
                                            double walk_cap = 2e5) {
  ConjectureAReport report;
  report.singleton_covers = check_cover_sizes(family);
  if (family.empty()) return report;
  const auto covers = hasse_covers(family);
  std::vector<std::vector<int>> up(family.size());
  for (const auto& [a, b] : covers) up[a].push_back(b);
  int bottom = -1;
  for (std::size_t i = 0; i < family.size(); ++i)
    if (family[i].none()) bottom = static_cast<int>(i);
  if (bottom < 0) {
    report.chains_separate = false;
    return report;
  }
  // Members sorted by size, so covers point to later indices.
  std::vector<double> count(family.size(), 0);
  for (std::size_t i = family.size(); i-- > 0;) {
    if (up[i].empty()) count[i] = 1;
    for (int j : up[i]) count[i] += count[j];
  }
  report.chains = count[bottom];
  if (report.chains > walk_cap) {
    report.walked = false;
    report.chains_separate = report.singleton_covers;
    return report;
  }
  std::vector<int> entered(universe, -1);
  std::function<void(int, int)> walk = [&](int node, int step) {
    if (!report.chains_separate) return;
    if (up[node].empty()) {
      for (std::size_t a = 0; a < universe; ++a)
        for (std::size_t b = a + 1; b < universe; ++b)
          if (entered[a] == entered[b]) report.chains_separate = false;
      return;
    }
    for (int next : up[node]) {
      const Mask diff = family[next] - family[node];
      for (auto i = diff.find_first(); i != Mask::npos; i = diff.find_next(i)) entered[i] = step;
      walk(next, step + 1);
      for (auto i = diff.find_first(); i != Mask::npos; i = diff.find_next(i)) entered[i] = -1;
    }
  };
  walk(bottom, 0);
  return report;
}

template <class S>
ConjectureAReport conjecture_a_check(const BiclosedFamily<S>& family) {
  return conjecture_a_check(family.members, family.prefix->cut());
}

template <class S>
struct SuitabilityFailure {
  int prefix = 0;                 // i, the size of X_i (0 for condition (1))
  std::vector<int> triple;        // ambient positions
  Mask full;                      // F as ambient positions
  std::optional<CleanReport<S>> clean;  // the failing cleanliness check on F meet X_i
  std::string reason;
};

template <class S>
struct SuitabilityReport {
  bool suitable = true;
  bool condition1 = true;
  bool condition2 = true;
  std::size_t triples = 0;
  std::size_t clean_checks = 0;
  std::vector<SuitabilityFailure<S>> failures;
};

/// Checks suitability of X_1, ..., X_m: condition (1) plane by plane over the
/// ambient, and condition (2) for every triple of X_i using the full subsystem
/// of the triple. Planar and split (disconnected, independent) parts are clean
/// outright; anything else goes to check_clean, cached by F meet X_i.
template <class S>
SuitabilityReport<S> is_suitable_prefix(const OrderedPrefix<S>& prefix) {
  SuitabilityReport<S> report;
  const RootSet<S>& amb = prefix.ambient();
  for (int p : prefix.bad_planes()) {
    report.condition1 = false;
    SuitabilityFailure<S> f;
    f.triple = amb.planes()[p].members;
    f.reason = "fundamental vectors of a plane are not its first members";
    report.failures.push_back(std::move(f));
  }
  const RootSystem<S>& sys = prefix.system();
  const SubsystemEngine<S> engine(sys);
  std::vector<int> position(sys.size());
  for (std::size_t k = 0; k < amb.size(); ++k) position[amb.id(k)] = static_cast<int>(k);
  // Cached verdicts: nullopt means clean, otherwise the failing report.
  std::map<Mask, std::optional<CleanReport<S>>, MaskOrder> verdicts;

  auto clean_verdict = [&](const Mask& g) -> const std::optional<CleanReport<S>>& {
    auto it = verdicts.find(g);
    if (it != verdicts.end()) return it->second;
    const RootSet<S> part = amb.restrict_to(g);
    const auto comps = components(part);
    int rank_sum = 0;
    bool small = true;
    for (const Mask& c : comps) {
      const int r = linear_rank(part.members(c));
      rank_sum += r;
      small = small && r <= 2;
    }
    const bool independent = rank_sum == linear_rank(part.vectors());
    std::optional<CleanReport<S>> failure;
    if (!(small && independent)) {
      ++report.clean_checks;
      if (independent) {
        for (const Mask& c : comps) {
          if (linear_rank(part.members(c)) <= 2) continue;
          auto r = check_clean(part.restrict_to(c));
          if (!r.clean) {
            failure = std::move(r);
            break;
          }
        }
      } else {
        auto r = check_clean(part);
        if (!r.clean) failure = std::move(r);
      }
    }
    return verdicts.emplace(g, std::move(failure)).first->second;
  };

  const std::size_t m = prefix.cut();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      for (std::size_t c = b + 1; c < m; ++c) {
        ++report.triples;
        Mask seeds(sys.size());
        seeds.set(amb.id(a));
        seeds.set(amb.id(b));
        seeds.set(amb.id(c));
        const auto sub = engine.full(seeds);
        Mask full(amb.size());
        for (auto r = sub.members.find_first(); r != Mask::npos; r = sub.members.find_next(r)) full.set(position[r]);
        for (std::size_t i = c + 1; i <= m; ++i) {
          Mask g = full;
          for (std::size_t k = i; k < amb.size(); ++k) g.reset(k);
          const auto& failure = clean_verdict(g);
          if (failure) {
            report.condition2 = false;
            SuitabilityFailure<S> f;
            f.prefix = static_cast<int>(i);
            f.triple = {static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)};
            f.full = full;
            f.clean = failure;
            f.reason = "F meet X_i is not clean";
            report.failures.push_back(std::move(f));
          }
        }
      }
  report.suitable = report.condition1 && report.condition2;
  return report;
}

}  // namespace biclosed
