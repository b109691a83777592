#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "biclosed/convexity.hpp"
#include "biclosed/enumerate.hpp"
#include "biclosed/linprog.hpp"
#include "biclosed/parallel.hpp"
#include "biclosed/rootset.hpp"
#include "biclosed/rootsys.hpp"

namespace biclosed {

struct CleanStats {
  std::size_t biclosed = 0;
  std::size_t separable = 0;
  double elapsed_ms = 0;
};

template <class S>
struct CleanReport {
  std::vector<Vec<S>> target;
  bool clean = true;
  /// A biclosed, non-separable subset of target (indices into target) and its witness.
  std::optional<Mask> counterexample;
  std::optional<Certificate<S>> witness;
  CleanStats stats;
};

/// Tests every biclosed subset of the set for separability. With fast_fail the
/// scan stops at the first failure; otherwise all biclosed sets are counted.
template <class S>
CleanReport<S> check_clean(const RootSet<S>& set, bool fast_fail = true) {
  const auto start = std::chrono::steady_clock::now();
  CleanReport<S> report;
  report.target = set.vectors();
  for_each_biclosed<S>(set, [&](const Mask& B) {
    ++report.stats.biclosed;
    auto sep = is_separable(set, B);
    if (sep.separable) {
      ++report.stats.separable;
      return true;
    }
    if (report.clean) {
      report.clean = false;
      report.counterexample = B;
      report.witness = std::move(sep.certificate);
    }
    return !fast_fail;
  });
  report.stats.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Every biclosed subset of the set that is not separable.
template <class S>
std::vector<Mask> non_separable_biclosed(const RootSet<S>& set) {
  std::vector<Mask> out;
  for_each_biclosed<S>(set, [&](const Mask& B) {
    if (!is_separable(set, B).separable) out.push_back(B);
    return true;
  });
  std::sort(out.begin(), out.end(), MaskOrder{});
  return out;
}

struct IdealSweepOptions {
  std::optional<std::size_t> max_size;
  bool fast_fail = true;
  unsigned threads = 1;
};

template <class S>
struct IdealSweep {
  /// The system whose ideals were enumerated (one level above the requested
  /// truncation for affine systems, so boundary ideals can be excluded).
  RootSystem<S> system;
  std::vector<Mask> ideals;
  std::vector<CleanReport<S>> reports;
  bool all_clean() const {
    for (const auto& r : reports)
      if (!r.clean) return false;
    return true;
  }
};

/// Runs check_clean on every order ideal. For an affine system truncated at K,
/// the ideals are those of roots of level <= K, enumerated inside the level K+1
/// truncation with boundary ideals excluded.
template <class S>
IdealSweep<S> check_clean_all_ideals(const RootSystem<S>& system, const IdealSweepOptions& options = {}) {
  IdealSweep<S> sweep;
  sweep.system = system.is_affine() ? system.at_level(system.level() + 1) : system;
  const RootPoset<S> poset(sweep.system);
  const RootSet<S> all = RootSet<S>::of_system(sweep.system);
  for_each_ideal(poset, options.max_size, sweep.system.is_affine(),
                 [&](const OrderIdeal& ideal) { sweep.ideals.push_back(ideal.members); });
  sweep.reports.resize(sweep.ideals.size());
  parallel_for(sweep.ideals.size(), options.threads, [&](std::size_t k) {
    sweep.reports[k] = check_clean(all.restrict_to(sweep.ideals[k]), options.fast_fail);
  });
  return sweep;
}

enum class RegionSide { crossed, negative, positive };

template <class S>
struct PeelEntry {
  Mask region;  // B' as a subset of J'
  RegionSide side = RegionSide::crossed;
  bool ok = true;
};

template <class S>
struct PeelReport {
  bool verified = true;
  std::vector<PeelEntry<S>> entries;
};

/// Feasibility of <theta, b> < 0 on B', > 0 on J' \ B', and sign(<theta, gamma>) = s.
template <class S>
bool region_meets_side(const RootSet<S>& jprime, const Mask& bprime, const Vec<S>& gamma, int s) {
  const int n = static_cast<int>(jprime.size());
  const int d = static_cast<int>(gamma.size());
  Mat<S> A(n + 1, d);
  Vec<S> b = Vec<S>::Constant(n + 1, S(1));
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < d; ++j) A(k, j) = bprime.test(k) ? S(-jprime.vec(k)[j]) : jprime.vec(k)[j];
  for (int j = 0; j < d; ++j) A(n, j) = s < 0 ? S(-gamma[j]) : gamma[j];
  return solve_inequalities<S>(A, b).feasible;
}

/// Inductive cleanliness check for J = J' + {gamma} with gamma maximal in J: for
/// each region of J' lying on one side of gamma's hyperplane, gamma must lie in
/// the closure of B' (negative side) or of J' \ B' (positive side).
/// J' must be clean; otherwise the method does not apply.
template <class S>
PeelReport<S> check_clean_via_region_peeling(const RootSet<S>& J, std::size_t gamma) {
  Mask rest = J.full_mask();
  rest.reset(gamma);
  const RootSet<S> jprime = J.restrict_to(rest);
  if (!check_clean(jprime).clean)
    throw PreconditionViolation("region peeling needs J' clean; fall back to check_clean");
  // Positions of J' elements inside J.
  std::vector<std::size_t> pos;
  for (auto i = rest.find_first(); i != Mask::npos; i = rest.find_next(i)) pos.push_back(i);
  auto lift = [&](const Mask& m) {
    Mask out(J.size());
    for (auto i = m.find_first(); i != Mask::npos; i = m.find_next(i)) out.set(pos[i]);
    return out;
  };
  PeelReport<S> report;
  const Vec<S>& g = J.vec(gamma);
  for (const Mask& bprime : enumerate_biclosed(jprime)) {
    PeelEntry<S> entry;
    entry.region = bprime;
    const bool neg = region_meets_side(jprime, bprime, g, -1);
    const bool posv = region_meets_side(jprime, bprime, g, +1);
    if (neg && posv) {
      entry.side = RegionSide::crossed;
    } else if (neg) {
      entry.side = RegionSide::negative;
      entry.ok = closure(J, lift(bprime)).test(gamma);
    } else {
      entry.side = RegionSide::positive;
      Mask others = lift(~bprime);
      entry.ok = closure(J, others).test(gamma);
    }
    if (!entry.ok) report.verified = false;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

/// The nine-root ideal I of D3^(2) at level 1 and the biclosed, non-separable B
/// inside it. Coordinates are in the basis beta_0, beta_1, beta_2.
template <class S>
struct TwistedFixture {
  RootSystem<S> system;
  RootSet<S> ideal;  // ids are indices in system
  Mask B;            // over ideal
};

template <class S>
TwistedFixture<S> twisted_counterexample() {
  auto vec = [](int a, int b, int c) {
    Vec<S> out(3);
    out << S(a), S(b), S(c);
    return out;
  };
  TwistedFixture<S> fx;
  fx.system = RootSystem<S>::build(SystemSpec::parse("tw:D3-2@1"));
  const std::vector<Vec<S>> members = {vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1), vec(1, 1, 0), vec(0, 1, 1),
                                       vec(2, 1, 0), vec(0, 1, 2), vec(2, 1, 1), vec(1, 1, 2)};
  std::vector<int> ids;
  for (const auto& c : members) ids.push_back(static_cast<int>(fx.system.index_of(c)));
  fx.ideal = RootSet<S>(members, ids);
  fx.B = fx.ideal.mask_of_vectors({vec(1, 0, 0), vec(0, 1, 0), vec(1, 1, 0), vec(2, 1, 0), vec(1, 1, 2)});
  return fx;
}

/// Classes of the support preorder, keyed by support bitmask (bit i = index i).
template <class S>
std::map<unsigned, Mask> support_classes(const RootSystem<S>& system) {
  std::map<unsigned, Mask> classes;
  for (std::size_t i = 0; i < system.size(); ++i) {
    unsigned key = 0;
    const Vec<S>& c = system.coords(i);
    for (Eigen::Index k = 0; k < c.size(); ++k)
      if (sign(c[k]) != 0) key |= 1u << k;
    auto [it, inserted] = classes.try_emplace(key, Mask(system.size()));
    it->second.set(i);
  }
  return classes;
}

/// Ideals of the support preorder: unions of support classes closed under
/// taking classes with smaller support.
template <class S>
std::vector<Mask> support_preorder_ideals(const RootSystem<S>& system, std::optional<std::size_t> max_size = {}) {
  if (!system.spec() || system.spec()->family != Family::H)
    throw PreconditionViolation("the support preorder is defined for types H3 and H4 only");
  const auto classes = support_classes(system);
  std::vector<std::pair<unsigned, Mask>> list(classes.begin(), classes.end());
  std::vector<Mask> out;
  std::vector<char> chosen(list.size(), 0);
  std::function<void(std::size_t, Mask)> rec = [&](std::size_t i, Mask cur) {
    if (i == list.size()) {
      out.push_back(cur);
      return;
    }
    rec(i + 1, cur);
    // Every class with support strictly inside must already be chosen; classes
    // are visited in increasing key order, so subsets come first.
    for (std::size_t j = 0; j < i; ++j)
      if ((list[j].first & list[i].first) == list[j].first && !chosen[j]) return;
    Mask next = cur | list[i].second;
    if (max_size && next.count() > *max_size) return;
    chosen[i] = 1;
    rec(i + 1, next);
    chosen[i] = 0;
  };
  rec(0, Mask(system.size()));
  std::sort(out.begin(), out.end(), MaskOrder{});
  return out;
}

template <class S>
struct PreorderSweep {
  std::vector<Mask> ideals;
  std::vector<CleanReport<S>> reports;
  bool all_clean() const {
    for (const auto& r : reports)
      if (!r.clean) return false;
    return true;
  }
};

/// check_clean on every support-preorder ideal (of size <= max_size when given).
template <class S>
PreorderSweep<S> check_h_preorder_ideals(const RootSystem<S>& system, std::optional<std::size_t> max_size = {},
                                         unsigned threads = 1) {
  PreorderSweep<S> sweep;
  const RootSet<S> all = RootSet<S>::of_system(system);
  sweep.ideals = support_preorder_ideals(system, max_size);
  sweep.reports.resize(sweep.ideals.size());
  parallel_for(sweep.ideals.size(), threads,
               [&](std::size_t k) { sweep.reports[k] = check_clean(all.restrict_to(sweep.ideals[k])); });
  return sweep;
}

}  // namespace biclosed
