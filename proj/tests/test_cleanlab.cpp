#include "biclosed/cleanlab.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace biclosed;
using oracle::v;

namespace {

using Set = RootSet<Rational>;

// Downward-closed subsets of the system by exhausting the power set.
std::size_t brute_ideal_count(const RootSystem<Rational>& sys) {
  const RootPoset<Rational> poset(sys);
  std::size_t count = 0;
  for (unsigned long bits = 0; bits < (1UL << sys.size()); ++bits) {
    const Mask m = oracle::mask_from_bits(sys.size(), bits);
    bool down = true;
    for (std::size_t i = 0; i < sys.size() && down; ++i)
      for (std::size_t j = 0; j < sys.size() && down; ++j)
        if (m.test(i) && poset.less(j, i) && !m.test(j)) down = false;
    count += down;
  }
  return count;
}

Set twisted_ideal() {
  const auto tw = oracle::sys("tw:D3-2@1");
  const std::vector<Vec<Rational>> ideal = {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({1, 1, 0}), v({0, 1, 1}),
                                           v({2, 1, 0}), v({0, 1, 2}), v({2, 1, 1}), v({1, 1, 2})};
  std::vector<int> ids;
  for (const auto& c : ideal) ids.push_back(static_cast<int>(tw.index_of(c)));
  return Set(ideal, ids);
}

}  // namespace

TEST_CASE("empty set is clean") {
  const Set empty(std::vector<Vec<Rational>>{});
  const auto r = check_clean(empty);
  CHECK(r.clean);
  CHECK(r.stats.biclosed == 1);
  CHECK(r.stats.separable == 1);
}

TEST_CASE("every order ideal of A3, B3, C3 is clean") {
  for (const std::string name : {"A3", "B3", "C3"}) {
    const auto sys = oracle::sys(name);
    const auto sweep = check_clean_all_ideals(sys);
    CHECK(sweep.all_clean());
    CHECK(sweep.ideals.size() == brute_ideal_count(sys));
    for (const auto& r : sweep.reports) CHECK(r.stats.biclosed == r.stats.separable);
  }
}

TEST_CASE("twisted ideal is not clean and its counterexample re-verifies") {
  const Set I = twisted_ideal();
  const auto r = check_clean(I, false);
  CHECK_FALSE(r.clean);
  REQUIRE(r.counterexample.has_value());
  REQUIRE(r.witness.has_value());
  CHECK(is_biclosed(I, *r.counterexample));
  CHECK_FALSE(is_separable(I, *r.counterexample).separable);
  CHECK(verify_certificate(I, *r.counterexample, *r.witness));
  // The named B or its mirror under the diagram flip is among the failures; count all of them.
  const Mask B = I.mask_of_vectors({v({1, 0, 0}), v({0, 1, 0}), v({1, 1, 0}), v({2, 1, 0}), v({1, 1, 2})});
  std::size_t failures = 0;
  bool found = false;
  for_each_biclosed<Rational>(I, [&](const Mask& m) {
    if (!is_separable(I, m).separable) {
      ++failures;
      found = found || m == B;
    }
    return true;
  });
  CHECK(found);
  CHECK(failures == r.stats.biclosed - r.stats.separable);
}

TEST_CASE("twisted system at level 1 has a non-clean ideal") {
  const auto sweep = check_clean_all_ideals(oracle::sys("tw:D3-2@1"));
  CHECK_FALSE(sweep.all_clean());
}

TEST_CASE("affine A2 non-boundary ideals at level 1 are clean") {
  const auto sweep = check_clean_all_ideals(oracle::sys("aff:A2@1"));
  CHECK(sweep.all_clean());
  CHECK(sweep.system.level() == 2);
  for (const auto& ideal : sweep.ideals)
    for (auto i = ideal.find_first(); i != Mask::npos; i = ideal.find_next(i)) CHECK(sweep.system.root(i).level <= 1);
}

TEST_CASE("region peeling agrees with the direct check") {
  for (const std::string name : {"A3", "B3", "C3"}) {
    const auto sys = oracle::sys(name);
    const RootPoset<Rational> poset(sys);
    const Set all = Set::of_system(sys);
    for (const auto& ideal : order_ideals(poset)) {
      if (ideal.members.none()) continue;
      const Set J = all.restrict_to(ideal.members);
      const bool clean = check_clean(J).clean;
      // Peel the last element: canonical order puts a maximal element last.
      const std::size_t gamma = J.size() - 1;
      const auto peel = check_clean_via_region_peeling(J, gamma);
      CHECK(peel.verified == clean);
      CHECK(clean);
    }
  }
}

TEST_CASE("peeling cases in A3") {
  const auto a3 = oracle::sys("A3");
  const Set all = Set::of_system(a3);
  SUBCASE("simple root: every region is crossed") {
    const Set J = all.restrict_to(all.mask_of_vectors({v({1, 0, 0}), v({0, 0, 1}), v({0, 1, 0})}));
    const auto peel = check_clean_via_region_peeling(J, 2);
    CHECK(peel.verified);
    for (const auto& e : peel.entries) CHECK(e.side == RegionSide::crossed);
  }
  SUBCASE("gamma = a1 + a2") {
    const Set J = all.restrict_to(all.mask_of_vectors({v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({1, 1, 0})}));
    const std::size_t gamma = static_cast<std::size_t>(*J.find(v({1, 1, 0})));
    const auto peel = check_clean_via_region_peeling(J, gamma);
    CHECK(peel.verified);
    std::size_t negative = 0;
    for (const auto& e : peel.entries) {
      if (e.side != RegionSide::negative) continue;
      ++negative;
      // Region masks index J' = J without gamma, which keeps a1 at 0 and a2 at 1.
      CHECK(e.region.test(0));
      CHECK(e.region.test(1));
    }
    CHECK(negative > 0);
  }
  SUBCASE("gamma = a1 + a2 + a3") {
    const Set J = all;
    const std::size_t gamma = static_cast<std::size_t>(*J.find(v({1, 1, 1})));
    REQUIRE(gamma == J.size() - 1);
    const auto peel = check_clean_via_region_peeling(J, gamma);
    CHECK(peel.verified);
    const Set jp = J.prefix(J.size() - 1);
    const Mask p1 = jp.mask_of_vectors({v({1, 0, 0}), v({0, 1, 1})});
    const Mask p2 = jp.mask_of_vectors({v({0, 0, 1}), v({1, 1, 0})});
    std::size_t negative = 0;
    for (const auto& e : peel.entries) {
      if (e.side != RegionSide::negative) continue;
      ++negative;
      CHECK((p1.is_subset_of(e.region) || p2.is_subset_of(e.region)));
    }
    CHECK(negative == 6);
  }
}

TEST_CASE("peeling rejects a non-clean J'") {
  const Set I = twisted_ideal();
  std::vector<Vec<Rational>> vs = I.vectors();
  vs.push_back(v({2, 2, 1}));
  const Set bigger(vs);
  CHECK_THROWS_AS(check_clean_via_region_peeling(bigger, vs.size() - 1), PreconditionViolation);
}

TEST_CASE("H3 support classes and preorder ideals") {
  const auto h3 = RootSystem<QuadScalar>::build(SystemSpec::parse("H3"));
  const auto classes = support_classes(h3);
  std::multiset<std::size_t> sizes;
  std::size_t total = 0;
  for (const auto& [key, members] : classes) {
    sizes.insert(members.count());
    total += members.count();
  }
  CHECK(classes.size() == 6);
  CHECK(total == 15);
  CHECK(sizes == std::multiset<std::size_t>{1, 1, 1, 3, 1, 8});
  const auto sweep = check_h_preorder_ideals(h3);
  CHECK(sweep.all_clean());
  // Unions of classes closed downward: brute force over all 2^6 class subsets.
  std::vector<std::pair<unsigned, Mask>> list(classes.begin(), classes.end());
  std::size_t expected = 0;
  for (unsigned bits = 0; bits < 64; ++bits) {
    bool ok = true;
    for (std::size_t a = 0; a < 6; ++a)
      for (std::size_t b = 0; b < 6; ++b)
        if ((bits >> a & 1) && !(bits >> b & 1) && (list[b].first & list[a].first) == list[b].first) ok = false;
    expected += ok;
  }
  CHECK(sweep.ideals.size() == expected);
  CHECK(sweep.ideals.front().none());
  CHECK_THROWS_AS(support_preorder_ideals(oracle::sys("A3")), PreconditionViolation);
}

TEST_CASE("threaded sweeps match the sequential ones") {
  const auto sys = oracle::sys("B3");
  IdealSweepOptions serial, threaded;
  threaded.threads = 3;
  const auto a = check_clean_all_ideals(sys, serial);
  const auto b = check_clean_all_ideals(sys, threaded);
  REQUIRE(a.ideals == b.ideals);
  for (std::size_t k = 0; k < a.reports.size(); ++k) {
    CHECK(a.reports[k].clean == b.reports[k].clean);
    CHECK(a.reports[k].stats.biclosed == b.reports[k].stats.biclosed);
  }
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::count(hits.begin(), hits.end(), 1) == 100);
  CHECK_THROWS_AS(parallel_for(10, 2, [](std::size_t i) { if (i == 7) throw SpecError("boom"); }), SpecError);
}
