#include "biclosed/subsystem.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace biclosed;
using oracle::v;

namespace {

Mask seeds_of(const RootSystem<Rational>& sys, const std::vector<Vec<Rational>>& coords) {
  Mask m(sys.size());
  for (const auto& c : coords) m.set(sys.index_of(c));
  return m;
}

}  // namespace

TEST_CASE("generated subsystems") {
  const auto a3 = oracle::sys("A3");
  const SubsystemEngine<Rational> eng(a3);
  const auto a2 = eng.generated(seeds_of(a3, {v({1, 0, 0}), v({0, 1, 0})}));
  CHECK(a2.members == seeds_of(a3, {v({1, 0, 0}), v({0, 1, 0}), v({1, 1, 0})}));
  CHECK(a2.rank() == 2);
  const auto single = eng.generated(seeds_of(a3, {v({1, 1, 0})}));
  CHECK(single.members.count() == 1);
  CHECK(single.rank() == 1);
  const auto ortho = eng.full(seeds_of(a3, {v({1, 0, 0}), v({0, 0, 1})}));
  CHECK(ortho.members == seeds_of(a3, {v({1, 0, 0}), v({0, 0, 1})}));
}

TEST_CASE("affine A3 contains an A1 x A1 affine subsystem") {
  const auto aff = oracle::sys("aff:A3@2");
  const SubsystemEngine<Rational> eng(aff);
  // Basis order (alpha0, alpha1, alpha2, alpha3).
  const std::vector<Vec<Rational>> gens = {v({1, 1, 0, 0}), v({0, 1, 1, 0}), v({0, 0, 1, 1}), v({1, 0, 0, 1})};
  const auto sub = eng.generated(seeds_of(aff, gens));
  CHECK(sub.rank() == 4);
  std::set<Vec<Rational>, VecLess<Rational>> fundamental;
  for (int f : sub.fundamental) fundamental.insert(eng.headroom().coords(f));
  CHECK(fundamental == std::set<Vec<Rational>, VecLess<Rational>>(gens.begin(), gens.end()));
  const Vec<Rational> delta = aff.delta();
  for (const auto& g : gens)
    for (int k = 0; k <= 2; ++k) {
      const auto idx = aff.find(g + delta * Rational(k));
      if (idx) CHECK(sub.members.test(*idx));
    }
  // Only roots of the form g + k delta.
  CHECK(sub.members.count() == 4 * 3);
  // Two orthogonal seeds generate nothing more.
  const auto pair = eng.generated(seeds_of(aff, {v({0, 1, 1, 0}), v({0, 0, 1, 1})}));
  CHECK(pair.members.count() == 2);
}

TEST_CASE("full subsystem of the simple roots of affine A2 is everything") {
  for (int k = 0; k <= 2; ++k) {
    const auto aff = oracle::sys("aff:A2@" + std::to_string(k));
    const SubsystemEngine<Rational> eng(aff);
    const auto full = eng.full(seeds_of(aff, {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1})}));
    CHECK(full.members.count() == aff.size());
    CHECK(full.rank() == 3);
  }
}

TEST_CASE("full subsystems of triples have rank at most three") {
  for (std::string name : {"A3", "B3", "C3", "aff:A2@2"}) {
    CAPTURE(name);
    const auto sys = oracle::sys(name);
    const SubsystemEngine<Rational> eng(sys);
    const std::size_t n = sys.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c) {
          Mask seeds(n);
          seeds.set(a);
          seeds.set(b);
          seeds.set(c);
          const auto full = eng.full(seeds);
          CHECK(full.rank() <= 3);
          CHECK(seeds.is_subset_of(full.members));
        }
  }
}

TEST_CASE("fundamental roots") {
  const auto a3 = RootSet<Rational>::of_system(oracle::sys("A3"));
  CHECK(fundamental_roots(a3) == std::vector<int>{0, 1, 2});
  const RootSet<Rational> one({v({1, 1, 0})});
  CHECK(fundamental_roots(one) == std::vector<int>{0});
  const auto g2 = RootSet<Rational>::of_system(oracle::sys("G2"));
  CHECK(fundamental_roots(g2) == std::vector<int>{0, 1});
}
