#include "biclosed/convexity.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace biclosed;
using oracle::v;

namespace {

using Set = RootSet<Rational>;

Set all_roots(const std::string& spec) { return Set::of_system(oracle::sys(spec)); }

void check_implication_chain(const Set& set, const Mask& B) {
  const auto sep = is_separable(set, B);
  const auto weak = is_weakly_separable(set, B);
  const bool biconvex = is_biconvex(set, B);
  const bool convex = is_convex(set, B);
  const bool biclosed = is_biclosed(set, B);
  const bool closed = is_closed(set, B);
  CHECK(verify_certificate(set, B, sep.certificate));
  CHECK(verify_certificate(set, B, weak.certificate));
  CHECK(sep.separable == weak.separable);
  if (sep.separable) CHECK(weak.separable);
  if (weak.separable) CHECK(biconvex);
  if (biconvex) CHECK(biclosed);
  if (biconvex) CHECK(convex);
  if (convex) CHECK(closed);
  CHECK(biclosed == (closed && is_coclosed(set, B)));
}

}  // namespace

TEST_CASE("positive span of two vectors") {
  CHECK(in_positive_span_2(v({1, 1, 0}), v({1, 0, 0}), v({0, 1, 0})));
  CHECK_FALSE(in_positive_span_2(v({0, 0, 1}), v({1, 0, 0}), v({0, 1, 0})));
  CHECK_FALSE(in_positive_span_2(v({1, -1, 0}), v({1, 0, 0}), v({0, 1, 0})));
  CHECK(in_positive_span_2(v({2, 0}), v({1, 0}), v({3, 0})));
  CHECK_FALSE(in_positive_span_2(v({-2, 0}), v({1, 0}), v({3, 0})));
  CHECK(in_positive_span_2(v({-2, 0}), v({1, 0}), v({-3, 0})));
  CHECK_FALSE(in_positive_span_2(v({1, 1}), v({1, 0}), v({2, 0})));
  // Affine A2: beta_{g-1}^a + beta_{g+1}^b lands on the middle root of the next level.
  const auto aff = oracle::sys("aff:A2@3");
  for (const auto& r : aff.roots())
    for (const auto& s : aff.roots()) {
      const Vec<Rational> sum = r.coords + s.coords;
      if (auto idx = aff.find(sum)) CHECK(in_positive_span_2(aff.coords(*idx), r.coords, s.coords));
    }
}

TEST_CASE("closed and coclosed in A2") {
  const Set a2 = all_roots("A2");
  const int a12 = *a2.find(v({1, 1}));
  Mask top(3);
  top.set(a12);
  CHECK(is_closed(a2, top));
  CHECK_FALSE(is_coclosed(a2, top));
  CHECK(is_biclosed(a2, a2.empty_mask()));
  CHECK(is_biclosed(a2, a2.full_mask()));
  const oracle::SpanTable<Rational> table(a2);
  for (unsigned long bits = 0; bits < 8; ++bits) {
    const Mask B = oracle::mask_from_bits(3, bits);
    CHECK(is_closed(a2, B) == table.closed(B));
    CHECK(is_closed(a2, B) == is_closed_by_triples(a2, B));
  }
  Mask simples(3);
  simples.set(0);
  simples.set(1);
  CHECK_FALSE(is_convex(a2, simples));
  CHECK(is_convex(a2, a2.empty_mask()));
  CHECK(closure(a2, simples) == a2.full_mask());
}

TEST_CASE("plane-based biclosedness matches the triple definition") {
  for (std::string name : {"A3", "B3", "C3", "aff:A2@2"}) {
    CAPTURE(name);
    const Set set = all_roots(name);
    const oracle::SpanTable<Rational> table(set);
    REQUIRE(set.size() <= 20);
    std::size_t agree = 0;
    for (unsigned long bits = 0; bits < (1UL << set.size()); ++bits) {
      const Mask B = oracle::mask_from_bits(set.size(), bits);
      const bool closed = is_closed(set, B);
      CHECK(closed == table.closed(B));
      if (is_biclosed(set, B) == table.biclosed(B)) ++agree;
    }
    CHECK(agree == (1UL << set.size()));
  }
  // The library's own triple-based variant, on a sample.
  const Set a3 = all_roots("A3");
  for (unsigned long bits = 0; bits < 64; ++bits) {
    const Mask B = oracle::mask_from_bits(6, bits);
    CHECK(is_biclosed(a3, B) == is_biclosed_by_triples(a3, B));
  }
}

TEST_CASE("implication chain on small systems") {
  for (std::string name : {"A2", "B2", "G2"}) {
    CAPTURE(name);
    const Set set = all_roots(name);
    for (unsigned long bits = 0; bits < (1UL << set.size()); ++bits)
      check_implication_chain(set, oracle::mask_from_bits(set.size(), bits));
  }
  const Set a3 = all_roots("A3");
  std::mt19937_64 rng(0);
  for (int trial = 0; trial < 1000; ++trial) check_implication_chain(a3, oracle::random_mask(rng, a3.size()));
}

TEST_CASE("biclosed, separable and region sets coincide on finite systems") {
  for (std::string name : {"A2", "B2", "G2", "A3", "B3", "C3"}) {
    CAPTURE(name);
    const Set set = all_roots(name);
    const auto biclosed = oracle::brute_biclosed(set);
    const auto regions = oracle::sampled_regions(set, 8);
    std::set<Mask> separable;
    for (unsigned long bits = 0; bits < (1UL << set.size()); ++bits) {
      const Mask B = oracle::mask_from_bits(set.size(), bits);
      if (is_separable(set, B).separable) separable.insert(B);
    }
    CHECK(biclosed == separable);
    CHECK(biclosed == regions);
  }
}

TEST_CASE("weak separability agrees with separability on B3") {
  const Set b3 = all_roots("B3");
  std::mt19937_64 rng(0);
  for (int trial = 0; trial < 1000; ++trial) {
    const Mask B = oracle::random_mask(rng, b3.size());
    const auto weak = is_weakly_separable(b3, B);
    const auto strict = is_separable(b3, B);
    CHECK(weak.separable == strict.separable);
    CHECK(verify_certificate(b3, B, weak.certificate));
  }
}

TEST_CASE("twisted counterexample is biclosed but not separable") {
  const auto tw = oracle::sys("tw:D3-2@1");
  const std::vector<Vec<Rational>> ideal = {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({1, 1, 0}), v({0, 1, 1}),
                                           v({2, 1, 0}), v({0, 1, 2}), v({2, 1, 1}), v({1, 1, 2})};
  std::vector<int> ids;
  for (const auto& c : ideal) ids.push_back(static_cast<int>(tw.index_of(c)));
  const Set I(ideal, ids);
  const Mask B = I.mask_of_vectors({v({1, 0, 0}), v({0, 1, 0}), v({1, 1, 0}), v({2, 1, 0}), v({1, 1, 2})});
  CHECK(is_biclosed(I, B));
  CHECK(is_biclosed_by_triples(I, B));
  const auto sep = is_separable(I, B);
  CHECK_FALSE(sep.separable);
  REQUIRE(sep.certificate.kind == Certificate<Rational>::Kind::witness);
  CHECK(verify_certificate(I, B, sep.certificate));
  CHECK_FALSE(is_weakly_separable(I, B).separable);
  CHECK(is_separable(I, I.empty_mask()).separable);
}

TEST_CASE("closure and interior") {
  const Set a3 = all_roots("A3");
  const oracle::SpanTable<Rational> table(a3);
  const Mask U = a3.mask_of_vectors({v({1, 0, 0}), v({0, 1, 1})});
  CHECK(closure(a3, U).test(*a3.find(v({1, 1, 1}))));
  for (const std::string name : {"A3", "C3", "aff:A2@1"}) {
    const Set set = all_roots(name);
    const oracle::SpanTable<Rational> t(set);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
      const Mask B = oracle::random_mask(rng, set.size());
      const Mask c = closure(set, B);
      CHECK(c == t.closure(B));
      CHECK(c == closure_by_triples(set, B));
      CHECK(B.is_subset_of(c));
      CHECK(closure(set, c) == c);
      CHECK(is_closed(set, c));
      CHECK(interior(set, B) == ~closure(set, ~B));
      CHECK(interior(set, B).is_subset_of(B));
      const Mask bigger = B | oracle::random_mask(rng, set.size());
      CHECK(c.is_subset_of(closure(set, bigger)));
    }
  }
}

TEST_CASE("connectivity") {
  const Set a3 = all_roots("A3");
  const Set pair = a3.restrict_to(a3.mask_of_vectors({v({1, 0, 0}), v({0, 0, 1})}));
  const auto [connected, parts] = is_connected(pair);
  CHECK_FALSE(connected);
  REQUIRE(parts.has_value());
  CHECK(parts->first.count() == 1);
  CHECK(parts->second.count() == 1);
  CHECK(is_connected(all_roots("A2")).first);
  CHECK(is_connected(a3).first);
  const Set ortho({v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1})});
  CHECK_FALSE(is_connected(ortho).first);
  CHECK(components(ortho).size() == 3);
  CHECK(linear_rank(ortho.vectors()) == 3);
  CHECK(linear_rank(all_roots("A2").vectors()) == 2);
}
