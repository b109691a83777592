#include "biclosed/suitability.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace biclosed;
using oracle::v;

namespace {

using Set = RootSet<Rational>;
using Prefix = OrderedPrefix<Rational>;

// Sets containing every element of Span+(a, b) for a, b inside, by fixpoint over X_N.
Mask naive_closure(const Set& XN, const Mask& U) { return oracle::SpanTable<Rational>(XN).closure(U); }

Mask widen(const Mask& m, std::size_t n) {
  Mask out = m;
  out.resize(n);
  return out;
}

}  // namespace

TEST_CASE("ordered prefixes validate the order") {
  const auto a2 = oracle::sys("A2");
  CHECK_NOTHROW(Prefix::canonical(a2));
  // a1 + a2 first is neither a poset refinement nor fundamental-first.
  CHECK_THROWS_AS(Prefix(a2, {2, 0, 1}, 3), PreconditionViolation);
  const auto bad = Prefix::unchecked(a2, {2, 0, 1}, 3);
  CHECK_FALSE(bad.refines_poset());
  CHECK(bad.bad_planes().size() == 1);
  const auto report = is_suitable_prefix(bad);
  CHECK_FALSE(report.suitable);
  CHECK_FALSE(report.condition1);
  CHECK_THROWS_AS(Prefix(a2, {0, 1}, 2), PreconditionViolation);
  CHECK_THROWS_AS(Prefix::canonical(a2, 4), PreconditionViolation);
}

TEST_CASE("extend_coclosed basic cases") {
  const auto a3 = oracle::sys("A3");
  const auto prefix = Prefix::canonical(a3);
  const Set& X = prefix.ambient();
  CHECK(extend_coclosed(prefix, X.empty_mask(), X.size()).none());
  // {a1, a2+a3} alone is not coclosed: a2 and a3 stay outside while a2+a3 is in.
  CHECK_FALSE(is_coclosed(X, X.mask_of_vectors({v({1, 0, 0}), v({0, 1, 1})})));
  const Mask U = X.mask_of_vectors({v({1, 0, 0}), v({0, 0, 1}), v({0, 1, 1})});
  REQUIRE(is_coclosed(X, U));
  const Mask V = extend_coclosed(prefix, U, X.size());
  CHECK(V.test(*X.find(v({1, 1, 1}))));
  CHECK(V == naive_closure(X, U));
  CHECK_THROWS_AS(extend_coclosed(prefix, X.mask_of_vectors({v({1, 1, 0})}), X.size()), PreconditionViolation);
}

TEST_CASE("extend_coclosed matches the closure oracle and restricts to biclosed U") {
  for (const std::string name : {"A3", "aff:A2@1"}) {
    const auto sys = oracle::sys(name);
    const std::size_t n = sys.size();
    for (std::size_t m = 0; m <= n; ++m) {
      const auto prefix = Prefix::canonical(sys, m);
      const Set Xm = prefix.X(m);
      for (unsigned long bits = 0; bits < (1UL << m); ++bits) {
        const Mask U = oracle::mask_from_bits(m, bits);
        if (!is_coclosed(Xm, U)) continue;
        for (std::size_t N = m; N <= n; ++N) {
          const Set XN = prefix.X(N);
          const Mask V = extend_coclosed(prefix, U, N);
          CHECK(V == naive_closure(XN, widen(U, N)));
          CHECK(is_biclosed(XN, V));
        }
        if (is_biclosed(Xm, U)) {
          Mask back = extend_coclosed(prefix, U, n);
          back.resize(m);
          CHECK(back == U);
        }
      }
    }
  }
}

TEST_CASE("closure of coclosed and interior of closed sets are biclosed on affine A2 prefixes") {
  const auto sys = oracle::sys("aff:A2@2");
  std::mt19937_64 rng(11);
  for (std::size_t m : {6, 9, 12, 18}) {
    const auto prefix = Prefix::canonical(sys, m);
    const Set X = prefix.X(m);
    for (int trial = 0; trial < 400; ++trial) {
      const Mask R = oracle::random_mask(rng, m);
      const Mask coclosed = ~closure(X, R);
      const Mask closed = closure(X, R);
      REQUIRE(is_coclosed(X, coclosed));
      CHECK(is_biclosed(X, closure(X, coclosed)));
      CHECK(is_biclosed(X, interior(X, closed)));
    }
  }
}

TEST_CASE("biclosed families have group-order sizes") {
  const std::vector<std::pair<std::string, std::size_t>> expected = {
      {"A2", 6}, {"B2", 8}, {"G2", 12}, {"A3", 24}, {"B3", 48}, {"C3", 48}};
  for (const auto& [name, count] : expected) {
    const auto sys = oracle::sys(name);
    const auto prefix = Prefix::canonical(sys);
    const auto family = enumerate_biclosed(prefix);
    CHECK(family.size() == count);
    const auto brute = oracle::brute_biclosed(prefix.prefix_set());
    CHECK(std::set<Mask>(family.members.begin(), family.members.end()) == brute);
  }
  const auto empty = enumerate_biclosed(Prefix::canonical(oracle::sys("A2"), 0));
  REQUIRE(empty.size() == 1);
  CHECK(empty.members[0].none());
}

TEST_CASE("join and meet form a lattice") {
  for (const std::string name : {"A3", "aff:A2@1"}) {
    const auto sys = oracle::sys(name);
    const auto prefix = Prefix::canonical(sys);
    const Set X = prefix.prefix_set();
    const auto family = enumerate_biclosed(prefix);
    const auto audit = audit_lattice(X, family.members);
    CHECK(audit.closed_under_operations);
    CHECK(audit.commutative);
    CHECK(audit.associative);
    CHECK(audit.absorptive);
    CHECK(audit.idempotent);
    CHECK(audit.least_upper_bound);
    CHECK(audit.greatest_lower_bound);
    for (const Mask& B : family.members) {
      CHECK(join(X, B, X.empty_mask()) == B);
      CHECK(meet(X, B, X.full_mask()) == B);
    }
    // Monotonicity of join.
    for (const Mask& B1 : family.members)
      for (const Mask& B2 : family.members) {
        if (!B1.is_subset_of(B2)) continue;
        for (std::size_t c = 0; c < family.size(); c += 3)
          CHECK(join(X, B1, family.members[c]).is_subset_of(join(X, B2, family.members[c])));
      }
  }
  const auto a3 = oracle::sys("A3");
  const Set X = Set::of_system(a3);
  const Mask s1 = X.mask_of_vectors({v({1, 0, 0})});
  const Mask s3 = X.mask_of_vectors({v({0, 0, 1})});
  CHECK(join(X, s1, s3) == (s1 | s3));
  CHECK_THROWS_AS(join(X, X.mask_of_vectors({v({1, 0, 0}), v({0, 1, 0})}), s1), PreconditionViolation);
}

TEST_CASE("cover relations and maximal chains") {
  for (const std::string name : {"A2", "A3", "aff:A2@1"}) {
    const auto prefix = Prefix::canonical(oracle::sys(name));
    const auto family = enumerate_biclosed(prefix);
    CHECK(check_cover_sizes(family));
    const auto report = conjecture_a_check(family);
    CHECK(report.ok());
    CHECK(report.walked);
    CHECK(report.consistent());
    if (name == "A2") CHECK(report.chains == 2);
    if (name == "A3") CHECK(report.chains == 16);
  }
  CHECK(check_cover_sizes(std::vector<Mask>{Mask(0)}));
  const auto x1 = Prefix::canonical(oracle::sys("A2"), 1);
  CHECK(conjecture_a_check(enumerate_biclosed(x1)).ok());
  // A family with a two-step cover fails both formulations.
  const std::vector<Mask> gappy = {oracle::mask_from_bits(2, 0), oracle::mask_from_bits(2, 3)};
  CHECK_FALSE(check_cover_sizes(gappy));
  const auto bad = conjecture_a_check(gappy, 2);
  CHECK_FALSE(bad.chains_separate);
  CHECK(bad.consistent());
}

TEST_CASE("canonical orders are suitable") {
  for (const std::string name : {"A2", "A3", "B3", "C3", "aff:A2@1"}) {
    const auto sys = oracle::sys(name);
    for (std::size_t m = 0; m <= sys.size(); ++m) {
      const auto report = is_suitable_prefix(Prefix::canonical(sys, m));
      CHECK(report.suitable);
    }
  }
}

TEST_CASE("twisted canonical order is not suitable at the bad ideal") {
  const auto sys = oracle::sys("tw:D3-2@1");
  const auto report = is_suitable_prefix(Prefix::canonical(sys));
  CHECK(report.condition1);
  CHECK_FALSE(report.condition2);
  REQUIRE_FALSE(report.failures.empty());
  const auto& f = report.failures.front();
  REQUIRE(f.clean.has_value());
  REQUIRE(f.clean->counterexample.has_value());
  const Set part(f.clean->target);
  CHECK(is_biclosed(part, *f.clean->counterexample));
  CHECK(verify_certificate(part, *f.clean->counterexample, *f.clean->witness));
}
