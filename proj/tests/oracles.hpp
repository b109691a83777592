#pragma once

// Brute-force reference implementations used only by the tests.

#include <random>
#include <set>
#include <vector>

#include "biclosed/convexity.hpp"
#include "biclosed/rootsys.hpp"

namespace oracle {

using namespace biclosed;

inline Vec<Rational> v(std::initializer_list<long> xs) {
  Vec<Rational> out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (long x : xs) out[i++] = Rational(x);
  return out;
}

inline RootSystem<Rational> sys(const std::string& spec) {
  return RootSystem<Rational>::build(SystemSpec::parse(spec));
}

/// span[i][j] = elements lying in Span+(x_i, x_j), from the definition.
template <class S>
class SpanTable {
 public:
  explicit SpanTable(const RootSet<S>& set) : n_(set.size()), span_(n_ * n_, Mask(n_)) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k)
          if (in_positive_span_2(set.vec(k), set.vec(i), set.vec(j))) {
            span_[i * n_ + j].set(k);
            span_[j * n_ + i].set(k);
          }
  }
  bool closed(const Mask& B) const {
    for (auto i = B.find_first(); i != Mask::npos; i = B.find_next(i))
      for (auto j = B.find_next(i); j != Mask::npos; j = B.find_next(j))
        if (!span_[i * n_ + j].is_subset_of(B)) return false;
    return true;
  }
  bool biclosed(const Mask& B) const { return closed(B) && closed(~B); }
  Mask closure(Mask B) const {
    for (bool changed = true; changed;) {
      changed = false;
      for (auto i = B.find_first(); i != Mask::npos; i = B.find_next(i))
        for (auto j = B.find_next(i); j != Mask::npos; j = B.find_next(j))
          if (!span_[i * n_ + j].is_subset_of(B)) {
            B |= span_[i * n_ + j];
            changed = true;
          }
    }
    return B;
  }

 private:
  std::size_t n_;
  std::vector<Mask> span_;
};

inline Mask mask_from_bits(std::size_t n, unsigned long bits) {
  Mask m(n);
  for (std::size_t i = 0; i < n; ++i)
    if (bits >> i & 1) m.set(i);
  return m;
}

inline Mask random_mask(std::mt19937_64& rng, std::size_t n) {
  Mask m(n);
  for (std::size_t i = 0; i < n; ++i)
    if (rng() & 1) m.set(i);
  return m;
}

/// Sign vectors {beta : <theta, beta> < 0} over integer theta in [-r, r]^d,
/// skipping theta orthogonal to some element.
inline std::set<Mask> sampled_regions(const RootSet<Rational>& set, int r) {
  const int d = set.dimension();
  std::set<Mask> out;
  std::vector<long> theta(d, -r);
  for (;;) {
    Mask m(set.size());
    bool generic = true;
    for (std::size_t k = 0; k < set.size() && generic; ++k) {
      Rational s(0);
      for (int j = 0; j < d; ++j) s += set.vec(k)[j] * Rational(theta[j]);
      if (s.is_zero()) generic = false;
      if (s < Rational(0)) m.set(k);
    }
    if (generic) out.insert(m);
    int j = 0;
    while (j < d && theta[j] == r) theta[j++] = -r;
    if (j == d) break;
    ++theta[j];
  }
  return out;
}

/// All biclosed subsets by exhausting the power set.
inline std::set<Mask> brute_biclosed(const RootSet<Rational>& set) {
  const SpanTable<Rational> table(set);
  std::set<Mask> out;
  for (unsigned long bits = 0; bits < (1UL << set.size()); ++bits) {
    Mask m = mask_from_bits(set.size(), bits);
    if (table.biclosed(m)) out.insert(m);
  }
  return out;
}

}  // namespace oracle
