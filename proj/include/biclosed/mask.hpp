#pragma once

#include <cstdint>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace biclosed {

/// Membership bitset over the elements of a RootSet (bit i <-> element i).
using Mask = boost::dynamic_bitset<std::uint64_t>;

inline std::vector<int> mask_indices(const Mask& mask) {
  std::vector<int> out;
  out.reserve(mask.count());
  for (auto i = mask.find_first(); i != Mask::npos; i = mask.find_next(i)) out.push_back(static_cast<int>(i));
  return out;
}

inline Mask mask_of(std::size_t size, const std::vector<int>& members) {
  Mask mask(size);
  for (int i : members) mask.set(static_cast<std::size_t>(i));
  return mask;
}

/// The bits of m at the set positions of keep, renumbered 0..|keep|-1.
inline Mask restrict_mask(const Mask& m, const Mask& keep) {
  Mask out(keep.count());
  std::size_t k = 0;
  for (auto i = keep.find_first(); i != Mask::npos; i = keep.find_next(i), ++k)
    if (m.test(i)) out.set(k);
  return out;
}

/// Inverse of restrict_mask: places local bit k at the k-th set position of keep.
inline Mask lift_mask(const Mask& local, const Mask& keep) {
  Mask out(keep.size());
  std::size_t k = 0;
  for (auto i = keep.find_first(); i != Mask::npos; i = keep.find_next(i), ++k)
    if (local.test(k)) out.set(i);
  return out;
}

/// Orders masks by cardinality, then by the sorted member lists.
struct MaskOrder {
  bool operator()(const Mask& a, const Mask& b) const {
    const auto ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    auto i = a.find_first(), j = b.find_first();
    while (i != Mask::npos && j != Mask::npos) {
      if (i != j) return i < j;
      i = a.find_next(i);
      j = b.find_next(j);
    }
    return false;
  }
};

}  // namespace biclosed
