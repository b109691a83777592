#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "biclosed/exactnum.hpp"
#include "biclosed/mask.hpp"
#include "biclosed/rootsys.hpp"

namespace biclosed {

/// A 2-dimensional linear subset with at least three members, sorted by angle.
/// The first and last members are its fundamental vectors.
struct Plane {
  std::vector<int> members;
};

/// Ordered finite list of vectors lying in an open half-space, with its
/// nontrivial 2-planes precomputed. Pairs that share no third vector form a
/// 2-element plane and are not stored.
template <class S>
class RootSet {
 public:
  RootSet() = default;

  /// ids optionally records the index of each vector in a parent root system.
  explicit RootSet(std::vector<Vec<S>> vectors, std::vector<int> ids = {})
      : vectors_(std::move(vectors)), ids_(std::move(ids)) {
    if (ids_.empty()) {
      ids_.resize(vectors_.size());
      for (std::size_t i = 0; i < ids_.size(); ++i) ids_[i] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < vectors_.size(); ++i) lookup_.emplace(vectors_[i], static_cast<int>(i));
    compute_planes();
  }

  static RootSet of_system(const RootSystem<S>& system) {
    std::vector<Vec<S>> vs;
    vs.reserve(system.size());
    for (const auto& r : system.roots()) vs.push_back(r.coords);
    return RootSet(std::move(vs));
  }

  std::size_t size() const { return vectors_.size(); }
  bool empty() const { return vectors_.empty(); }
  int dimension() const { return vectors_.empty() ? 0 : static_cast<int>(vectors_.front().size()); }
  const Vec<S>& vec(std::size_t i) const { return vectors_[i]; }
  const std::vector<Vec<S>>& vectors() const { return vectors_; }
  int id(std::size_t i) const { return ids_[i]; }
  const std::vector<int>& ids() const { return ids_; }
  const std::vector<Plane>& planes() const { return planes_; }
  /// Planes containing element i.
  const std::vector<int>& planes_through(std::size_t i) const { return through_[i]; }

  /// Index of the plane spanned by elements i and j, or -1 for a 2-element plane.
  int plane_of(std::size_t i, std::size_t j) const {
    for (int p : through_[i])
      if (std::binary_search(sorted_members_[p].begin(), sorted_members_[p].end(), static_cast<int>(j))) return p;
    return -1;
  }

  std::optional<int> find(const Vec<S>& v) const {
    auto it = lookup_.find(v);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }

  Mask empty_mask() const { return Mask(size()); }
  Mask full_mask() const {
    Mask m(size());
    m.set();
    return m;
  }
  Mask mask_of_vectors(const std::vector<Vec<S>>& vs) const {
    Mask m(size());
    for (const auto& v : vs) {
      auto idx = find(v);
      if (!idx) throw PreconditionViolation("vector is not an element of the set");
      m.set(static_cast<std::size_t>(*idx));
    }
    return m;
  }

  /// The elements selected by keep, in their original order. Planes are filtered
  /// from this set's planes rather than recomputed.
  RootSet restrict_to(const Mask& keep) const {
    RootSet out;
    std::vector<int> remap(size(), -1);
    for (auto i = keep.find_first(); i != Mask::npos; i = keep.find_next(i)) {
      remap[i] = static_cast<int>(out.vectors_.size());
      out.vectors_.push_back(vectors_[i]);
      out.ids_.push_back(ids_[i]);
    }
    for (std::size_t i = 0; i < out.vectors_.size(); ++i) out.lookup_.emplace(out.vectors_[i], static_cast<int>(i));
    for (const auto& plane : planes_) {
      Plane q;
      for (int m : plane.members)
        if (remap[m] >= 0) q.members.push_back(remap[m]);
      if (q.members.size() >= 3) out.planes_.push_back(std::move(q));
    }
    out.index_planes();
    return out;
  }

  /// The first m elements.
  RootSet prefix(std::size_t m) const {
    Mask keep(size());
    for (std::size_t i = 0; i < m && i < size(); ++i) keep.set(i);
    return restrict_to(keep);
  }

  /// Coordinate vectors of the selected elements.
  std::vector<Vec<S>> members(const Mask& mask) const {
    std::vector<Vec<S>> out;
    for (auto i = mask.find_first(); i != Mask::npos; i = mask.find_next(i)) out.push_back(vectors_[i]);
    return out;
  }

 private:
  void compute_planes() {
    const std::size_t n = size();
    std::vector<std::vector<char>> done(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (done[i][j]) continue;
        const Vec<S>& a = vectors_[i];
        const Vec<S>& b = vectors_[j];
        // Pivot rows with a nonzero 2x2 minor.
        Eigen::Index p = -1, q = -1;
        S det;
        for (Eigen::Index r = 0; r < a.size() && p < 0; ++r)
          for (Eigen::Index s = r + 1; s < a.size(); ++s) {
            S d = a[r] * b[s] - a[s] * b[r];
            if (sign(d) != 0) {
              p = r;
              q = s;
              det = d;
              break;
            }
          }
        if (p < 0) continue;  // parallel; cannot happen in a reduced set
        struct Member {
          int index;
          S s, t;
        };
        std::vector<Member> found;
        for (std::size_t k = 0; k < n; ++k) {
          const Vec<S>& c = vectors_[k];
          const S s = (c[p] * b[q] - c[q] * b[p]) / det;
          const S t = (a[p] * c[q] - a[q] * c[p]) / det;
          bool in_plane = true;
          for (Eigen::Index r = 0; r < c.size() && in_plane; ++r)
            if (c[r] != a[r] * s + b[r] * t) in_plane = false;
          if (in_plane) found.push_back({static_cast<int>(k), s, t});
        }
        for (const auto& x : found)
          for (const auto& y : found) done[x.index][y.index] = 1;
        if (found.size() < 3) continue;
        std::sort(found.begin(), found.end(),
                  [](const Member& x, const Member& y) { return sign(x.s * y.t - x.t * y.s) > 0; });
        Plane plane;
        for (const auto& x : found) plane.members.push_back(x.index);
        planes_.push_back(std::move(plane));
      }
    }
    index_planes();
  }

  void index_planes() {
    through_.assign(size(), {});
    sorted_members_.clear();
    for (std::size_t p = 0; p < planes_.size(); ++p) {
      for (int m : planes_[p].members) through_[m].push_back(static_cast<int>(p));
      auto sorted = planes_[p].members;
      std::sort(sorted.begin(), sorted.end());
      sorted_members_.push_back(std::move(sorted));
    }
  }

  std::vector<Vec<S>> vectors_;
  std::vector<int> ids_;
  std::map<Vec<S>, int, VecLess<S>> lookup_;
  std::vector<Plane> planes_;
  std::vector<std::vector<int>> through_;
  std::vector<std::vector<int>> sorted_members_;
};

}  // namespace biclosed
