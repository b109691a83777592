#pragma once

#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "biclosed/exactnum.hpp"
#include "biclosed/linprog.hpp"
#include "biclosed/mask.hpp"
#include "biclosed/rootset.hpp"

namespace biclosed {

/// Proof of separability (theta) or of non-separability (a common nonzero
/// vector of both positive cones).
template <class S>
struct Certificate {
  enum class Kind { theta, witness };
  Kind kind = Kind::theta;
  Vec<S> theta;
  Vec<S> v;
  /// (element index, coefficient) pairs over B and over X \ B.
  std::vector<std::pair<int, S>> left;
  std::vector<std::pair<int, S>> right;
};

template <class S>
struct Separability {
  bool separable = false;
  Certificate<S> certificate;
};

/// True iff gamma = a alpha + b beta with a, b >= 0.
template <class S>
bool in_positive_span_2(const Vec<S>& gamma, const Vec<S>& alpha, const Vec<S>& beta) {
  const Eigen::Index n = gamma.size();
  Eigen::Index p = -1, q = -1;
  S det;
  for (Eigen::Index r = 0; r < n && p < 0; ++r)
    for (Eigen::Index s = r + 1; s < n; ++s) {
      S d = alpha[r] * beta[s] - alpha[s] * beta[r];
      if (sign(d) != 0) {
        p = r;
        q = s;
        det = d;
        break;
      }
    }
  if (p < 0) {
    // alpha and beta are parallel or zero: the span is a ray, a line, or {0}.
    std::vector<const Vec<S>*> gens;
    for (const Vec<S>* g : {&alpha, &beta})
      if (!is_zero_vector(*g)) gens.push_back(g);
    if (gens.empty()) return is_zero_vector(gamma);
    const Vec<S>& u = *gens.front();
    Eigen::Index k = 0;
    while (sign(u[k]) == 0) ++k;
    const S c = gamma[k] / u[k];
    for (Eigen::Index i = 0; i < n; ++i)
      if (gamma[i] != u[i] * c) return false;
    if (sign(c) >= 0) return true;
    for (const Vec<S>* g : gens)
      if (sign((*g)[k] / u[k]) < 0) return true;
    return false;
  }
  const S a = (gamma[p] * beta[q] - gamma[q] * beta[p]) / det;
  const S b = (alpha[p] * gamma[q] - alpha[q] * gamma[p]) / det;
  if (sign(a) < 0 || sign(b) < 0) return false;
  for (Eigen::Index i = 0; i < n; ++i)
    if (gamma[i] != alpha[i] * a + beta[i] * b) return false;
  return true;
}

inline Mask complement(const Mask& m) { return ~m; }

/// B meets every nontrivial plane in an angular interval.
template <class S>
bool is_closed(const RootSet<S>& set, const Mask& B) {
  for (const auto& plane : set.planes()) {
    int runs = 0;
    bool inside = false;
    for (int m : plane.members) {
      const bool in = B.test(m);
      if (in && !inside) ++runs;
      inside = in;
    }
    if (runs > 1) return false;
  }
  return true;
}

template <class S>
bool is_coclosed(const RootSet<S>& set, const Mask& B) {
  return is_closed(set, complement(B));
}

/// B meets every nontrivial plane in an initial or final angular segment.
template <class S>
bool is_biclosed(const RootSet<S>& set, const Mask& B) {
  for (const auto& plane : set.planes()) {
    int changes = 0;
    for (std::size_t k = 1; k < plane.members.size(); ++k)
      changes += B.test(plane.members[k]) != B.test(plane.members[k - 1]);
    if (changes > 1) return false;
  }
  return true;
}

/// Closedness straight from the definition, over all triples.
template <class S>
bool is_closed_by_triples(const RootSet<S>& set, const Mask& B) {
  const auto members = mask_indices(B);
  for (int i : members)
    for (int j : members) {
      if (i >= j) continue;
      for (std::size_t k = 0; k < set.size(); ++k)
        if (!B.test(k) && in_positive_span_2(set.vec(k), set.vec(i), set.vec(j))) return false;
    }
  return true;
}

template <class S>
bool is_biclosed_by_triples(const RootSet<S>& set, const Mask& B) {
  return is_closed_by_triples(set, B) && is_closed_by_triples(set, complement(B));
}

/// No element outside B lies in the positive span of B.
template <class S>
bool is_convex(const RootSet<S>& set, const Mask& B) {
  std::vector<Vec<S>> generators;
  for (auto i = B.find_first(); i != Mask::npos; i = B.find_next(i)) generators.push_back(set.vec(i));
  for (std::size_t k = 0; k < set.size(); ++k)
    if (!B.test(k) && cone_coefficients<S>(generators, set.vec(k))) return false;
  return true;
}

template <class S>
bool is_biconvex(const RootSet<S>& set, const Mask& B) {
  return is_convex(set, B) && is_convex(set, complement(B));
}

/// Exact re-evaluation of a certificate against (set, B).
template <class S>
bool verify_certificate(const RootSet<S>& set, const Mask& B, const Certificate<S>& cert) {
  if (cert.kind == Certificate<S>::Kind::theta) {
    if (cert.theta.size() != set.dimension() && !set.empty()) return false;
    for (std::size_t k = 0; k < set.size(); ++k) {
      const int s = sign(dot<S>(cert.theta, set.vec(k)));
      if (B.test(k) ? s >= 0 : s <= 0) return false;
    }
    return true;
  }
  if (is_zero_vector(cert.v)) return false;
  auto side_sum = [&](const std::vector<std::pair<int, S>>& terms, bool in_b) -> std::optional<Vec<S>> {
    Vec<S> acc = Vec<S>::Zero(cert.v.size());
    for (const auto& [idx, c] : terms) {
      if (idx < 0 || static_cast<std::size_t>(idx) >= set.size() || B.test(idx) != in_b || sign(c) < 0)
        return std::nullopt;
      acc += set.vec(idx) * c;
    }
    return acc;
  };
  const auto l = side_sum(cert.left, true);
  const auto r = side_sum(cert.right, false);
  return l && r && *l == cert.v && *r == cert.v;
}

/// Decides strict separability of B in the set by Fourier-Motzkin on
/// <theta, beta> <= -1 (beta in B), <theta, gamma> >= 1 (gamma outside B).
template <class S>
Separability<S> is_separable(const RootSet<S>& set, const Mask& B) {
  const int n = static_cast<int>(set.size());
  const int d = set.dimension();
  Separability<S> out;
  if (n == 0) {
    out.separable = true;
    out.certificate.theta = Vec<S>::Zero(d);
    return out;
  }
  Mat<S> A(n, d);
  Vec<S> b(n);
  for (int k = 0; k < n; ++k) {
    const Vec<S>& x = set.vec(k);
    for (int j = 0; j < d; ++j) A(k, j) = B.test(k) ? S(-x[j]) : x[j];
    b[k] = S(1);
  }
  const auto res = solve_inequalities<S>(A, b);
  if (res.feasible) {
    out.separable = true;
    out.certificate.kind = Certificate<S>::Kind::theta;
    out.certificate.theta = res.point;
    return out;
  }
  out.separable = false;
  auto& cert = out.certificate;
  cert.kind = Certificate<S>::Kind::witness;
  cert.v = Vec<S>::Zero(d);
  for (int k = 0; k < n; ++k) {
    if (sign(res.farkas[k]) == 0) continue;
    if (B.test(k)) {
      cert.left.emplace_back(k, res.farkas[k]);
      cert.v += set.vec(k) * res.farkas[k];
    } else {
      cert.right.emplace_back(k, res.farkas[k]);
    }
  }
  return out;
}

/// Decides whether Span+(B) and Span+(X \ B) meet only in 0, by Phase-I simplex
/// on sum_B c x - sum_{X\B} d x = 0, sum c = 1, c, d >= 0. A positive answer
/// gets its theta from a second simplex run on the margin system.
template <class S>
Separability<S> is_weakly_separable(const RootSet<S>& set, const Mask& B) {
  const int n = static_cast<int>(set.size());
  const int d = set.dimension();
  Separability<S> out;
  if (B.any() && B.count() < set.size()) {
    Mat<S> M = Mat<S>::Zero(d + 1, n);
    Vec<S> r = Vec<S>::Zero(d + 1);
    for (int k = 0; k < n; ++k) {
      const Vec<S>& x = set.vec(k);
      for (int j = 0; j < d; ++j) M(j, k) = B.test(k) ? x[j] : S(-x[j]);
      if (B.test(k)) M(d, k) = S(1);
    }
    r[d] = S(1);
    if (auto z = nonnegative_solution<S>(M, r)) {
      auto& cert = out.certificate;
      cert.kind = Certificate<S>::Kind::witness;
      cert.v = Vec<S>::Zero(d);
      for (int k = 0; k < n; ++k) {
        if (sign((*z)[k]) == 0) continue;
        if (B.test(k)) {
          cert.left.emplace_back(k, (*z)[k]);
          cert.v += set.vec(k) * (*z)[k];
        } else {
          cert.right.emplace_back(k, (*z)[k]);
        }
      }
      out.separable = false;
      return out;
    }
  }
  Mat<S> A(n, d);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < d; ++j) A(k, j) = B.test(k) ? S(-set.vec(k)[j]) : set.vec(k)[j];
  auto theta = n == 0 ? std::optional<Vec<S>>(Vec<S>::Zero(d)) : margin_solution<S>(A);
  if (!theta) throw std::logic_error("weak separability and separability disagree on a finite set");
  out.separable = true;
  out.certificate.kind = Certificate<S>::Kind::theta;
  out.certificate.theta = std::move(*theta);
  return out;
}

/// Least closed superset: repeatedly fills the angular hull of B inside each plane.
template <class S>
Mask closure(const RootSet<S>& set, const Mask& B) {
  Mask cur = B;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& plane : set.planes()) {
      const auto& ms = plane.members;
      std::size_t lo = ms.size(), hi = 0;
      for (std::size_t k = 0; k < ms.size(); ++k)
        if (cur.test(ms[k])) {
          lo = std::min(lo, k);
          hi = k;
        }
      if (lo >= hi) continue;
      for (std::size_t k = lo + 1; k < hi; ++k)
        if (!cur.test(ms[k])) {
          cur.set(ms[k]);
          changed = true;
        }
    }
  }
  return cur;
}

template <class S>
Mask interior(const RootSet<S>& set, const Mask& B) {
  return complement(closure(set, complement(B)));
}

/// Closure straight from the definition (pairwise span checks until stable).
template <class S>
Mask closure_by_triples(const RootSet<S>& set, const Mask& B) {
  Mask cur = B;
  bool changed = true;
  while (changed) {
    changed = false;
    const auto members = mask_indices(cur);
    for (std::size_t k = 0; k < set.size(); ++k) {
      if (cur.test(k)) continue;
      for (std::size_t a = 0; a < members.size() && !cur.test(k); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b)
          if (in_positive_span_2(set.vec(k), set.vec(members[a]), set.vec(members[b]))) {
            cur.set(k);
            changed = true;
            break;
          }
    }
  }
  return cur;
}

/// Connected components of the graph joining elements that share a plane.
template <class S>
std::vector<Mask> components(const RootSet<S>& set) {
  const std::size_t n = set.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& plane : set.planes())
    for (std::size_t k = 1; k < plane.members.size(); ++k)
      parent[find(plane.members[k])] = find(plane.members[0]);
  std::vector<Mask> out;
  std::vector<int> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const int r = find(static_cast<int>(i));
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.emplace_back(n);
    }
    out[slot[r]].set(i);
  }
  return out;
}

/// Connected, or a decomposition (Y1, Y2) into parts that share no plane.
template <class S>
std::pair<bool, std::optional<std::pair<Mask, Mask>>> is_connected(const RootSet<S>& set) {
  const auto comps = components(set);
  if (comps.size() <= 1) return {true, std::nullopt};
  return {false, std::make_pair(comps[0], complement(comps[0]))};
}

/// Dimension of the linear span.
template <class S>
int linear_rank(const std::vector<Vec<S>>& vectors) {
  if (vectors.empty()) return 0;
  const Eigen::Index d = vectors.front().size();
  std::vector<Vec<S>> rows(vectors.begin(), vectors.end());
  int rank = 0;
  for (Eigen::Index col = 0; col < d && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (sign(rows[r][col]) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
      if (sign(rows[r][col]) == 0) continue;
      const S f = rows[r][col] / rows[rank][col];
      rows[r] -= rows[rank] * f;
    }
    ++rank;
  }
  return rank;
}

}  // namespace biclosed
