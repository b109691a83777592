#pragma once

// Exact feasibility engines used by the convexity predicates.
//
//  * solve_inequalities: Fourier-Motzkin elimination for A x >= b. Every derived
//    row remembers the nonnegative combination of input rows it came from, so an
//    infeasible system yields a Farkas vector directly.
//  * nonnegative_solution: Phase-I simplex (Bland's rule) for M z = r, z >= 0.

#include <algorithm>
#include <cassert>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "biclosed/exactnum.hpp"

namespace biclosed {

template <class S>
struct InequalityResult {
  bool feasible = false;
  /// A point with A x >= b (feasible case).
  Vec<S> point;
  /// y >= 0 with y^T A = 0 and y^T b > 0 (infeasible case); one entry per row.
  std::vector<S> farkas;
};

namespace detail {

template <class S>
struct FmRow {
  std::vector<S> a;
  S b;
  std::vector<std::pair<int, S>> provenance;  // sorted by row index
};

template <class S>
std::size_t hash_row(const FmRow<S>& row) {
  std::size_t h = row.b.hash();
  for (const auto& x : row.a) h = h * 1000003 ^ x.hash();
  return h;
}

struct RowKeyHash {
  std::size_t operator()(std::size_t h) const { return h; }
};

// Scales the row so that |b| = 1, or the first nonzero coefficient has |.| = 1
// when b = 0. Returns false when every coefficient vanishes.
template <class S>
bool normalize_row(FmRow<S>& row) {
  S scale;
  if (sign(row.b) != 0) {
    scale = sign(row.b) > 0 ? row.b : -row.b;
  } else {
    auto it = std::find_if(row.a.begin(), row.a.end(), [](const S& x) { return sign(x) != 0; });
    if (it == row.a.end()) return false;
    scale = sign(*it) > 0 ? *it : -*it;
  }
  if (scale == S(1)) return true;
  const S inv = S(1) / scale;
  for (auto& x : row.a) x *= inv;
  row.b *= inv;
  for (auto& [idx, c] : row.provenance) c *= inv;
  return true;
}

template <class S>
std::vector<std::pair<int, S>> combine_provenance(const std::vector<std::pair<int, S>>& p, const S& cp,
                                                  const std::vector<std::pair<int, S>>& q, const S& cq) {
  std::vector<std::pair<int, S>> out;
  out.reserve(p.size() + q.size());
  std::size_t i = 0, j = 0;
  while (i < p.size() || j < q.size()) {
    if (j == q.size() || (i < p.size() && p[i].first < q[j].first)) {
      out.emplace_back(p[i].first, p[i].second * cp);
      ++i;
    } else if (i == p.size() || q[j].first < p[i].first) {
      out.emplace_back(q[j].first, q[j].second * cq);
      ++j;
    } else {
      out.emplace_back(p[i].first, p[i].second * cp + q[j].second * cq);
      ++i;
      ++j;
    }
  }
  return out;
}

template <class S>
bool all_zero(const std::vector<S>& a) {
  return std::all_of(a.begin(), a.end(), [](const S& x) { return sign(x) == 0; });
}

}  // namespace detail

/// Decides A x >= b exactly by Fourier-Motzkin elimination.
///
/// The variable eliminated at each stage is the one producing the fewest
/// pairwise products. Derived rows built from more than (t + 1) input rows after
/// t eliminations are dropped (Chernikov's rule); this keeps the row count small
/// without changing the feasible set. Back-substitution picks the midpoint of
/// each feasible interval, or bound +/- 1 on a ray, or 0 when unconstrained.
template <class S>
InequalityResult<S> solve_inequalities(const Mat<S>& A, const Vec<S>& b) {
  using Row = detail::FmRow<S>;
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  InequalityResult<S> result;

  auto infeasible_from = [&](const Row& row) {
    result.feasible = false;
    result.farkas.assign(m, S(0));
    for (const auto& [idx, c] : row.provenance) result.farkas[idx] = c;
    return result;
  };

  std::vector<Row> rows;
  rows.reserve(m);
  for (int i = 0; i < m; ++i) {
    Row row;
    row.a.resize(n);
    for (int j = 0; j < n; ++j) row.a[j] = A(i, j);
    row.b = b[i];
    row.provenance = {{i, S(1)}};
    if (detail::all_zero(row.a)) {
      if (sign(row.b) > 0) return infeasible_from(row);
      continue;
    }
    detail::normalize_row(row);
    rows.push_back(std::move(row));
  }

  struct Stage {
    int var;
    std::vector<Row> bounding;  // rows with a nonzero coefficient on var
  };
  std::vector<Stage> stages;
  std::vector<bool> eliminated(n, false);

  for (int step = 0; step < n; ++step) {
    int best = -1;
    long best_cost = 0;
    for (int v = 0; v < n; ++v) {
      if (eliminated[v]) continue;
      long pos = 0, neg = 0;
      for (const auto& row : rows) {
        const int s = sign(row.a[v]);
        pos += s > 0;
        neg += s < 0;
      }
      const long cost = pos * neg - pos - neg;
      if (best < 0 || cost < best_cost) {
        best = v;
        best_cost = cost;
      }
    }
    eliminated[best] = true;
    const int t = step + 1;

    Stage stage{best, {}};
    std::vector<Row> pos, neg, next;
    for (auto& row : rows) {
      const int s = sign(row.a[best]);
      if (s > 0) pos.push_back(row);
      else if (s < 0) neg.push_back(row);
      else next.push_back(std::move(row));
    }
    std::unordered_map<std::size_t, std::vector<std::size_t>, detail::RowKeyHash> seen;
    auto insert_unique = [&](Row&& row) {
      const std::size_t h = detail::hash_row(row);
      auto& bucket = seen[h];
      for (std::size_t idx : bucket)
        if (next[idx].b == row.b && next[idx].a == row.a) return;
      bucket.push_back(next.size());
      next.push_back(std::move(row));
    };
    {
      std::vector<Row> carried = std::move(next);
      next.clear();
      for (auto& row : carried) insert_unique(std::move(row));
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        if (p.provenance.size() + q.provenance.size() > static_cast<std::size_t>(t + 1)) {
          // Cheap pre-check: the merged support can only be smaller if they overlap.
          std::size_t overlap = 0;
          for (std::size_t i = 0, j = 0; i < p.provenance.size() && j < q.provenance.size();) {
            if (p.provenance[i].first == q.provenance[j].first) {
              ++overlap;
              ++i;
              ++j;
            } else if (p.provenance[i].first < q.provenance[j].first) {
              ++i;
            } else {
              ++j;
            }
          }
          if (p.provenance.size() + q.provenance.size() - overlap > static_cast<std::size_t>(t + 1)) continue;
        }
        const S cp = -q.a[best];  // > 0
        const S cq = p.a[best];   // > 0
        Row row;
        row.a.resize(n);
        for (int j = 0; j < n; ++j) row.a[j] = p.a[j] * cp + q.a[j] * cq;
        row.a[best] = S(0);
        row.b = p.b * cp + q.b * cq;
        row.provenance = detail::combine_provenance(p.provenance, cp, q.provenance, cq);
        if (detail::all_zero(row.a)) {
          if (sign(row.b) > 0) return infeasible_from(row);
          continue;
        }
        detail::normalize_row(row);
        insert_unique(std::move(row));
      }
    }
    stage.bounding.reserve(pos.size() + neg.size());
    for (auto& r : pos) stage.bounding.push_back(std::move(r));
    for (auto& r : neg) stage.bounding.push_back(std::move(r));
    stages.push_back(std::move(stage));
    rows = std::move(next);
  }

  result.feasible = true;
  result.point = Vec<S>::Zero(n);
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    const int v = it->var;
    std::optional<S> lower, upper;
    for (const auto& row : it->bounding) {
      S rest = row.b;
      for (int j = 0; j < n; ++j)
        if (j != v && sign(row.a[j]) != 0) rest -= row.a[j] * result.point[j];
      const S bound = rest / row.a[v];
      if (sign(row.a[v]) > 0) {
        if (!lower || *lower < bound) lower = bound;
      } else {
        if (!upper || bound < *upper) upper = bound;
      }
    }
    if (lower && upper) {
      assert(*lower <= *upper);
      result.point[v] = (*lower + *upper) / S(2);
    } else if (lower) {
      result.point[v] = *lower + S(1);
    } else if (upper) {
      result.point[v] = *upper - S(1);
    }
  }
  return result;
}

/// Finds z >= 0 with M z = r by Phase-I simplex, or reports that none exists.
template <class S>
std::optional<Vec<S>> nonnegative_solution(const Mat<S>& M, const Vec<S>& r) {
  const int rows = static_cast<int>(M.rows());
  const int cols = static_cast<int>(M.cols());
  // Tableau columns: structural (cols), artificial (rows), rhs.
  const int width = cols + rows + 1;
  std::vector<std::vector<S>> tab(rows, std::vector<S>(width, S(0)));
  std::vector<int> basis(rows);
  for (int i = 0; i < rows; ++i) {
    const bool flip = sign(r[i]) < 0;
    for (int j = 0; j < cols; ++j) tab[i][j] = flip ? S(-M(i, j)) : M(i, j);
    tab[i][cols + i] = S(1);
    tab[i][width - 1] = flip ? S(-r[i]) : r[i];
    basis[i] = cols + i;
  }
  // Reduced costs of the Phase-I objective (minimize the sum of artificials).
  std::vector<S> cost(width, S(0));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < width; ++j)
      if (j < cols || j == width - 1) cost[j] -= tab[i][j];

  for (;;) {
    int enter = -1;
    for (int j = 0; j < cols + rows; ++j) {
      if (sign(cost[j]) < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    S best_ratio;
    for (int i = 0; i < rows; ++i) {
      if (sign(tab[i][enter]) <= 0) continue;
      S ratio = tab[i][width - 1] / tab[i][enter];
      if (leave < 0 || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) break;  // unbounded direction cannot occur in Phase I
    const S pivot = tab[leave][enter];
    for (auto& x : tab[leave]) x /= pivot;
    for (int i = 0; i < rows; ++i) {
      if (i == leave || sign(tab[i][enter]) == 0) continue;
      const S f = tab[i][enter];
      for (int j = 0; j < width; ++j)
        if (sign(tab[leave][j]) != 0) tab[i][j] -= f * tab[leave][j];
    }
    if (sign(cost[enter]) != 0) {
      const S f = cost[enter];
      for (int j = 0; j < width; ++j)
        if (sign(tab[leave][j]) != 0) cost[j] -= f * tab[leave][j];
    }
    basis[leave] = enter;
  }
  if (sign(cost[width - 1]) != 0) return std::nullopt;  // artificial sum stays positive
  Vec<S> z = Vec<S>::Zero(cols);
  for (int i = 0; i < rows; ++i)
    if (basis[i] < cols) z[basis[i]] = tab[i][width - 1];
  return z;
}

/// Finds x with A x >= 1 (all rows) by Phase-I simplex on x = u - v, A u - A v - s = 1.
template <class S>
std::optional<Vec<S>> margin_solution(const Mat<S>& A) {
  const Eigen::Index n = A.rows(), d = A.cols();
  Mat<S> M = Mat<S>::Zero(n, 2 * d + n);
  M.leftCols(d) = A;
  M.middleCols(d, d) = -A;
  for (Eigen::Index k = 0; k < n; ++k) M(k, 2 * d + k) = S(-1);
  auto z = nonnegative_solution<S>(M, Vec<S>::Constant(n, S(1)));
  if (!z) return std::nullopt;
  return Vec<S>(z->head(d) - z->segment(d, d));
}

/// Nonnegative coefficients expressing target over generators, if any exist.
template <class S>
std::optional<Vec<S>> cone_coefficients(const std::vector<Vec<S>>& generators, const Vec<S>& target) {
  const Eigen::Index dim = target.size();
  Mat<S> M(dim, static_cast<Eigen::Index>(generators.size()));
  for (std::size_t j = 0; j < generators.size(); ++j) M.col(static_cast<Eigen::Index>(j)) = generators[j];
  if (generators.empty()) {
    if (is_zero_vector(target)) return Vec<S>(0);
    return std::nullopt;
  }
  return nonnegative_solution<S>(M, target);
}

}  // namespace biclosed
