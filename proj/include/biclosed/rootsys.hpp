#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "biclosed/exactnum.hpp"
#include "biclosed/mask.hpp"

namespace biclosed {

/// Invalid system specification or other malformed user input.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A subsystem fixpoint needed roots beyond the working truncation.
class LevelOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Family { A, B, C, D, E, F, G, H };
enum class Variant { finite, untwisted_affine, twisted_d3_2 };

struct SystemSpec {
  Family family = Family::A;
  int rank = 1;
  Variant variant = Variant::finite;
  std::optional<int> level;

  /// Accepts "A3", "H4", "aff:C2@2", "tw:D3-2@1".
  static SystemSpec parse(std::string_view text);
  std::string to_string() const;
  void validate() const;

  bool is_affine() const { return variant != Variant::finite; }
  bool needs_sqrt5() const { return family == Family::H; }
  SystemSpec with_level(int new_level) const {
    SystemSpec s = *this;
    s.level = new_level;
    return s;
  }
};

char family_letter(Family f);

namespace detail {

template <class S>
S floor_div(const S& x, const S& y);

template <>
inline Rational floor_div<Rational>(const Rational& x, const Rational& y) {
  const Rational q = x / y;
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.numerator().get_mpz_t(), q.denominator().get_mpz_t());
  return Rational(mpq_class(f));
}

template <>
inline QuadScalar floor_div<QuadScalar>(const QuadScalar& x, const QuadScalar& y) {
  if (!x.is_rational() || !y.is_rational()) throw SpecError("level arithmetic requires rational coordinates");
  return QuadScalar(floor_div<Rational>(x.rational_part(), y.rational_part()));
}

inline long to_long(const Rational& x) { return x.numerator().get_si(); }
inline long to_long(const QuadScalar& x) { return x.rational_part().numerator().get_si(); }

}  // namespace detail

/// Gram matrix (alpha_i, alpha_j) of a finite irreducible type, Bourbaki labels,
/// shortest roots of squared length 2.
template <class S>
Mat<S> finite_gram(Family family, int rank) {
  Mat<S> g = Mat<S>::Zero(rank, rank);
  auto link = [&](int i, int j, const S& v) {
    g(i, j) = v;
    g(j, i) = v;
  };
  for (int i = 0; i < rank; ++i) g(i, i) = S(2);
  switch (family) {
    case Family::A:
      for (int i = 0; i + 1 < rank; ++i) link(i, i + 1, S(-1));
      break;
    case Family::B:
      for (int i = 0; i + 1 < rank; ++i) {
        g(i, i) = S(4);
        link(i, i + 1, S(-2));
      }
      break;
    case Family::C:
      for (int i = 0; i + 2 < rank; ++i) link(i, i + 1, S(-1));
      g(rank - 1, rank - 1) = S(4);
      link(rank - 2, rank - 1, S(-2));
      break;
    case Family::D:
      for (int i = 0; i + 2 < rank; ++i) link(i, i + 1, S(-1));
      link(rank - 3, rank - 1, S(-1));
      break;
    case Family::E:
      link(0, 2, S(-1));
      link(1, 3, S(-1));
      for (int i = 2; i + 1 < rank; ++i) link(i, i + 1, S(-1));
      break;
    case Family::F:
      g(0, 0) = S(4);
      g(1, 1) = S(4);
      link(0, 1, S(-2));
      link(1, 2, S(-2));
      link(2, 3, S(-1));
      break;
    case Family::G:
      g(1, 1) = S(6);
      link(0, 1, S(-3));
      break;
    case Family::H:
      if constexpr (std::is_same_v<S, QuadScalar>) {
        link(0, 1, -QuadScalar::golden());
        for (int i = 1; i + 1 < rank; ++i) link(i, i + 1, S(-1));
      } else {
        throw SpecError("type H needs the Q(sqrt 5) scalar field");
      }
      break;
  }
  return g;
}

/// Gram matrix of the twisted affine system D3^(2).
template <class S>
Mat<S> twisted_d32_gram() {
  Mat<S> g(3, 3);
  g << S(2), S(-2), S(0), S(-2), S(4), S(-2), S(0), S(-2), S(2);
  return g;
}

template <class S>
struct Root {
  Vec<S> coords;
  /// Largest k with coords - k*delta >= 0 (0 for finite systems).
  int level = 0;
  S height;
};

/// Positive roots of a finite, affine (truncated), or non-crystallographic system,
/// stored in the canonical suitable order: (level, height, coordinates
/// lexicographically descending).
template <class S>
class RootSystem {
 public:
  RootSystem() = default;

  static RootSystem build(const SystemSpec& spec) {
    spec.validate();
    const int level = spec.level.value_or(0);
    RootSystem sys;
    switch (spec.variant) {
      case Variant::finite:
        sys = generate(spec.to_string(), finite_gram<S>(spec.family, spec.rank), std::nullopt, 0);
        break;
      case Variant::untwisted_affine: {
        RootSystem fin = build(SystemSpec{spec.family, spec.rank, Variant::finite, std::nullopt});
        auto [gram, delta] = affinize(fin);
        sys = generate(spec.to_string(), std::move(gram), std::move(delta), level);
        break;
      }
      case Variant::twisted_d3_2: {
        Vec<S> delta(3);
        delta << S(1), S(1), S(1);
        sys = generate(spec.to_string(), twisted_d32_gram<S>(), std::move(delta), level);
        break;
      }
    }
    sys.spec_ = spec;
    return sys;
  }

  /// System generated from an arbitrary Gram matrix; delta marks an affine system.
  static RootSystem from_gram(std::string name, Mat<S> gram, std::optional<Vec<S>> delta, int level) {
    return generate(std::move(name), std::move(gram), std::move(delta), level);
  }

  /// Same system at another truncation level (affine only).
  RootSystem at_level(int new_level) const {
    if (!is_affine()) throw SpecError("truncation level applies to affine systems only");
    if (spec_) return build(spec_->with_level(new_level));
    RootSystem sys = generate(name_, gram_, delta_, new_level);
    return sys;
  }

  /// Gram matrix and delta of the affinization of a finite irreducible system.
  static std::pair<Mat<S>, Vec<S>> affinize(const RootSystem& fin) {
    const int n = fin.rank();
    const Vec<S>& theta = fin.roots_.back().coords;  // unique root of maximal height
    const Vec<S> g_theta = fin.gram_ * theta;
    Mat<S> g = Mat<S>::Zero(n + 1, n + 1);
    g.block(1, 1, n, n) = fin.gram_;
    g(0, 0) = dot<S>(theta, g_theta);
    for (int j = 0; j < n; ++j) {
      g(0, j + 1) = -g_theta[j];
      g(j + 1, 0) = -g_theta[j];
    }
    Vec<S> delta(n + 1);
    delta[0] = S(1);
    delta.tail(n) = theta;
    return {std::move(g), std::move(delta)};
  }

  const std::string& name() const { return name_; }
  const std::optional<SystemSpec>& spec() const { return spec_; }
  int rank() const { return static_cast<int>(gram_.rows()); }
  const Mat<S>& gram() const { return gram_; }
  bool is_affine() const { return delta_.has_value(); }
  const Vec<S>& delta() const {
    if (!delta_) throw SpecError("finite systems have no imaginary root");
    return *delta_;
  }
  const std::optional<Vec<S>>& delta_if_affine() const { return delta_; }
  int level() const { return level_; }
  std::size_t size() const { return roots_.size(); }
  const Root<S>& root(std::size_t i) const { return roots_.at(i); }
  const std::vector<Root<S>>& roots() const { return roots_; }
  const Vec<S>& coords(std::size_t i) const { return roots_.at(i).coords; }

  std::optional<std::size_t> find(const Vec<S>& v) const {
    auto it = lookup_.find(v);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index_of(const Vec<S>& v) const {
    auto idx = find(v);
    if (!idx) throw SpecError("vector is not a stored positive root of " + name_);
    return *idx;
  }
  std::size_t simple_root(int i) const { return index_of(unit(i)); }
  Vec<S> unit(int i) const {
    Vec<S> e = Vec<S>::Zero(rank());
    e[i] = S(1);
    return e;
  }

  S pairing(const Vec<S>& u, const Vec<S>& v) const { return dot<S>(u, Vec<S>(gram_ * v)); }

  /// t_alpha(beta) = beta - 2 (alpha, beta) / (alpha, alpha) alpha.
  Vec<S> reflect(const Vec<S>& alpha, const Vec<S>& beta) const {
    const S c = S(2) * pairing(alpha, beta) / pairing(alpha, alpha);
    return beta - alpha * c;
  }

  int level_of(const Vec<S>& v) const { return level_in(v, delta_); }

  bool is_crystallographic() const {
    for (const auto& r : roots_)
      for (Eigen::Index i = 0; i < r.coords.size(); ++i)
        if constexpr (std::is_same_v<S, Rational>) {
          if (!r.coords[i].is_integer()) return false;
        } else {
          if (!r.coords[i].is_rational() || !r.coords[i].rational_part().is_integer()) return false;
        }
    return true;
  }

 private:
  static int level_in(const Vec<S>& v, const std::optional<Vec<S>>& delta) {
    if (!delta) return 0;
    std::optional<S> best;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (sign((*delta)[i]) == 0) continue;
      S k = detail::floor_div<S>(v[i], (*delta)[i]);
      if (!best || k < *best) best = k;
    }
    return static_cast<int>(detail::to_long(*best));
  }

  static bool nonnegative(const Vec<S>& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (sign(v[i]) < 0) return false;
    return true;
  }

  static RootSystem generate(std::string name, Mat<S> gram, std::optional<Vec<S>> delta, int level) {
    const int n = static_cast<int>(gram.rows());
    if (gram.cols() != n) throw SpecError("Gram matrix must be square");
    for (int i = 0; i < n; ++i) {
      if (sign(gram(i, i)) <= 0) throw SpecError("simple roots must have positive squared length");
      for (int j = 0; j < n; ++j)
        if (gram(i, j) != gram(j, i)) throw SpecError("Gram matrix must be symmetric");
    }
    if (delta && level < 0) throw SpecError("truncation level must be nonnegative");

    RootSystem sys;
    sys.name_ = std::move(name);
    sys.gram_ = std::move(gram);
    sys.delta_ = std::move(delta);
    sys.level_ = sys.delta_ ? level : 0;

    std::map<Vec<S>, bool, VecLess<S>> seen;
    std::deque<Vec<S>> queue;
    for (int i = 0; i < n; ++i) {
      Vec<S> e = Vec<S>::Zero(n);
      e[i] = S(1);
      if (level_in(e, sys.delta_) > sys.level_) continue;
      seen.emplace(e, true);
      queue.push_back(e);
    }
    // Orbit of the simple roots under simple reflections, restricted to the
    // positive cone and the truncation. Every positive root is reached from a
    // root of smaller height, and heights and levels only drop along that path.
    while (!queue.empty()) {
      Vec<S> beta = std::move(queue.front());
      queue.pop_front();
      for (int i = 0; i < n; ++i) {
        const S c = S(2) * (sys.gram_.row(i).transpose().dot(beta)) / sys.gram_(i, i);
        if (sign(c) == 0) continue;
        Vec<S> gamma = beta;
        gamma[i] -= c;
        if (!nonnegative(gamma) || is_zero_vector(gamma)) continue;
        if (sys.delta_ && level_in(gamma, sys.delta_) > sys.level_) continue;
        if (seen.count(gamma)) continue;
        if (sys.delta_ && proportional(gamma, *sys.delta_))
          continue;  // imaginary directions are never roots
        seen.emplace(gamma, true);
        queue.push_back(std::move(gamma));
      }
    }

    for (auto& [coords, unused] : seen) {
      Root<S> r;
      r.coords = coords;
      r.level = level_in(coords, sys.delta_);
      r.height = coords.sum();
      sys.roots_.push_back(std::move(r));
    }
    std::sort(sys.roots_.begin(), sys.roots_.end(), [](const Root<S>& a, const Root<S>& b) {
      if (a.level != b.level) return a.level < b.level;
      if (a.height != b.height) return a.height < b.height;
      return VecLess<S>{}(b.coords, a.coords);
    });
    for (std::size_t i = 0; i < sys.roots_.size(); ++i) sys.lookup_.emplace(sys.roots_[i].coords, i);
    sys.check_invariants();
    return sys;
  }

  static bool proportional(const Vec<S>& u, const Vec<S>& v) {
    Eigen::Index p = 0;
    while (p < v.size() && sign(v[p]) == 0) ++p;
    if (p == v.size()) return is_zero_vector(u);
    const S ratio = u[p] / v[p];
    for (Eigen::Index i = 0; i < u.size(); ++i)
      if (u[i] != v[i] * ratio) return false;
    return true;
  }

  void check_invariants() const {
    std::map<Vec<S>, std::size_t, VecLess<S>> directions;
    for (std::size_t i = 0; i < roots_.size(); ++i) {
      const Vec<S>& v = roots_[i].coords;
      if (sign(pairing(v, v)) <= 0) throw SpecError(name_ + ": generated a root of nonpositive length");
      Eigen::Index p = 0;
      while (sign(v[p]) == 0) ++p;
      const Vec<S> dir = v / v[p];
      if (!directions.emplace(dir, i).second)
        throw SpecError(name_ + ": non-reduced system (proportional roots)");
    }
  }

  std::string name_;
  std::optional<SystemSpec> spec_;
  Mat<S> gram_;
  std::optional<Vec<S>> delta_;
  int level_ = 0;
  std::vector<Root<S>> roots_;
  std::map<Vec<S>, std::size_t, VecLess<S>> lookup_;
};

/// Containment order beta <= gamma iff gamma - beta is a nonnegative combination of simple roots.
template <class S>
class RootPoset {
 public:
  explicit RootPoset(const RootSystem<S>& system) : system_(&system) {
    const std::size_t n = system.size();
    below_.assign(n, Mask(n));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        if (i != j && dominates(system.coords(j), system.coords(i))) below_[j].set(i);
    above_.assign(n, Mask(n));
    for (std::size_t j = 0; j < n; ++j)
      for (auto i = below_[j].find_first(); i != Mask::npos; i = below_[j].find_next(i)) above_[i].set(j);
    upper_covers_.assign(n, {});
    lower_covers_.assign(n, {});
    for (std::size_t j = 0; j < n; ++j) {
      for (auto i = below_[j].find_first(); i != Mask::npos; i = below_[j].find_next(i)) {
        // i is covered by j unless some k sits strictly between them.
        if (!below_[j].intersects(above_[i])) {
          lower_covers_[j].push_back(i);
          upper_covers_[i].push_back(j);
        }
      }
    }
  }

  const RootSystem<S>& system() const { return *system_; }
  std::size_t size() const { return below_.size(); }
  bool leq(std::size_t i, std::size_t j) const { return i == j || below_[j].test(i); }
  bool less(std::size_t i, std::size_t j) const { return below_[j].test(i); }
  const Mask& strictly_below(std::size_t j) const { return below_[j]; }
  const Mask& strictly_above(std::size_t i) const { return above_[i]; }
  const std::vector<std::size_t>& upper_covers(std::size_t i) const { return upper_covers_[i]; }
  const std::vector<std::size_t>& lower_covers(std::size_t j) const { return lower_covers_[j]; }

  std::vector<std::size_t> minimal_elements() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
      if (below_[i].none()) out.push_back(i);
    return out;
  }

  bool is_ideal(const Mask& members) const {
    for (auto j = members.find_first(); j != Mask::npos; j = members.find_next(j))
      if (!below_[j].is_subset_of(members)) return false;
    return true;
  }

  /// Smallest ideal containing the given roots.
  Mask downward_closure(const Mask& members) const {
    Mask out = members;
    for (auto j = members.find_first(); j != Mask::npos; j = members.find_next(j)) out |= below_[j];
    return out;
  }

 private:
  static bool dominates(const Vec<S>& hi, const Vec<S>& lo) {
    for (Eigen::Index k = 0; k < hi.size(); ++k)
      if (hi[k] < lo[k]) return false;
    return true;
  }

  const RootSystem<S>* system_;
  std::vector<Mask> below_;
  std::vector<Mask> above_;
  std::vector<std::vector<std::size_t>> upper_covers_;
  std::vector<std::vector<std::size_t>> lower_covers_;
};

struct OrderIdeal {
  Mask members;
  /// Contains a root of the maximal stored level of a truncated affine system.
  bool boundary = false;
};

/// Calls visit(ideal) once for every order ideal, in depth-first order along the
/// canonical linear extension. Ideals larger than max_size are skipped; with
/// skip_boundary, ideals touching the truncation's top level are skipped too.
template <class S, class Visit>
void for_each_ideal(const RootPoset<S>& poset, std::optional<std::size_t> max_size, bool skip_boundary,
                    Visit&& visit) {
  const RootSystem<S>& sys = poset.system();
  const std::size_t n = poset.size();
  Mask top(n);
  if (sys.is_affine())
    for (std::size_t i = 0; i < n; ++i)
      if (sys.root(i).level == sys.level()) top.set(i);
  Mask current(n);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      OrderIdeal ideal{current, current.intersects(top)};
      visit(ideal);
      return;
    }
    rec(i + 1);
    if (max_size && current.count() >= *max_size) return;
    if (skip_boundary && top.test(i)) return;
    for (std::size_t lower : poset.lower_covers(i))
      if (!current.test(lower)) return;
    current.set(i);
    rec(i + 1);
    current.reset(i);
  };
  rec(0);
}

template <class S>
std::vector<OrderIdeal> order_ideals(const RootPoset<S>& poset, std::optional<std::size_t> max_size = {},
                                     bool skip_boundary = false) {
  std::vector<OrderIdeal> out;
  for_each_ideal(poset, max_size, skip_boundary, [&](const OrderIdeal& ideal) { out.push_back(ideal); });
  return out;
}

/// Support preorder on type-H roots: beta <= gamma iff supp(beta) is contained in supp(gamma).
template <class S>
bool support_preorder_leq(const RootSystem<S>& system, const Vec<S>& beta, const Vec<S>& gamma) {
  if (!system.spec() || system.spec()->family != Family::H)
    throw PreconditionViolation("the support preorder is defined for types H3 and H4 only");
  for (Eigen::Index i = 0; i < beta.size(); ++i)
    if (sign(gamma[i]) == 0 && sign(beta[i]) != 0) return false;
  return true;
}

}  // namespace biclosed
