#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "biclosed/convexity.hpp"
#include "biclosed/enumerate.hpp"
#include "biclosed/linprog.hpp"
#include "biclosed/rootset.hpp"
#include "biclosed/rootsys.hpp"

namespace biclosed {

/// Names accepted by build_folding.
inline const std::vector<std::string>& folding_names() {
  static const std::vector<std::string> names = {"D4-B3", "A5-C3", "aff:A3-C2", "aff:D4-G2", "aff:D4-D3-2",
                                                 "aff:A5-A2"};
  return names;
}

/// Orbit-averaging fold between a source system and a target system, both in
/// simple-root coordinates. p sends source simple root i to target simple root
/// orbit[i]; i sends target simple root j to the average of its orbit.
template <class S>
class FoldingMap {
 public:
  FoldingMap(std::string name, RootSystem<S> source, RootSystem<S> target, std::vector<int> sigma,
             std::vector<int> orbit)
      : name_(std::move(name)), source_(std::move(source)), target_(std::move(target)), sigma_(std::move(sigma)),
        orbit_(std::move(orbit)) {
    const int n = source_.rank(), r = target_.rank();
    if (static_cast<int>(sigma_.size()) != n || static_cast<int>(orbit_.size()) != n)
      throw SpecError("fold data does not match the source rank");
    order_ = 1;
    for (std::vector<int> power = sigma_; !is_identity(power); power = compose(sigma_, power)) ++order_;
    std::vector<int> orbit_size(r, 0);
    for (int o : orbit_) {
      if (o < 0 || o >= r) throw SpecError("orbit label out of range");
      ++orbit_size[o];
    }
    p_ = Mat<S>::Zero(r, n);
    i_ = Mat<S>::Zero(n, r);
    for (int k = 0; k < n; ++k) {
      p_(orbit_[k], k) = S(1);
      i_(k, orbit_[k]) = S(1) / S(orbit_size[orbit_[k]]);
    }
    // m times the restricted form, on the images of the target simple roots.
    folded_gram_ = i_.transpose() * source_.gram() * i_ * S(order_);
    // p(delta_hat) = c delta with c >= 1 makes target levels dominate source
    // levels, so fibers of stored target roots are fully stored.
    if (source_.is_affine() != target_.is_affine()) throw SpecError("fold must be finite-finite or affine-affine");
    if (source_.is_affine()) {
      const Vec<S> img = p_ * source_.delta();
      const S c = img[0] / target_.delta()[0];
      if (img != Vec<S>(target_.delta() * c) || c < S(1) || source_.level() != target_.level())
        throw std::logic_error("fold does not keep fibers inside the stored truncation");
    }
    source_set_ = RootSet<S>::of_system(source_);
    target_set_ = RootSet<S>::of_system(target_);
    image_.assign(source_.size(), -1);
    for (std::size_t k = 0; k < source_.size(); ++k)
      if (auto t = target_.find(project(source_.coords(k)))) image_[k] = static_cast<int>(*t);
  }

  const std::string& name() const { return name_; }
  const RootSystem<S>& source() const { return source_; }
  const RootSystem<S>& target() const { return target_; }
  const std::vector<int>& sigma() const { return sigma_; }
  const std::vector<int>& orbit() const { return orbit_; }
  int order() const { return order_; }
  const Mat<S>& p() const { return p_; }
  const Mat<S>& i() const { return i_; }
  const Mat<S>& folded_gram() const { return folded_gram_; }
  const RootSet<S>& source_set() const { return source_set_; }
  const RootSet<S>& target_set() const { return target_set_; }
  /// Index of f(source root k) among the stored target roots, or -1.
  int image_index(std::size_t k) const { return image_[k]; }

  /// sigma permutes the source simple roots preserving pairings, with each orbit
  /// pairwise orthogonal, and the folded form equals the target Gram matrix.
  bool is_admissible() const {
    const Mat<S>& g = source_.gram();
    const int n = source_.rank();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (g(sigma_[a], sigma_[b]) != g(a, b)) return false;
        if (a != b && orbit_[a] == orbit_[b] && sign(g(a, b)) != 0) return false;
        if ((orbit_[sigma_[a]] != orbit_[a])) return false;
      }
    return folded_gram_ == target_.gram();
  }

  Vec<S> project(const Vec<S>& source_coords) const { return p_ * source_coords; }
  Vec<S> embed(const Vec<S>& target_coords) const { return i_ * target_coords; }
  /// The pulled-back functional i*(theta_hat) in target coordinates.
  Vec<S> pull_functional(const Vec<S>& theta_hat) const { return i_.transpose() * theta_hat; }

  /// Source root index after applying sigma.
  std::size_t act(std::size_t source_index) const {
    const Vec<S>& c = source_.coords(source_index);
    Vec<S> out(c.size());
    for (Eigen::Index k = 0; k < c.size(); ++k) out[sigma_[k]] = c[k];
    return source_.index_of(out);
  }

 private:
  static bool is_identity(const std::vector<int>& p) {
    for (std::size_t k = 0; k < p.size(); ++k)
      if (p[k] != static_cast<int>(k)) return false;
    return true;
  }
  static std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[b[k]];
    return out;
  }

  std::string name_;
  RootSystem<S> source_, target_;
  std::vector<int> sigma_, orbit_;
  int order_ = 1;
  Mat<S> p_, i_, folded_gram_;
  RootSet<S> source_set_, target_set_;
  std::vector<int> image_;
};

/// The four standard folds plus the two that fail Condition 2. Affine folds are
/// built with source and target truncated at `level`.
template <class S>
FoldingMap<S> build_folding(const std::string& name, int level = 1) {
  auto sys = [](const std::string& spec) { return RootSystem<S>::build(SystemSpec::parse(spec)); };
  const std::string at = "@" + std::to_string(level);
  // Simple roots are 0-based: finite systems in Bourbaki order, affine systems with alpha_0 first.
  if (name == "D4-B3") return FoldingMap<S>(name, sys("D4"), sys("B3"), {0, 1, 3, 2}, {0, 1, 2, 2});
  if (name == "A5-C3") return FoldingMap<S>(name, sys("A5"), sys("C3"), {4, 3, 2, 1, 0}, {0, 1, 2, 1, 0});
  if (name == "aff:A3-C2")
    return FoldingMap<S>(name, sys("aff:A3" + at), sys("aff:C2" + at), {0, 3, 2, 1}, {0, 1, 2, 1});
  if (name == "aff:D4-G2")
    return FoldingMap<S>(name, sys("aff:D4" + at), sys("aff:G2" + at), {0, 3, 2, 4, 1}, {0, 1, 2, 1, 1});
  if (name == "aff:D4-D3-2")
    return FoldingMap<S>(name, sys("aff:D4" + at), sys("tw:D3-2" + at), {1, 0, 2, 4, 3}, {0, 0, 1, 2, 2});
  if (name == "aff:A5-A2")
    return FoldingMap<S>(name, sys("aff:A5" + at), sys("aff:A2" + at), {3, 4, 5, 0, 1, 2}, {0, 1, 2, 0, 1, 2});
  throw SpecError("unknown folding '" + name + "'");
}

template <class S>
struct ConditionFailure {
  Vec<S> root;   // source root (condition 2) or target root (conditions 1, 3)
  Vec<S> image;  // its image, or i(alpha) for condition 3
  std::string reason;
};

template <class S>
struct FoldReport {
  bool admissible = true;
  bool condition1 = true;
  bool condition2 = true;
  bool condition3 = true;
  std::vector<ConditionFailure<S>> failures;
  bool ok() const { return admissible && condition1 && condition2 && condition3; }
};

namespace detail {

/// Nonzero multiple of delta.
template <class S>
bool is_imaginary(const RootSystem<S>& sys, const Vec<S>& c) {
  if (!sys.is_affine() || is_zero_vector(c)) return false;
  const Vec<S>& d = sys.delta();
  const S ratio = c[0] / d[0];
  return c == Vec<S>(d * ratio);
}

}  // namespace detail

/// Conditions 1-3 on every stored root. Condition 2 images are looked up in a
/// target truncation tall enough to hold them; surjectivity onto the stored
/// target roots is part of Condition 2.
template <class S>
FoldReport<S> verify_conditions(const FoldingMap<S>& f) {
  FoldReport<S> report;
  const RootSystem<S>& src = f.source();
  const RootSystem<S>& tgt = f.target();
  report.admissible = f.is_admissible();
  if (!report.admissible) report.failures.push_back({Vec<S>(), Vec<S>(), "sigma is not an admissible diagram symmetry"});

  for (int k = 0; k < src.rank(); ++k) {
    const Vec<S> img = f.project(src.unit(k));
    if (img != tgt.unit(f.orbit()[k])) {
      report.condition1 = false;
      report.failures.push_back({src.unit(k), img, "simple root does not map to a simple root"});
    }
  }

  int top = tgt.is_affine() ? tgt.level() : 0;
  for (const auto& r : src.roots()) top = std::max(top, tgt.level_of(f.project(r.coords)));
  const RootSystem<S> tall = tgt.is_affine() && top > tgt.level() ? tgt.at_level(top) : tgt;
  std::vector<char> hit(tgt.size(), 0);
  for (const auto& r : src.roots()) {
    const Vec<S> img = f.project(r.coords);
    if (auto t = tgt.find(img)) {
      hit[*t] = 1;
    } else if (!tall.find(img)) {
      report.condition2 = false;
      report.failures.push_back(
          {r.coords, img, detail::is_imaginary(tgt, img) ? "image is imaginary" : "image is not a root"});
    }
  }
  for (std::size_t t = 0; t < tgt.size(); ++t)
    if (!hit[t]) {
      report.condition2 = false;
      report.failures.push_back({tgt.coords(t), Vec<S>(), "target root has an empty fiber"});
    }

  for (std::size_t t = 0; t < tgt.size(); ++t) {
    std::vector<Vec<S>> fiber;
    for (const auto& r : src.roots())
      if (f.project(r.coords) == tgt.coords(t)) fiber.push_back(r.coords);
    const Vec<S> lifted = f.embed(tgt.coords(t));
    if (fiber.empty() || !cone_coefficients<S>(fiber, lifted)) {
      report.condition3 = false;
      report.failures.push_back({tgt.coords(t), lifted, "i(alpha) is not in the span of its fiber"});
    }
  }
  return report;
}

/// Source roots whose image lies in the target subset.
template <class S>
Mask preimage(const FoldingMap<S>& f, const Mask& target_subset) {
  Mask out(f.source().size());
  for (std::size_t k = 0; k < out.size(); ++k)
    if (const int t = f.image_index(k); t >= 0 && target_subset.test(t)) out.set(k);
  return out;
}

/// f^-1(I) for an order ideal I of the target, checked to be an order ideal of the source.
template <class S>
Mask pullback_ideal(const FoldingMap<S>& f, const Mask& ideal) {
  if (!RootPoset<S>(f.target()).is_ideal(ideal)) throw PreconditionViolation("pullback_ideal needs an order ideal");
  Mask out = preimage(f, ideal);
  if (!RootPoset<S>(f.source()).is_ideal(out)) throw std::logic_error("preimage of an ideal is not an ideal");
  return out;
}

/// f^-1(B) for B biclosed in the ideal I (both target masks), checked biclosed in f^-1(I).
template <class S>
Mask pullback_biclosed(const FoldingMap<S>& f, const Mask& ideal, const Mask& B) {
  const RootSet<S> tset = f.target_set().restrict_to(ideal);
  if (!B.is_subset_of(ideal) || !is_biclosed(tset, restrict_mask(B, ideal)))
    throw PreconditionViolation("pullback_biclosed needs B biclosed in I");
  const Mask hat_ideal = preimage(f, ideal);
  const Mask hat_b = preimage(f, B);
  const RootSet<S> sset = f.source_set().restrict_to(hat_ideal);
  if (!is_biclosed(sset, restrict_mask(hat_b, hat_ideal)))
    throw std::logic_error("preimage of a biclosed set is not biclosed");
  return hat_b;
}

/// theta = i*(theta_hat), checked to separate B in I strictly.
template <class S>
Vec<S> pushforward_separability(const FoldingMap<S>& f, const Mask& ideal, const Mask& B, const Vec<S>& theta_hat) {
  const RootSystem<S>& src = f.source();
  if (theta_hat.size() != src.rank()) throw PreconditionViolation("theta_hat has the wrong dimension");
  const Mask hat_ideal = preimage(f, ideal), hat_b = preimage(f, B);
  for (auto k = hat_ideal.find_first(); k != Mask::npos; k = hat_ideal.find_next(k)) {
    const int s = sign(dot<S>(theta_hat, src.coords(k)));
    if (hat_b.test(k) ? s >= 0 : s <= 0) throw PreconditionViolation("theta_hat does not separate f^-1(B)");
  }
  const Vec<S> theta = f.pull_functional(theta_hat);
  const RootSystem<S>& tgt = f.target();
  for (auto k = ideal.find_first(); k != Mask::npos; k = ideal.find_next(k)) {
    const int s = sign(dot<S>(theta, tgt.coords(k)));
    if (B.test(k) ? s >= 0 : s <= 0) throw std::logic_error("pushed-forward functional does not separate B");
  }
  return theta;
}

template <class S>
struct PipelineReport {
  std::size_t ideals = 0;
  std::size_t biclosed = 0;
  std::size_t separated = 0;
  /// Closure of f^-1(B) in the stored source roots restricts back to f^-1(B) and is sigma-invariant.
  bool extension_ok = true;
  bool ok() const { return extension_ok && separated == biclosed; }
};

/// For every order ideal I of the target (size <= max_size; non-boundary for
/// affine targets) and every B biclosed in I: pull back, extend by closure in
/// the source, separate f^-1(B) in f^-1(I) by exact LP, and push forward.
template <class S>
PipelineReport<S> fold_pipeline(const FoldingMap<S>& f, std::optional<std::size_t> max_size = {}) {
  PipelineReport<S> report;
  const RootSystem<S>& tgt = f.target();
  const RootSystem<S>& src = f.source();
  const RootSet<S>& tall = f.target_set();
  const RootSet<S>& sall = f.source_set();
  // Boundary ideals are those touching the top stored level.
  const bool affine = tgt.is_affine();
  for_each_ideal(RootPoset<S>(tgt), max_size, false, [&](const OrderIdeal& ideal) {
    if (affine) {
      for (auto k = ideal.members.find_first(); k != Mask::npos; k = ideal.members.find_next(k))
        if (tgt.root(k).level >= tgt.level()) return;
    }
    ++report.ideals;
    const Mask hat_ideal = pullback_ideal(f, ideal.members);
    const RootSet<S> tset = tall.restrict_to(ideal.members);
    const RootSet<S> sset = sall.restrict_to(hat_ideal);
    for (const Mask& local : enumerate_biclosed(tset)) {
      ++report.biclosed;
      const Mask B = lift_mask(local, ideal.members);
      const Mask hat_b = pullback_biclosed(f, ideal.members, B);
      const Mask closed = closure(sall, hat_b);
      if ((closed & hat_ideal) != hat_b) report.extension_ok = false;
      for (auto k = closed.find_first(); k != Mask::npos; k = closed.find_next(k))
        if (!closed.test(f.act(k))) report.extension_ok = false;
      const auto sep = is_weakly_separable(sset, restrict_mask(hat_b, hat_ideal));
      if (!sep.separable) continue;
      // The empty ideal yields a zero-length functional.
      const Vec<S> theta_hat = sep.certificate.theta.size() ? sep.certificate.theta : Vec<S>(Vec<S>::Zero(src.rank()));
      pushforward_separability(f, ideal.members, B, theta_hat);
      ++report.separated;
    }
  });
  return report;
}

}  // namespace biclosed
