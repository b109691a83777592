#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "json.hpp"

#include "biclosed/cleanlab.hpp"
#include "biclosed/folding.hpp"
#include "biclosed/suitability.hpp"

// JSON views of the library's results. Scalars are exact strings ("3/2",
// "1+1*r5"); subsets are sorted lists of coordinate vectors so a report does not
// depend on how the enclosing set was indexed. Timings are left out so reports
// are byte-identical across runs.
namespace biclosed::report {

using json = nlohmann::ordered_json;

template <class S>
json vec(const Vec<S>& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(to_string(v[k]));
  return out;
}

template <class S>
json vectors(std::vector<Vec<S>> vs) {
  std::sort(vs.begin(), vs.end(), VecLess<S>{});
  json out = json::array();
  for (const auto& v : vs) out.push_back(vec(v));
  return out;
}

template <class S>
json subset(const RootSet<S>& set, const Mask& m) {
  return vectors(set.members(m));
}

template <class S>
json root(const RootSystem<S>& sys, std::size_t k) {
  const auto& r = sys.root(k);
  return {{"index", k}, {"coords", vec(r.coords)}, {"level", r.level}, {"height", to_string(r.height)}};
}

template <class S>
json certificate(const RootSet<S>& set, const Certificate<S>& cert) {
  if (cert.kind == Certificate<S>::Kind::theta) return {{"kind", "theta"}, {"theta", vec(cert.theta)}};
  auto side = [&](const std::vector<std::pair<int, S>>& terms) {
    json out = json::array();
    for (const auto& [idx, c] : terms) out.push_back({{"root", vec(set.vec(idx))}, {"coefficient", to_string(c)}});
    return out;
  };
  return {{"kind", "witness"}, {"v", vec(cert.v)}, {"left", side(cert.left)}, {"right", side(cert.right)}};
}

template <class S>
json clean(const CleanReport<S>& r) {
  json out = {{"clean", r.clean},
              {"size", r.target.size()},
              {"stats", {{"biclosed", r.stats.biclosed}, {"separable", r.stats.separable}}}};
  if (r.counterexample) {
    const RootSet<S> set(r.target);
    out["counterexample"] = {{"subset", subset(set, *r.counterexample)},
                             {"witness", certificate(set, *r.witness)}};
  }
  return out;
}

template <class S>
json suitability(const OrderedPrefix<S>& prefix, const SuitabilityReport<S>& r) {
  const RootSet<S>& amb = prefix.ambient();
  json failures = json::array();
  for (const auto& f : r.failures) {
    json item = {{"reason", f.reason}, {"prefix", f.prefix}};
    json triple = json::array();
    for (int t : f.triple) triple.push_back(vec(amb.vec(t)));
    item["roots"] = triple;
    if (f.full.size() == amb.size()) item["full"] = subset(amb, f.full);
    if (f.clean) item["clean"] = clean(*f.clean);
    failures.push_back(item);
  }
  return {{"cut", prefix.cut()},
          {"suitable", r.suitable},
          {"condition1", r.condition1},
          {"condition2", r.condition2},
          {"triples", r.triples},
          {"clean_checks", r.clean_checks},
          {"failures", failures}};
}

template <class S>
json fold(const FoldingMap<S>& f, const FoldReport<S>& r) {
  json failures = json::array();
  for (const auto& x : r.failures) {
    json item = {{"reason", x.reason}};
    if (x.root.size()) item["root"] = vec(x.root);
    if (x.image.size()) item["image"] = vec(x.image);
    failures.push_back(item);
  }
  json sigma = json::array(), orbit = json::array();
  for (int s : f.sigma()) sigma.push_back(s);
  for (int o : f.orbit()) orbit.push_back(o);
  return {{"fold", f.name()},
          {"source", f.source().name()},
          {"target", f.target().name()},
          {"sigma", sigma},
          {"orbit", orbit},
          {"order", f.order()},
          {"admissible", r.admissible},
          {"condition1", r.condition1},
          {"condition2", r.condition2},
          {"condition3", r.condition3},
          {"failures", failures}};
}

}  // namespace biclosed::report
