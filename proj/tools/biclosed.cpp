// Command-line front end. Every verb builds a JSON report; csv and text are
// flattened views of it. Exit status: 0 all checks passed, 1 a check failed,
// 2 the invocation was invalid.

#include <cstdlib>
#include <fstream>
#include <map>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "biclosed/cleanlab.hpp"
#include "biclosed/folding.hpp"
#include "biclosed/report.hpp"
#include "biclosed/suitability.hpp"
#include "suite.hpp"

using namespace biclosed;
using report::json;

namespace {

struct Config {
  std::string verb;
  std::string spec;
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::optional<std::size_t> max_size;
  std::optional<std::size_t> prefix;
  std::optional<std::size_t> target;
  std::string subset;
  std::string gamma;
  std::string order;
  std::vector<int> only;
  int level = 1;
  bool count = false;
  bool all_ideals = false;
  bool no_fast_fail = false;
  bool table = false;
  bool lemmas = false;
};

struct Result {
  json body = json::object();
  bool ok = true;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

class InvalidConfig : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

template <class S>
std::string vec_text(const Vec<S>& v) {
  std::string out;
  for (Eigen::Index k = 0; k < v.size(); ++k) out += (k ? " " : "") + to_string(v[k]);
  return out;
}

template <class S>
std::string subset_text(const RootSet<S>& set, const Mask& m) {
  std::string out;
  for (auto i = m.find_first(); i != Mask::npos; i = m.find_next(i)) out += (out.empty() ? "" : "; ") + vec_text(set.vec(i));
  return out;
}

/// "1,0,0;0,1,1" -> two vectors of the given dimension.
template <class S>
std::vector<Vec<S>> parse_vectors(const std::string& text, int dim) {
  std::vector<Vec<S>> out;
  std::stringstream all(text);
  for (std::string item; std::getline(all, item, ';');) {
    if (item.find_first_not_of(" ") == std::string::npos) continue;
    std::vector<S> xs;
    std::stringstream one(item);
    for (std::string x; std::getline(one, x, ',');) xs.push_back(parse_scalar<S>(x));
    if (static_cast<int>(xs.size()) != dim)
      throw InvalidConfig("vector '" + item + "' needs " + std::to_string(dim) + " coordinates");
    Vec<S> v(dim);
    for (int k = 0; k < dim; ++k) v[k] = xs[k];
    out.push_back(std::move(v));
  }
  return out;
}

template <class S>
RootSystem<S> build(const Config& c) {
  return RootSystem<S>::build(SystemSpec::parse(c.spec));
}

template <class S>
OrderedPrefix<S> prefix_of(const RootSystem<S>& sys, const Config& c) {
  if (c.prefix && *c.prefix > sys.size()) throw InvalidConfig("--prefix exceeds the number of stored roots");
  return OrderedPrefix<S>::canonical(sys, c.prefix.value_or(sys.size()));
}

template <class S>
Result roots(const Config& c) {
  const auto sys = build<S>(c);
  Result r;
  r.columns = {"index", "coords", "level", "height"};
  json list = json::array();
  for (std::size_t k = 0; k < sys.size(); ++k) {
    list.push_back(report::root(sys, k));
    r.rows.push_back({std::to_string(k), vec_text(sys.coords(k)), std::to_string(sys.root(k).level),
                      to_string(sys.root(k).height)});
  }
  r.body = {{"system", sys.name()}, {"count", sys.size()}, {"roots", list}};
  return r;
}

template <class S>
Result poset(const Config& c) {
  const auto sys = build<S>(c);
  const RootPoset<S> P(sys);
  Result r;
  r.columns = {"lower", "upper"};
  json covers = json::array();
  for (std::size_t j = 0; j < sys.size(); ++j)
    for (std::size_t i : P.lower_covers(j)) {
      covers.push_back({{"lower", report::vec(sys.coords(i))}, {"upper", report::vec(sys.coords(j))}});
      r.rows.push_back({vec_text(sys.coords(i)), vec_text(sys.coords(j))});
    }
  r.body = {{"system", sys.name()}, {"roots", sys.size()}, {"covers", covers}};
  return r;
}

template <class S>
Result ideals(const Config& c) {
  const auto requested = build<S>(c);
  // Affine: ideals of roots at level <= K, found inside the K+1 truncation.
  const auto sys = requested.is_affine() ? requested.at_level(requested.level() + 1) : requested;
  const RootPoset<S> P(sys);
  const RootSet<S> all = RootSet<S>::of_system(sys);
  Result r;
  r.columns = {"size", "members"};
  json list = json::array();
  std::size_t n = 0;
  for_each_ideal(P, c.max_size, sys.is_affine(), [&](const OrderIdeal& I) {
    ++n;
    if (c.count) return;
    list.push_back(report::subset(all, I.members));
    r.rows.push_back({std::to_string(I.members.count()), subset_text(all, I.members)});
  });
  r.body = {{"system", requested.name()}, {"non_boundary", sys.is_affine()}, {"count", n}};
  if (!c.count) r.body["ideals"] = list;
  return r;
}

template <class S>
Result biclosed_sets(const Config& c) {
  const auto sys = build<S>(c);
  const auto prefix = prefix_of(sys, c);
  const auto family = enumerate_biclosed(prefix);
  const RootSet<S> X = prefix.prefix_set();
  Result r;
  r.columns = {"size", "members"};
  json list = json::array();
  if (!c.count)
    for (const Mask& B : family.members) {
      list.push_back(report::subset(X, B));
      r.rows.push_back({std::to_string(B.count()), subset_text(X, B)});
    }
  r.body = {{"system", sys.name()}, {"prefix", prefix.cut()}, {"count", family.size()}};
  if (!c.count) r.body["biclosed"] = list;
  return r;
}

template <class S>
json failing_detail(const RootSet<S>& set, const CleanReport<S>& rep) {
  json out = report::clean(rep);
  json all = json::array();
  for (const Mask& B : non_separable_biclosed(set)) all.push_back(report::subset(set, B));
  out["non_separable_biclosed"] = all;
  return out;
}

template <class S>
Result clean(const Config& c) {
  const auto sys = build<S>(c);
  Result r;
  r.columns = {"size", "clean", "biclosed", "members"};
  if (c.all_ideals) {
    if (!c.subset.empty()) throw InvalidConfig("--all-ideals and --subset are exclusive");
    IdealSweepOptions opt;
    opt.max_size = c.max_size;
    opt.fast_fail = !c.no_fast_fail;
    opt.threads = c.threads;
    const auto sweep = check_clean_all_ideals(sys, opt);
    const RootSet<S> all = RootSet<S>::of_system(sweep.system);
    json failures = json::array();
    for (std::size_t k = 0; k < sweep.ideals.size(); ++k) {
      const auto& rep = sweep.reports[k];
      r.rows.push_back({std::to_string(sweep.ideals[k].count()), rep.clean ? "true" : "false",
                        std::to_string(rep.stats.biclosed), subset_text(all, sweep.ideals[k])});
      if (rep.clean) continue;
      json item = failing_detail(all.restrict_to(sweep.ideals[k]), rep);
      item["ideal"] = report::subset(all, sweep.ideals[k]);
      failures.push_back(item);
    }
    r.ok = sweep.all_clean();
    r.body = {{"system", sys.name()}, {"ideals", sweep.ideals.size()}, {"all_clean", r.ok}, {"failures", failures}};
    return r;
  }
  const RootSet<S> all = RootSet<S>::of_system(sys);
  const Mask keep = c.subset.empty() ? all.full_mask() : all.mask_of_vectors(parse_vectors<S>(c.subset, sys.rank()));
  const RootSet<S> target = all.restrict_to(keep);
  const auto rep = check_clean(target, !c.no_fast_fail);
  r.ok = rep.clean;
  r.body = {{"system", sys.name()}, {"target", report::subset(all, keep)}};
  r.body["report"] = rep.clean ? report::clean(rep) : failing_detail(target, rep);
  r.rows.push_back({std::to_string(target.size()), rep.clean ? "true" : "false", std::to_string(rep.stats.biclosed),
                    subset_text(all, keep)});
  return r;
}

template <class S>
Result peel(const Config& c) {
  const auto sys = build<S>(c);
  if (c.gamma.empty()) throw InvalidConfig("peel needs --gamma");
  const auto gv = parse_vectors<S>(c.gamma, sys.rank());
  if (gv.size() != 1) throw InvalidConfig("--gamma takes exactly one vector");
  const RootSet<S> all = RootSet<S>::of_system(sys);
  const RootPoset<S> P(sys);
  const std::size_t g = sys.index_of(gv[0]);
  Mask J = c.subset.empty() ? P.downward_closure(all.mask_of_vectors(gv))
                            : all.mask_of_vectors(parse_vectors<S>(c.subset, sys.rank()));
  if (!J.test(g)) throw InvalidConfig("gamma must belong to the ideal");
  if (P.strictly_above(g).intersects(J)) throw InvalidConfig("gamma must be maximal in the ideal");
  const RootSet<S> set = all.restrict_to(J);
  const std::size_t local = static_cast<std::size_t>(*set.find(gv[0]));
  const auto rep = check_clean_via_region_peeling(set, local);
  Mask rest = set.full_mask();
  rest.reset(local);
  const RootSet<S> jprime = set.restrict_to(rest);
  Result res;
  res.columns = {"side", "ok", "region"};
  json entries = json::array();
  for (const auto& e : rep.entries) {
    const char* side = e.side == RegionSide::crossed ? "crossed" : e.side == RegionSide::negative ? "negative" : "positive";
    entries.push_back({{"side", side}, {"ok", e.ok}, {"region", report::subset(jprime, e.region)}});
    res.rows.push_back({side, e.ok ? "true" : "false", subset_text(jprime, e.region)});
  }
  res.ok = rep.verified;
  res.body = {{"system", sys.name()}, {"gamma", report::vec(gv[0])}, {"ideal", report::subset(all, J)},
              {"verified", rep.verified}, {"regions", entries}};
  return res;
}

template <class S>
Result lattice(const Config& c) {
  const auto sys = build<S>(c);
  const auto prefix = prefix_of(sys, c);
  const RootSet<S> X = prefix.prefix_set();
  const auto family = enumerate_biclosed(prefix);
  const auto audit = audit_lattice(X, family.members);
  Result r;
  r.ok = audit.ok();
  r.body = {{"system", sys.name()},
            {"prefix", prefix.cut()},
            {"size", audit.size},
            {"ok", audit.ok()},
            {"closed_under_operations", audit.closed_under_operations},
            {"commutative", audit.commutative},
            {"associative", audit.associative},
            {"absorptive", audit.absorptive},
            {"idempotent", audit.idempotent},
            {"least_upper_bound", audit.least_upper_bound},
            {"greatest_lower_bound", audit.greatest_lower_bound}};
  if (c.table && audit.closed_under_operations) {
    std::map<Mask, std::size_t, MaskOrder> index;
    for (std::size_t k = 0; k < family.size(); ++k) index.emplace(family.members[k], k);
    json members = json::array(), joins = json::array(), meets = json::array();
    r.columns = {"a", "b", "join", "meet"};
    for (std::size_t a = 0; a < family.size(); ++a) {
      members.push_back(report::subset(X, family.members[a]));
      json jrow = json::array(), mrow = json::array();
      for (std::size_t b = 0; b < family.size(); ++b) {
        const std::size_t j = index.at(join(X, family.members[a], family.members[b]));
        const std::size_t m = index.at(meet(X, family.members[a], family.members[b]));
        jrow.push_back(j);
        mrow.push_back(m);
        r.rows.push_back({std::to_string(a), std::to_string(b), std::to_string(j), std::to_string(m)});
      }
      joins.push_back(jrow);
      meets.push_back(mrow);
    }
    r.body["members"] = members;
    r.body["join"] = joins;
    r.body["meet"] = meets;
  }
  return r;
}

template <class S>
Result covers(const Config& c) {
  const auto sys = build<S>(c);
  const auto prefix = prefix_of(sys, c);
  const RootSet<S> X = prefix.prefix_set();
  const auto family = enumerate_biclosed(prefix);
  const auto cov = hasse_covers(family.members);
  Result r;
  r.columns = {"lower", "upper", "difference"};
  json bad = json::array();
  for (const auto& [a, b] : cov) {
    const Mask diff = family.members[b] - family.members[a];
    r.rows.push_back({subset_text(X, family.members[a]), subset_text(X, family.members[b]), subset_text(X, diff)});
    if (diff.count() != 1)
      bad.push_back({{"lower", report::subset(X, family.members[a])}, {"upper", report::subset(X, family.members[b])}});
  }
  r.ok = bad.empty();
  r.body = {{"system", sys.name()}, {"prefix", prefix.cut()}, {"biclosed", family.size()},
            {"covers", cov.size()},  {"singleton_covers", r.ok}, {"violations", bad}};
  return r;
}

template <class S>
Result conj_a(const Config& c) {
  const auto sys = build<S>(c);
  const auto prefix = prefix_of(sys, c);
  const auto family = enumerate_biclosed(prefix);
  const auto rep = conjecture_a_check(family);
  Result r;
  r.ok = rep.ok() && rep.consistent();
  r.body = {{"system", sys.name()},
            {"prefix", prefix.cut()},
            {"biclosed", family.size()},
            {"maximal_chains", rep.chains},
            {"chains_walked", rep.walked},
            {"chains_separate", rep.chains_separate},
            {"singleton_covers", rep.singleton_covers},
            {"consistent", rep.consistent()}};
  return r;
}

template <class S>
Result suitable(const Config& c) {
  const auto sys = build<S>(c);
  std::vector<int> order;
  if (!c.order.empty()) {
    std::stringstream in(c.order);
    for (std::string x; std::getline(in, x, ',');) order.push_back(std::stoi(x));
  }
  std::vector<std::size_t> cuts;
  if (c.prefix) {
    if (*c.prefix > sys.size()) throw InvalidConfig("--prefix exceeds the number of stored roots");
    cuts.push_back(*c.prefix);
  } else {
    for (std::size_t m = 0; m <= sys.size(); ++m) cuts.push_back(m);
  }
  Result r;
  r.columns = {"prefix", "suitable", "triples", "failures"};
  json prefixes = json::array();
  for (std::size_t m : cuts) {
    const auto prefix = order.empty() ? OrderedPrefix<S>::canonical(sys, m) : OrderedPrefix<S>::unchecked(sys, order, m);
    const auto rep = is_suitable_prefix(prefix);
    r.ok = r.ok && rep.suitable;
    json item = report::suitability(prefix, rep);
    if (!order.empty()) item["refines_poset"] = prefix.refines_poset();
    prefixes.push_back(item);
    r.rows.push_back({std::to_string(m), rep.suitable ? "true" : "false", std::to_string(rep.triples),
                      std::to_string(rep.failures.size())});
  }
  r.body = {{"system", sys.name()}, {"order", order.empty() ? "canonical" : c.order}, {"suitable", r.ok},
            {"prefixes", prefixes}};
  return r;
}

template <class S>
Result extend(const Config& c) {
  const auto sys = build<S>(c);
  if (!c.prefix) throw InvalidConfig("extend needs --prefix");
  const auto prefix = prefix_of(sys, c);
  const std::size_t N = c.target.value_or(sys.size());
  if (N < prefix.cut() || N > sys.size()) throw InvalidConfig("--target must lie between --prefix and the root count");
  const RootSet<S> Xm = prefix.prefix_set();
  const Mask U = c.subset.empty() ? Xm.empty_mask() : Xm.mask_of_vectors(parse_vectors<S>(c.subset, sys.rank()));
  const Mask V = extend_coclosed(prefix, U, N);
  const RootSet<S> XN = prefix.X(N);
  Mask back = V;
  back.resize(prefix.cut());
  Result r;
  r.columns = {"members"};
  r.rows.push_back({subset_text(XN, V)});
  const bool biclosed_v = is_biclosed(XN, V);
  const bool biclosed_u = is_biclosed(Xm, U);
  r.ok = biclosed_v && (!biclosed_u || back == U);
  r.body = {{"system", sys.name()},     {"prefix", prefix.cut()},      {"target", N},
            {"U", report::subset(Xm, U)}, {"V", report::subset(XN, V)}, {"biclosed", biclosed_v},
            {"U_biclosed", biclosed_u},  {"restricts_to_U", back == U}};
  return r;
}

Result fold(const Config& c) {
  const auto f = build_folding<Rational>(c.spec, c.level);
  const auto rep = verify_conditions(f);
  Result r;
  r.ok = rep.ok();
  r.body = report::fold(f, rep);
  r.body["level"] = f.source().is_affine() ? json(c.level) : json(nullptr);
  r.columns = {"reason", "root", "image"};
  for (const auto& x : rep.failures)
    r.rows.push_back({x.reason, x.root.size() ? vec_text(x.root) : "", x.image.size() ? vec_text(x.image) : ""});
  if (c.lemmas) {
    if (!rep.ok()) throw InvalidConfig("--lemmas needs a fold that satisfies Conditions 1-3");
    const auto p = fold_pipeline(f, c.max_size);
    r.ok = r.ok && p.ok();
    r.body["lemmas"] = {{"ideals", p.ideals}, {"biclosed", p.biclosed}, {"separated", p.separated},
                        {"extension_ok", p.extension_ok}, {"ok", p.ok()}};
  }
  return r;
}

Result counterexample(const Config&) {
  const auto fx = twisted_counterexample<Rational>();
  const RootSet<Rational>& I = fx.ideal;
  const auto sep = is_separable(I, fx.B);
  auto v = [](int a, int b, int c) {
    Vec<Rational> out(3);
    out << Rational(a), Rational(b), Rational(c);
    return out;
  };
  const Vec<Rational> lhs = v(1, 0, 0) + v(1, 1, 2), rhs = v(2, 1, 1) + v(0, 0, 1);
  Result r;
  const bool biclosed_b = is_biclosed(I, fx.B);
  const bool verified = verify_certificate(I, fx.B, sep.certificate);
  r.ok = biclosed_b && !sep.separable && verified && lhs == rhs;
  r.body = {{"system", fx.system.name()},
            {"ideal", report::subset(I, I.full_mask())},
            {"B", report::subset(I, fx.B)},
            {"biclosed", biclosed_b},
            {"separable", sep.separable},
            {"witness", report::certificate(I, sep.certificate)},
            {"witness_verified", verified},
            {"identity", {{"left", {report::vec(v(1, 0, 0)), report::vec(v(1, 1, 2))}},
                          {"right", {report::vec(v(2, 1, 1)), report::vec(v(0, 0, 1))}},
                          {"sum", report::vec(lhs)},
                          {"holds", lhs == rhs}}}};
  return r;
}

Result h_preorder(const Config& c) {
  const auto spec = SystemSpec::parse(c.spec);
  if (spec.family != Family::H) throw InvalidConfig("h-preorder needs H3 or H4");
  const auto sys = RootSystem<QuadScalar>::build(spec);
  const auto classes = support_classes(sys);
  const auto sweep = check_h_preorder_ideals(sys, c.max_size, c.threads);
  const RootSet<QuadScalar> all = RootSet<QuadScalar>::of_system(sys);
  Result r;
  r.ok = sweep.all_clean();
  json cls = json::array();
  for (const auto& [key, m] : classes) {
    json support = json::array();
    for (int k = 0; k < sys.rank(); ++k)
      if (key >> k & 1u) support.push_back(k);
    cls.push_back({{"support", support}, {"size", m.count()}});
  }
  json failures = json::array();
  r.columns = {"size", "clean", "biclosed"};
  for (std::size_t k = 0; k < sweep.ideals.size(); ++k) {
    const auto& rep = sweep.reports[k];
    r.rows.push_back({std::to_string(sweep.ideals[k].count()), rep.clean ? "true" : "false",
                      std::to_string(rep.stats.biclosed)});
    if (!rep.clean) failures.push_back({{"ideal", report::subset(all, sweep.ideals[k])}, {"report", report::clean(rep)}});
  }
  r.body = {{"system", sys.name()}, {"classes", cls},      {"ideals", sweep.ideals.size()},
            {"all_clean", r.ok},    {"failures", failures}};
  return r;
}

Result run_acceptance(const Config& c) {
  acceptance::Options opt;
  opt.seed = c.seed;
  opt.only = c.only;
  Result r;
  r.columns = {"criterion", "passed", "seconds", "budget", "title", "detail"};
  json list = json::array();
  const bool echo = c.format == "text" && !c.out.empty();
  for (const auto& o : acceptance::run(opt, [&](const acceptance::Outcome& o) {
         if (echo) std::cerr << acceptance::format_line(o) << std::endl;
       })) {
    r.ok = r.ok && o.passed;
    list.push_back({{"criterion", o.id}, {"title", o.title}, {"passed", o.passed}, {"detail", o.detail}});
    std::ostringstream secs;
    secs.setf(std::ios::fixed);
    secs.precision(2);
    secs << o.seconds;
    r.rows.push_back({std::to_string(o.id), o.passed ? "PASS" : "FAIL", secs.str(), std::to_string(int(o.budget)),
                      o.title, o.detail});
  }
  r.body = {{"passed", r.ok}, {"criteria", list}};
  return r;
}

/// Picks Q or Q(sqrt 5) from the spec.
template <class F>
Result with_scalar(const Config& c, F&& f) {
  const auto spec = SystemSpec::parse(c.spec);
  spec.validate();
  if (spec.needs_sqrt5()) return f(QuadScalar{});
  return f(Rational{});
}

Result dispatch(const Config& c) {
  const std::string& v = c.verb;
#define BICLOSED_VERB(name, fn) \
  if (v == name) return with_scalar(c, [&](auto tag) { return fn<decltype(tag)>(c); });
  BICLOSED_VERB("roots", roots)
  BICLOSED_VERB("poset", poset)
  BICLOSED_VERB("ideals", ideals)
  BICLOSED_VERB("biclosed", biclosed_sets)
  BICLOSED_VERB("clean", clean)
  BICLOSED_VERB("peel", peel)
  BICLOSED_VERB("lattice", lattice)
  BICLOSED_VERB("covers", covers)
  BICLOSED_VERB("conj-a", conj_a)
  BICLOSED_VERB("suitable", suitable)
  BICLOSED_VERB("extend", extend)
#undef BICLOSED_VERB
  if (v == "fold") return fold(c);
  if (v == "counterexample") return counterexample(c);
  if (v == "h-preorder") return h_preorder(c);
  if (v == "acceptance") return run_acceptance(c);
  throw InvalidConfig("unknown verb " + v);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

std::string scalar_text(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

std::string render(const Config& c, const Result& r) {
  std::ostringstream out;
  if (c.format == "json") {
    json doc = {{"verb", c.verb}};
    if (!c.spec.empty()) doc["spec"] = c.spec;
    doc["seed"] = c.seed;
    doc["ok"] = r.ok;
    for (auto it = r.body.begin(); it != r.body.end(); ++it) doc[it.key()] = it.value();
    out << doc.dump(2) << "\n";
    return out.str();
  }
  if (c.format == "csv") {
    if (r.columns.empty()) {
      out << "key,value\n";
      for (auto it = r.body.begin(); it != r.body.end(); ++it)
        if (!it.value().is_structured()) out << csv_field(it.key()) << "," << csv_field(scalar_text(it.value())) << "\n";
      return out.str();
    }
    for (std::size_t k = 0; k < r.columns.size(); ++k) out << (k ? "," : "") << csv_field(r.columns[k]);
    out << "\n";
    for (const auto& row : r.rows) {
      for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << csv_field(row[k]);
      out << "\n";
    }
    return out.str();
  }
  // text
  if (c.verb == "acceptance") {
    for (const auto& row : r.rows)
      out << "criterion " << row[0] << (row[0].size() < 2 ? "  " : " ") << row[1] << "  " << row[2] << " s / "
          << row[3] << " s  " << row[4] << ": " << row[5] << "\n";
    return out.str();
  }
  out << c.verb << (c.spec.empty() ? "" : " " + c.spec) << ": " << (r.ok ? "ok" : "FAILED") << "\n";
  for (auto it = r.body.begin(); it != r.body.end(); ++it) {
    if (!it.value().is_structured())
      out << "  " << it.key() << ": " << scalar_text(it.value()) << "\n";
    else if (it.value().is_array())
      out << "  " << it.key() << ": " << it.value().size() << " entries\n";
  }
  for (const auto& row : r.rows) {
    out << "   ";
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? " | " : " ") << row[k];
    out << "\n";
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Biclosed sets, separability and cleanliness in root systems"};
  app.require_subcommand(1);
  app.fallthrough();
  Config c;
  app.add_option("--out", c.out, "Write the report to this file instead of stdout");
  app.add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--seed", c.seed, "Seed for randomized sweeps");

  auto spec_verb = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("spec", c.spec, "System, e.g. A3, aff:A2@1, tw:D3-2@1, H3")->required();
    return sub;
  };
  spec_verb("roots", "List the stored positive roots");
  spec_verb("poset", "Cover relations of the root poset");
  auto* s_ideals = spec_verb("ideals", "Enumerate order ideals (non-boundary for affine systems)");
  s_ideals->add_option("--max-size", c.max_size);
  s_ideals->add_flag("--count", c.count, "Only count");
  auto* s_bic = spec_verb("biclosed", "Enumerate biclosed subsets of a prefix");
  s_bic->add_flag("--count", c.count, "Only count");
  s_bic->add_option("--prefix", c.prefix, "Prefix length m (default: all roots)");
  auto* s_clean = spec_verb("clean", "Cleanliness of the stored roots, a subset, or every order ideal");
  s_clean->add_flag("--all-ideals", c.all_ideals);
  s_clean->add_option("--subset", c.subset, "Vectors 'a,b,c;d,e,f'");
  s_clean->add_option("--max-size", c.max_size);
  s_clean->add_flag("--no-fast-fail", c.no_fast_fail, "Count every biclosed set instead of stopping at a failure");
  auto* s_peel = spec_verb("peel", "Region-peeling check of J = J' + {gamma}");
  s_peel->add_option("--gamma", c.gamma, "The maximal root gamma")->required();
  s_peel->add_option("--subset", c.subset, "The ideal J (default: the ideal generated by gamma)");
  auto* s_lat = spec_verb("lattice", "Join/meet lattice audit");
  s_lat->add_option("--prefix", c.prefix);
  s_lat->add_flag("--table", c.table, "Include the join and meet tables");
  auto* s_cov = spec_verb("covers", "Cover relations have singleton differences");
  s_cov->add_option("--prefix", c.prefix);
  auto* s_ca = spec_verb("conj-a", "Maximal chains separate every pair of roots");
  s_ca->add_option("--prefix", c.prefix);
  auto* s_suit = spec_verb("suitable", "Suitability of prefixes of an order");
  s_suit->add_option("--prefix", c.prefix, "Only this prefix length (default: every prefix)");
  s_suit->add_option("--order", c.order, "Comma-separated root indices (default: canonical order)");
  auto* s_ext = spec_verb("extend", "Extend a coclosed subset of X_m along the order");
  s_ext->add_option("--prefix", c.prefix, "m")->required();
  s_ext->add_option("--target", c.target, "N (default: all roots)");
  s_ext->add_option("--subset", c.subset, "U as vectors 'a,b,c;d,e,f'");
  auto* s_fold = app.add_subcommand("fold", "Folding conditions and pullback lemmas");
  s_fold->add_option("name", c.spec, "Fold name")->required()->check(CLI::IsMember(folding_names()));
  s_fold->add_option("--level", c.level, "Truncation level for affine folds")->check(CLI::NonNegativeNumber);
  s_fold->add_flag("--lemmas", c.lemmas, "Run the pullback / pushforward sweep over target ideals");
  s_fold->add_option("--max-size", c.max_size);
  app.add_subcommand("counterexample", "The twisted D3 ideal with a biclosed, non-separable subset");
  auto* s_h = spec_verb("h-preorder", "Cleanliness of support-preorder ideals in H3 or H4");
  s_h->add_option("--max-size", c.max_size);
  auto* s_acc = app.add_subcommand("acceptance", "Run the acceptance criteria");
  s_acc->add_option("--only", c.only, "Criterion ids")->delimiter(',')->check(CLI::Range(1, 11));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  c.verb = app.get_subcommands().front()->get_name();
  if (const char* t = std::getenv("BICLOSED_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(t, &end, 10);
    if (*t == '\0' || *end != '\0' || n < 1 || n > 1024) {
      std::cerr << "error: BICLOSED_THREADS must be a positive integer\n";
      return 2;
    }
    c.threads = static_cast<unsigned>(n);
  }

  Result result;
  try {
    result = dispatch(c);
  } catch (const InvalidConfig& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  const std::string text = render(c, result);
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(c.out);
    if (!file) {
      std::cerr << "error: cannot write " << c.out << "\n";
      return 2;
    }
    file << text;
  }
  return result.ok ? 0 : 1;
}
