#include "lpa/path_space.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lpa {

BoundaryPoint finite_point(Path p) { return {std::move(p), std::nullopt}; }

BoundaryPoint make_lasso(const Graph& g, const Path& prefix, const Path& cycle) {
  if (cycle.empty()) throw Error("lasso cycle must be nonempty");
  if (cycle.start() != cycle.end()) throw Error("lasso cycle " + to_string(cycle) + " is not closed");
  if (cycle.start() != prefix.end()) throw Error("lasso cycle does not start at the end of its prefix");

  std::vector<EdgeRef> c = cycle.edges();
  const std::size_t n = c.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = c[i] == c[i - d];
    if (periodic) {
      c.resize(d);
      break;
    }
  }
  std::vector<EdgeRef> pre = prefix.edges();
  while (!pre.empty() && pre.back() == c.back()) {
    std::rotate(c.begin(), c.end() - 1, c.end());
    pre.pop_back();
  }
  Path cyc = g.path(g.source(c.front()), c);
  return {g.path(prefix.start(), std::move(pre)), std::move(cyc)};
}

std::string to_string(const BoundaryPoint& x) {
  if (!x.is_lasso()) return to_string(x.prefix);
  return "lasso(" + to_string(x.prefix) + ";" + to_string(*x.cycle) + ")";
}

std::vector<EdgeRef> leading_edges(const BoundaryPoint& x, std::size_t n) {
  const auto& pre = x.prefix.edges();
  std::vector<EdgeRef> out(pre.begin(), pre.begin() + static_cast<std::ptrdiff_t>(std::min(n, pre.size())));
  if (x.is_lasso()) {
    const auto& c = x.cycle->edges();
    for (std::size_t i = 0; out.size() < n; ++i) out.push_back(c[i % c.size()]);
  }
  return out;
}

bool point_extends(const BoundaryPoint& x, const Path& alpha) {
  if (x.start() != alpha.start()) return false;
  return leading_edges(x, alpha.length()) == alpha.edges();
}

BoundaryPoint drop_prefix(const Graph& g, const BoundaryPoint& x, const Path& alpha) {
  const std::size_t k = alpha.length();
  if (!x.is_lasso()) return finite_point(x.prefix.suffix_from(k, g));
  if (k <= x.prefix.length()) return make_lasso(g, x.prefix.suffix_from(k, g), *x.cycle);
  const auto& c = x.cycle->edges();
  const std::size_t r = (k - x.prefix.length()) % c.size();
  std::vector<EdgeRef> rotated(c.begin() + static_cast<std::ptrdiff_t>(r), c.end());
  rotated.insert(rotated.end(), c.begin(), c.begin() + static_cast<std::ptrdiff_t>(r));
  const VertexRef at = g.source(rotated.front());
  return make_lasso(g, g.vertex_path(at), g.path(at, std::move(rotated)));
}

BoundaryPoint prepend(const Graph& g, const Path& alpha, const BoundaryPoint& x) {
  if (!x.is_lasso()) return finite_point(compose_paths(alpha, x.prefix));
  return make_lasso(g, compose_paths(alpha, x.prefix), *x.cycle);
}

std::string to_string(const CylinderSpec& c) {
  std::string s = "C(" + to_string(c.alpha);
  if (!c.g.empty()) {
    s += "; {";
    for (std::size_t i = 0; i < c.g.size(); ++i) s += (i ? ", " : "") + to_string(c.g[i]);
    s += "}";
  }
  return s + ")";
}

CylinderMeet cylinder_meet(const Path& alpha, const Path& beta) {
  if (alpha.has_prefix(beta)) return {false, true, alpha.without_prefix(beta)};
  if (beta.has_prefix(alpha)) return {false, false, beta.without_prefix(alpha)};
  return {};
}

bool point_in_Z(const BoundaryPoint& x, const CylinderSpec& spec) {
  if (!point_extends(x, spec.alpha)) return false;
  auto lead = leading_edges(x, spec.alpha.length() + 1);
  if (lead.size() == spec.alpha.length()) return true;
  return !std::binary_search(spec.g.begin(), spec.g.end(), lead.back());
}

bool in_XE(const Graph& g, const Path& p) { return g.classify(p.end()) != VertexClass::Regular; }

bool in_XE(const Graph& g, const BoundaryPoint& x) { return x.is_lasso() || in_XE(g, x.prefix); }

namespace {

// C(alpha) minus the union of C(alpha.rem) over `rems`, as disjoint specs.
void decompose(const Graph& g, const Path& alpha, const std::vector<Path>& rems, std::vector<CylinderSpec>& out) {
  std::set<EdgeRef> removed;
  std::map<EdgeRef, std::vector<Path>> deeper;
  for (const auto& r : rems) {
    const EdgeRef& first = r.edges().front();
    if (r.length() == 1) removed.insert(first);
    else deeper[first].push_back(r.suffix_from(1, g));
  }
  std::set<EdgeRef> cut = removed;
  for (const auto& [e, tails] : deeper) cut.insert(e);
  out.push_back({alpha, std::vector<EdgeRef>(cut.begin(), cut.end())});
  for (const auto& [e, tails] : deeper) {
    if (removed.count(e)) continue;
    decompose(g, alpha.extended(e, g.range(e)), tails, out);
  }
}

}  // namespace

std::optional<std::vector<CylinderSpec>> normalize_basic_set(const Graph& g, const std::vector<Path>& F,
                                                             const std::vector<Path>& G) {
  if (F.empty()) throw Error("normalize_basic_set needs a nonempty F");
  const Path* alpha = &F.front();
  for (const auto& a : F)
    if (a.length() > alpha->length()) alpha = &a;
  for (const auto& a : F)
    if (!alpha->has_prefix(a)) return std::nullopt;

  std::vector<Path> rems;
  for (const auto& b : G) {
    if (alpha->has_prefix(b)) return std::nullopt;  // C(alpha) ⊆ C(b)
    if (b.has_prefix(*alpha)) rems.push_back(b.without_prefix(*alpha));
  }
  std::vector<CylinderSpec> out;
  if (rems.empty()) {
    out.push_back({*alpha, {}});
    return out;
  }
  decompose(g, *alpha, rems, out);
  return out;
}

std::vector<Path> enumerate_paths(const Graph& g, const std::vector<VertexRef>& starts, std::size_t maxlen,
                                  std::uint32_t family_bound) {
  std::vector<Path> out;
  std::vector<Path> layer;
  for (const auto& v : starts) layer.push_back(g.vertex_path(v));
  for (std::size_t len = 0;; ++len) {
    out.insert(out.end(), layer.begin(), layer.end());
    if (len == maxlen) break;
    std::vector<Path> next;
    for (const auto& p : layer)
      for (const auto& e : g.out_edges(p.end(), family_bound).edges) next.push_back(p.extended(e, g.range(e)));
    layer = std::move(next);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::vector<BoundaryPoint> points_from(const Graph& g, const std::vector<VertexRef>& starts, const SampleBounds& b) {
  std::set<BoundaryPoint> pts;
  auto prefixes = enumerate_paths(g, starts, b.max_len, b.family_bound);
  std::set<VertexRef> ends;
  for (const auto& p : prefixes) {
    if (in_XE(g, p)) pts.insert(finite_point(p));
    ends.insert(p.end());
  }
  std::map<VertexRef, std::vector<Path>> cycles;
  for (const auto& c : enumerate_paths(g, std::vector<VertexRef>(ends.begin(), ends.end()), b.max_cycle, b.family_bound))
    if (!c.empty() && c.start() == c.end()) cycles[c.start()].push_back(c);
  for (const auto& p : prefixes) {
    auto it = cycles.find(p.end());
    if (it == cycles.end()) continue;
    for (const auto& c : it->second) pts.insert(make_lasso(g, p, c));
  }
  return {pts.begin(), pts.end()};
}

}  // namespace

std::vector<BoundaryPoint> sample_boundary_points(const Graph& g, SampleBounds bounds) {
  return points_from(g, g.vertices_up_to(bounds.family_bound), bounds);
}

std::optional<BoundaryPoint> find_witness(const Graph& g, const CylinderSpec& spec, SampleBounds bounds) {
  for (const auto& tail : points_from(g, {spec.alpha.end()}, bounds)) {
    auto x = prepend(g, spec.alpha, tail);
    if (point_in_Z(x, spec)) return x;
  }
  return std::nullopt;
}

}  // namespace lpa
