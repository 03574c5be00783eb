#include "oracles.hpp"

#include <algorithm>

namespace lpa::test {

namespace {

// Membership in Z(alpha, beta) straight from the definition.
bool in_bisection(const Graph& g, const Bisection& b, const GroupoidPoint& p) {
  if (p.k != static_cast<long>(b.alpha.length()) - static_cast<long>(b.beta.length())) return false;
  if (!point_extends(p.x, b.alpha) || !point_extends(p.y, b.beta)) return false;
  return drop_prefix(g, p.x, b.alpha) == drop_prefix(g, p.y, b.beta);
}

Scalar value_at(const Graph& g, const SteinbergElement& f, const GroupoidPoint& p) {
  Scalar s = 0;
  for (const auto& [b, c] : f.terms())
    if (in_bisection(g, b, p)) s += c;
  return s;
}

bool reducible(const Graph& g, const Monomial& m) {
  if (m.p.empty() || m.q.empty()) return false;
  const EdgeRef& last = m.p.edges().back();
  if (last != m.q.edges().back()) return false;
  const VertexRef u = g.source(last);
  if (g.classify(u) != VertexClass::Regular) return false;
  return g.special_edge(u) == last;
}

LpaElement image_sum(const std::vector<LpaElement>& parts) {
  LpaElement s;
  for (const auto& a : parts) s.add(a);
  return s;
}

// Depth-first walk over every path of length <= maxlen from the given starts.
std::vector<Path> walk_paths(const Graph& g, const std::vector<VertexRef>& starts, std::size_t maxlen,
                             std::uint32_t family_bound) {
  std::vector<Path> paths;
  std::vector<std::pair<VertexRef, std::vector<EdgeRef>>> frontier;
  for (const auto& h : starts) frontier.push_back({h, {}});
  while (!frontier.empty()) {
    auto [start, word] = frontier.back();
    frontier.pop_back();
    const Path p = g.path(start, word);
    paths.push_back(p);
    if (word.size() == maxlen) continue;
    for (const auto& e : g.out_edges(p.end(), family_bound).edges) {
      auto next = word;
      next.push_back(e);
      frontier.push_back({start, std::move(next)});
    }
  }
  return paths;
}

}  // namespace

Scalar convolution_at(const Graph& g, const SteinbergElement& f, const SteinbergElement& h, const GroupoidPoint& gamma) {
  std::set<GroupoidPoint> arrows;
  for (const auto& [b, c] : f.terms()) {
    if (!point_extends(gamma.x, b.alpha)) continue;
    const BoundaryPoint t = drop_prefix(g, gamma.x, b.alpha);
    const long k = static_cast<long>(b.alpha.length()) - static_cast<long>(b.beta.length());
    arrows.insert(GroupoidPoint{gamma.x, k, prepend(g, b.beta, t)});
  }
  Scalar total = 0;
  for (const auto& a : arrows) {
    const GroupoidPoint rest{a.y, gamma.k - a.k, gamma.y};
    total += value_at(g, f, a) * value_at(g, h, rest);
  }
  return total;
}

std::vector<GroupoidPoint> generic_points(const Graph& g, const SampleBounds& bounds) {
  std::vector<GroupoidPoint> out;
  const auto walks = walk_paths(g, g.vertices_up_to(bounds.family_bound), 2, bounds.family_bound);
  for (const auto& t : sample_boundary_points(g, bounds)) {
    std::vector<Path> ends;
    for (const auto& p : walks)
      if (p.end() == t.start()) ends.push_back(p);
    for (const auto& mu : ends)
      for (const auto& nu : ends) out.push_back(make_point(g, mu, nu, t));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<GroupoidPoint> probe_points(const Graph& g, const std::vector<Bisection>& near,
                                        const std::vector<BoundaryPoint>& tails,
                                        const std::vector<GroupoidPoint>& pool, std::size_t at_least) {
  std::vector<GroupoidPoint> out;
  std::set<GroupoidPoint> seen;
  auto push = [&](const GroupoidPoint& p) {
    if (seen.insert(p).second) out.push_back(p);
  };
  for (const auto& b : near) {
    int taken = 0;
    for (const auto& t : tails) {
      if (t.start() != b.alpha.end()) continue;
      push(make_point(g, b.alpha, b.beta, t));
      if (++taken == 2) break;
    }
  }
  if (pool.empty()) return out;
  const std::size_t step = std::max<std::size_t>(1, pool.size() / at_least);
  for (std::size_t i = 0; out.size() < at_least && i < pool.size() * step; i += step) push(pool[i % pool.size()]);
  for (std::size_t i = 0; out.size() < at_least && i < pool.size(); ++i) push(pool[i]);
  return out;
}

std::vector<std::string> audit_out_split(const Graph& source, const OutSplitResult& r, std::uint32_t family_bound) {
  std::vector<std::string> failures;
  const Graph& f = r.graph;
  auto nf = [&](const LpaElement& a) { return normal_form(f, a); };
  auto mul = [&](const LpaElement& a, const LpaElement& b) { return product(f, a, b); };
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };

  const auto vertices = source.vertices_up_to(family_bound);
  const auto edges = source.edges_up_to(family_bound);

  for (const auto& u : vertices) {
    const LpaElement pu = nf(r.vertex_image(u));
    check(pu == r.vertex_image(u), "image of " + to_string(u) + " is not in normal form");
    check(graded_components(pu).size() == 1 && graded_components(pu).count(0) == 1,
          "image of " + to_string(u) + " is not homogeneous of degree 0");
    for (const auto& w : vertices) {
      const LpaElement expect = u == w ? pu : LpaElement{};
      check(mul(pu, r.vertex_image(w)) == expect, "relation (1) fails for " + to_string(u) + ", " + to_string(w));
    }
  }

  for (const auto& e : edges) {
    const LpaElement se = r.edge_image(e), ge = r.ghost_image(e);
    const LpaElement src = r.vertex_image(source.source(e)), rng = r.vertex_image(source.range(e));
    const std::string name = to_string(e);
    check(mul(src, se) == nf(se) && mul(se, rng) == nf(se), "relation (2) fails for " + name);
    check(mul(rng, ge) == nf(ge) && mul(ge, src) == nf(ge), "relation (2) fails for " + name + "*");
    const auto deg_e = graded_components(nf(se)), deg_g = graded_components(nf(ge));
    check(deg_e.size() == 1 && deg_e.count(1) == 1, "image of " + name + " is not of degree 1");
    check(deg_g.size() == 1 && deg_g.count(-1) == 1, "image of " + name + "* is not of degree -1");
    for (const auto& e2 : edges) {
      const LpaElement expect = e == e2 ? nf(rng) : LpaElement{};
      check(mul(ge, r.edge_image(e2)) == expect, "relation (3) fails for " + name + "*." + to_string(e2));
    }
  }

  for (const auto& u : vertices) {
    if (source.classify(u) != VertexClass::Regular) continue;
    LpaElement sum;
    for (const auto& e : source.finite_out_edges(u)) sum.add(mul(r.edge_image(e), r.ghost_image(e)));
    check(nf(sum) == nf(r.vertex_image(u)), "relation (4) fails at " + to_string(u));
  }

  for (const auto& e : edges) {
    const auto copies = r.copies_of(e);
    for (std::size_t i = 0; i < copies.size(); ++i)
      for (std::size_t j = 0; j < copies.size(); ++j) {
        if (i == j) continue;
        check(mul(edge_element(f, copies[i]), ghost_element(f, copies[j])).is_zero(),
              to_string(copies[i]) + "." + to_string(copies[j]) + "^ is not zero");
      }
  }

  // The split vertex goes to the sum of its parts.
  std::vector<LpaElement> parts;
  for (const auto& p : r.parts) parts.push_back(vertex_element(f, p));
  check(nf(r.vertex_image(r.vertex)) == nf(image_sum(parts)), "split vertex does not map to the sum of its parts");
  return failures;
}

MonoidElement transport_monoid(const Graph& source, const OutSplitResult& r, const MonoidElement& x) {
  validate_monoid_element(source, x);
  const Graph& f = r.graph;
  auto copies = [&](const EdgeRef& e) -> std::vector<EdgeRef> {
    if (!e.is_member()) {
      auto it = r.edge_copies.find(e.name);
      if (it == r.edge_copies.end()) return {e};
      std::vector<EdgeRef> out;
      for (const auto& n : it->second) out.push_back(EdgeRef::concrete(n));
      return out;
    }
    auto it = r.family_copies.find(e.name);
    if (it == r.family_copies.end()) return {e};
    std::vector<EdgeRef> out;
    for (const auto& n : it->second) out.push_back(EdgeRef::member(n, e.index));
    return out;
  };
  // The class of p - Σ_{s ∈ S} s s*.
  auto bracket = [&](const VertexRef& p, const std::set<EdgeRef>& S) {
    if (S.empty()) return MonoidElement::of({p, {}});
    if (f.classify(p) == VertexClass::InfiniteEmitter) return MonoidElement::of({p, {S.begin(), S.end()}});
    MonoidElement out;
    for (const auto& e : f.finite_out_edges(p))
      if (!S.count(e)) out.add({f.range(e), {}});
    return out;
  };

  MonoidElement out;
  for (const auto& [gen, n] : x.counts()) {
    MonoidElement img;
    if (gen.vertex != r.vertex) {
      std::set<EdgeRef> S;
      for (const auto& e : gen.z)
        for (const auto& c : copies(e)) S.insert(c);
      img = bracket(gen.vertex, S);
    } else {
      for (const auto& p : r.parts) {
        std::set<EdgeRef> S;
        for (const auto& e : gen.z)
          for (const auto& c : copies(e))
            if (f.source(c) == p) S.insert(c);
        img = img + bracket(p, S);
      }
    }
    for (std::uint64_t i = 0; i < n; ++i) out = out + img;
  }
  return out;
}

std::set<Monomial> corner_monomials(const Graph& g, const std::set<VertexRef>& H, std::size_t maxlen,
                                    std::uint32_t family_bound) {
  const auto paths = walk_paths(g, {H.begin(), H.end()}, maxlen, family_bound);
  std::set<Monomial> out;
  for (const auto& p : paths)
    for (const auto& q : paths) {
      if (p.end() != q.end()) continue;
      Monomial m{p, q};
      if (!reducible(g, m)) out.insert(m);
    }
  return out;
}

LpaElement naive_normal_form(const Graph& g, const LpaElement& a, std::mt19937_64& rng, std::size_t* steps) {
  LpaElement cur = a;
  std::size_t count = 0;
  for (;;) {
    std::vector<Monomial> red;
    for (const auto& [m, c] : cur.terms())
      if (reducible(g, m)) red.push_back(m);
    if (red.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, red.size() - 1);
    const Monomial m = red[pick(rng)];
    const Scalar c = cur.coefficient(m);
    const EdgeRef gamma = m.p.edges().back();
    const VertexRef u = g.source(gamma);
    const Path p1 = m.p.drop_back(1, u), q1 = m.q.drop_back(1, u);
    cur.add(m, -c);
    cur.add(Monomial{p1, q1}, c);
    for (const auto& e : g.finite_out_edges(u)) {
      if (e == gamma) continue;
      cur.add(Monomial{p1.extended(e, g.range(e)), q1.extended(e, g.range(e))}, -c);
    }
    ++count;
  }
  if (steps) *steps = count;
  return cur;
}

std::size_t rewrite_bound(const LpaElement& a) {
  std::size_t n = 0;
  for (const auto& [m, c] : a.terms()) n += std::min(m.p.length(), m.q.length());
  return n;
}

}  // namespace lpa::test
