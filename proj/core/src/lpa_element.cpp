#include "lpa/lpa_element.hpp"

namespace lpa {

Monomial make_monomial(Path p, Path q) {
  if (p.end() != q.end())
    throw Error("monomial p q* needs r(p) = r(q), got " + to_string(p.end()) + " and " + to_string(q.end()));
  return {std::move(p), std::move(q)};
}

std::string to_string(const Monomial& m) {
  if (m.q.empty()) return to_string(m.p);
  std::string ghost;
  const auto& qe = m.q.edges();
  for (auto it = qe.rbegin(); it != qe.rend(); ++it) {
    if (!ghost.empty()) ghost += ".";
    ghost += to_string(*it) + "^";
  }
  if (m.p.empty()) return ghost;
  return to_string(m.p) + "." + ghost;
}

LpaElement LpaElement::of(const Monomial& m, const Scalar& c) {
  LpaElement a;
  a.add(m, c);
  return a;
}

Scalar LpaElement::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void LpaElement::add(const Monomial& m, const Scalar& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) {
    it->second.canonicalize();  // mpq_class(n, d) is not reduced on construction
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void LpaElement::add(const LpaElement& other, const Scalar& c) {
  for (const auto& [m, k] : other.terms_) add(m, c * k);
}

LpaElement operator*(const Scalar& c, const LpaElement& a) {
  LpaElement out;
  out.add(a, c);
  return out;
}

LpaElement vertex_element(const Graph& g, const VertexRef& v) {
  auto p = g.vertex_path(v);
  return LpaElement::of({p, p});
}

LpaElement edge_element(const Graph& g, const EdgeRef& e) {
  return LpaElement::of({g.edge_path(e), g.vertex_path(g.range(e))});
}

LpaElement ghost_element(const Graph& g, const EdgeRef& e) {
  return LpaElement::of({g.vertex_path(g.range(e)), g.edge_path(e)});
}

LpaElement path_element(const Path& p) {
  return LpaElement::of({p, p.without_prefix(p)});
}

LpaElement mul_monomial(const Monomial& a, const Monomial& b) {
  // q* gamma: one of q, gamma must extend the other.
  if (b.p.has_prefix(a.q)) {
    Path mu = b.p.without_prefix(a.q);
    return LpaElement::of({compose_paths(a.p, mu), b.q});
  }
  if (a.q.has_prefix(b.p)) {
    Path nu = a.q.without_prefix(b.p);
    return LpaElement::of({a.p, compose_paths(b.q, nu)});
  }
  return {};
}

LpaElement multiply(const LpaElement& a, const LpaElement& b) {
  LpaElement out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      auto prod = mul_monomial(ma, mb);
      out.add(prod, ca * cb);
    }
  return out;
}

bool is_reducible(const Graph& g, const Monomial& m) {
  if (m.p.empty() || m.q.empty()) return false;
  const EdgeRef& last = m.p.edges().back();
  if (last != m.q.edges().back()) return false;
  auto special = g.special_edge(g.source(last));
  return special && *special == last;
}

LpaElement normal_form(const Graph& g, const LpaElement& a, NormalFormStats* stats) {
  // Rewriting shortens the reducible part by two letters, so process total
  // lengths from the top down, merging coefficients within each level.
  std::map<std::size_t, LpaElement> pending;
  for (const auto& [m, c] : a.terms()) pending[m.p.length() + m.q.length()].add(m, c);

  LpaElement out;
  std::size_t steps = 0;
  while (!pending.empty()) {
    auto top = std::prev(pending.end());
    const std::size_t len = top->first;
    LpaElement level = std::move(top->second);
    pending.erase(top);
    for (const auto& [m, c] : level.terms()) {
      if (!is_reducible(g, m)) {
        out.add(m, c);
        continue;
      }
      ++steps;
      const EdgeRef special = m.p.edges().back();
      const VertexRef v = g.source(special);
      Path p0 = m.p.drop_back(1, v);
      Path q0 = m.q.drop_back(1, v);
      for (const auto& e : g.finite_out_edges(v)) {
        if (e == special) continue;
        const VertexRef r = g.range(e);
        out.add({p0.extended(e, r), q0.extended(e, r)}, -c);
      }
      pending[len - 2].add({std::move(p0), std::move(q0)}, c);
    }
  }
  if (stats) stats->rewrite_steps += steps;
  return out;
}

LpaElement product(const Graph& g, const LpaElement& a, const LpaElement& b) { return normal_form(g, multiply(a, b)); }

LpaElement star(const LpaElement& a) {
  LpaElement out;
  for (const auto& [m, c] : a.terms()) out.add({m.q, m.p}, c);
  return out;
}

std::map<long, LpaElement> graded_components(const LpaElement& a) {
  std::map<long, LpaElement> out;
  for (const auto& [m, c] : a.terms()) out[m.degree()].add(m, c);
  return out;
}

CornerFilterResult corner_filter(const LpaElement& a, const std::set<VertexRef>& H) {
  CornerFilterResult out;
  for (const auto& [m, c] : a.terms())
    if (H.count(m.p.start()) && H.count(m.q.start())) out.part.add(m, c);
  out.in_corner = out.part.size() == a.size();
  return out;
}

bool in_corner(const LpaElement& a, const std::set<VertexRef>& left, const std::set<VertexRef>& right) {
  for (const auto& [m, c] : a.terms())
    if (!left.count(m.p.start()) || !right.count(m.q.start())) return false;
  return true;
}

LpaElement apply_morphism(const GraphMorphism& m, const Graph& target, const LpaElement& a) {
  auto map_path = [&](const Path& p) {
    auto start = m.apply(p.start());
    if (!start) throw Error("morphism does not map vertex " + to_string(p.start()));
    std::vector<EdgeRef> edges;
    for (const auto& e : p.edges()) {
      auto img = m.apply(e);
      if (!img) throw Error("morphism does not map edge " + to_string(e));
      edges.push_back(*img);
    }
    return target.path(*start, std::move(edges));
  };
  LpaElement out;
  for (const auto& [mono, c] : a.terms()) out.add(make_monomial(map_path(mono.p), map_path(mono.q)), c);
  return out;
}

}  // namespace lpa
