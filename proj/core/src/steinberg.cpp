#include "lpa/steinberg.hpp"

#include <algorithm>

namespace lpa {

GroupoidPoint make_point(const Graph& g, const Path& mu, const Path& nu, const BoundaryPoint& tail) {
  if (mu.end() != nu.end() || mu.end() != tail.start())
    throw Error("groupoid point needs r(mu) = r(nu) = s(tail)");
  const long k = static_cast<long>(mu.length()) - static_cast<long>(nu.length());
  return {prepend(g, mu, tail), k, prepend(g, nu, tail)};
}

GroupoidPoint unit_point(const BoundaryPoint& x) { return {x, 0, x}; }

GroupoidPoint inverse(const GroupoidPoint& p) { return {p.y, -p.k, p.x}; }

std::string to_string(const GroupoidPoint& p) {
  return "(" + to_string(p.x) + ", " + std::to_string(p.k) + ", " + to_string(p.y) + ")";
}

GroupoidPoint compose_points(const GroupoidPoint& a, const GroupoidPoint& b) {
  if (a.y != b.x) throw Error("groupoid points " + to_string(a) + " and " + to_string(b) + " are not composable");
  return {a.x, a.k + b.k, b.y};
}

Bisection make_bisection(Path alpha, Path beta) {
  if (alpha.end() != beta.end()) throw Error("bisection Z(alpha, beta) needs r(alpha) = r(beta)");
  return {std::move(alpha), std::move(beta)};
}

std::string to_string(const Bisection& b) { return "Z(" + to_string(b.alpha) + ", " + to_string(b.beta) + ")"; }

bool contains(const Graph& g, const Bisection& b, const GroupoidPoint& p) {
  if (p.k != static_cast<long>(b.alpha.length()) - static_cast<long>(b.beta.length())) return false;
  if (!point_extends(p.x, b.alpha) || !point_extends(p.y, b.beta)) return false;
  return drop_prefix(g, p.x, b.alpha) == drop_prefix(g, p.y, b.beta);
}

std::optional<Bisection> bisection_product(const Bisection& a, const Bisection& b) {
  // Z(alpha, beta) Z(gamma, delta): the middle paths beta, gamma must be comparable.
  if (b.alpha.has_prefix(a.beta)) return Bisection{compose_paths(a.alpha, b.alpha.without_prefix(a.beta)), b.beta};
  if (a.beta.has_prefix(b.alpha)) return Bisection{a.alpha, compose_paths(b.beta, a.beta.without_prefix(b.alpha))};
  return std::nullopt;
}

SteinbergElement SteinbergElement::indicator(const Bisection& b, const Scalar& c) {
  SteinbergElement f;
  f.add(b, c);
  return f;
}

void SteinbergElement::add(const Bisection& b, const Scalar& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(b, c);
  if (inserted) {
    it->second.canonicalize();
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void SteinbergElement::add(const SteinbergElement& other, const Scalar& c) {
  for (const auto& [b, k] : other.terms_) add(b, c * k);
}

std::string to_string(const SteinbergElement& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (const auto& [b, c] : f.terms()) {
    const bool neg = c < 0;
    const Scalar mag = neg ? Scalar(-c) : c;
    if (s.empty()) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    if (mag != 1) s += to_string(mag) + "*";
    s += "1_" + to_string(b);
  }
  return s;
}

namespace {

// Adds c * 1_b to `out` with b written over indivisible bisections. At a
// regular vertex u = r(a) = r(b'), Z(a, b') is the disjoint union of the
// Z(a e, b' e) over e in s^{-1}(u); solving for the special edge's piece
// gives the rewrite.
void expand_indicator(const Graph& g, const Bisection& b, const Scalar& c, SteinbergElement& out) {
  if (b.alpha.empty() || b.beta.empty() || b.alpha.edges().back() != b.beta.edges().back()) {
    out.add(b, c);
    return;
  }
  const EdgeRef last = b.alpha.edges().back();
  const VertexRef u = g.source(last);
  if (g.classify(u) != VertexClass::Regular) {
    out.add(b, c);
    return;
  }
  const auto outs = g.finite_out_edges(u);
  if (outs.front() != last) {
    out.add(b, c);
    return;
  }
  const Path a = b.alpha.drop_back(1, u);
  const Path d = b.beta.drop_back(1, u);
  for (std::size_t i = 1; i < outs.size(); ++i) {
    const VertexRef r = g.range(outs[i]);
    out.add({a.extended(outs[i], r), d.extended(outs[i], r)}, -c);
  }
  expand_indicator(g, {a, d}, c, out);
}

}  // namespace

SteinbergElement normalize(const Graph& g, const SteinbergElement& f) {
  SteinbergElement out;
  for (const auto& [b, c] : f.terms()) expand_indicator(g, b, c, out);
  return out;
}

SteinbergElement convolve(const Graph& g, const SteinbergElement& f, const SteinbergElement& h) {
  SteinbergElement raw;
  for (const auto& [b1, c1] : f.terms())
    for (const auto& [b2, c2] : h.terms())
      if (auto prod = bisection_product(b1, b2)) raw.add(*prod, c1 * c2);
  return normalize(g, raw);
}

Scalar evaluate(const Graph& g, const SteinbergElement& f, const GroupoidPoint& p) {
  Scalar total = 0;
  for (const auto& [b, c] : f.terms())
    if (contains(g, b, p)) total += c;
  return total;
}

SteinbergElement pi_map(const LpaElement& a) {
  SteinbergElement f;
  for (const auto& [m, c] : a.terms()) f.add(Bisection{m.p, m.q}, c);
  return f;
}

LpaElement pi_inv(const SteinbergElement& f) {
  LpaElement a;
  for (const auto& [b, c] : f.terms()) a.add(Monomial{b.alpha, b.beta}, c);
  return a;
}

std::vector<Bisection> restrict_basis(const Graph& g, const std::set<VertexRef>& H, std::size_t maxlen,
                                      std::uint32_t family_bound) {
  if (H.empty()) throw Error("restriction needs a nonempty vertex set");
  auto paths = enumerate_paths(g, std::vector<VertexRef>(H.begin(), H.end()), maxlen, family_bound);
  std::map<VertexRef, std::vector<const Path*>> by_end;
  for (const auto& p : paths) by_end[p.end()].push_back(&p);

  std::vector<Bisection> out;
  for (const auto& [end, group] : by_end) {
    for (const Path* a : group)
      for (const Path* b : group) {
        Bisection z{*a, *b};
        SteinbergElement probe;
        expand_indicator(g, z, 1, probe);
        if (probe.size() == 1 && probe.terms().begin()->first == z) out.push_back(std::move(z));
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GroupoidPoint> restricted_units(const Graph& g, const std::set<VertexRef>& H, SampleBounds bounds) {
  std::vector<GroupoidPoint> out;
  for (const auto& x : sample_boundary_points(g, bounds))
    if (H.count(x.start())) out.push_back(unit_point(x));
  return out;
}

}  // namespace lpa
