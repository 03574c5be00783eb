#include "lpa/monoid.hpp"

#include <algorithm>
#include <tuple>

namespace lpa {

std::string to_string(const MonoidGen& gen) {
  if (!gen.is_q()) return to_string(gen.vertex);
  std::string s = "q(" + to_string(gen.vertex) + ";{";
  for (std::size_t i = 0; i < gen.z.size(); ++i) {
    if (i) s += ", ";
    s += to_string(gen.z[i]);
  }
  return s + "})";
}

MonoidElement MonoidElement::of(const MonoidGen& gen, std::uint64_t n) {
  MonoidElement x;
  x.add(gen, n);
  return x;
}

std::uint64_t MonoidElement::size() const {
  std::uint64_t total = 0;
  for (const auto& [g, n] : counts_) total += n;
  return total;
}

void MonoidElement::add(const MonoidGen& gen, std::uint64_t n) {
  if (n) counts_[gen] += n;
}

bool MonoidElement::remove_one(const MonoidGen& gen) {
  auto it = counts_.find(gen);
  if (it == counts_.end()) return false;
  if (--it->second == 0) counts_.erase(it);
  return true;
}

std::string to_string(const MonoidElement& x) {
  if (x.is_zero()) return "0";
  std::string s;
  for (const auto& [g, n] : x.counts()) {
    if (!s.empty()) s += " + ";
    if (n != 1) s += std::to_string(n) + "*";
    s += to_string(g);
  }
  return s;
}

void validate_monoid_element(const Graph& g, const MonoidElement& x) {
  for (const auto& [gen, n] : x.counts()) {
    if (!g.has_vertex(gen.vertex)) throw Error("unknown vertex '" + to_string(gen.vertex) + "' in monoid element");
    if (!gen.is_q()) continue;
    if (g.classify(gen.vertex) != VertexClass::InfiniteEmitter)
      throw Error(to_string(gen) + ": q-generators need an infinite emitter");
    if (!std::is_sorted(gen.z.begin(), gen.z.end()) ||
        std::adjacent_find(gen.z.begin(), gen.z.end()) != gen.z.end())
      throw Error(to_string(gen) + ": edge set must be sorted and duplicate free");
    for (const auto& e : gen.z)
      if (!g.has_edge(e) || g.source(e) != gen.vertex)
        throw Error(to_string(gen) + ": edge '" + to_string(e) + "' does not leave " + to_string(gen.vertex));
  }
}

MonoidUniverse universe_from(const Graph& g, const std::vector<MonoidElement>& elements, std::uint32_t extra) {
  MonoidUniverse u;
  for (const auto& v : g.vertices()) {
    auto ref = VertexRef::concrete(v);
    if (g.classify(ref) == VertexClass::InfiniteEmitter) u[ref];
  }
  for (const auto& x : elements)
    for (const auto& [gen, n] : x.counts()) {
      if (gen.is_q()) u[gen.vertex].insert(gen.z.begin(), gen.z.end());
      else if (g.classify(gen.vertex) == VertexClass::InfiniteEmitter) u[gen.vertex];
    }
  if (extra) {
    for (auto& [v, edges] : u) {
      std::uint32_t added = 0;
      for (const auto& e : g.out_edges(v, extra).edges) {
        if (added == extra) break;
        if (edges.insert(e).second) ++added;
      }
    }
  }
  return u;
}

std::string to_string(const MonoidStep& step) {
  std::string s = "(" + std::to_string(step.relation) + ") " + to_string(step.replaced);
  if (!step.w.empty()) {
    s += " via {";
    for (std::size_t i = 0; i < step.w.size(); ++i) s += (i ? ", " : "") + to_string(step.w[i]);
    s += "}";
  }
  return s + " => " + to_string(step.result);
}

namespace {

// Nonempty subsets of `pool`, each sorted, in lexicographic bitmask order.
std::vector<std::vector<EdgeRef>> nonempty_subsets(const std::vector<EdgeRef>& pool) {
  if (pool.size() > 20) throw Error("monoid universe too large for subset enumeration");
  std::vector<std::vector<EdgeRef>> out;
  const std::uint32_t limit = 1u << pool.size();
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    std::vector<EdgeRef> s;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (mask & (1u << i)) s.push_back(pool[i]);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<MonoidStep> reduction_steps(const Graph& g, const MonoidElement& x, const MonoidUniverse& universe) {
  std::vector<MonoidStep> out;
  for (const auto& [gen, count] : x.counts()) {
    MonoidElement rest = x;
    rest.remove_one(gen);

    if (!gen.is_q()) {
      switch (g.classify(gen.vertex)) {
        case VertexClass::Sink: break;
        case VertexClass::Regular: {
          MonoidStep step{1, gen, {}, rest};
          for (const auto& e : g.finite_out_edges(gen.vertex)) step.result.add({g.range(e), {}});
          out.push_back(std::move(step));
          break;
        }
        case VertexClass::InfiniteEmitter: {
          auto it = universe.find(gen.vertex);
          if (it == universe.end()) break;
          std::vector<EdgeRef> pool(it->second.begin(), it->second.end());
          for (auto& z : nonempty_subsets(pool)) {
            MonoidStep step{2, gen, z, rest};
            for (const auto& e : z) step.result.add({g.range(e), {}});
            step.result.add({gen.vertex, z});
            out.push_back(std::move(step));
          }
          break;
        }
      }
      continue;
    }

    auto it = universe.find(gen.vertex);
    if (it == universe.end() || !std::includes(it->second.begin(), it->second.end(), gen.z.begin(), gen.z.end()))
      throw Error("generator " + to_string(gen) + " lies outside the universe");
    std::vector<EdgeRef> extra;
    std::set_difference(it->second.begin(), it->second.end(), gen.z.begin(), gen.z.end(), std::back_inserter(extra));
    if (extra.empty()) continue;
    for (const auto& added : nonempty_subsets(extra)) {
      std::vector<EdgeRef> w;
      std::merge(gen.z.begin(), gen.z.end(), added.begin(), added.end(), std::back_inserter(w));
      MonoidStep step{3, gen, w, rest};
      for (const auto& e : added) step.result.add({g.range(e), {}});
      step.result.add({gen.vertex, w});
      out.push_back(std::move(step));
    }
  }
  return out;
}

std::set<MonoidElement> reduce_once(const Graph& g, const MonoidElement& x, const MonoidUniverse& universe) {
  std::set<MonoidElement> out;
  for (auto& step : reduction_steps(g, x, universe)) out.insert(std::move(step.result));
  return out;
}

std::string to_string(Verdict v) { return v == Verdict::Yes ? "Yes" : "Unknown"; }

namespace {

struct Visit {
  const MonoidElement* parent = nullptr;  // null at the root
  MonoidStep step;
};

using VisitMap = std::map<MonoidElement, Visit>;

std::vector<MonoidStep> chain_to(const VisitMap& seen, const MonoidElement& end) {
  std::vector<MonoidStep> chain;
  const MonoidElement* at = &end;
  for (;;) {
    const Visit& v = seen.at(*at);
    if (!v.parent) break;
    chain.push_back(v.step);
    at = v.parent;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

}  // namespace

EquivalenceResult equivalent(const Graph& g, const MonoidElement& x, const MonoidElement& y,
                             const MonoidUniverse& universe, SearchLimits limits) {
  EquivalenceResult res;
  validate_monoid_element(g, x);
  validate_monoid_element(g, y);
  if (x == y) {
    res.verdict = Verdict::Yes;
    res.common = x;
    res.states = 1;
    return res;
  }

  VisitMap seen[2];
  std::vector<const MonoidElement*> frontier[2];
  std::uint32_t reached[2] = {0, 0};
  for (int side = 0; side < 2; ++side) {
    auto [it, _] = seen[side].emplace(side == 0 ? x : y, Visit{});
    frontier[side].push_back(&it->first);
  }

  auto finish = [&](const MonoidElement& common) {
    res.verdict = Verdict::Yes;
    res.common = common;
    res.left = chain_to(seen[0], common);
    res.right = chain_to(seen[1], common);
    res.states = seen[0].size() + seen[1].size();
    return res;
  };

  while (reached[0] < limits.depth || reached[1] < limits.depth) {
    int side;
    if (reached[0] >= limits.depth) side = 1;
    else if (reached[1] >= limits.depth) side = 0;
    else side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    if (frontier[side].empty()) {
      reached[side] = limits.depth;  // nothing left to expand on this side
      continue;
    }
    std::vector<const MonoidElement*> next;
    for (const MonoidElement* cur : frontier[side]) {
      for (auto& step : reduction_steps(g, *cur, universe)) {
        MonoidElement result = step.result;
        auto [it, inserted] = seen[side].try_emplace(std::move(result), Visit{cur, std::move(step)});
        if (!inserted) continue;
        if (seen[1 - side].count(it->first)) return finish(it->first);
        next.push_back(&it->first);
        if (seen[0].size() + seen[1].size() > limits.max_states) {
          res.truncated = true;
          res.states = seen[0].size() + seen[1].size();
          return res;
        }
      }
    }
    frontier[side] = std::move(next);
    ++reached[side];
  }
  res.states = seen[0].size() + seen[1].size();
  return res;
}

bool replay_witness(const Graph& g, const MonoidElement& x, const MonoidElement& y, const MonoidUniverse& universe,
                    const EquivalenceResult& result) {
  if (result.verdict != Verdict::Yes) return false;
  auto replay = [&](MonoidElement at, const std::vector<MonoidStep>& chain) {
    for (const auto& step : chain) {
      bool legal = false;
      for (const auto& cand : reduction_steps(g, at, universe))
        if (cand.relation == step.relation && cand.replaced == step.replaced && cand.w == step.w &&
            cand.result == step.result) {
          legal = true;
          break;
        }
      if (!legal) return false;
      at = step.result;
    }
    return at == result.common;
  };
  return replay(x, result.left) && replay(y, result.right);
}

std::string to_string(const SpecSummand& s) {
  std::string t = "{";
  for (std::size_t i = 0; i < s.t.size(); ++i) t += (i ? ", " : "") + to_string(s.t[i]);
  return to_string(s.vertex) + "; " + t + "}; " + std::to_string(s.n);
}

std::string to_string(const ProjectiveSpec& s) {
  std::string out;
  for (const auto& x : s) out += to_string(x) + "\n";
  return out;
}

void validate_spec(const Graph& g, const ProjectiveSpec& s) {
  for (const auto& x : s) {
    const std::string ctx = "summand (" + to_string(x) + ")";
    if (!g.has_vertex(x.vertex)) throw Error(ctx + ": unknown vertex");
    if (x.n == 0) throw Error(ctx + ": multiplicity must be positive");
    if (x.t.empty()) continue;
    if (g.classify(x.vertex) != VertexClass::InfiniteEmitter)
      throw Error(ctx + ": a nonempty edge set needs an infinite emitter");
    if (!std::is_sorted(x.t.begin(), x.t.end()) || std::adjacent_find(x.t.begin(), x.t.end()) != x.t.end())
      throw Error(ctx + ": edge set must be sorted and duplicate free");
    for (const auto& e : x.t)
      if (!g.has_edge(e) || g.source(e) != x.vertex)
        throw Error(ctx + ": edge '" + to_string(e) + "' does not leave " + to_string(x.vertex));
  }
}

ProjectiveSpec normalize_projective_spec(const Graph& g, const ProjectiveSpec& s) {
  validate_spec(g, s);
  std::map<VertexRef, std::set<EdgeRef>> union_t;
  for (const auto& x : s)
    if (!x.t.empty()) union_t[x.vertex].insert(x.t.begin(), x.t.end());

  std::map<std::pair<VertexRef, std::vector<EdgeRef>>, std::uint64_t> merged;
  for (const auto& x : s) {
    if (x.t.empty()) {
      merged[{x.vertex, {}}] += x.n;
      continue;
    }
    const auto& tv = union_t.at(x.vertex);
    std::vector<EdgeRef> full(tv.begin(), tv.end());
    merged[{x.vertex, full}] += x.n;
    for (const auto& e : full)
      if (!std::binary_search(x.t.begin(), x.t.end(), e)) merged[{g.range(e), {}}] += x.n;
  }

  ProjectiveSpec out;
  for (auto& [key, n] : merged) out.push_back({key.first, key.second, n});
  std::sort(out.begin(), out.end(), [](const SpecSummand& a, const SpecSummand& b) {
    return std::forward_as_tuple(a.vertex, a.t.empty() ? 1 : 0, a.t) <
           std::forward_as_tuple(b.vertex, b.t.empty() ? 1 : 0, b.t);
  });
  return out;
}

MonoidElement spec_to_monoid(const ProjectiveSpec& s) {
  MonoidElement x;
  for (const auto& summand : s) x.add({summand.vertex, summand.t}, summand.n);
  return x;
}

}  // namespace lpa
