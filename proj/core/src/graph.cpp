#include "lpa/graph.hpp"

#include <algorithm>
#include <sstream>

namespace lpa {

namespace {

template <class Ref>
std::strong_ordering compare_refs(const Ref& a, const Ref& b) {
  if (auto c = a.is_member() <=> b.is_member(); c != 0) return c;
  if (auto c = a.name.compare(b.name); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  return a.index <=> b.index;
}

// Every index box point with coordinates in [1, bound].
std::vector<MultiIndex> index_box(std::uint8_t arity, std::uint32_t bound) {
  std::vector<MultiIndex> out;
  if (arity == 1) {
    for (std::uint32_t i = 1; i <= bound; ++i) out.push_back(MultiIndex::of(i));
  } else {
    for (std::uint32_t i = 1; i <= bound; ++i)
      for (std::uint32_t j = 1; j <= bound; ++j) out.push_back(MultiIndex::of(i, j));
  }
  return out;
}

}  // namespace

bool MultiIndex::valid() const {
  if (arity > 2) return false;
  for (std::uint8_t k = 0; k < arity; ++k)
    if (at[k] == 0) return false;
  for (std::uint8_t k = arity; k < 2; ++k)
    if (at[k] != 0) return false;
  return true;
}

std::string to_string(const MultiIndex& idx) {
  if (idx.arity == 0) return {};
  std::string s = "[" + std::to_string(idx.at[0]);
  if (idx.arity == 2) s += "," + std::to_string(idx.at[1]);
  return s + "]";
}

std::strong_ordering VertexRef::operator<=>(const VertexRef& other) const { return compare_refs(*this, other); }
std::strong_ordering EdgeRef::operator<=>(const EdgeRef& other) const { return compare_refs(*this, other); }

std::string to_string(const VertexRef& v) { return v.name + to_string(v.index); }
std::string to_string(const EdgeRef& e) { return e.name + to_string(e.index); }
std::ostream& operator<<(std::ostream& os, const VertexRef& v) { return os << to_string(v); }
std::ostream& operator<<(std::ostream& os, const EdgeRef& e) { return os << to_string(e); }

std::string to_string(VertexClass c) {
  switch (c) {
    case VertexClass::Sink: return "sink";
    case VertexClass::Regular: return "regular";
    case VertexClass::InfiniteEmitter: return "infinite-emitter";
  }
  return "?";
}

Graph::Graph(std::vector<std::string> vertices, std::vector<VertexFamilySpec> vertex_families,
             std::vector<EdgeSpec> edges, std::vector<EdgeFamilySpec> edge_families) {
  std::set<std::string> seen;
  auto claim = [&](const std::string& id) {
    if (id.empty()) throw Error("empty identifier");
    if (!seen.insert(id).second) throw Error("duplicate identifier '" + id + "'");
  };
  for (auto& v : vertices) {
    claim(v);
    vertices_.insert(std::move(v));
  }
  for (auto& f : vertex_families) {
    claim(f.id);
    if (f.arity < 1 || f.arity > 2) throw Error("vertex family '" + f.id + "' has unsupported arity");
    vertex_families_.emplace(f.id, std::move(f));
  }
  for (auto& e : edges) {
    claim(e.id);
    edges_.emplace(e.id, std::move(e));
  }
  for (auto& f : edge_families) {
    claim(f.id);
    if (f.arity < 1 || f.arity > 2) throw Error("edge family '" + f.id + "' has unsupported arity");
    edge_families_.emplace(f.id, std::move(f));
  }
  if (vertices_.empty() && vertex_families_.empty()) throw Error("graph has no vertices");
  validate();
  build_indexes();
}

bool Graph::uses_name(const std::string& name) const {
  return vertices_.count(name) || vertex_families_.count(name) || edges_.count(name) || edge_families_.count(name);
}

void Graph::check_vertex(const VertexRef& v, const std::string& context) const {
  if (!has_vertex(v)) throw Error(context + ": unknown vertex '" + to_string(v) + "'");
}

void Graph::validate() const {
  for (const auto& [id, e] : edges_) {
    check_vertex(e.source, "edge '" + id + "'");
    check_vertex(e.range, "edge '" + id + "'");
  }
  for (const auto& [id, f] : edge_families_) {
    const std::string ctx = "edge family '" + id + "'";
    auto check_endpoint = [&](const Endpoint& ep) {
      if (const auto* fixed = std::get_if<VertexRef>(&ep)) {
        check_vertex(*fixed, ctx);
        return;
      }
      const auto& ix = std::get<IndexedEndpoint>(ep);
      auto fam = vertex_families_.find(ix.family);
      if (fam == vertex_families_.end()) throw Error(ctx + ": unknown vertex family '" + ix.family + "'");
      if (ix.map.size() != fam->second.arity) throw Error(ctx + ": index map arity mismatch for '" + ix.family + "'");
      for (const auto& t : ix.map) {
        if (t.coord >= static_cast<int>(f.arity)) throw Error(ctx + ": index map refers to a missing coordinate");
        if (t.coord < 0 && t.offset == 0) throw Error(ctx + ": constant index must be positive");
      }
    };
    check_endpoint(f.source);
    check_endpoint(f.range);
    for (const auto& [idx, src] : f.source_overrides) {
      if (idx.arity != f.arity || !idx.valid()) throw Error(ctx + ": override index " + to_string(idx) + " is invalid");
      check_vertex(src, ctx);
    }
  }
}

void Graph::build_indexes() {
  for (const auto& [id, e] : edges_) listed_out_[e.source].push_back(EdgeRef::concrete(id));
  for (const auto& [id, f] : edge_families_) {
    for (const auto& [idx, src] : f.source_overrides) listed_out_[src].push_back(EdgeRef::member(id, idx));
    if (const auto* fixed = std::get_if<VertexRef>(&f.source)) {
      fixed_source_families_[*fixed].push_back(id);
    } else {
      indexed_source_families_[std::get<IndexedEndpoint>(f.source).family].push_back(id);
    }
  }
  for (auto& [v, list] : listed_out_) std::sort(list.begin(), list.end());
}

bool Graph::has_vertex(const VertexRef& v) const {
  if (!v.is_member()) return vertices_.count(v.name) > 0;
  auto it = vertex_families_.find(v.name);
  return it != vertex_families_.end() && it->second.arity == v.index.arity && v.index.valid();
}

bool Graph::has_edge(const EdgeRef& e) const {
  if (!e.is_member()) return edges_.count(e.name) > 0;
  auto it = edge_families_.find(e.name);
  return it != edge_families_.end() && it->second.arity == e.index.arity && e.index.valid();
}

std::optional<MultiIndex> Graph::eval_endpoint_index(const IndexedEndpoint& ep, const MultiIndex& edge_idx) const {
  MultiIndex out;
  out.arity = static_cast<std::uint8_t>(ep.map.size());
  for (std::size_t k = 0; k < ep.map.size(); ++k) {
    const auto& t = ep.map[k];
    out.at[k] = t.coord < 0 ? t.offset : edge_idx.at[static_cast<std::size_t>(t.coord)] + t.offset;
  }
  if (!out.valid()) return std::nullopt;
  return out;
}

VertexRef Graph::eval_endpoint(const Endpoint& ep, const MultiIndex& edge_idx) const {
  if (const auto* fixed = std::get_if<VertexRef>(&ep)) return *fixed;
  const auto& ix = std::get<IndexedEndpoint>(ep);
  auto idx = eval_endpoint_index(ix, edge_idx);
  if (!idx) throw Error("index map of family '" + ix.family + "' left the family");
  return VertexRef::member(ix.family, *idx);
}

VertexRef Graph::source(const EdgeRef& e) const {
  if (!has_edge(e)) throw Error("unknown edge '" + to_string(e) + "'");
  if (!e.is_member()) return edges_.at(e.name).source;
  const auto& f = edge_families_.at(e.name);
  if (auto it = f.source_overrides.find(e.index); it != f.source_overrides.end()) return it->second;
  return eval_endpoint(f.source, e.index);
}

VertexRef Graph::range(const EdgeRef& e) const {
  if (!has_edge(e)) throw Error("unknown edge '" + to_string(e) + "'");
  if (!e.is_member()) return edges_.at(e.name).range;
  return eval_endpoint(edge_families_.at(e.name).range, e.index);
}

OutEdges Graph::out_edges(const VertexRef& v, std::uint32_t family_bound) const {
  if (!has_vertex(v)) throw Error("unknown vertex '" + to_string(v) + "'");
  OutEdges out;
  if (auto it = listed_out_.find(v); it != listed_out_.end()) out.edges = it->second;

  auto overridden = [&](const EdgeFamilySpec& f, const MultiIndex& idx) { return f.source_overrides.count(idx) > 0; };

  if (auto it = fixed_source_families_.find(v); it != fixed_source_families_.end()) {
    for (const auto& id : it->second) {
      const auto& f = edge_families_.at(id);
      out.infinite = true;
      for (const auto& idx : index_box(f.arity, family_bound))
        if (!overridden(f, idx)) out.edges.push_back(EdgeRef::member(id, idx));
    }
  }
  if (v.is_member()) {
    if (auto it = indexed_source_families_.find(v.name); it != indexed_source_families_.end()) {
      for (const auto& id : it->second) {
        const auto& f = edge_families_.at(id);
        const auto& ix = std::get<IndexedEndpoint>(f.source);
        // Solve map(edge_idx) == v.index for the edge index coordinates.
        std::array<std::optional<std::uint32_t>, 2> fixed{};
        bool solvable = true;
        for (std::size_t k = 0; k < ix.map.size() && solvable; ++k) {
          const auto& t = ix.map[k];
          const std::uint32_t want = v.index.at[k];
          if (t.coord < 0) {
            solvable = (want == t.offset);
          } else if (want <= t.offset) {
            solvable = false;
          } else {
            auto& slot = fixed[static_cast<std::size_t>(t.coord)];
            const std::uint32_t val = want - t.offset;
            if (slot && *slot != val) solvable = false;
            slot = val;
          }
        }
        if (!solvable) continue;
        std::vector<MultiIndex> candidates;
        bool free_coord = false;
        for (std::uint8_t c = 0; c < f.arity; ++c)
          if (!fixed[c]) free_coord = true;
        if (free_coord) {
          out.infinite = true;
          for (const auto& idx : index_box(f.arity, family_bound)) {
            bool match = true;
            for (std::uint8_t c = 0; c < f.arity; ++c)
              if (fixed[c] && idx.at[c] != *fixed[c]) match = false;
            if (match) candidates.push_back(idx);
          }
        } else {
          MultiIndex idx;
          idx.arity = f.arity;
          for (std::uint8_t c = 0; c < f.arity; ++c) idx.at[c] = *fixed[c];
          candidates.push_back(idx);
        }
        for (const auto& idx : candidates)
          if (!overridden(f, idx)) out.edges.push_back(EdgeRef::member(id, idx));
      }
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  return out;
}

VertexClass Graph::classify(const VertexRef& v) const {
  auto out = out_edges(v, 0);
  if (out.infinite) return VertexClass::InfiniteEmitter;
  return out.edges.empty() ? VertexClass::Sink : VertexClass::Regular;
}

std::vector<EdgeRef> Graph::finite_out_edges(const VertexRef& v) const {
  auto out = out_edges(v, 0);
  if (out.infinite) throw Error("vertex '" + to_string(v) + "' is an infinite emitter");
  return out.edges;
}

std::optional<EdgeRef> Graph::special_edge(const VertexRef& v) const {
  auto out = out_edges(v, 0);
  if (out.infinite || out.edges.empty()) return std::nullopt;
  return out.edges.front();
}

std::vector<std::string> Graph::concrete_edges_into(const VertexRef& v) const {
  std::vector<std::string> out;
  for (const auto& [id, e] : edges_)
    if (e.range == v) out.push_back(id);
  return out;
}

std::vector<std::string> Graph::families_into(const VertexRef& v) const {
  std::vector<std::string> out;
  for (const auto& [id, f] : edge_families_)
    if (const auto* fixed = std::get_if<VertexRef>(&f.range); fixed && *fixed == v) out.push_back(id);
  return out;
}

std::vector<VertexRef> Graph::vertices_up_to(std::uint32_t family_bound) const {
  std::vector<VertexRef> out;
  for (const auto& v : vertices_) out.push_back(VertexRef::concrete(v));
  for (const auto& [id, f] : vertex_families_)
    for (const auto& idx : index_box(f.arity, family_bound)) out.push_back(VertexRef::member(id, idx));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EdgeRef> Graph::edges_up_to(std::uint32_t family_bound) const {
  std::vector<EdgeRef> out;
  for (const auto& [id, e] : edges_) out.push_back(EdgeRef::concrete(id));
  for (const auto& [id, f] : edge_families_)
    for (const auto& idx : index_box(f.arity, family_bound)) out.push_back(EdgeRef::member(id, idx));
  std::sort(out.begin(), out.end());
  return out;
}

Path Graph::vertex_path(const VertexRef& v) const {
  check_vertex(v, "path");
  return Path(v, v, {});
}

Path Graph::path(const VertexRef& start, std::vector<EdgeRef> edges) const {
  check_vertex(start, "path");
  VertexRef at = start;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (source(edges[i]) != at)
      throw Error("path is not composable at edge " + std::to_string(i + 1) + " ('" + to_string(edges[i]) + "')");
    at = range(edges[i]);
  }
  return Path(start, at, std::move(edges));
}

Path Graph::edge_path(const EdgeRef& e) const { return Path(source(e), range(e), {e}); }

bool Graph::operator==(const Graph& other) const {
  auto fam_eq = [](const EdgeFamilySpec& a, const EdgeFamilySpec& b) {
    return a.id == b.id && a.arity == b.arity && a.source == b.source && a.range == b.range &&
           a.source_overrides == b.source_overrides;
  };
  if (vertices_ != other.vertices_ || edges_.size() != other.edges_.size() ||
      vertex_families_.size() != other.vertex_families_.size() ||
      edge_families_.size() != other.edge_families_.size())
    return false;
  for (const auto& [id, f] : vertex_families_) {
    auto it = other.vertex_families_.find(id);
    if (it == other.vertex_families_.end() || it->second.arity != f.arity) return false;
  }
  for (const auto& [id, e] : edges_) {
    auto it = other.edges_.find(id);
    if (it == other.edges_.end() || it->second.source != e.source || it->second.range != e.range) return false;
  }
  for (const auto& [id, f] : edge_families_) {
    auto it = other.edge_families_.find(id);
    if (it == other.edge_families_.end() || !fam_eq(f, it->second)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Path

Path Path::drop_back(std::size_t n, const VertexRef& new_end) const {
  std::vector<EdgeRef> kept(edges_.begin(), edges_.end() - static_cast<std::ptrdiff_t>(n));
  return Path(start_, new_end, std::move(kept));
}

Path Path::prefix(std::size_t n, const Graph& g) const {
  if (n >= edges_.size()) return *this;
  if (n == 0) return Path(start_, start_, {});
  std::vector<EdgeRef> kept(edges_.begin(), edges_.begin() + static_cast<std::ptrdiff_t>(n));
  VertexRef end = g.range(kept.back());
  return Path(start_, std::move(end), std::move(kept));
}

Path Path::suffix_from(std::size_t n, const Graph& g) const {
  if (n == 0) return *this;
  if (n >= edges_.size()) return Path(end_, end_, {});
  std::vector<EdgeRef> rest(edges_.begin() + static_cast<std::ptrdiff_t>(n), edges_.end());
  VertexRef start = g.source(rest.front());
  return Path(std::move(start), end_, std::move(rest));
}

Path Path::extended(const EdgeRef& e, const VertexRef& new_end) const {
  auto edges = edges_;
  edges.push_back(e);
  return Path(start_, new_end, std::move(edges));
}

bool Path::has_prefix(const Path& other) const {
  if (other.start_ != start_ || other.edges_.size() > edges_.size()) return false;
  return std::equal(other.edges_.begin(), other.edges_.end(), edges_.begin());
}

Path Path::without_prefix(const Path& pre) const {
  std::vector<EdgeRef> rest(edges_.begin() + static_cast<std::ptrdiff_t>(pre.length()), edges_.end());
  return Path(pre.end(), end_, std::move(rest));
}

std::string to_string(const Path& p) {
  if (p.empty()) return to_string(p.start());
  std::string s;
  for (std::size_t i = 0; i < p.edges().size(); ++i) {
    if (i) s += ".";
    s += to_string(p.edges()[i]);
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const Path& p) { return os << to_string(p); }

Path compose_paths(const Path& p, const Path& q) {
  if (p.end() != q.start())
    throw Error("paths are not composable: r(p) = " + to_string(p.end()) + " but s(q) = " + to_string(q.start()));
  auto edges = p.edges();
  edges.insert(edges.end(), q.edges().begin(), q.edges().end());
  return Path(p.start(), q.end(), std::move(edges));
}

// ---------------------------------------------------------------------------
// Morphisms

GraphMorphism GraphMorphism::identity(const Graph& g) {
  GraphMorphism m;
  for (const auto& v : g.vertices()) m.vertex_map.emplace(VertexRef::concrete(v), VertexRef::concrete(v));
  for (const auto& [id, f] : g.vertex_families()) m.vertex_family_map.emplace(id, id);
  for (const auto& [id, e] : g.edges()) m.edge_map.emplace(EdgeRef::concrete(id), EdgeRef::concrete(id));
  for (const auto& [id, f] : g.edge_families()) m.edge_family_map.emplace(id, id);
  return m;
}

std::optional<VertexRef> GraphMorphism::apply(const VertexRef& v) const {
  if (!v.is_member()) {
    auto it = vertex_map.find(v);
    if (it == vertex_map.end()) return std::nullopt;
    return it->second;
  }
  auto it = vertex_family_map.find(v.name);
  if (it == vertex_family_map.end()) return std::nullopt;
  return VertexRef::member(it->second, v.index);
}

std::optional<EdgeRef> GraphMorphism::apply(const EdgeRef& e) const {
  if (!e.is_member()) {
    auto it = edge_map.find(e);
    if (it == edge_map.end()) return std::nullopt;
    return it->second;
  }
  auto it = edge_family_map.find(e.name);
  if (it == edge_family_map.end()) return std::nullopt;
  return EdgeRef::member(it->second, e.index);
}

CkCheck check_ck_morphism(const Graph& e, const Graph& f, const GraphMorphism& m, std::uint32_t sample_bound) {
  auto fail = [](std::string why) { return CkCheck{false, std::move(why)}; };

  std::set<VertexRef> vertex_images;
  for (const auto& v : e.vertices_up_to(sample_bound)) {
    auto img = m.apply(v);
    if (!img) return fail("vertex " + to_string(v) + " is not mapped");
    if (!f.has_vertex(*img)) return fail("image of vertex " + to_string(v) + " is not a vertex of the target");
    if (!vertex_images.insert(*img).second) return fail("vertex map is not injective at " + to_string(v));
  }
  std::set<EdgeRef> edge_images;
  for (const auto& x : e.edges_up_to(sample_bound)) {
    auto img = m.apply(x);
    if (!img) return fail("edge " + to_string(x) + " is not mapped");
    if (!f.has_edge(*img)) return fail("image of edge " + to_string(x) + " is not an edge of the target");
    if (!edge_images.insert(*img).second) return fail("edge map is not injective at " + to_string(x));
    if (f.source(*img) != *m.apply(e.source(x))) return fail("source not preserved at edge " + to_string(x));
    if (f.range(*img) != *m.apply(e.range(x))) return fail("range not preserved at edge " + to_string(x));
  }
  for (const auto& v : e.vertices_up_to(sample_bound)) {
    if (e.classify(v) != VertexClass::Regular) continue;
    auto img_v = *m.apply(v);
    if (f.classify(img_v) != VertexClass::Regular)
      return fail("regular vertex " + to_string(v) + " maps to a non-regular vertex");
    std::vector<EdgeRef> mapped;
    for (const auto& x : e.finite_out_edges(v)) mapped.push_back(*m.apply(x));
    std::sort(mapped.begin(), mapped.end());
    if (mapped != f.finite_out_edges(img_v))
      return fail("out-edges of regular vertex " + to_string(v) + " are not mapped bijectively");
  }
  return {true, {}};
}

}  // namespace lpa
