#include "lpa/transforms.hpp"

#include <algorithm>

namespace lpa {

namespace {

// Allocates identifiers that are unused in the graph and in earlier
// allocations, priming on collision.
class NameAllocator {
 public:
  explicit NameAllocator(const Graph& g) : g_(g) {}

  std::string fresh(const std::string& wanted, std::vector<std::string>& trace) {
    std::string name = wanted;
    while (g_.uses_name(name) || taken_.count(name)) name += "'";
    if (name != wanted) trace.push_back("name " + wanted + " is taken; using " + name);
    taken_.insert(name);
    return name;
  }

 private:
  const Graph& g_;
  std::set<std::string> taken_;
};

std::string join_edges(const std::vector<EdgeRef>& es) {
  std::string s = "{";
  for (std::size_t i = 0; i < es.size(); ++i) s += (i ? ", " : "") + to_string(es[i]);
  return s + "}";
}

std::string join_vertices(const std::vector<VertexRef>& vs, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? sep : "") + to_string(vs[i]);
  return s;
}

struct GraphParts {
  std::vector<std::string> vertices;
  std::vector<VertexFamilySpec> vertex_families;
  std::vector<EdgeSpec> edges;
  std::vector<EdgeFamilySpec> edge_families;

  explicit GraphParts(const Graph& g) {
    vertices.assign(g.vertices().begin(), g.vertices().end());
    for (const auto& [id, f] : g.vertex_families()) vertex_families.push_back(f);
    for (const auto& [id, e] : g.edges()) edges.push_back(e);
    for (const auto& [id, f] : g.edge_families()) edge_families.push_back(f);
  }
  GraphParts() = default;

  Graph build() const { return Graph(vertices, vertex_families, edges, edge_families); }
};

}  // namespace

// ---------------------------------------------------------------------------
// Out-splitting

std::vector<EdgeRef> OutSplitResult::copies_of(const EdgeRef& e) const {
  std::vector<EdgeRef> out;
  if (!e.is_member()) {
    if (auto it = edge_copies.find(e.name); it != edge_copies.end())
      for (const auto& c : it->second) out.push_back(EdgeRef::concrete(c));
  } else if (auto it = family_copies.find(e.name); it != family_copies.end()) {
    for (const auto& c : it->second) out.push_back(EdgeRef::member(c, e.index));
  }
  if (out.empty()) out.push_back(e);
  return out;
}

LpaElement OutSplitResult::vertex_image(const VertexRef& u) const {
  if (u != vertex) return vertex_element(graph, u);
  LpaElement out;
  for (const auto& p : parts) out.add(vertex_element(graph, p));
  return out;
}

LpaElement OutSplitResult::edge_image(const EdgeRef& e) const {
  LpaElement out;
  for (const auto& c : copies_of(e)) out.add(edge_element(graph, c));
  return out;
}

LpaElement OutSplitResult::ghost_image(const EdgeRef& e) const {
  LpaElement out;
  for (const auto& c : copies_of(e)) out.add(ghost_element(graph, c));
  return out;
}

LpaElement OutSplitResult::map_element(const LpaElement& a) const {
  LpaElement out;
  for (const auto& [m, c] : a.terms()) {
    LpaElement img = vertex_image(m.p.start());
    for (const auto& e : m.p.edges()) img = multiply(img, edge_image(e));
    const auto& qe = m.q.edges();
    for (auto it = qe.rbegin(); it != qe.rend(); ++it) img = multiply(img, ghost_image(*it));
    out.add(img, c);
  }
  return normal_form(graph, out);
}

OutSplitResult out_split(const Graph& g, const VertexRef& v, const std::vector<std::vector<EdgeRef>>& explicit_parts) {
  if (v.is_member()) throw Error("out-split: only concrete vertices can be split, got " + to_string(v));
  if (!g.has_vertex(v)) throw Error("out-split: unknown vertex '" + to_string(v) + "'");
  const VertexClass cls = g.classify(v);
  if (cls == VertexClass::Sink) throw Error("out-split: " + to_string(v) + " is a sink");
  if (explicit_parts.empty()) throw Error("out-split: at least one explicit part is required");

  std::map<EdgeRef, std::size_t> explicit_index;
  for (std::size_t i = 0; i < explicit_parts.size(); ++i) {
    if (explicit_parts[i].empty()) throw Error("out-split: part " + std::to_string(i + 1) + " is empty");
    for (const auto& e : explicit_parts[i]) {
      if (!g.has_edge(e) || g.source(e) != v)
        throw Error("out-split: edge '" + to_string(e) + "' is not in s^-1(" + to_string(v) + ")");
      if (!explicit_index.emplace(e, i).second) throw Error("out-split: edge '" + to_string(e) + "' is in two parts");
    }
  }
  const std::size_t n = explicit_parts.size() + 1;
  if (cls == VertexClass::Regular) {
    bool rest = false;
    for (const auto& e : g.finite_out_edges(v))
      if (!explicit_index.count(e)) rest = true;
    if (!rest) throw Error("out-split: the explicit parts exhaust s^-1(" + to_string(v) + "); the last part would be empty");
  }
  auto part_of = [&](const EdgeRef& e) {
    auto it = explicit_index.find(e);
    return it == explicit_index.end() ? n - 1 : it->second;
  };

  OutSplitResult r;
  r.vertex = v;
  r.explicit_parts = explicit_parts;
  for (auto& part : r.explicit_parts) std::sort(part.begin(), part.end());
  NameAllocator names(g);
  for (std::size_t i = 0; i < n; ++i) r.parts.push_back(VertexRef::concrete(names.fresh(v.name + std::to_string(i + 1), r.trace)));

  GraphParts out;
  for (const auto& u : g.vertices())
    if (u != v.name) out.vertices.push_back(u);
  for (const auto& p : r.parts) out.vertices.push_back(p.name);
  for (const auto& [id, f] : g.vertex_families()) out.vertex_families.push_back(f);

  for (const auto& [id, e] : g.edges()) {
    const VertexRef src = e.source == v ? r.parts[part_of(EdgeRef::concrete(id))] : e.source;
    if (e.range != v) {
      out.edges.push_back({id, src, e.range});
      continue;
    }
    auto& copies = r.edge_copies[id];
    for (std::size_t i = 0; i < n; ++i) {
      copies.push_back(names.fresh(id + std::to_string(i + 1), r.trace));
      out.edges.push_back({copies.back(), src, r.parts[i]});
    }
  }

  for (const auto& [id, f] : g.edge_families()) {
    EdgeFamilySpec moved = f;
    const auto* fixed_src = std::get_if<VertexRef>(&f.source);
    if (fixed_src && *fixed_src == v) moved.source = r.parts.back();
    moved.source_overrides.clear();
    for (const auto& [idx, src] : f.source_overrides)
      moved.source_overrides[idx] = src == v ? r.parts[part_of(EdgeRef::member(id, idx))] : src;
    for (const auto& [e, i] : explicit_index)
      if (e.is_member() && e.name == id && i + 1 < n) moved.source_overrides[e.index] = r.parts[i];

    const auto* fixed_rng = std::get_if<VertexRef>(&f.range);
    if (!fixed_rng || *fixed_rng != v) {
      out.edge_families.push_back(std::move(moved));
      continue;
    }
    auto& copies = r.family_copies[id];
    for (std::size_t i = 0; i < n; ++i) {
      EdgeFamilySpec copy = moved;
      copy.id = names.fresh(id + std::to_string(i + 1), r.trace);
      copy.range = r.parts[i];
      copies.push_back(copy.id);
      out.edge_families.push_back(std::move(copy));
    }
  }
  r.graph = out.build();

  std::string head = "out-split " + to_string(v) + " into " + join_vertices(r.parts, ", ");
  for (std::size_t i = 0; i < r.explicit_parts.size(); ++i)
    head += "; E" + std::to_string(i + 1) + " = " + join_edges(r.explicit_parts[i]);
  r.trace.insert(r.trace.begin(), head);
  r.trace.push_back("  " + to_string(v) + " -> " + join_vertices(r.parts, " + "));
  auto doubled = [&](const std::string& id, const std::vector<std::string>& copies, const std::string& suffix) {
    std::string line = "  " + id + suffix + " -> ";
    for (std::size_t i = 0; i < copies.size(); ++i) line += (i ? " + " : "") + copies[i] + suffix;
    r.trace.push_back(line);
  };
  for (const auto& [id, copies] : r.edge_copies) doubled(id, copies, "");
  for (const auto& [id, copies] : r.family_copies) doubled(id, copies, "[n]");
  return r;
}

OutSplitResult out_split(const Graph& g, const VertexRef& v, const std::vector<EdgeRef>& e1) {
  return out_split(g, v, std::vector<std::vector<EdgeRef>>{e1});
}

ProjectiveSpec transform_spec(const SpecSummand& s, const OutSplitResult& r) {
  if (s.vertex == r.vertex) {
    if (s.t.empty()) {
      ProjectiveSpec out;
      for (const auto& p : r.parts) out.push_back({p, {}, s.n});
      return out;
    }
    if (r.parts.size() != 2 || s.t != r.explicit_parts.front())
      throw Error("summand (" + to_string(s) + ") does not match the out-split with E1 = " +
                  join_edges(r.explicit_parts.front()));
    return {{r.parts[1], {}, s.n}};
  }
  if (s.t.empty()) return {s};

  std::vector<EdgeRef> t;
  for (const auto& e : s.t) {
    auto copies = r.copies_of(e);
    t.insert(t.end(), copies.begin(), copies.end());
  }
  std::sort(t.begin(), t.end());
  SpecSummand out{s.vertex, std::move(t), s.n};
  // The transported T-set must still describe a projective of the split graph.
  if (!r.graph.has_vertex(out.vertex) || r.graph.classify(out.vertex) != VertexClass::InfiniteEmitter)
    throw Error("transported summand (" + to_string(out) + ") no longer sits at an infinite emitter");
  for (const auto& e : out.t)
    if (r.graph.source(e) != out.vertex)
      throw Error("transported summand (" + to_string(out) + ") has edge " + to_string(e) + " leaving another vertex");
  return {out};
}

CateisoResult cateiso_pipeline(const Graph& g, const ProjectiveSpec& s) {
  CateisoResult res;
  res.normalized = normalize_projective_spec(g, s);
  res.trace.push_back("normalized spec:");
  for (const auto& x : res.normalized) res.trace.push_back("  " + to_string(x));

  std::set<VertexRef> emitters;
  for (const auto& x : res.normalized)
    if (!x.t.empty()) emitters.insert(x.vertex);

  Graph cur = g;
  ProjectiveSpec spec = res.normalized;
  for (const auto& v : emitters) {
    const SpecSummand* mine = nullptr;
    for (const auto& x : spec)
      if (x.vertex == v && !x.t.empty()) mine = &x;
    if (!mine) throw Error("lost the summand of " + to_string(v) + " during transport");
    OutSplitResult r = out_split(cur, v, mine->t);
    ProjectiveSpec next;
    for (const auto& x : spec)
      for (auto& y : transform_spec(x, r)) next.push_back(std::move(y));
    spec = std::move(next);
    res.trace.insert(res.trace.end(), r.trace.begin(), r.trace.end());
    cur = r.graph;
    res.steps.push_back(std::move(r));
  }
  for (const auto& x : spec) {
    if (!x.t.empty()) throw Error("summand (" + to_string(x) + ") survived every out-split");
    res.multiplicities[x.vertex] += x.n;
  }
  std::string line = "multiplicities:";
  for (const auto& [u, n] : res.multiplicities) line += " " + to_string(u) + ":" + std::to_string(n);
  res.trace.push_back(line);
  res.graph = std::move(cur);
  return res;
}

// ---------------------------------------------------------------------------
// Heads

namespace {

void check_mults(const Graph& f, const std::map<VertexRef, std::uint64_t>& mults) {
  if (mults.empty()) throw Error("multiplicity map is empty");
  for (const auto& [u, n] : mults) {
    if (u.is_member() || !f.has_vertex(u)) throw Error("multiplicity given for unknown concrete vertex " + to_string(u));
    if (n == 0) throw Error("multiplicity of " + to_string(u) + " must be positive");
    if (n > 1000) throw Error("multiplicity of " + to_string(u) + " is too large");
  }
}

}  // namespace

HeadAttachment attach_heads(const Graph& f, const std::map<VertexRef, std::uint64_t>& mults) {
  check_mults(f, mults);
  HeadAttachment res;
  NameAllocator names(f);
  GraphParts parts(f);
  std::map<VertexRef, std::vector<std::pair<std::string, std::string>>> chain;  // base -> (vertex, edge) for k = 1..
  for (const auto& [u, n] : mults) {
    for (std::uint64_t k = 1; k < n; ++k) {
      const std::string hv = names.fresh(u.name + "_" + std::to_string(k), res.trace);
      const std::string he = names.fresh(u.name + "_h" + std::to_string(k), res.trace);
      const std::string below = k == 1 ? u.name : chain[u].back().first;
      parts.vertices.push_back(hv);
      parts.edges.push_back({he, VertexRef::concrete(hv), VertexRef::concrete(below)});
      chain[u].emplace_back(hv, he);
    }
    if (n > 1)
      res.trace.push_back("head of length " + std::to_string(n - 1) + " attached to " + to_string(u));
  }
  res.graph = chain.empty() ? f : parts.build();

  for (const auto& [u, n] : mults) {
    const auto& links = chain[u];
    for (std::size_t k = links.size(); k >= 1; --k) {
      std::vector<EdgeRef> edges;
      for (std::size_t j = k; j >= 1; --j) edges.push_back(EdgeRef::concrete(links[j - 1].second));
      const VertexRef h = VertexRef::concrete(links[k - 1].first);
      res.blocks.push_back({h, u, static_cast<std::uint32_t>(k), res.graph.path(h, std::move(edges))});
    }
    res.blocks.push_back({u, u, 0, res.graph.vertex_path(u)});
  }
  for (const auto& b : res.blocks) res.H.push_back(b.h);
  return res;
}

LpaElement phi_conjugate(const Graph& g, const HeadBlock& left, const HeadBlock& right, const LpaElement& r) {
  if (!in_corner(r, {left.base}, {right.base}))
    throw Error("element is not in the corner " + to_string(left.base) + " L " + to_string(right.base));
  LpaElement p = path_element(left.head);
  LpaElement q = star(path_element(right.head));
  return normal_form(g, multiply(multiply(p, r), q));
}

MatrixShape matrix_shape(const std::vector<HeadBlock>& blocks) {
  MatrixShape shape;
  for (const auto& b : blocks) shape.labels.push_back(b.h);
  for (const auto& row : blocks) {
    std::vector<MatrixCell> cells;
    for (const auto& col : blocks) cells.push_back({row.h, col.h, row.base, col.base});
    shape.cells.push_back(std::move(cells));
  }
  return shape;
}

PipelineReport end_pipeline(const Graph& g, const ProjectiveSpec& s, PipelineOptions opts) {
  CateisoResult cat = cateiso_pipeline(g, s);
  HeadAttachment att = attach_heads(cat.graph, cat.multiplicities);

  PipelineReport rep;
  rep.kind = "end";
  rep.normalized = std::move(cat.normalized);
  rep.multiplicities = std::move(cat.multiplicities);
  rep.trace = std::move(cat.trace);
  rep.trace.insert(rep.trace.end(), att.trace.begin(), att.trace.end());
  rep.final_graph = std::move(att.graph);
  rep.H = std::move(att.H);
  rep.blocks = std::move(att.blocks);
  rep.shape = matrix_shape(rep.blocks);
  rep.basis_sample = restrict_basis(rep.final_graph, {rep.H.begin(), rep.H.end()}, opts.basis_maxlen, opts.family_bound);
  return rep;
}

// ---------------------------------------------------------------------------
// Stabilization

Stabilization stabilize(const Graph& f, const std::map<VertexRef, std::uint64_t>& mults) {
  check_mults(f, mults);
  Stabilization res;
  NameAllocator names(f);
  GraphParts parts(f);
  std::map<std::string, std::pair<std::string, std::string>> concrete_heads;  // u -> (edge u_s[1] -> u, chain family)

  for (const auto& u : f.vertices()) {
    const std::string fam = names.fresh(u + "_s", res.trace);
    const std::string top = names.fresh(u + "_t", res.trace);
    const std::string chain = names.fresh(u + "_se", res.trace);
    parts.vertex_families.push_back({fam, 1});
    parts.edges.push_back({top, VertexRef::member(fam, MultiIndex::of(1)), VertexRef::concrete(u)});
    parts.edge_families.push_back({chain, 1, IndexedEndpoint{fam, {{0, 1}}}, IndexedEndpoint{fam, {{0, 0}}}, {}});
    res.head_family[u] = fam;
    concrete_heads[u] = {top, chain};
    res.trace.push_back("infinite head " + fam + " attached to " + u);
  }
  for (const auto& [id, vf] : f.vertex_families()) {
    if (vf.arity != 1) throw Error("stabilization does not support vertex family '" + id + "' of arity 2");
    const std::string fam = names.fresh(id + "_s", res.trace);
    const std::string top = names.fresh(id + "_t", res.trace);
    const std::string chain = names.fresh(id + "_se", res.trace);
    parts.vertex_families.push_back({fam, 2});
    parts.edge_families.push_back({top, 1, IndexedEndpoint{fam, {{0, 0}, {-1, 1}}}, IndexedEndpoint{id, {{0, 0}}}, {}});
    parts.edge_families.push_back({chain, 2, IndexedEndpoint{fam, {{0, 0}, {1, 1}}}, IndexedEndpoint{fam, {{0, 0}, {1, 0}}}, {}});
    res.head_family[id] = fam;
    res.trace.push_back("infinite heads " + fam + "[n,.] attached to every " + id + "[n]");
  }
  res.graph = parts.build();

  for (const auto& [u, n] : mults) {
    const std::string& fam = res.head_family.at(u.name);
    const auto& [top, chain] = concrete_heads.at(u.name);
    for (std::uint64_t k = n - 1; k >= 1; --k) {
      std::vector<EdgeRef> edges;
      for (std::uint64_t j = k - 1; j >= 1; --j) edges.push_back(EdgeRef::member(chain, MultiIndex::of(static_cast<std::uint32_t>(j))));
      edges.push_back(EdgeRef::concrete(top));
      const VertexRef h = VertexRef::member(fam, MultiIndex::of(static_cast<std::uint32_t>(k)));
      res.blocks.push_back({h, u, static_cast<std::uint32_t>(k), res.graph.path(h, std::move(edges))});
    }
    res.blocks.push_back({u, u, 0, res.graph.vertex_path(u)});
  }
  for (const auto& b : res.blocks) res.H.push_back(b.h);
  return res;
}

PipelineReport cstar_pipeline(const Graph& g, const ProjectiveSpec& s, PipelineOptions opts) {
  CateisoResult cat = cateiso_pipeline(g, s);
  Stabilization st = stabilize(cat.graph, cat.multiplicities);

  PipelineReport rep;
  rep.kind = "cstar";
  rep.normalized = std::move(cat.normalized);
  rep.multiplicities = std::move(cat.multiplicities);
  rep.trace.push_back("normalized spec:");
  for (const auto& x : rep.normalized) rep.trace.push_back("  " + to_string(x));
  for (const auto& r : cat.steps) {
    rep.trace.push_back(r.trace.front());
    rep.trace.push_back("  p_" + to_string(r.vertex) + " -> " + [&] {
      std::string s;
      for (std::size_t i = 0; i < r.parts.size(); ++i) s += (i ? " + p_" : "p_") + to_string(r.parts[i]);
      return s;
    }());
    auto images = [&](const std::string& id, const std::vector<std::string>& copies, const std::string& suffix) {
      std::string line = "  s_" + id + suffix + " -> ";
      for (std::size_t i = 0; i < copies.size(); ++i) line += (i ? " + s_" : "s_") + copies[i] + suffix;
      rep.trace.push_back(line);
    };
    for (const auto& [id, copies] : r.edge_copies) images(id, copies, "");
    for (const auto& [id, copies] : r.family_copies) images(id, copies, "[n]");
  }
  rep.trace.insert(rep.trace.end(), st.trace.begin(), st.trace.end());
  rep.final_graph = std::move(st.graph);
  rep.H = std::move(st.H);
  rep.blocks = std::move(st.blocks);
  rep.shape = matrix_shape(rep.blocks);
  rep.basis_sample = restrict_basis(rep.final_graph, {rep.H.begin(), rep.H.end()}, opts.basis_maxlen, opts.family_bound);
  return rep;
}

}  // namespace lpa
