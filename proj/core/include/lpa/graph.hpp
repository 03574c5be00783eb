#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace lpa {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Index of a member of an omega-indexed family. Arity 0 marks a concrete
/// (non-family) element; families have arity 1 or 2 and 1-based indices.
struct MultiIndex {
  std::uint8_t arity = 0;
  std::array<std::uint32_t, 2> at{0, 0};

  static MultiIndex none() { return {}; }
  static MultiIndex of(std::uint32_t i) { return {1, {i, 0}}; }
  static MultiIndex of(std::uint32_t i, std::uint32_t j) { return {2, {i, j}}; }

  bool valid() const;
  auto operator<=>(const MultiIndex&) const = default;
};

std::string to_string(const MultiIndex& idx);

/// A vertex: either a concrete identifier or the member `name[index]` of a
/// vertex family. Ordered by (namespace, token, index).
struct VertexRef {
  std::string name;
  MultiIndex index;

  static VertexRef concrete(std::string name) { return {std::move(name), {}}; }
  static VertexRef member(std::string family, MultiIndex idx) { return {std::move(family), idx}; }

  bool is_member() const { return index.arity != 0; }
  std::strong_ordering operator<=>(const VertexRef& other) const;
  bool operator==(const VertexRef&) const = default;
};

/// An edge: either a concrete identifier or the member `name[index]` of an
/// edge family.
struct EdgeRef {
  std::string name;
  MultiIndex index;

  static EdgeRef concrete(std::string name) { return {std::move(name), {}}; }
  static EdgeRef member(std::string family, MultiIndex idx) { return {std::move(family), idx}; }

  bool is_member() const { return index.arity != 0; }
  std::strong_ordering operator<=>(const EdgeRef& other) const;
  bool operator==(const EdgeRef&) const = default;
};

std::string to_string(const VertexRef& v);
std::string to_string(const EdgeRef& e);
std::ostream& operator<<(std::ostream& os, const VertexRef& v);
std::ostream& operator<<(std::ostream& os, const EdgeRef& e);

/// One coordinate of an index map. `coord < 0` yields the constant `offset`;
/// otherwise the value is `edge_index[coord] + offset`.
struct IndexTerm {
  int coord = -1;
  std::uint32_t offset = 0;
  auto operator<=>(const IndexTerm&) const = default;
};

/// Endpoint that follows the member index: member `n` of the edge family
/// attaches to member `map(n)` of vertex family `family`.
struct IndexedEndpoint {
  std::string family;
  std::vector<IndexTerm> map;
  auto operator<=>(const IndexedEndpoint&) const = default;
};

/// Either a fixed vertex shared by every member, or an indexed endpoint.
using Endpoint = std::variant<VertexRef, IndexedEndpoint>;

struct EdgeSpec {
  std::string id;
  VertexRef source;
  VertexRef range;
};

struct VertexFamilySpec {
  std::string id;
  std::uint8_t arity = 1;
};

/// An omega-indexed family of edges. A fixed source makes that vertex an
/// infinite emitter. `source_overrides` moves finitely many members to
/// another source (out-splitting produces these).
struct EdgeFamilySpec {
  std::string id;
  std::uint8_t arity = 1;
  Endpoint source;
  Endpoint range;
  std::map<MultiIndex, VertexRef> source_overrides;
};

enum class VertexClass { Sink, Regular, InfiniteEmitter };

std::string to_string(VertexClass c);

/// Out-edges of a vertex. When `infinite` is set, `edges` holds the members
/// with every free index coordinate at most the requested bound.
struct OutEdges {
  std::vector<EdgeRef> edges;
  bool infinite = false;
};

class Path;

/// A directed graph whose infinite parts are described by finitely many
/// omega-indexed vertex and edge families. Immutable after construction.
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<std::string> vertices, std::vector<VertexFamilySpec> vertex_families,
        std::vector<EdgeSpec> edges, std::vector<EdgeFamilySpec> edge_families);

  const std::set<std::string>& vertices() const { return vertices_; }
  const std::map<std::string, VertexFamilySpec>& vertex_families() const { return vertex_families_; }
  const std::map<std::string, EdgeSpec>& edges() const { return edges_; }
  const std::map<std::string, EdgeFamilySpec>& edge_families() const { return edge_families_; }

  /// True if `name` is used in any of the four identifier namespaces.
  bool uses_name(const std::string& name) const;

  bool has_vertex(const VertexRef& v) const;
  bool has_edge(const EdgeRef& e) const;

  VertexRef source(const EdgeRef& e) const;
  VertexRef range(const EdgeRef& e) const;

  VertexClass classify(const VertexRef& v) const;

  /// s^{-1}(v), truncated to `family_bound` on free family coordinates.
  OutEdges out_edges(const VertexRef& v, std::uint32_t family_bound) const;

  /// s^{-1}(v) for a vertex known to emit finitely many edges.
  std::vector<EdgeRef> finite_out_edges(const VertexRef& v) const;

  /// Least edge of s^{-1}(v) for a regular vertex.
  std::optional<EdgeRef> special_edge(const VertexRef& v) const;

  /// Edges with range exactly the concrete vertex `v`: concrete edges, and
  /// the ids of edge families whose fixed range is `v`.
  std::vector<std::string> concrete_edges_into(const VertexRef& v) const;
  std::vector<std::string> families_into(const VertexRef& v) const;

  /// All vertices (resp. edges) with family indices bounded by `family_bound`.
  std::vector<VertexRef> vertices_up_to(std::uint32_t family_bound) const;
  std::vector<EdgeRef> edges_up_to(std::uint32_t family_bound) const;

  Path vertex_path(const VertexRef& v) const;
  Path path(const VertexRef& start, std::vector<EdgeRef> edges) const;
  Path edge_path(const EdgeRef& e) const;

  bool operator==(const Graph& other) const;

 private:
  void validate() const;
  void build_indexes();
  std::optional<MultiIndex> eval_endpoint_index(const IndexedEndpoint& ep, const MultiIndex& edge_idx) const;
  VertexRef eval_endpoint(const Endpoint& ep, const MultiIndex& edge_idx) const;
  void check_vertex(const VertexRef& v, const std::string& context) const;

  std::set<std::string> vertices_;
  std::map<std::string, VertexFamilySpec> vertex_families_;
  std::map<std::string, EdgeSpec> edges_;
  std::map<std::string, EdgeFamilySpec> edge_families_;

  // Derived lookup tables.
  std::map<VertexRef, std::vector<EdgeRef>> listed_out_;  // concrete edges and overridden members
  std::map<VertexRef, std::vector<std::string>> fixed_source_families_;
  std::map<std::string, std::vector<std::string>> indexed_source_families_;  // vertex family -> edge families
};

/// A finite path: `start` for length 0, otherwise a composable edge list.
class Path {
 public:
  Path() = default;

  const VertexRef& start() const { return start_; }
  const VertexRef& end() const { return end_; }
  const std::vector<EdgeRef>& edges() const { return edges_; }
  std::size_t length() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  /// Drops the last `n` edges; the new end is the source of the first dropped edge.
  Path drop_back(std::size_t n, const VertexRef& new_end) const;
  /// Keeps the first `n` edges.
  Path prefix(std::size_t n, const Graph& g) const;
  /// Removes the first `n` edges.
  Path suffix_from(std::size_t n, const Graph& g) const;

  /// Path extended by one edge whose source is end() (caller guarantees it).
  Path extended(const EdgeRef& e, const VertexRef& new_end) const;

  bool has_prefix(const Path& other) const;
  /// The remainder r with *this = pre . r (requires has_prefix(pre)).
  Path without_prefix(const Path& pre) const;

  auto operator<=>(const Path&) const = default;
  bool operator==(const Path&) const = default;

 private:
  friend class Graph;
  friend Path compose_paths(const Path& p, const Path& q);
  Path(VertexRef start, VertexRef end, std::vector<EdgeRef> edges)
      : start_(std::move(start)), end_(std::move(end)), edges_(std::move(edges)) {}

  VertexRef start_;
  VertexRef end_;
  std::vector<EdgeRef> edges_;
};

std::string to_string(const Path& p);
std::ostream& operator<<(std::ostream& os, const Path& p);

/// Concatenation pq; throws when r(p) != s(q).
Path compose_paths(const Path& p, const Path& q);

/// A graph morphism described on concrete elements and family-to-family
/// (index preserving) for families.
struct GraphMorphism {
  std::map<VertexRef, VertexRef> vertex_map;
  std::map<std::string, std::string> vertex_family_map;
  std::map<EdgeRef, EdgeRef> edge_map;
  std::map<std::string, std::string> edge_family_map;

  static GraphMorphism identity(const Graph& g);

  std::optional<VertexRef> apply(const VertexRef& v) const;
  std::optional<EdgeRef> apply(const EdgeRef& e) const;
};

struct CkCheck {
  bool ok = false;
  std::string witness;  // empty when ok
};

/// Checks that `m` is a CK-morphism e -> f. Family members are checked at
/// indices up to `sample_bound`.
CkCheck check_ck_morphism(const Graph& e, const Graph& f, const GraphMorphism& m,
                          std::uint32_t sample_bound = 6);

}  // namespace lpa
