#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lpa/lpa_element.hpp"
#include "lpa/monoid.hpp"
#include "lpa/steinberg.hpp"

namespace lpa {

/// Out-split of a concrete vertex v into v^1..v^n. The first n-1 parts of
/// s^{-1}(v) are finite explicit sets; the last part is the rest.
class OutSplitResult {
 public:
  Graph graph;
  VertexRef vertex;                              // split vertex of the source graph
  std::vector<VertexRef> parts;                  // v^1..v^n
  std::vector<std::vector<EdgeRef>> explicit_parts;
  std::map<std::string, std::vector<std::string>> edge_copies;    // concrete edge into v -> e^1..e^n
  std::map<std::string, std::vector<std::string>> family_copies;  // edge family into v -> f^1..f^n
  std::vector<std::string> trace;

  /// Edges of the split graph that replace a source edge (one unless r(e) = v).
  std::vector<EdgeRef> copies_of(const EdgeRef& e) const;

  // Images of the generators of the source algebra.
  LpaElement vertex_image(const VertexRef& u) const;
  LpaElement edge_image(const EdgeRef& e) const;
  LpaElement ghost_image(const EdgeRef& e) const;

  /// The induced algebra map applied to an element of the source algebra, normalized.
  LpaElement map_element(const LpaElement& a) const;
};

OutSplitResult out_split(const Graph& g, const VertexRef& v, const std::vector<std::vector<EdgeRef>>& explicit_parts);
/// Two-part split with E_1 finite and E_2 = s^{-1}(v) \ E_1.
OutSplitResult out_split(const Graph& g, const VertexRef& v, const std::vector<EdgeRef>& e1);

/// Transport of one summand across a two-part out-split whose E_1 is the
/// T-set of the split vertex's summands.
ProjectiveSpec transform_spec(const SpecSummand& s, const OutSplitResult& r);

struct CateisoResult {
  Graph graph;
  ProjectiveSpec normalized;
  std::map<VertexRef, std::uint64_t> multiplicities;
  std::vector<OutSplitResult> steps;
  std::vector<std::string> trace;
};

/// Out-splits every emitter carrying a nonempty T-set (ascending order),
/// transporting the spec until every summand is a vertex summand.
CateisoResult cateiso_pipeline(const Graph& g, const ProjectiveSpec& s);

/// A row/column of the endomorphism matrix: the vertex `h` of H feeding
/// `base` through `head` (a path of length `level` ending at base).
struct HeadBlock {
  VertexRef h;
  VertexRef base;
  std::uint32_t level = 0;
  Path head;
};

struct HeadAttachment {
  Graph graph;
  std::vector<VertexRef> H;
  std::vector<HeadBlock> blocks;
  std::vector<std::string> trace;
};

/// Adds a chain base_{n-1} -> ... -> base_1 -> base for every base with
/// multiplicity n; H lists, per base in ascending order, base_{n-1}..base_1, base.
HeadAttachment attach_heads(const Graph& f, const std::map<VertexRef, std::uint64_t>& mults);

/// p r q* where p, q are the head paths of the two blocks; r must lie in
/// left.base L right.base.
LpaElement phi_conjugate(const Graph& g, const HeadBlock& left, const HeadBlock& right, const LpaElement& r);

/// One cell of the endomorphism matrix: row_h L col_h, isomorphic to row_base L col_base.
struct MatrixCell {
  VertexRef row_h, col_h, row_base, col_base;
};

struct MatrixShape {
  std::vector<VertexRef> labels;
  std::vector<std::vector<MatrixCell>> cells;
  std::size_t size() const { return labels.size(); }
};

MatrixShape matrix_shape(const std::vector<HeadBlock>& blocks);

struct PipelineOptions {
  std::size_t basis_maxlen = 1;
  std::uint32_t family_bound = 2;
};

struct PipelineReport {
  std::string kind;  // "end" or "cstar"
  Graph final_graph;
  ProjectiveSpec normalized;
  std::map<VertexRef, std::uint64_t> multiplicities;
  std::vector<VertexRef> H;
  std::vector<HeadBlock> blocks;
  MatrixShape shape;
  std::vector<std::string> trace;
  std::vector<Bisection> basis_sample;
};

/// normalize -> out-splits -> head attachment; reports (G, H) and the
/// matrix layout of the endomorphism ring.
PipelineReport end_pipeline(const Graph& g, const ProjectiveSpec& s, PipelineOptions opts = {});

struct Stabilization {
  Graph graph;
  std::vector<VertexRef> H;
  std::vector<HeadBlock> blocks;
  std::map<std::string, std::string> head_family;  // vertex or vertex family -> head family
  std::vector<std::string> trace;
};

/// Attaches an infinite head ... -> u_s[2] -> u_s[1] -> u to every concrete
/// vertex u and a family of heads W_s[n, .] to every member W[n] of each
/// vertex family. Vertex families of arity 2 are rejected.
Stabilization stabilize(const Graph& f, const std::map<VertexRef, std::uint64_t>& mults);

/// normalize -> out-splits -> stabilization, at the level of graphs and generators.
PipelineReport cstar_pipeline(const Graph& g, const ProjectiveSpec& s, PipelineOptions opts = {});

}  // namespace lpa
