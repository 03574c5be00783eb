#pragma once

#include <string>

#include "lpa/graph.hpp"
#include "lpa/lpa_element.hpp"
#include "lpa/monoid.hpp"
#include "lpa/path_space.hpp"
#include "lpa/steinberg.hpp"
#include "lpa/transforms.hpp"

namespace lpa {

/// Syntax or resolution error with a 1-based position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

// Graph documents:
//
//   VERTICES
//   v u
//   VERTEX_FAMILIES
//   w            (w/2 for a doubly indexed family)
//   EDGES
//   x: v -> u    (endpoints may be members, w[3])
//   EDGE_FAMILIES
//   f: v -> w    (a bare family name is the diagonal w[#1])
//   g: v -> w[#1+1]
//   h/2: W[#1,#2+1] -> W[#1,#2]
//   SOURCE_OVERRIDES
//   f[1]: u
//
// `#` followed by a non-digit starts a comment.
Graph parse_graph(const std::string& text);
std::string print_graph(const Graph& g);

VertexRef parse_vertex_ref(const std::string& text, const Graph& g);
EdgeRef parse_edge_ref(const std::string& text, const Graph& g);

/// Dot-separated edges, or a single vertex for a path of length 0.
Path parse_path(const std::string& text, const Graph& g);

/// A path, or lasso(prefix;cycle).
BoundaryPoint parse_boundary_point(const std::string& text, const Graph& g);

/// (mu, nu, tail)
GroupoidPoint parse_groupoid_point(const std::string& text, const Graph& g);

/// Element expressions: `^` (star) binds tightest, then `.` (product), then
/// rational scalars `3/4*`, then `+`/`-`. The result is not normalized.
LpaElement parse_element(const std::string& text, const Graph& g);
std::string print_element(const LpaElement& a);

/// `2*v + w[1] + q(v;{e[1]})`, or `0`.
MonoidElement parse_monoid_element(const std::string& text, const Graph& g);

/// One summand per line: `v; {e, f[1]}; 2`. Blank lines and comments are skipped.
ProjectiveSpec parse_spec(const std::string& text, const Graph& g);
std::string print_spec(const ProjectiveSpec& s);

std::string print_report(const PipelineReport& r);

}  // namespace lpa
