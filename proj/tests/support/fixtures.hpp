#pragma once

#include <random>
#include <string>
#include <vector>

#include "lpa/graph.hpp"
#include "lpa/lpa_element.hpp"

namespace lpa::test {

inline VertexRef V(const std::string& name) { return VertexRef::concrete(name); }
inline VertexRef V(const std::string& name, std::uint32_t i) { return VertexRef::member(name, MultiIndex::of(i)); }
inline EdgeRef E(const std::string& name) { return EdgeRef::concrete(name); }
inline EdgeRef E(const std::string& name, std::uint32_t i) { return EdgeRef::member(name, MultiIndex::of(i)); }

// Graphs built directly through the Graph constructor, independent of the
// text parser.
Graph t2();          // x, y: a -> b
Graph clock_graph(); // e[n]: v -> w[n]
Graph loop();        // c: u -> u
Graph loop_exit();   // c: u -> u, d: u -> z
Graph example_E();   // e: v -> v, f[n]: v -> w, g[n]: w -> u
Graph example_F();   // v split into v1, v2 along {e, f[1]}

struct NamedGraph {
  std::string name;
  Graph graph;
};

/// T2, clock, loop with exit, and F.
std::vector<NamedGraph> steinberg_graphs();
/// T2, clock, loop, loop with exit, E and F.
std::vector<NamedGraph> all_graphs();

std::string data_file(const std::string& name);
std::string read_text(const std::string& path);

/// Uniform sampling of monomials p q* with |p|, |q| ≤ maxlen.
class MonomialSampler {
 public:
  MonomialSampler(const Graph& g, std::size_t maxlen, std::uint32_t family_bound);

  Monomial monomial(std::mt19937_64& rng) const;
  /// Sum of `terms` random monomials with small nonzero rational coefficients.
  LpaElement element(std::mt19937_64& rng, std::size_t terms) const;
  /// A random nonzero element of s(p) = left, s(q) = right, or zero if none exist.
  LpaElement corner_element(std::mt19937_64& rng, const VertexRef& left, const VertexRef& right, std::size_t terms) const;

  const std::vector<Path>& paths() const { return paths_; }

 private:
  std::vector<Path> paths_;
  std::map<VertexRef, std::vector<std::size_t>> by_end_;
};

Scalar random_scalar(std::mt19937_64& rng);

}  // namespace lpa::test
