#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lpa/graph.hpp"

namespace lpa {

/// A point of E* ∪ E^∞ that this library can name: a finite path, or the
/// eventually periodic path prefix.cycle.cycle... (a lasso).
/// Lassos built by make_lasso are canonical: the cycle is primitive and
/// the prefix is as short as possible, so equal points compare equal.
struct BoundaryPoint {
  Path prefix;
  std::optional<Path> cycle;

  bool is_lasso() const { return cycle.has_value(); }
  const VertexRef& start() const { return prefix.start(); }

  auto operator<=>(const BoundaryPoint&) const = default;
  bool operator==(const BoundaryPoint&) const = default;
};

BoundaryPoint finite_point(Path p);
/// Canonical lasso; requires a nonempty closed `cycle` at r(prefix).
BoundaryPoint make_lasso(const Graph& g, const Path& prefix, const Path& cycle);

std::string to_string(const BoundaryPoint& x);

/// Edges 0..n-1 of x, or fewer when x is a shorter finite path.
std::vector<EdgeRef> leading_edges(const BoundaryPoint& x, std::size_t n);

/// True iff x = alpha.(tail) for some tail.
bool point_extends(const BoundaryPoint& x, const Path& alpha);

/// The tail t with x = alpha.t (requires point_extends), canonicalized.
BoundaryPoint drop_prefix(const Graph& g, const BoundaryPoint& x, const Path& alpha);

/// alpha.x (requires r(alpha) = s(x)), canonicalized.
BoundaryPoint prepend(const Graph& g, const Path& alpha, const BoundaryPoint& x);

/// C(alpha, G): alpha with a set of edges leaving r(alpha) removed.
struct CylinderSpec {
  Path alpha;
  std::vector<EdgeRef> g;  // sorted

  auto operator<=>(const CylinderSpec&) const = default;
  bool operator==(const CylinderSpec&) const = default;
};

std::string to_string(const CylinderSpec& c);

struct CylinderMeet {
  bool disjoint = true;
  bool first_longer = false;  // which argument is the longer one when they meet
  Path remainder;             // longer = shorter . remainder
};

/// C(alpha) ∩ C(beta) is C(longer) when one path extends the other, else empty.
CylinderMeet cylinder_meet(const Path& alpha, const Path& beta);

/// x ∈ C(alpha, G): x extends alpha and the tail does not start in G.
bool point_in_Z(const BoundaryPoint& x, const CylinderSpec& spec);

bool in_XE(const Graph& g, const Path& p);
bool in_XE(const Graph& g, const BoundaryPoint& x);

/// Finite description of (∩_{a∈F} C(a)) \ (∪_{b∈G} C(b)) as a disjoint
/// union of C(alpha_i, G_i) with edge sets G_i. nullopt means empty.
std::optional<std::vector<CylinderSpec>> normalize_basic_set(const Graph& g, const std::vector<Path>& F,
                                                             const std::vector<Path>& G);

/// Every path of length ≤ maxlen starting in `starts`, family indices ≤ family_bound.
std::vector<Path> enumerate_paths(const Graph& g, const std::vector<VertexRef>& starts, std::size_t maxlen,
                                  std::uint32_t family_bound);

struct SampleBounds {
  std::size_t max_len = 3;          // finite paths and lasso prefixes
  std::size_t max_cycle = 2;        // lasso cycle length
  std::uint32_t family_bound = 3;
};

/// Points of X_E: finite paths ending at sinks or infinite emitters and
/// lassos, within the bounds, sorted and duplicate free.
std::vector<BoundaryPoint> sample_boundary_points(const Graph& g, SampleBounds bounds = {});

/// A point of X_E ∩ C(alpha, G) found within the sampling bounds, if any.
/// Absence of a witness does not prove emptiness.
std::optional<BoundaryPoint> find_witness(const Graph& g, const CylinderSpec& spec, SampleBounds bounds = {});

}  // namespace lpa
