#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lpa/lpa_element.hpp"
#include "lpa/path_space.hpp"

namespace lpa {

/// (x, k, y) of the boundary path groupoid, stored with canonical x and y.
struct GroupoidPoint {
  BoundaryPoint x;
  long k = 0;
  BoundaryPoint y;

  auto operator<=>(const GroupoidPoint&) const = default;
  bool operator==(const GroupoidPoint&) const = default;
};

/// (mu.tail, |mu| - |nu|, nu.tail); requires r(mu) = r(nu) = s(tail).
GroupoidPoint make_point(const Graph& g, const Path& mu, const Path& nu, const BoundaryPoint& tail);
GroupoidPoint unit_point(const BoundaryPoint& x);
GroupoidPoint inverse(const GroupoidPoint& p);

std::string to_string(const GroupoidPoint& p);

/// (x, k, y)(y, l, z) = (x, k + l, z); throws when the middle points differ.
GroupoidPoint compose_points(const GroupoidPoint& a, const GroupoidPoint& b);

/// The compact open bisection Z(alpha, beta) with r(alpha) = r(beta).
struct Bisection {
  Path alpha;
  Path beta;

  auto operator<=>(const Bisection&) const = default;
  bool operator==(const Bisection&) const = default;
};

Bisection make_bisection(Path alpha, Path beta);
std::string to_string(const Bisection& b);

/// Point membership: x = alpha.t, y = beta.t for a common t and k = |alpha| - |beta|.
bool contains(const Graph& g, const Bisection& b, const GroupoidPoint& p);

/// Z(a,b) Z(c,d) as a set product; nullopt when empty.
std::optional<Bisection> bisection_product(const Bisection& a, const Bisection& b);

/// Finite linear combination of indicator functions 1_{Z(alpha, beta)}.
class SteinbergElement {
 public:
  using Terms = std::map<Bisection, Scalar>;

  SteinbergElement() = default;
  static SteinbergElement indicator(const Bisection& b, const Scalar& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const Bisection& b, const Scalar& c);
  void add(const SteinbergElement& other, const Scalar& c = 1);

  bool operator==(const SteinbergElement& other) const { return terms_ == other.terms_; }

 private:
  Terms terms_;
};

std::string to_string(const SteinbergElement& f);

/// Rewrites indicators of Z(a.s, b.s), s the special edge at a regular
/// vertex, through the disjoint decomposition of Z(a, b) by first edges.
SteinbergElement normalize(const Graph& g, const SteinbergElement& f);

/// Convolution f * h (bilinear in bisection products), normalized.
SteinbergElement convolve(const Graph& g, const SteinbergElement& f, const SteinbergElement& h);

/// Sum of coefficients of the bisections containing p.
Scalar evaluate(const Graph& g, const SteinbergElement& f, const GroupoidPoint& p);

/// p q* ↦ 1_{Z(p, q)} and back.
SteinbergElement pi_map(const LpaElement& a);
LpaElement pi_inv(const SteinbergElement& f);

/// Z(alpha, beta) that cannot be split further (alpha, beta do not both end
/// in the special edge of a regular vertex), s(alpha), s(beta) ∈ H, lengths
/// ≤ maxlen, family indices ≤ family_bound. Sorted.
std::vector<Bisection> restrict_basis(const Graph& g, const std::set<VertexRef>& H, std::size_t maxlen,
                                      std::uint32_t family_bound);

/// Units (x, 0, x) of the restriction to H among the sampled boundary points.
std::vector<GroupoidPoint> restricted_units(const Graph& g, const std::set<VertexRef>& H, SampleBounds bounds = {});

}  // namespace lpa
