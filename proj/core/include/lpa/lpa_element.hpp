#pragma once

#include <cstddef>
#include <map>
#include <set>

#include "lpa/graph.hpp"
#include "lpa/scalar.hpp"

namespace lpa {

/// The spanning monomial p q* with r(p) = r(q).
struct Monomial {
  Path p;
  Path q;

  /// Degree |p| - |q| in the Z-grading.
  long degree() const { return static_cast<long>(p.length()) - static_cast<long>(q.length()); }

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;
};

/// Throws if r(p) != r(q).
Monomial make_monomial(Path p, Path q);

std::string to_string(const Monomial& m);

/// A finite K-linear combination of monomials with nonzero coefficients.
class LpaElement {
 public:
  using Terms = std::map<Monomial, Scalar>;

  LpaElement() = default;
  static LpaElement of(const Monomial& m, const Scalar& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Scalar coefficient(const Monomial& m) const;

  /// Adds c * m, dropping the term if its coefficient cancels to zero.
  void add(const Monomial& m, const Scalar& c);
  void add(const LpaElement& other, const Scalar& c = 1);

  friend LpaElement operator+(LpaElement a, const LpaElement& b) {
    a.add(b);
    return a;
  }
  friend LpaElement operator-(LpaElement a, const LpaElement& b) {
    a.add(b, -1);
    return a;
  }
  friend LpaElement operator*(const Scalar& c, const LpaElement& a);

  bool operator==(const LpaElement& other) const { return terms_ == other.terms_; }

 private:
  Terms terms_;
};

// Generators of L_K(E).
LpaElement vertex_element(const Graph& g, const VertexRef& v);
LpaElement edge_element(const Graph& g, const EdgeRef& e);
LpaElement ghost_element(const Graph& g, const EdgeRef& e);
LpaElement path_element(const Path& p);

/// (p q*)(g d*) using relations (2) and (3) only; the result is a single
/// monomial or zero and is not normalized.
LpaElement mul_monomial(const Monomial& a, const Monomial& b);

/// Bilinear product; not normalized.
LpaElement multiply(const LpaElement& a, const LpaElement& b);

struct NormalFormStats {
  std::size_t rewrite_steps = 0;
};

/// True when both p and q end in the special edge of a regular vertex.
bool is_reducible(const Graph& g, const Monomial& m);

/// Canonical representative modulo relation (4): every monomial
/// (p'g)(q'g)* with g the special edge at a regular vertex is rewritten to
/// p'q'* minus the sum over the other out-edges e of (p'e)(q'e)*.
LpaElement normal_form(const Graph& g, const LpaElement& a, NormalFormStats* stats = nullptr);

/// Normal form of the product.
LpaElement product(const Graph& g, const LpaElement& a, const LpaElement& b);

/// The involution (p q*)* = q p*.
LpaElement star(const LpaElement& a);

/// Splits by degree |p| - |q|.
std::map<long, LpaElement> graded_components(const LpaElement& a);

struct CornerFilterResult {
  LpaElement part;
  bool in_corner = false;
};

/// The sub-sum of monomials with s(p), s(q) in H, and whether `a` already
/// lies in the corner-like subring spanned by those monomials.
CornerFilterResult corner_filter(const LpaElement& a, const std::set<VertexRef>& H);

/// True if every monomial has s(p) in `left` and s(q) in `right`.
bool in_corner(const LpaElement& a, const std::set<VertexRef>& left, const std::set<VertexRef>& right);

/// Image under the algebra map induced by a CK-morphism (edges and vertices
/// are mapped letter by letter); paths are rebuilt in `target`.
LpaElement apply_morphism(const GraphMorphism& m, const Graph& target, const LpaElement& a);

}  // namespace lpa
