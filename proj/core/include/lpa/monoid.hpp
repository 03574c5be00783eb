#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lpa/graph.hpp"

namespace lpa {

/// A generator of the free abelian monoid T: a vertex when `z` is empty,
/// otherwise q_Z for the infinite emitter `vertex` and the sorted edge set Z.
struct MonoidGen {
  VertexRef vertex;
  std::vector<EdgeRef> z;

  bool is_q() const { return !z.empty(); }
  auto operator<=>(const MonoidGen&) const = default;
};

std::string to_string(const MonoidGen& gen);

/// Finite multiset of generators, i.e. an element of T.
class MonoidElement {
 public:
  using Counts = std::map<MonoidGen, std::uint64_t>;

  MonoidElement() = default;
  static MonoidElement of(const MonoidGen& gen, std::uint64_t n = 1);

  const Counts& counts() const { return counts_; }
  bool is_zero() const { return counts_.empty(); }
  std::uint64_t size() const;

  void add(const MonoidGen& gen, std::uint64_t n = 1);
  /// Removes one copy; returns false if `gen` is absent.
  bool remove_one(const MonoidGen& gen);

  friend MonoidElement operator+(MonoidElement a, const MonoidElement& b) {
    for (const auto& [g, n] : b.counts_) a.add(g, n);
    return a;
  }

  auto operator<=>(const MonoidElement&) const = default;

 private:
  Counts counts_;
};

std::string to_string(const MonoidElement& x);

/// Finite edge sets, one per infinite emitter, that relations (2) and (3)
/// may draw Z and W from.
using MonoidUniverse = std::map<VertexRef, std::set<EdgeRef>>;

/// Collects every edge named by q-generators of the given elements, then
/// adds the first `extra` members of each edge family leaving each emitter.
MonoidUniverse universe_from(const Graph& g, const std::vector<MonoidElement>& elements, std::uint32_t extra = 0);

/// Checks generator validity (q-vertex is an infinite emitter, Z ⊆ s^{-1}(v)).
void validate_monoid_element(const Graph& g, const MonoidElement& x);

/// One application of a defining relation, left to right.
struct MonoidStep {
  int relation = 0;            // 1, 2 or 3
  MonoidGen replaced;          // the generator rewritten
  std::vector<EdgeRef> w;      // Z of relation (2), W of relation (3)
  MonoidElement result;
};

std::string to_string(const MonoidStep& step);

/// All one-step successors of x, in deterministic order.
std::vector<MonoidStep> reduction_steps(const Graph& g, const MonoidElement& x, const MonoidUniverse& universe);

/// The set of one-step successors of x.
std::set<MonoidElement> reduce_once(const Graph& g, const MonoidElement& x, const MonoidUniverse& universe);

enum class Verdict { Yes, Unknown };

std::string to_string(Verdict v);

struct EquivalenceResult {
  Verdict verdict = Verdict::Unknown;
  MonoidElement common;              // the common reduct when Yes
  std::vector<MonoidStep> left;      // x -> ... -> common
  std::vector<MonoidStep> right;     // y -> ... -> common
  std::size_t states = 0;            // elements visited
  bool truncated = false;            // state cap reached before depth
};

struct SearchLimits {
  std::uint32_t depth = 6;
  std::size_t max_states = 200000;
};

/// Bounded search for a common reduct reached from each side in at most
/// `depth` steps. Only ever answers Yes with a replayable witness.
EquivalenceResult equivalent(const Graph& g, const MonoidElement& x, const MonoidElement& y,
                             const MonoidUniverse& universe, SearchLimits limits = {});

/// Replays a witness against reduction_steps; true iff every step is a legal
/// successor and both chains end at `common`.
bool replay_witness(const Graph& g, const MonoidElement& x, const MonoidElement& y, const MonoidUniverse& universe,
                    const EquivalenceResult& result);

/// One summand n (v, T) of a projective presentation: n copies of
/// L_K(E)(v - sum_{e in T} e e*).
struct SpecSummand {
  VertexRef vertex;
  std::vector<EdgeRef> t;  // sorted, unique
  std::uint64_t n = 1;

  auto operator<=>(const SpecSummand&) const = default;
};

using ProjectiveSpec = std::vector<SpecSummand>;

std::string to_string(const SpecSummand& s);
std::string to_string(const ProjectiveSpec& s);

/// Throws unless T is empty or v is an infinite emitter with T ⊆ s^{-1}(v), n ≥ 1.
void validate_spec(const Graph& g, const ProjectiveSpec& s);

/// Rewrites every T at an emitter v to the union T_v of all T-sets at v,
/// compensating with vertex summands r(e) for e in T_v \ T, merges equal
/// summands and sorts by (vertex, vertex summands last, T).
ProjectiveSpec normalize_projective_spec(const Graph& g, const ProjectiveSpec& s);

/// n q_{(v,T)} per summand, or n v when T is empty.
MonoidElement spec_to_monoid(const ProjectiveSpec& s);

}  // namespace lpa
