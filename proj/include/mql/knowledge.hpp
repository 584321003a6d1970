#pragma once
// What the questioner knows: either the explicit set of colorings still
// consistent with play (KnowledgeSet, exact for every model) or the
// same/different constraint graph that captures Pairing-model knowledge
// exactly (PairingGraph).

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mql/core.hpp"

namespace mql {

// The set of colorings consistent with everything learned so far, stored
// as a bitset over all 2^n colorings (bit c <=> the coloring whose red
// mask is c). Exhaustive, so limited to n <= 16.
class KnowledgeSet {
 public:
  static KnowledgeSet full(int n);
  static KnowledgeSet from_colorings(int n, const std::vector<Coloring>& cs);

  int n() const { return n_; }
  std::uint64_t count() const;
  bool empty() const { return count() == 0; }
  bool contains(std::uint32_t coloring_mask) const;
  bool contains(const Coloring& c) const { return contains(c.reds()); }

  // Drops every coloring inconsistent with the answer. Throws
  // InconsistentAnswerError if nothing would remain.
  KnowledgeSet refined(const Query& q, const Answer& a) const;

  // NoMajority iff every remaining coloring is balanced; Majority(b) iff
  // every remaining coloring is unbalanced and b sits in the strict
  // majority class of each (lowest such b); Unknown otherwise.
  // Throws std::invalid_argument on an empty set.
  Verdict verdict() const;

  std::vector<Coloring> colorings() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const KnowledgeSet&, const KnowledgeSet&) = default;

 private:
  KnowledgeSet(int n, std::vector<std::uint64_t> words);

  int n_;
  std::vector<std::uint64_t> words_;
};

inline KnowledgeSet full_knowledge(int n) { return KnowledgeSet::full(n); }

inline KnowledgeSet refine(const KnowledgeSet& ks, const Query& q,
                           const Answer& a) {
  return ks.refined(q, a);
}

inline Verdict verdict(const KnowledgeSet& ks) { return ks.verdict(); }

// One connected component of the constraint graph, two-colored into its
// two sides. side_a is the weakly larger side (ties broken so that side_a
// holds the component's lowest id); delta = |side_a| - |side_b| >= 0.
struct ComponentSummary {
  std::vector<BallId> members;
  std::vector<BallId> side_a;
  std::vector<BallId> side_b;
  int delta = 0;
};

// Same/different constraints on pairs of balls, as accumulated from
// Pairing-model play: a Yes makes the queried balls a same-clique, a No's
// witness adds one diff edge. Edges are stored normalized (a < b) and
// deduplicated.
class PairingGraph {
 public:
  explicit PairingGraph(int n);

  int n() const { return n_; }
  void add_same(BallId a, BallId b);
  void add_diff(BallId a, BallId b);
  const std::vector<std::pair<BallId, BallId>>& same_edges() const {
    return same_;
  }
  const std::vector<std::pair<BallId, BallId>>& diff_edges() const {
    return diff_;
  }

  // True iff some coloring satisfies every constraint (no odd cycle once
  // same-edges are contracted).
  bool satisfiable() const;

  friend bool operator==(const PairingGraph&, const PairingGraph&) = default;

 private:
  void add_edge(std::vector<std::pair<BallId, BallId>>& edges, BallId a,
                BallId b);

  int n_;
  std::vector<std::pair<BallId, BallId>> same_;
  std::vector<std::pair<BallId, BallId>> diff_;
};

// Builds the constraint graph of a Pairing-model transcript. Throws
// InconsistentAnswerError if the transcript admits no coloring.
PairingGraph build_pairing_graph(const Transcript& t);

// Components ordered by lowest member. Throws std::invalid_argument if the
// graph is unsatisfiable.
std::vector<ComponentSummary> component_summaries(const PairingGraph& g);

// Exact verdict from the constraint graph alone: NoMajority iff every
// component is balanced (all deltas zero); Majority(b) iff b's side
// outweighs the worst-case alignment of all other components, i.e. its
// component's delta exceeds the sum of the others'; Unknown otherwise.
Verdict structural_verdict(const PairingGraph& g);

struct MatchingResult {
  int size = 0;
  std::vector<BallId> uncovered;                   // ascending
  std::vector<std::pair<BallId, BallId>> edges;    // the matching itself
};

// Maximum matching of the diff-edge graph (bipartite whenever the graph is
// satisfiable and has no same-edges). Throws std::invalid_argument if the
// diff edges contain an odd cycle.
MatchingResult maximum_matching(const PairingGraph& g);

// For odd n with no same-edges: if the diff edges admit a matching that
// covers all balls but one, that ball is in the majority under every
// consistent coloring; otherwise nothing is concluded.
std::optional<BallId> majority_by_matching(const PairingGraph& g);

// A graph (without same-edges) that pins down a guaranteed-majority ball
// must contain at least floor(n/2) diff edges. Returns whether this graph
// does. Throws std::invalid_argument unless the preconditions hold (no
// same-edges, structural_verdict yields a majority).
bool edge_lower_bound_check(const PairingGraph& g);

}  // namespace mql
