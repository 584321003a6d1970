#pragma once
// Adaptive answer strategies that try to maximize the number of queries a
// questioner needs, plus guards that keep any answer source honest about
// self-consistency. Each adversary is a stateful object; `source()` adapts
// it to the AnswerSource callback shape (the object must outlive the
// returned callback).

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "mql/core.hpp"
#include "mql/knowledge.hpp"
#include "mql/questioners.hpp"
#include "mql/solver.hpp"

namespace mql {

// Truthful oracle for a fixed coloring, capturing the coloring by value.
AnswerSource honest_source(Coloring c, Model model);

// Lexicographically smallest (n/2)-subset X of the balls such that every
// listed query contains at least one ball inside X and one outside, or
// nullopt when no such subset remains. Enumerates all C(n, n/2) subsets,
// so n is capped at 14 (throws InfeasibleError beyond).
std::optional<std::vector<BallId>> find_partition_witness(
    int n, const std::vector<Query>& queries);

// Yes/No-model adversary for even n. It answers No while some half-size
// subset still splits every asked query (so both a balanced coloring and,
// early on, lopsided ones remain live). The first query that would kill
// every such subset triggers commitment: the adversary fixes the smallest
// half-size subset splitting all previous queries as the red class and
// answers honestly for that balanced coloring from then on. Against
// triple queries this forces at least n - 1 questions.
class PartitionAdversary {
 public:
  explicit PartitionAdversary(int n);

  Answer answer(const Query& q);
  AnswerSource source();

  const std::optional<Coloring>& committed() const { return committed_; }

 private:
  int n_;
  std::vector<Query> asked_;
  std::optional<Coloring> committed_;
};

// When the graph's only constraints are differing pairs that form a
// matching covering all balls but two, returns those two balls; nullopt
// otherwise. Completing that matching is the one answer that immediately
// reveals an even split, which the greedy adversary avoids.
std::optional<std::pair<BallId, BallId>> near_matching_uncovered_pair(
    const PairingGraph& g);

// Pairing-model adversary: concedes Yes only when its own previous answers
// already force the queried balls to share a color; otherwise it denies,
// blaming the lexicographically smallest queried pair not yet forced to be
// monochromatic (for even n, never completing a near-perfect matching of
// differing pairs while an alternative exists). Forces n/2 + 1 queries for
// even n and floor(n/2) for odd n against any correct strategy.
class GreedyPairingAdversary {
 public:
  explicit GreedyPairingAdversary(int n);

  Answer answer(const Query& q);
  AnswerSource source();

  const PairingGraph& graph() const { return graph_; }

 private:
  int n_;
  PairingGraph graph_;
};

// Exact adversary: answers every query so as to maximize the remaining
// game value, computed by the exact solver over the knowledge produced by
// its own past answers. Ties break toward the first candidate in the
// fixed order Yes, No (Y/N model) / No per witness pair lex (Pairing).
// Against an optimal questioner this forces exactly the game value;
// feasibility limits are the solver's.
class ExactAdversary {
 public:
  ExactAdversary(int n, int k, Model model, SolveOptions opts = {});

  Answer answer(const Query& q);
  AnswerSource source();

  const KnowledgeSet& knowledge() const { return knowledge_; }

 private:
  std::unique_ptr<GameSolver> solver_;
  Model model_;
  KnowledgeSet knowledge_;
};

// Wraps an answer source and tracks the set of colorings consistent with
// everything answered so far; throws InconsistentAnswerError the moment an
// answer empties that set. Exhaustive over 2^n colorings, so n <= 16.
class ConsistencyGuard {
 public:
  ConsistencyGuard(AnswerSource inner, int n, Model model);

  Answer answer(const Query& q);
  AnswerSource source();

  const KnowledgeSet& knowledge() const { return knowledge_; }

 private:
  AnswerSource inner_;
  Model model_;
  KnowledgeSet knowledge_;
};

}  // namespace mql
