#pragma once
// Exact game evaluation: the fewest queries that guarantee a verdict
// against every consistent answer strategy, computed by memoized minimax
// over canonicalized knowledge states, plus exhaustive measurement of any
// questioner's true worst case.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mql/core.hpp"
#include "mql/knowledge.hpp"
#include "mql/questioners.hpp"

namespace mql {

// Outcome of the game from some state: either the minimum worst-case
// number of queries, or unsolvable (no strategy guarantees a verdict).
struct GameValue {
  bool solvable = false;
  std::optional<int> queries;  // present iff solvable

  static GameValue unsolvable() { return {false, std::nullopt}; }
  static GameValue of(int q) { return {true, q}; }

  friend bool operator==(const GameValue&, const GameValue&) = default;
};

// Opaque memo key: two states with equal keys have equal game values.
// Always invariant under the global color swap; with `relabel` also under
// ball renaming (detected via iterated signature refinement of the
// pairwise same-color profile).
struct CanonicalKey {
  std::vector<std::uint64_t> bits;

  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
};

CanonicalKey canonical_key(const KnowledgeSet& ks, bool relabel);

struct SolveStats {
  std::uint64_t nodes = 0;        // states expanded (memo misses)
  std::uint64_t memo_hits = 0;    // states answered from stored bounds
  std::uint64_t memo_entries = 0;
};

struct SolveOptions {
  enum class Relabel { Auto, On, Off };

  // Ball-relabeling canonicalization. Auto turns it on where measurement
  // showed it pays: always for Pairing, and for Y/N from n >= 6.
  Relabel relabel = Relabel::Auto;
  // Worker threads for the root split; 0 means "use MQL_THREADS if set,
  // else 1". Values are schedule-independent.
  int threads = 0;
};

// One node of an optimal strategy: the query to ask and, per answer the
// adversary may give, either the final verdict or the next node. Depth
// along any path is at most the game value.
struct StrategyNode {
  struct Child {
    Answer answer;
    std::optional<Verdict> verdict;       // set iff the answer ends the game
    std::unique_ptr<StrategyNode> next;   // set otherwise
  };

  Query query;
  std::vector<Child> children;
};

// Schema:
//   {"query": [int, ...],
//    "children": [{"answer": "yes"|"no", "witness": [int, int]?,
//                  "verdict": string? , "next": {...}?}, ...]}
// Exactly one of "verdict"/"next" is present per child.
std::string strategy_to_json(const StrategyNode& node, int indent = -1);

// Solver for one instance (n balls, arity k, model). Holds the memo table,
// so keep one object around when asking several questions about the same
// instance. Methods are safe to call sequentially; solve() itself may use
// worker threads internally.
class GameSolver {
 public:
  GameSolver(int n, int k, Model model, SolveOptions opts = {});
  ~GameSolver();
  GameSolver(const GameSolver&) = delete;
  GameSolver& operator=(const GameSolver&) = delete;

  int n() const;
  int k() const;
  Model model() const;

  // Value of the full game (cached after the first call).
  GameValue solve();

  // Value from an arbitrary mid-game knowledge state.
  GameValue value_of(const KnowledgeSet& ks);

  // Optimal strategy tree; requires a solvable instance.
  StrategyNode strategy();

  // Plays the optimal strategy against an arbitrary answer source. Never
  // exceeds solve().queries against a self-consistent source; throws
  // InconsistentAnswerError when the source contradicts itself.
  QuestionerRun play_optimal(const AnswerSource& answers);

  // play_optimal as a Questioner (the solver must outlive it; the bound n
  // must match this instance's).
  Questioner questioner();

  SolveStats stats() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Convenience wrapper: construct, solve, discard.
GameValue solve_game(int n, int k, Model model, SolveOptions opts = {});

struct WorstCase {
  int max_queries = 0;
  bool all_correct = false;
};

// True worst case of a deterministic questioner. Y/N: maximum over all
// 2^n colorings against the honest oracle (which is exhaustive over
// adversaries, since Y/N answers are determined by the coloring). Pairing:
// depth-first over every consistent answer and witness choice. Verdicts
// are checked at every leaf against all surviving colorings.
WorstCase worst_case_count(const Questioner& questioner, int n, int k,
                           Model model);

// Solvability per n in [k, n_max].
std::vector<std::pair<int, bool>> existence_table(int k, Model model,
                                                  int n_max,
                                                  SolveOptions opts = {});

}  // namespace mql
