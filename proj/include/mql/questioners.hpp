#pragma once
// Questioner strategies. Each runner drives an answer source until it can
// announce a verdict, and returns the verdict together with the recorded
// transcript and query count. Runners validate answer shape as they go and
// throw InconsistentAnswerError when a source contradicts itself.

#include <functional>
#include <optional>

#include "mql/core.hpp"

namespace mql {

using AnswerSource = std::function<Answer(const Query&)>;

struct QuestionerRun {
  Verdict verdict;
  Transcript transcript;
  int query_count = 0;
  // Exact size of one color class, reported only by the gap variant.
  std::optional<int> gap;
};

using Questioner = std::function<QuestionerRun(const AnswerSource&, int)>;

struct Majority3Options {
  // Stop the counting phase as soon as the verdict is forced. Leaving this
  // on only ever lowers query counts; turning it off makes the count match
  // the nominal per-case analysis exactly.
  bool early_exit = true;
};

// Triple-query Y/N strategy: view the balls as groups of four, probe each
// group's four triples until one is monochromatic, then count the rest
// against that triple; if every group is balanced, a small endgame on the
// leftover balls decides. Odd n first drops one ball (odd_reduce). Worst
// case by residue of n mod 4: n, n-1, n+1, n queries. Requires n >= 4.
QuestionerRun run_majority3(const AnswerSource& answers, int n,
                            Majority3Options opts = {});

// Same strategy, additionally reporting the exact size of one color class
// (the run's `gap` field). Handles odd n directly and spends at most one
// query more than run_majority3 without early exit.
QuestionerRun run_majority3_with_gap(const AnswerSource& answers, int n);

// Runs `inner` on the first n-1 balls (n odd). A NoMajority there means
// the removed ball tips the scale, so it is the majority.
QuestionerRun odd_reduce(const Questioner& inner, const AnswerSource& answers,
                         int n);

// Triple-query Pairing strategy over bins of balls of known equal color:
// query three equal-size bins' representatives, merging on Yes and
// discarding the witness pair's bins on No; then play off equal-size bins
// against each other and finish the last two singletons with a known
// differing pair. Worst case n/2 + 1 (even n), floor(n/2) (odd n).
// Requires n >= 3.
QuestionerRun run_pairing_bins(const AnswerSource& answers, int n);

// Pair-query (k = 2) bins strategy, identical in both models: merge bins
// on Yes, discard balanced pairs of bins on No. Worst case n - popcount(n).
// Requires n >= 2.
QuestionerRun run_pair_bins(const AnswerSource& answers, int n,
                            Model model = Model::YN);

}  // namespace mql
