#include "mql/adversaries.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mql {

AnswerSource honest_source(Coloring c, Model model) {
  return [c = std::move(c), model](const Query& q) {
    return honest_answer(c, q, model);
  };
}

std::optional<std::vector<BallId>> find_partition_witness(
    int n, const std::vector<Query>& queries) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("partition witnesses need even n >= 4");
  }
  if (n > 14) {
    throw InfeasibleError("partition witness search is capped at n = 14");
  }
  int m = n / 2;
  std::vector<BallId> comb(m);
  for (int i = 0; i < m; ++i) comb[i] = i;

  auto splits_all = [&](std::uint32_t xmask) {
    for (const Query& q : queries) {
      std::uint32_t qm = q.mask();
      if ((qm & xmask) == 0 || (qm & ~xmask) == 0) return false;
    }
    return true;
  };

  while (true) {
    std::uint32_t xmask = 0;
    for (BallId b : comb) xmask |= 1u << b;
    if (splits_all(xmask)) return comb;

    // Advance to the next m-subset in lexicographic order.
    int i = m - 1;
    while (i >= 0 && comb[i] == n - m + i) --i;
    if (i < 0) return std::nullopt;
    ++comb[i];
    for (int j = i + 1; j < m; ++j) comb[j] = comb[j - 1] + 1;
  }
}

PartitionAdversary::PartitionAdversary(int n) : n_(n) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("partition adversary needs even n >= 4");
  }
  if (n > 14) {
    throw InfeasibleError("partition adversary is capped at n = 14");
  }
}

Answer PartitionAdversary::answer(const Query& q) {
  if (committed_) return honest_answer(*committed_, q, Model::YN);
  asked_.push_back(q);
  if (find_partition_witness(n_, asked_).has_value()) return Answer::no();
  // The new query eliminated the last splitting subset. Commit to the
  // smallest subset that splits everything before it; that subset cannot
  // split this query either, so the honest reply here is Yes.
  asked_.pop_back();
  std::optional<std::vector<BallId>> x = find_partition_witness(n_, asked_);
  committed_ = make_coloring(n_, *x);
  return honest_answer(*committed_, q, Model::YN);
}

AnswerSource PartitionAdversary::source() {
  return [this](const Query& q) { return answer(q); };
}

std::optional<std::pair<BallId, BallId>> near_matching_uncovered_pair(
    const PairingGraph& g) {
  if (!g.same_edges().empty()) return std::nullopt;
  std::vector<bool> covered(static_cast<std::size_t>(g.n()), false);
  for (const auto& [a, b] : g.diff_edges()) {
    if (covered[static_cast<std::size_t>(a)] ||
        covered[static_cast<std::size_t>(b)]) {
      return std::nullopt;  // shared endpoint: not a matching
    }
    covered[static_cast<std::size_t>(a)] = true;
    covered[static_cast<std::size_t>(b)] = true;
  }
  std::vector<BallId> uncovered;
  for (BallId b = 0; b < g.n(); ++b) {
    if (!covered[static_cast<std::size_t>(b)]) uncovered.push_back(b);
  }
  if (uncovered.size() != 2) return std::nullopt;
  return std::make_pair(uncovered[0], uncovered[1]);
}

GreedyPairingAdversary::GreedyPairingAdversary(int n) : n_(n), graph_(n) {
  if (n < 2) {
    throw std::invalid_argument("greedy pairing adversary needs n >= 2");
  }
}

Answer GreedyPairingAdversary::answer(const Query& q) {
  // Side map of the adversary's own constraint graph: two balls are forced
  // monochromatic iff they share a component and a side.
  std::vector<int> comp(static_cast<std::size_t>(n_), -1);
  std::vector<int> side(static_cast<std::size_t>(n_), 0);
  std::vector<ComponentSummary> comps = component_summaries(graph_);
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    for (BallId b : comps[ci].side_a) {
      comp[static_cast<std::size_t>(b)] = static_cast<int>(ci);
      side[static_cast<std::size_t>(b)] = 0;
    }
    for (BallId b : comps[ci].side_b) {
      comp[static_cast<std::size_t>(b)] = static_cast<int>(ci);
      side[static_cast<std::size_t>(b)] = 1;
    }
  }
  auto forced_same = [&](BallId a, BallId b) {
    return comp[static_cast<std::size_t>(a)] ==
               comp[static_cast<std::size_t>(b)] &&
           side[static_cast<std::size_t>(a)] ==
               side[static_cast<std::size_t>(b)];
  };

  std::vector<std::pair<BallId, BallId>> legal;
  bool all_forced = true;
  for (int i = 0; i < q.size(); ++i) {
    for (int j = i + 1; j < q.size(); ++j) {
      if (forced_same(q[i], q[j])) continue;
      all_forced = false;
      legal.emplace_back(q[i], q[j]);
    }
  }
  if (all_forced) return Answer::yes();

  std::pair<BallId, BallId> pick = legal.front();
  if (n_ % 2 == 0) {
    // Never complete a near-perfect matching of differing pairs while an
    // alternative denial exists: completing it concedes the even split.
    if (auto avoid = near_matching_uncovered_pair(graph_)) {
      for (const auto& p : legal) {
        if (p != *avoid) {
          pick = p;
          break;
        }
      }
    }
  }
  graph_.add_diff(pick.first, pick.second);
  return Answer::no_with(pick.first, pick.second);
}

AnswerSource GreedyPairingAdversary::source() {
  return [this](const Query& q) { return answer(q); };
}

ConsistencyGuard::ConsistencyGuard(AnswerSource inner, int n, Model model)
    : inner_(std::move(inner)),
      model_(model),
      knowledge_(KnowledgeSet::full(n)) {}

Answer ConsistencyGuard::answer(const Query& q) {
  Answer a = inner_(q);
  if (model_ == Model::YN && a.witness) {
    throw std::invalid_argument("witness in the Y/N model");
  }
  if (model_ == Model::Pairing && a.kind == AnswerKind::No && !a.witness) {
    throw std::invalid_argument("Pairing-model No answers need a witness");
  }
  knowledge_ = knowledge_.refined(q, a);
  return a;
}

AnswerSource ConsistencyGuard::source() {
  return [this](const Query& q) { return answer(q); };
}

ExactAdversary::ExactAdversary(int n, int k, Model model, SolveOptions opts)
    : solver_(std::make_unique<GameSolver>(n, k, model, opts)),
      model_(model),
      knowledge_(KnowledgeSet::full(n)) {}

Answer ExactAdversary::answer(const Query& q) {
  std::vector<Answer> candidates;
  candidates.push_back(Answer::yes());
  if (model_ == Model::YN) {
    candidates.push_back(Answer::no());
  } else {
    const std::vector<BallId>& balls = q.balls();
    for (std::size_t i = 0; i < balls.size(); ++i) {
      for (std::size_t j = i + 1; j < balls.size(); ++j) {
        candidates.push_back(Answer::no_with(balls[i], balls[j]));
      }
    }
  }
  bool have = false;
  Answer best = Answer::yes();
  KnowledgeSet best_knowledge = knowledge_;
  // Rank: unsolvable beats any finite value; otherwise more remaining
  // queries is better. Strict comparison keeps the first maximum.
  long long best_score = -1;
  for (const Answer& a : candidates) {
    KnowledgeSet next = knowledge_;
    try {
      next = knowledge_.refined(q, a);
    } catch (const InconsistentAnswerError&) {
      continue;
    }
    GameValue v = solver_->value_of(next);
    long long score =
        v.solvable ? static_cast<long long>(*v.queries)
                   : std::numeric_limits<long long>::max();
    if (!have || score > best_score) {
      have = true;
      best = a;
      best_knowledge = std::move(next);
      best_score = score;
    }
  }
  if (!have) {
    throw std::logic_error("no answer is consistent (impossible for a "
                           "nonempty knowledge set)");
  }
  knowledge_ = std::move(best_knowledge);
  return best;
}

AnswerSource ExactAdversary::source() {
  return [this](const Query& q) { return answer(q); };
}

}  // namespace mql
