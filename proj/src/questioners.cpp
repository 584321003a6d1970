#include "mql/questioners.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "mql/knowledge.hpp"

namespace mql {

namespace {

// Records queries, validates answer shape, and enforces the global query
// ceiling no strategy here may exceed (n + 2).
class Session {
 public:
  Session(const AnswerSource& source, Model model, int k, int n)
      : source_(source), transcript_{model, k, n, {}}, ceiling_(n + 2) {}

  Answer ask(const Query& q) {
    if (count() >= ceiling_) {
      throw std::logic_error("query ceiling exceeded; runaway strategy");
    }
    Answer a = source_(q);
    if (transcript_.model == Model::Pairing && a.kind == AnswerKind::No &&
        !a.witness) {
      throw std::invalid_argument("Pairing-model No answers need a witness");
    }
    if (a.witness) {
      if (a.kind == AnswerKind::Yes || transcript_.model == Model::YN ||
          !q.contains(a.witness->first) || !q.contains(a.witness->second)) {
        throw std::invalid_argument("malformed witness from answer source");
      }
    }
    transcript_.append(q, a);
    return a;
  }

  int count() const { return static_cast<int>(transcript_.steps.size()); }
  Transcript take() { return std::move(transcript_); }

 private:
  const AnswerSource& source_;
  Transcript transcript_;
  int ceiling_;
};

QuestionerRun finish(Session& s, Verdict v, std::optional<int> gap) {
  QuestionerRun run;
  run.verdict = v;
  run.query_count = s.count();
  run.transcript = s.take();
  run.gap = gap;
  return run;
}

// Shared body of run_majority3 and its gap variant. `with_gap` implies no
// early exit (the exact class size needs the full count) and handles odd
// residues directly instead of via odd_reduce.
QuestionerRun majority3_core(const AnswerSource& answers, int n,
                             bool early_exit, bool with_gap) {
  int m = n / 4;
  int r = n % 4;
  Session s(answers, Model::YN, 3, n);

  for (int j = 0; j < m; ++j) {
    BallId g0 = 4 * j;
    const Query triples[4] = {Query{g0, g0 + 1, g0 + 2},
                              Query{g0, g0 + 1, g0 + 3},
                              Query{g0, g0 + 2, g0 + 3},
                              Query{g0 + 1, g0 + 2, g0 + 3}};
    for (int t = 0; t < 4; ++t) {
      if (!s.ask(triples[t]).is_yes()) continue;

      // Some triple of group j is monochromatic (call its color X). Every
      // earlier group answered No on all four of its triples, which forces
      // an exact 2-2 split there, so those 4j balls cancel out.
      const Query& yes = triples[t];
      BallId d = g0 + (6 - ((yes[0] - g0) + (yes[1] - g0) + (yes[2] - g0)));
      std::vector<BallId> same{yes[0], yes[1], yes[2]};
      std::vector<BallId> diff;
      std::vector<BallId> pending;
      // If the Yes came after a No, that No covered d plus two balls of
      // the Yes triple, so d is already known to differ from X. Only a
      // first-ask Yes leaves d unresolved, costing one extra comparison.
      if (t > 0) {
        diff.push_back(d);
      } else {
        pending.push_back(d);
      }
      for (BallId e = 4 * (j + 1); e < n; ++e) pending.push_back(e);

      for (std::size_t idx = 0; idx < pending.size(); ++idx) {
        int remaining = static_cast<int>(pending.size() - idx);
        int lead =
            static_cast<int>(same.size()) - static_cast<int>(diff.size());
        if (early_exit && std::abs(lead) > remaining) break;
        BallId e = pending[idx];
        if (s.ask(Query{yes[0], yes[1], e}).is_yes()) {
          same.push_back(e);
        } else {
          diff.push_back(e);
        }
      }

      int lead = static_cast<int>(same.size()) - static_cast<int>(diff.size());
      std::optional<int> gap;
      if (with_gap) gap = 2 * j + static_cast<int>(same.size());
      if (lead > 0) {
        return finish(
            s, Verdict::majority(*std::min_element(same.begin(), same.end())),
            gap);
      }
      if (lead < 0) {
        return finish(
            s, Verdict::majority(*std::min_element(diff.begin(), diff.end())),
            gap);
      }
      return finish(s, Verdict::no_majority(), gap);
    }
  }

  // Every group is balanced; the r leftover balls decide.
  if (r == 0) {
    return finish(s, Verdict::no_majority(),
                  with_gap ? std::optional<int>(n / 2) : std::nullopt);
  }
  if (r == 1) {
    return finish(s, Verdict::majority(n - 1),
                  with_gap ? std::optional<int>(2 * m + 1) : std::nullopt);
  }

  // r == 2 or 3: compare the two lowest leftovers x, y against the first
  // group. That group is split 2-2, so if x and y share a color, one of
  // the probes 0, 1, 2 has it too and some query answers Yes.
  BallId x = 4 * m;
  BallId y = 4 * m + 1;
  bool xy_same = false;
  BallId probe = -1;
  for (BallId z : {0, 1, 2}) {
    if (s.ask(Query{z, x, y}).is_yes()) {
      xy_same = true;
      probe = z;
      break;
    }
  }
  if (r == 2) {
    if (xy_same) {
      return finish(s, Verdict::majority(probe),
                    with_gap ? std::optional<int>(2 * m + 2) : std::nullopt);
    }
    return finish(s, Verdict::no_majority(),
                  with_gap ? std::optional<int>(2 * m + 1) : std::nullopt);
  }
  // r == 3 (gap variant only): if x and y differ they cancel and the last
  // ball is the majority; if they agree, one more comparison tells whether
  // the last ball joins their class (size 2m+3) or not (2m+2).
  BallId z = n - 1;
  if (!xy_same) {
    return finish(s, Verdict::majority(z),
                  with_gap ? std::optional<int>(2 * m + 2) : std::nullopt);
  }
  Verdict v = Verdict::majority(probe);
  if (!with_gap) return finish(s, v, std::nullopt);
  bool z_joins = s.ask(Query{x, y, z}).is_yes();
  return finish(s, v, z_joins ? 2 * m + 3 : 2 * m + 2);
}

// Bins of balls known to share a color, kept sorted by representative
// (= lowest member).
class BinTable {
 public:
  explicit BinTable(int n) {
    for (BallId b = 0; b < n; ++b) bins_.push_back({b});
  }

  int count() const { return static_cast<int>(bins_.size()); }
  const std::vector<BallId>& bin(int i) const {
    return bins_[static_cast<std::size_t>(i)];
  }
  BallId rep(int i) const { return bin(i).front(); }
  int size_of(int i) const { return static_cast<int>(bin(i).size()); }

  int largest_size() const {
    int best = 0;
    for (int i = 0; i < count(); ++i) best = std::max(best, size_of(i));
    return best;
  }

  std::vector<int> indices_of_size(int size) const {
    std::vector<int> out;
    for (int i = 0; i < count(); ++i) {
      if (size_of(i) == size) out.push_back(i);
    }
    return out;
  }

  int index_of_ball(BallId b) const {
    for (int i = 0; i < count(); ++i) {
      if (std::binary_search(bin(i).begin(), bin(i).end(), b)) return i;
    }
    return -1;
  }

  // The first `want` bins (in representative order) of some common size,
  // preferring the group whose representative tuple is lexicographically
  // smallest; empty if no size has `want` bins.
  std::vector<int> equal_size_group(int want) const {
    std::map<int, std::vector<int>> by_size;
    for (int i = 0; i < count(); ++i) by_size[size_of(i)].push_back(i);
    std::vector<int> best;
    std::vector<BallId> best_reps;
    for (const auto& [size, idxs] : by_size) {
      if (static_cast<int>(idxs.size()) < want) continue;
      std::vector<int> cand(idxs.begin(), idxs.begin() + want);
      std::vector<BallId> reps;
      reps.reserve(cand.size());
      for (int i : cand) reps.push_back(rep(i));
      if (best.empty() || reps < best_reps) {
        best = std::move(cand);
        best_reps = std::move(reps);
      }
    }
    return best;
  }

  void merge(const std::vector<int>& indices) {
    std::vector<BallId> merged;
    for (int i : indices) {
      merged.insert(merged.end(), bin(i).begin(), bin(i).end());
    }
    std::sort(merged.begin(), merged.end());
    remove(indices);
    auto pos = std::find_if(bins_.begin(), bins_.end(),
                            [&](const std::vector<BallId>& other) {
                              return other.front() > merged.front();
                            });
    bins_.insert(pos, std::move(merged));
  }

  void remove(std::vector<int> indices) {
    std::sort(indices.rbegin(), indices.rend());
    for (int i : indices) bins_.erase(bins_.begin() + i);
  }

 private:
  std::vector<std::vector<BallId>> bins_;
};

}  // namespace

QuestionerRun run_majority3(const AnswerSource& answers, int n,
                            Majority3Options opts) {
  if (n < 4) {
    throw std::invalid_argument("triple-query Y/N majority needs n >= 4");
  }
  if (n % 2 == 1) {
    return odd_reduce(
        [opts](const AnswerSource& src, int inner_n) {
          return run_majority3(src, inner_n, opts);
        },
        answers, n);
  }
  return majority3_core(answers, n, opts.early_exit, /*with_gap=*/false);
}

QuestionerRun run_majority3_with_gap(const AnswerSource& answers, int n) {
  if (n < 4) {
    throw std::invalid_argument("triple-query Y/N majority needs n >= 4");
  }
  return majority3_core(answers, n, /*early_exit=*/false, /*with_gap=*/true);
}

QuestionerRun odd_reduce(const Questioner& inner, const AnswerSource& answers,
                         int n) {
  if (n < 3 || n % 2 == 0) {
    throw std::invalid_argument("odd_reduce needs odd n >= 3");
  }
  QuestionerRun run = inner(answers, n - 1);
  run.transcript.n = n;
  if (run.verdict == Verdict::no_majority()) {
    // The first n-1 balls split evenly, so the withheld ball tips the scale.
    run.verdict = Verdict::majority(n - 1);
  }
  run.gap.reset();
  return run;
}

QuestionerRun run_pairing_bins(const AnswerSource& answers, int n) {
  if (n < 3) {
    throw std::invalid_argument("triple-query pairing majority needs n >= 3");
  }
  Session s(answers, Model::Pairing, 3, n);
  BinTable bins(n);
  PairingGraph g(n);
  std::optional<std::pair<BallId, BallId>> first_witness;

  auto absorb = [&](const Query& q, const Answer& a) {
    if (a.is_yes()) {
      for (int i = 0; i + 1 < q.size(); ++i) g.add_same(q[i], q[i + 1]);
    } else {
      g.add_diff(a.witness->first, a.witness->second);
      if (!first_witness) first_witness = *a.witness;
    }
    if (!g.satisfiable()) {
      throw InconsistentAnswerError("answer source contradicted itself");
    }
  };

  auto remove_witness_bins = [&](const Answer& a) {
    bins.remove({bins.index_of_ball(a.witness->first),
                 bins.index_of_ball(a.witness->second)});
  };

  while (true) {
    Verdict v = structural_verdict(g);
    if (v.kind != Verdict::Kind::Unknown) return finish(s, v, std::nullopt);

    // Phase 1: three bins of one size. A Yes welds their representatives
    // (so the bins) into one; a No names two differing representatives
    // whose equal-size bins cancel each other out.
    std::vector<int> trio = bins.equal_size_group(3);
    if (!trio.empty()) {
      Query q{bins.rep(trio[0]), bins.rep(trio[1]), bins.rep(trio[2])};
      Answer a = s.ask(q);
      absorb(q, a);
      if (a.is_yes()) {
        bins.merge(trio);
      } else {
        remove_witness_bins(a);
      }
      continue;
    }

    // Phase 2: exactly two bins tie for the largest size (a unique largest
    // bin would already dominate everything smaller and the verdict check
    // above would have fired). Doubling up a ball from the first bin makes
    // the query play the two bins off against each other: merged they
    // dominate, split they cancel.
    if (bins.largest_size() > 1) {
      std::vector<int> top = bins.indices_of_size(bins.largest_size());
      if (top.size() != 2) {
        throw std::logic_error("bins strategy reached an unexpected state");
      }
      Query q{bins.rep(top[0]), bins.bin(top[0])[1], bins.rep(top[1])};
      Answer a = s.ask(q);
      absorb(q, a);
      if (a.is_yes()) {
        bins.merge(top);
      } else {
        remove_witness_bins(a);
      }
      continue;
    }

    // Endgame: two singletons a, b remain (n even, so at least one No has
    // been heard). Comparing them against each half of a known differing
    // pair settles the verdict within two queries.
    if (bins.count() != 2 || bins.largest_size() != 1 || !first_witness) {
      throw std::logic_error("bins strategy reached an unexpected state");
    }
    BallId a_ball = bins.rep(0);
    BallId b_ball = bins.rep(1);
    for (BallId c : {first_witness->first, first_witness->second}) {
      Query q{a_ball, b_ball, c};
      Answer ans = s.ask(q);
      absorb(q, ans);
      Verdict w = structural_verdict(g);
      if (w.kind != Verdict::Kind::Unknown) return finish(s, w, std::nullopt);
    }
    throw std::logic_error("endgame failed to settle the verdict");
  }
}

QuestionerRun run_pair_bins(const AnswerSource& answers, int n, Model model) {
  if (n < 2) {
    throw std::invalid_argument("pair-query majority needs n >= 2");
  }
  Session s(answers, model, 2, n);
  BinTable bins(n);
  PairingGraph g(n);

  while (true) {
    Verdict v = structural_verdict(g);
    if (v.kind != Verdict::Kind::Unknown) return finish(s, v, std::nullopt);

    std::vector<int> pair = bins.equal_size_group(2);
    if (pair.empty()) {
      throw std::logic_error("bins strategy reached an unexpected state");
    }
    Query q{bins.rep(pair[0]), bins.rep(pair[1])};
    Answer a = s.ask(q);
    if (a.is_yes()) {
      g.add_same(q[0], q[1]);
      bins.merge(pair);
    } else {
      g.add_diff(q[0], q[1]);
      bins.remove(pair);
    }
    if (!g.satisfiable()) {
      throw InconsistentAnswerError("answer source contradicted itself");
    }
  }
}

}  // namespace mql
