#include "mql/verify.hpp"

#include <algorithm>
#include <chrono>
#include <bit>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mql/adversaries.hpp"
#include "mql/bounds.hpp"
#include "mql/core.hpp"
#include "mql/knowledge.hpp"
#include "mql/questioners.hpp"
#include "mql/solver.hpp"

namespace mql {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class... Ts>
std::string cat(const Ts&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

std::string secs(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << s << "s";
  return os.str();
}

// Collects expectations; keeps the first few failure messages for the
// report and lets exhaustive loops bail out once a check is clearly sunk.
class Expect {
 public:
  void require(bool cond, const std::string& what) {
    if (cond) return;
    ++failures_;
    if (failures_ <= 4) {
      if (!text_.empty()) text_ += "; ";
      text_ += what;
    }
  }

  bool ok() const { return failures_ == 0; }
  bool worth_continuing() const { return failures_ < 8; }
  long long failures() const { return failures_; }
  const std::string& text() const { return text_; }

 private:
  long long failures_ = 0;
  std::string text_;
};

CheckResult run_check(const std::string& name,
                      const std::function<void(Expect&, std::string&)>& body) {
  CheckResult r;
  r.name = name;
  Expect e;
  std::string summary;
  auto t0 = Clock::now();
  try {
    body(e, summary);
  } catch (const std::exception& ex) {
    e.require(false, cat("unexpected exception: ", ex.what()));
  }
  r.seconds = elapsed_seconds(t0);
  r.pass = e.ok();
  if (r.pass) {
    r.detail = summary;
  } else {
    r.detail = cat(e.failures(), " failure(s): ", e.text());
  }
  return r;
}

std::string value_str(const GameValue& v) {
  return v.solvable ? std::to_string(*v.queries) : std::string("unsolvable");
}

Questioner majority3_questioner() {
  return [](const AnswerSource& a, int n) { return run_majority3(a, n); };
}

Questioner pairing_bins_questioner() {
  return [](const AnswerSource& a, int n) { return run_pairing_bins(a, n); };
}

Questioner pair_bins_questioner(Model model) {
  return [model](const AnswerSource& a, int n) {
    return run_pair_bins(a, n, model);
  };
}

// ---------------------------------------------------------------------------
// 1. The exact small Y/N triple-query values.

void check_exact_triple_yn(const VerifyOptions& o, Expect& e,
                           std::string& out) {
  const double budget = 300.0;
  SolveOptions so;
  so.threads = o.threads;
  auto t0 = Clock::now();
  const std::vector<std::pair<int, int>> want{{4, 4}, {5, 4}, {6, 7}};
  std::string vals;
  for (auto [n, expect] : want) {
    GameValue v = solve_game(n, 3, Model::YN, so);
    e.require(v == GameValue::of(expect),
              cat("solve(", n, ",3,yn) = ", value_str(v), ", want ", expect));
    vals += cat(" q_3(", n, ")=", value_str(v));
  }
  double used = elapsed_seconds(t0);
  e.require(used < budget, cat("runtime ", secs(used), " over the ",
                               secs(budget), " budget"));
  out = cat("exact:", vals, "; ", secs(used), " of ", secs(budget));
}

// ---------------------------------------------------------------------------
// 2. The Pairing-model closed form, including its non-monotone step.

void check_pairing_closed_form(const VerifyOptions& o, Expect& e,
                               std::string& out) {
  const double budget = 600.0;
  SolveOptions so;
  so.threads = o.threads;
  auto t0 = Clock::now();
  // n=7 stays in the fast subset: the non-monotone comparison needs it and
  // it solves in microseconds.
  const int hi = o.fast ? 7 : 8;
  std::map<int, int> got;
  std::string vals;
  for (int n = 3; n <= hi; ++n) {
    const int expect = n % 2 == 0 ? n / 2 + 1 : n / 2;
    GameValue v = solve_game(n, 3, Model::Pairing, so);
    e.require(v == GameValue::of(expect),
              cat("solve(", n, ",3,pairing) = ", value_str(v), ", want ",
                  expect));
    if (v.solvable) got[n] = *v.queries;
    vals += cat(" q^p_3(", n, ")=", value_str(v));
  }
  if (got.count(6) && got.count(7)) {
    e.require(got[6] > got[7],
              cat("expected the n=6 value (", got[6],
                  ") to exceed the n=7 value (", got[7], ")"));
  } else {
    e.require(false, "missing the n=6/n=7 values for the monotonicity step");
  }
  double used = elapsed_seconds(t0);
  e.require(used < budget, cat("runtime ", secs(used), " over the ",
                               secs(budget), " budget"));
  out = cat("exact:", vals, "; one extra ball helps at n=7; ", secs(used),
            " of ", secs(budget));
}

// ---------------------------------------------------------------------------
// 3. Pair queries cost n minus the binary weight of n, in both models.

void check_pair_query_closed_form(const VerifyOptions& o, Expect& e,
                                  std::string& out) {
  SolveOptions so;
  so.threads = o.threads;
  const int hi = o.fast ? 6 : 9;
  std::string vals;
  for (int n = 2; n <= hi; ++n) {
    const int expect = pair_query_exact(n);
    for (Model m : {Model::YN, Model::Pairing}) {
      GameValue v = solve_game(n, 2, m, so);
      e.require(v == GameValue::of(expect),
                cat("solve(", n, ",2,", to_string(m), ") = ", value_str(v),
                    ", want ", expect));
    }
    vals += cat(" q_2(", n, ")=", expect);
  }
  out = cat("both models match n-popcount(n) on n=2..", hi, ":", vals);
}

// ---------------------------------------------------------------------------
// 4. Existence thresholds per arity and model.

void check_existence_thresholds(const VerifyOptions& o, Expect& e,
                                std::string& out) {
  SolveOptions so;
  so.threads = o.threads;
  struct Range {
    int k;
    Model model;
    int hi;
  };
  // Arity 4 in the Y/N model stops at n=6: the n=7 instance takes minutes
  // and the threshold is already witnessed by n=5 (unsolvable) / n=6.
  const std::vector<Range> ranges{
      {3, Model::YN, o.fast ? 6 : 8},
      {3, Model::Pairing, o.fast ? 6 : 9},
      {4, Model::YN, 6},
      {4, Model::Pairing, o.fast ? 6 : 7},
  };
  std::string note;
  for (const Range& r : ranges) {
    const int threshold = r.model == Model::YN
                              ? yn_existence_threshold(r.k)
                              : pairing_existence_threshold(r.k);
    auto table = existence_table(r.k, r.model, r.hi, so);
    for (auto [n, solvable] : table) {
      e.require(solvable == (n >= threshold),
                cat("k=", r.k, " ", to_string(r.model), " n=", n, ": ",
                    solvable ? "solvable" : "unsolvable",
                    " disagrees with threshold ", threshold));
      if (r.k == 3 && r.model == Model::YN && n == 3) {
        // The smallest instance where only one query exists: recorded from
        // the solver's own search rather than assumed.
        note = cat("; n=3 arity-3 Y/N outcome per the solver: ",
                   solvable ? "solvable" : "unsolvable");
      }
    }
  }
  out = cat(
      "solvable iff n >= max(k, 2k-2) [Y/N] / max(k, 2k-3) [Pairing] "
      "across k=3 (n<=",
      ranges[0].hi, "/", ranges[1].hi, ") and k=4 (n<=", ranges[2].hi, "/",
      ranges[3].hi, ")", note);
}

// ---------------------------------------------------------------------------
// 5. Measured questioner worst cases stay within their stated bounds.

void check_questioner_upper_bounds(const VerifyOptions& o, Expect& e,
                                   std::string& out) {
  const double budget = 600.0;
  auto t0 = Clock::now();
  const int m3_hi = o.fast ? 8 : 14;
  const int bins_hi = o.fast ? 8 : 10;
  Questioner m3 = majority3_questioner();
  Questioner bins = pairing_bins_questioner();
  std::string m3_vals;
  std::string bins_vals;
  for (int n = 4; n <= m3_hi; ++n) {
    WorstCase wc = worst_case_count(m3, n, 3, Model::YN);
    e.require(wc.all_correct, cat("majority3 verdict wrong at n=", n));
    e.require(wc.max_queries <= triple_yn_upper_bound(n),
              cat("majority3 worst case ", wc.max_queries, " at n=", n,
                  " exceeds the residue bound ", triple_yn_upper_bound(n)));
    m3_vals += cat(n == 4 ? "" : ",", wc.max_queries);
  }
  for (int n = 3; n <= bins_hi; ++n) {
    WorstCase wc = worst_case_count(bins, n, 3, Model::Pairing);
    e.require(wc.all_correct, cat("pairing-bins verdict wrong at n=", n));
    e.require(wc.max_queries <= triple_pairing_exact(n),
              cat("pairing-bins worst case ", wc.max_queries, " at n=", n,
                  " exceeds the closed form ", triple_pairing_exact(n)));
    bins_vals += cat(n == 3 ? "" : ",", wc.max_queries);
  }
  double used = elapsed_seconds(t0);
  e.require(used < budget, cat("runtime ", secs(used), " over the ",
                               secs(budget), " budget"));
  out = cat("majority3 n=4..", m3_hi, " worst cases ", m3_vals,
            " within residue bounds; pairing-bins n=3..", bins_hi, " ",
            bins_vals, " within the closed form; verdicts exhaustively "
            "correct; ",
            secs(used), " of ", secs(budget));
}

// ---------------------------------------------------------------------------
// 6. Adversaries extract their guaranteed minimums from real questioners.

void check_adversary_lower_bounds(const VerifyOptions& o, Expect& e,
                                  std::string& out) {
  SolveOptions so;
  so.threads = o.threads;
  const std::vector<std::pair<std::string, Questioner>> yn_questioners{
      {"majority3", majority3_questioner()},
      {"majority3-full-count",
       [](const AnswerSource& a, int n) {
         return run_majority3(a, n, Majority3Options{.early_exit = false});
       }},
      {"majority3-gap",
       [](const AnswerSource& a, int n) {
         return run_majority3_with_gap(a, n);
       }},
  };
  const std::vector<int> even_ns = o.fast ? std::vector<int>{6}
                                          : std::vector<int>{6, 8, 10};
  for (int n : even_ns) {
    for (const auto& [name, q] : yn_questioners) {
      PartitionAdversary adv(n);
      ConsistencyGuard guard(adv.source(), n, Model::YN);
      QuestionerRun run = q(guard.source(), n);
      e.require(run.query_count >= n - 1,
                cat("partition adversary got only ", run.query_count,
                    " queries from ", name, " at n=", n, ", want >= ", n - 1));
      e.require(run.verdict == guard.knowledge().verdict(),
                cat(name, " verdict at n=", n,
                    " not forced by the answers given"));
    }
  }
  // The exact-search questioner is itself subject to the same floor, at
  // the sizes where solving is quick.
  const std::vector<int> optimal_ns =
      o.fast ? std::vector<int>{6} : std::vector<int>{6, 8};
  for (int n : optimal_ns) {
    GameSolver solver(n, 3, Model::YN, so);
    PartitionAdversary adv(n);
    QuestionerRun run = solver.play_optimal(adv.source());
    e.require(run.query_count >= n - 1,
              cat("partition adversary got only ", run.query_count,
                  " queries from the exact-search questioner at n=", n));
  }
  // Greedy pairing adversary: exactly the closed form from the bins
  // strategy, never more, never less.
  const int greedy_hi = o.fast ? 8 : 12;
  std::string greedy_vals;
  for (int n = 3; n <= greedy_hi; ++n) {
    GreedyPairingAdversary adv(n);
    ConsistencyGuard guard(adv.source(), n, Model::Pairing);
    QuestionerRun run = run_pairing_bins(guard.source(), n);
    e.require(run.query_count == triple_pairing_exact(n),
              cat("greedy adversary vs bins at n=", n, ": ", run.query_count,
                  " queries, want exactly ", triple_pairing_exact(n)));
    e.require(run.verdict == guard.knowledge().verdict(),
              cat("bins verdict at n=", n, " not forced by the answers"));
    greedy_vals += cat(n == 3 ? "" : ",", run.query_count);
  }
  out = cat("partition forces >= n-1 from every triple Y/N questioner (",
            yn_questioners.size(), " strategies, even n up to ",
            even_ns.back(), ") and from exact search (n up to ",
            optimal_ns.back(), "); greedy forces exactly ", greedy_vals,
            " from bins on n=3..", greedy_hi);
}

// ---------------------------------------------------------------------------
// 7. Structural knowledge properties over exhaustive + random corpora.

struct PropStats {
  long long states = 0;           // knowledge states checked
  long long matching_hits = 0;    // states where the matching rule fired
  long long graphs = 0;           // satisfiable diff-edge graphs checked
  long long majority_graphs = 0;  // ...whose verdict pins a majority ball
};

// Properties asserted at one reached knowledge state: the constraint-graph
// verdict equals the enumerated one, the set is closed under the global
// color swap, and the matching-based majority rule (odd n, no same-edges)
// agrees with the structural verdict whenever it concludes anything.
void check_state(int n, const PairingGraph& g, const KnowledgeSet& ks,
                 Expect& e, PropStats& st) {
  ++st.states;
  e.require(g.satisfiable(),
            cat("constraint graph unsatisfiable at n=", n,
                " while colorings remain"));
  const Verdict sv = structural_verdict(g);
  const Verdict ev = ks.verdict();
  e.require(sv == ev, cat("structural verdict ", sv.to_string(),
                          " != enumerated ", ev.to_string(), " at n=", n));
  const std::uint32_t full = (1u << n) - 1;
  bool closed = true;
  for (std::uint32_t c = 0; c <= full; ++c) {
    if (ks.contains(c) && !ks.contains(~c & full)) {
      closed = false;
      break;
    }
  }
  e.require(closed, cat("knowledge set not closed under color swap at n=", n));
  if (n % 2 == 1 && g.same_edges().empty()) {
    if (auto b = majority_by_matching(g)) {
      ++st.matching_hits;
      e.require(sv.kind == Verdict::Kind::Majority,
                cat("matching rule fired but the structural verdict is ",
                    sv.to_string(), " at n=", n));
      // The rule may name any ball of the guaranteed-majority class (the
      // uncovered ball of whichever near-perfect matching was found), not
      // necessarily the verdict's lowest-id representative; what it
      // promises is membership in the strict majority class of every
      // surviving coloring.
      bool always_majority = true;
      for (std::uint32_t c = 0; c <= full && always_majority; ++c) {
        if (!ks.contains(c)) continue;
        const int reds = std::popcount(c);
        const int side = (c >> *b & 1u) ? reds : n - reds;
        if (2 * side <= n) always_majority = false;
      }
      e.require(always_majority,
                cat("matching rule names ball ", *b,
                    " outside some surviving majority class at n=", n));
    }
  }
}

std::vector<Query> all_triples(int n) {
  std::vector<Query> qs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) qs.push_back(Query{a, b, c});
  return qs;
}

std::vector<Answer> pairing_answer_candidates(const Query& q) {
  std::vector<Answer> cands{Answer::yes()};
  for (int i = 0; i < q.size(); ++i)
    for (int j = i + 1; j < q.size(); ++j)
      cands.push_back(Answer::no_with(q[i], q[j]));
  return cands;
}

// Exhausts every Pairing-model transcript of the given remaining length
// whose queries are nondecreasing in lexicographic order. Knowledge
// refinement is an intersection, hence order-independent, so every
// knowledge state reachable by an arbitrary transcript of that length is
// reached by a sorted one; the properties checked are properties of the
// state, which makes the sorted corpus exhaustive for them.
void exhaust_transcripts(int n, const std::vector<Query>& qs, std::size_t qi0,
                         int depth_left, const PairingGraph& g,
                         const KnowledgeSet& ks, Expect& e, PropStats& st) {
  check_state(n, g, ks, e, st);
  if (depth_left == 0 || !e.worth_continuing()) return;
  for (std::size_t qi = qi0; qi < qs.size(); ++qi) {
    const Query& q = qs[qi];
    for (const Answer& a : pairing_answer_candidates(q)) {
      std::optional<KnowledgeSet> child;
      try {
        child = ks.refined(q, a);
      } catch (const InconsistentAnswerError&) {
        continue;
      }
      e.require(child->count() <= ks.count(),
                cat("refinement grew the knowledge set at n=", n));
      PairingGraph cg = g;
      if (a.is_yes()) {
        for (int i = 0; i < q.size(); ++i)
          for (int j = i + 1; j < q.size(); ++j) cg.add_same(q[i], q[j]);
      } else {
        cg.add_diff(a.witness->first, a.witness->second);
      }
      exhaust_transcripts(n, qs, qi, depth_left - 1, cg, *child, e, st);
      if (!e.worth_continuing()) return;
    }
  }
}

void random_transcripts(const VerifyOptions& o, Expect& e, PropStats& st) {
  std::mt19937_64 rng(o.seed);
  const int trials = o.fast ? 1000 : 10000;
  const int n_hi = o.fast ? 6 : 8;
  std::uniform_int_distribution<int> n_dist(3, n_hi);
  std::uniform_int_distribution<int> len_dist(5, 8);
  for (int t = 0; t < trials && e.worth_continuing(); ++t) {
    const int n = n_dist(rng);
    const int len = len_dist(rng);
    std::vector<BallId> balls(n);
    std::iota(balls.begin(), balls.end(), 0);
    KnowledgeSet ks = KnowledgeSet::full(n);
    PairingGraph g(n);
    for (int step = 0; step < len; ++step) {
      std::shuffle(balls.begin(), balls.end(), rng);
      Query q{balls[0], balls[1], balls[2]};
      std::vector<Answer> cands = pairing_answer_candidates(q);
      std::shuffle(cands.begin(), cands.end(), rng);
      bool advanced = false;
      for (const Answer& a : cands) {
        std::optional<KnowledgeSet> child;
        try {
          child = ks.refined(q, a);
        } catch (const InconsistentAnswerError&) {
          continue;
        }
        e.require(child->count() <= ks.count(),
                  cat("refinement grew the knowledge set at n=", n));
        if (a.is_yes()) {
          for (int i = 0; i < q.size(); ++i)
            for (int j = i + 1; j < q.size(); ++j) g.add_same(q[i], q[j]);
        } else {
          g.add_diff(a.witness->first, a.witness->second);
        }
        ks = std::move(*child);
        advanced = true;
        break;
      }
      // Some coloring always survives, and its honest answer is among the
      // candidates, so one of them must have been consistent.
      e.require(advanced, cat("no consistent answer to ", q.to_string(),
                              " at n=", n));
      if (!advanced) break;
      check_state(n, g, ks, e, st);
    }
  }
}

void exhaust_diff_graphs(int n_hi, Expect& e, PropStats& st) {
  for (int n = 2; n <= n_hi && e.worth_continuing(); ++n) {
    std::vector<std::pair<BallId, BallId>> pairs;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    const std::uint32_t lim = 1u << pairs.size();
    for (std::uint32_t mask = 0; mask < lim; ++mask) {
      PairingGraph g(n);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (mask >> i & 1u) g.add_diff(pairs[i].first, pairs[i].second);
      }
      if (!g.satisfiable()) continue;
      ++st.graphs;
      if (structural_verdict(g).kind != Verdict::Kind::Majority) continue;
      ++st.majority_graphs;
      e.require(edge_lower_bound_check(g),
                cat("majority-pinning diff graph on ", n,
                    " balls has fewer than floor(n/2) edges (edge mask ",
                    mask, ")"));
      if (!e.worth_continuing()) return;
    }
  }
}

void check_knowledge_properties(const VerifyOptions& o, Expect& e,
                                std::string& out) {
  PropStats st;
  const int exhaustive_hi = o.fast ? 5 : 6;
  for (int n = 3; n <= exhaustive_hi; ++n) {
    exhaust_transcripts(n, all_triples(n), 0, 4, PairingGraph(n),
                        KnowledgeSet::full(n), e, st);
  }
  const long long exhaustive_states = st.states;
  random_transcripts(o, e, st);
  const long long random_states = st.states - exhaustive_states;
  PropStats edge_st;
  exhaust_diff_graphs(o.fast ? 6 : 7, e, edge_st);
  out = cat("verdict equivalence, swap closure and monotone refinement on ",
            exhaustive_states, " states (every <=4-query transcript, n<=",
            exhaustive_hi, ") + ", random_states,
            " states from random longer transcripts; matching rule fired on ",
            st.matching_hits, " states, always naming a guaranteed-majority ball; edge bound held on ",
            edge_st.majority_graphs, " majority-pinning graphs of ",
            edge_st.graphs, " satisfiable diff graphs (n<=",
            o.fast ? 6 : 7, ")");
}

// ---------------------------------------------------------------------------
// 8. Sandwich consistency on every instance solved here.

void check_sandwich_consistency(const VerifyOptions& o, Expect& e,
                                std::string& out) {
  SolveOptions so;
  so.threads = o.threads;

  // Returns the exact value after asserting
  //   forced-by-exact-adversary == value <= measured questioner worst case.
  auto sandwich = [&](int n, int k, Model model, const std::string& qname,
                      const Questioner& q) -> std::optional<int> {
    GameSolver solver(n, k, model, so);
    GameValue v = solver.solve();
    e.require(v.solvable, cat("instance (", n, ",", k, ",", to_string(model),
                              ") unexpectedly unsolvable"));
    if (!v.solvable) return std::nullopt;
    ExactAdversary adv(n, k, model, so);
    QuestionerRun forced = solver.play_optimal(adv.source());
    e.require(forced.query_count <= *v.queries,
              cat("adversary extracted ", forced.query_count,
                  " from optimal play but the value of (", n, ",", k, ",",
                  to_string(model), ") is ", *v.queries));
    e.require(forced.query_count == *v.queries,
              cat("exact adversary under-forces (", n, ",", k, ",",
                  to_string(model), "): ", forced.query_count, " vs value ",
                  *v.queries));
    WorstCase wc = worst_case_count(q, n, k, model);
    e.require(wc.all_correct,
              cat(qname, " announced a wrong verdict at n=", n));
    e.require(*v.queries <= wc.max_queries,
              cat("value ", *v.queries, " of (", n, ",", k, ",",
                  to_string(model), ") exceeds the measured ", qname,
                  " worst case ", wc.max_queries));
    return *v.queries;
  };

  const int yn_hi = o.fast ? 6 : 8;
  std::string yn_vals;
  for (int n = 4; n <= yn_hi; ++n) {
    auto v = sandwich(n, 3, Model::YN, "majority3", majority3_questioner());
    if (v) {
      e.require(triple_yn_lower_bound(n) <= *v,
                cat("value ", *v, " below the adversary floor ",
                    triple_yn_lower_bound(n), " at n=", n));
      e.require(*v <= triple_yn_upper_bound(n),
                cat("value ", *v, " above the residue bound ",
                    triple_yn_upper_bound(n), " at n=", n));
      yn_vals += cat(n == 4 ? "" : ",", *v);
    }
  }
  const int pairing_hi = o.fast ? 6 : 9;
  std::string pairing_vals;
  for (int n = 3; n <= pairing_hi; ++n) {
    auto v = sandwich(n, 3, Model::Pairing, "pairing-bins",
                      pairing_bins_questioner());
    if (v) pairing_vals += cat(n == 3 ? "" : ",", *v);
  }
  const int pair_hi = o.fast ? 6 : 9;
  for (int n = 2; n <= pair_hi; ++n) {
    for (Model m : {Model::YN, Model::Pairing}) {
      sandwich(n, 2, m, "pair-bins", pair_bins_questioner(m));
    }
  }
  out = cat("forced == value <= measured on every solved instance: "
            "triple Y/N n=4..",
            yn_hi, " (", yn_vals, ", each within its bound pair), pairing "
            "n=3..",
            pairing_hi, " (", pairing_vals, "), pair queries n=2..", pair_hi,
            " in both models");
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  using Body = std::function<void(Expect&, std::string&)>;
  const std::vector<std::pair<std::string, Body>> checks{
      {"exact-triple-yn-values",
       [&](Expect& e, std::string& s) { check_exact_triple_yn(opts, e, s); }},
      {"pairing-closed-form",
       [&](Expect& e, std::string& s) {
         check_pairing_closed_form(opts, e, s);
       }},
      {"pair-query-closed-form",
       [&](Expect& e, std::string& s) {
         check_pair_query_closed_form(opts, e, s);
       }},
      {"existence-thresholds",
       [&](Expect& e, std::string& s) {
         check_existence_thresholds(opts, e, s);
       }},
      {"questioner-upper-bounds",
       [&](Expect& e, std::string& s) {
         check_questioner_upper_bounds(opts, e, s);
       }},
      {"adversary-lower-bounds",
       [&](Expect& e, std::string& s) {
         check_adversary_lower_bounds(opts, e, s);
       }},
      {"knowledge-properties",
       [&](Expect& e, std::string& s) {
         check_knowledge_properties(opts, e, s);
       }},
      {"sandwich-consistency",
       [&](Expect& e, std::string& s) {
         check_sandwich_consistency(opts, e, s);
       }},
  };
  std::vector<CheckResult> out;
  out.reserve(checks.size());
  for (const auto& [name, body] : checks) out.push_back(run_check(name, body));
  return out;
}

}  // namespace mql
