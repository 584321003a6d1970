// Command-line front end: solve instances exactly, play questioners against
// adversaries, emit bound tables, and run the verification suite.
//
// Exit codes (stable for CI): 0 success, 1 verification or consistency
// failure, 2 usage or feasibility error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mql/adversaries.hpp"
#include "mql/bounds.hpp"
#include "mql/core.hpp"
#include "mql/json_io.hpp"
#include "mql/knowledge.hpp"
#include "mql/questioners.hpp"
#include "mql/solver.hpp"
#include "mql/verify.hpp"

namespace {

using nlohmann::json;
using namespace mql;

int usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

int consistency_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 1;
}

std::string value_text(int n, int k, Model m, const GameValue& v) {
  if (!v.solvable) return "unsolvable";
  const char* prefix = m == Model::YN ? "q_" : "q^p_";
  std::ostringstream os;
  os << prefix << k << "(" << n << ") = " << *v.queries;
  return os.str();
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  int n = 0;
  int k = 3;
  std::string model = "yn";
  std::string strategy_out;
  int threads = 0;
  bool as_json = false;
};

int cmd_solve(const SolveArgs& a) {
  const Model m = model_from_string(a.model);
  SolveOptions so;
  so.threads = a.threads;
  GameSolver solver(a.n, a.k, m, so);
  const GameValue v = solver.solve();

  std::optional<std::string> written;
  if (!a.strategy_out.empty()) {
    if (v.solvable) {
      StrategyNode root = solver.strategy();
      std::ofstream f(a.strategy_out);
      if (!f) return usage_error("cannot write " + a.strategy_out);
      f << strategy_to_json(root, 2) << "\n";
      written = a.strategy_out;
    } else {
      std::cerr << "warning: no strategy written, the instance is "
                   "unsolvable\n";
    }
  }

  if (a.as_json) {
    const SolveStats st = solver.stats();
    json o{{"command", "solve"},
           {"n", a.n},
           {"k", a.k},
           {"model", to_string(m)},
           {"solvable", v.solvable},
           {"queries", v.solvable ? json(*v.queries) : json(nullptr)},
           {"stats",
            {{"nodes", st.nodes},
             {"memo_hits", st.memo_hits},
             {"memo_entries", st.memo_entries}}},
           {"strategy_out", written ? json(*written) : json(nullptr)}};
    std::cout << o.dump(2) << "\n";
  } else {
    std::cout << value_text(a.n, a.k, m, v) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// play

struct PlayArgs {
  std::string questioner;
  std::string adversary;
  int n = 0;
  int k = 0;  // 0 = take the questioner's arity (or 3 for "optimal")
  std::string model;  // empty = infer from questioner/adversary
  std::string coloring;
  int threads = 0;
  bool as_json = false;
};

struct QuestionerSpec {
  int fixed_k = 0;                  // 0 = any arity
  std::optional<Model> fixed_model;
};

const std::vector<std::pair<std::string, QuestionerSpec>> kQuestioners{
    {"majority3", {3, Model::YN}},
    {"majority3-full-count", {3, Model::YN}},
    {"majority3-gap", {3, Model::YN}},
    {"pairing-bins", {3, Model::Pairing}},
    {"pair-bins", {2, std::nullopt}},
    {"optimal", {0, std::nullopt}},
};

struct AdversarySpec {
  std::optional<Model> fixed_model;
  bool takes_coloring = false;
};

const std::vector<std::pair<std::string, AdversarySpec>> kAdversaries{
    {"honest", {std::nullopt, true}},
    {"partition", {Model::YN, false}},
    {"greedy", {Model::Pairing, false}},
    {"exact", {std::nullopt, false}},
};

template <class Spec>
const Spec* find_spec(const std::vector<std::pair<std::string, Spec>>& reg,
                      const std::string& name) {
  for (const auto& [key, spec] : reg)
    if (key == name) return &spec;
  return nullptr;
}

template <class Spec>
std::string known_names(const std::vector<std::pair<std::string, Spec>>& reg) {
  std::string out;
  for (const auto& [key, spec] : reg) out += (out.empty() ? "" : ", ") + key;
  return out;
}

int cmd_play(const PlayArgs& a) {
  // "honest:RRBB" embeds the coloring in the adversary name.
  std::string adv_name = a.adversary;
  std::string coloring_spec = a.coloring;
  if (auto colon = adv_name.find(':'); colon != std::string::npos) {
    std::string suffix = adv_name.substr(colon + 1);
    adv_name = adv_name.substr(0, colon);
    if (!coloring_spec.empty() && coloring_spec != suffix)
      return usage_error("two different colorings given");
    coloring_spec = suffix;
  }

  const QuestionerSpec* qs = find_spec(kQuestioners, a.questioner);
  if (!qs)
    return usage_error("unknown questioner '" + a.questioner +
                       "' (known: " + known_names(kQuestioners) + ")");
  const AdversarySpec* as = find_spec(kAdversaries, adv_name);
  if (!as)
    return usage_error("unknown adversary '" + adv_name +
                       "' (known: " + known_names(kAdversaries) + ")");
  if (!coloring_spec.empty() && !as->takes_coloring)
    return usage_error("only the honest adversary takes a coloring");
  if (as->takes_coloring && coloring_spec.empty())
    return usage_error("the honest adversary needs a coloring "
                       "(--coloring RRBB or honest:RRBB)");

  // Arity: the questioner's fixed arity wins; --k may only confirm it.
  int k = a.k;
  if (qs->fixed_k != 0) {
    if (k != 0 && k != qs->fixed_k)
      return usage_error("questioner '" + a.questioner + "' asks " +
                         std::to_string(qs->fixed_k) + "-ball queries");
    k = qs->fixed_k;
  } else if (k == 0) {
    k = 3;
  }

  // Model: explicit flag, else whatever the named parties require.
  std::optional<Model> model;
  if (!a.model.empty()) model = model_from_string(a.model);
  for (const auto& fixed : {qs->fixed_model, as->fixed_model}) {
    if (!fixed) continue;
    if (model && *model != *fixed)
      return usage_error("model " + to_string(*model) +
                         " conflicts with a participant that only plays " +
                         to_string(*fixed));
    model = *fixed;
  }
  const Model m = model.value_or(Model::YN);

  const int n = a.n;
  std::optional<Coloring> coloring;
  if (!coloring_spec.empty()) {
    coloring = Coloring::from_string(coloring_spec);
    if (coloring->n() != n)
      return usage_error("coloring has " + std::to_string(coloring->n()) +
                         " balls but --n is " + std::to_string(n));
  }

  SolveOptions so;
  so.threads = a.threads;

  // The adversary (kept alive for the duration of the run).
  std::unique_ptr<PartitionAdversary> partition;
  std::unique_ptr<GreedyPairingAdversary> greedy;
  std::unique_ptr<ExactAdversary> exact;
  AnswerSource inner;
  if (adv_name == "honest") {
    inner = honest_source(*coloring, m);
  } else if (adv_name == "partition") {
    partition = std::make_unique<PartitionAdversary>(n);
    inner = partition->source();
  } else if (adv_name == "greedy") {
    greedy = std::make_unique<GreedyPairingAdversary>(n);
    inner = greedy->source();
  } else {
    exact = std::make_unique<ExactAdversary>(n, k, m, so);
    inner = exact->source();
  }
  ConsistencyGuard guard(std::move(inner), n, m);

  // The questioner.
  std::unique_ptr<GameSolver> solver;
  Questioner questioner;
  if (a.questioner == "majority3") {
    questioner = [](const AnswerSource& src, int nn) {
      return run_majority3(src, nn);
    };
  } else if (a.questioner == "majority3-full-count") {
    questioner = [](const AnswerSource& src, int nn) {
      return run_majority3(src, nn, Majority3Options{.early_exit = false});
    };
  } else if (a.questioner == "majority3-gap") {
    questioner = [](const AnswerSource& src, int nn) {
      return run_majority3_with_gap(src, nn);
    };
  } else if (a.questioner == "pairing-bins") {
    questioner = [](const AnswerSource& src, int nn) {
      return run_pairing_bins(src, nn);
    };
  } else if (a.questioner == "pair-bins") {
    questioner = [m](const AnswerSource& src, int nn) {
      return run_pair_bins(src, nn, m);
    };
  } else {
    solver = std::make_unique<GameSolver>(n, k, m, so);
    if (!solver->solve().solvable)
      return usage_error("instance unsolvable, no optimal strategy to play");
    questioner = solver->questioner();
  }

  QuestionerRun run = questioner(guard.source(), n);

  // The announced verdict must be forced by the answers actually given.
  const Verdict forced = guard.knowledge().verdict();
  if (run.verdict != forced)
    return consistency_error("questioner announced " +
                             run.verdict.to_string() +
                             " but the transcript only supports " +
                             forced.to_string());
  // Against the honest oracle the verdict must match the real coloring.
  if (coloring) {
    const Verdict truth = ground_truth(*coloring);
    if (run.verdict != truth)
      return consistency_error("verdict " + run.verdict.to_string() +
                               " does not match the coloring's " +
                               truth.to_string());
    if (run.gap) {
      const int reds = coloring->red_count();
      if (*run.gap != reds && *run.gap != n - reds)
        return consistency_error("reported class size " +
                                 std::to_string(*run.gap) +
                                 " matches neither color class");
    }
  }

  if (a.as_json) {
    json o{{"command", "play"},
           {"questioner", a.questioner},
           {"adversary", adv_name},
           {"n", n},
           {"k", k},
           {"model", to_string(m)},
           {"verdict", run.verdict.to_string()},
           {"queries", run.query_count},
           {"gap", run.gap ? json(*run.gap) : json(nullptr)},
           {"transcript", json::parse(transcript_to_json(run.transcript))}};
    std::cout << o.dump(2) << "\n";
  } else {
    std::cout << transcript_to_json(run.transcript, 2) << "\n";
    std::cout << "verdict: " << run.verdict.to_string() << "\n";
    std::cout << "queries: " << run.query_count << "\n";
    if (run.gap) std::cout << "class size: " << *run.gap << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// table

struct TableArgs {
  std::string model;
  int n_min = 0;
  int n_max = 0;
  int k = 3;
  std::string format = "csv";
  int threads = 0;
};

struct TableRow {
  int n = 0;
  std::optional<int> lower;
  std::optional<int> upper;
  std::optional<GameValue> exact;
  std::string strategy;
  std::optional<int> measured;
  std::string note;
};

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string opt_str(const std::optional<int>& v) {
  return v ? std::to_string(*v) : std::string();
}

int cmd_table(const TableArgs& a) {
  const Model m = model_from_string(a.model);
  if (a.k != 2 && a.k != 3)
    return usage_error("bound formulas are implemented for --k 2 and 3");
  if (a.n_min < a.k)
    return usage_error("--n-min must be at least k");
  if (a.n_max < a.n_min) return usage_error("--n-max below --n-min");
  if (a.n_max > 16)
    return usage_error("--n-max beyond 16 (measurement enumerates "
                       "colorings)");

  SolveOptions so;
  so.threads = a.threads;
  // Auto-solve and measurement caps keep the default table fast; larger
  // single instances remain available through `solve`.
  const int exact_cap = a.k == 2 ? 9 : (m == Model::YN ? 8 : 10);
  const int measured_cap = m == Model::YN ? 14 : 10;
  const int formula_min = a.k == 2 ? 2 : (m == Model::YN ? 4 : 3);

  Questioner strat;
  std::string strat_name;
  if (a.k == 2) {
    strat_name = "pair-bins";
    strat = [m](const AnswerSource& src, int nn) {
      return run_pair_bins(src, nn, m);
    };
  } else if (m == Model::YN) {
    strat_name = "majority3";
    strat = [](const AnswerSource& src, int nn) {
      return run_majority3(src, nn);
    };
  } else {
    strat_name = "pairing-bins";
    strat = [](const AnswerSource& src, int nn) {
      return run_pairing_bins(src, nn);
    };
  }

  std::vector<TableRow> rows;
  for (int n = a.n_min; n <= a.n_max; ++n) {
    TableRow row;
    row.n = n;
    std::vector<std::string> notes;
    if (n >= formula_min) {
      if (a.k == 2) {
        row.lower = row.upper = pair_query_exact(n);
      } else if (m == Model::YN) {
        row.lower = triple_yn_lower_bound(n);
        row.upper = triple_yn_upper_bound(n);
      } else {
        row.lower = row.upper = triple_pairing_exact(n);
      }
    } else {
      notes.push_back("no bound formula below n=" +
                      std::to_string(formula_min));
    }
    if (n <= exact_cap) {
      row.exact = solve_game(n, a.k, m, so);
    } else {
      notes.push_back("exact skipped beyond the auto-solve cap n=" +
                      std::to_string(exact_cap));
    }
    row.strategy = strat_name;
    if (n >= formula_min && n <= measured_cap) {
      row.measured = worst_case_count(strat, n, a.k, m).max_queries;
    } else if (n > measured_cap) {
      notes.push_back("measurement skipped beyond n=" +
                      std::to_string(measured_cap));
    }
    for (std::size_t i = 0; i < notes.size(); ++i)
      row.note += (i ? "; " : "") + notes[i];
    if (!row.note.empty())
      std::cerr << "warning: n=" << n << ": " << row.note << "\n";
    rows.push_back(std::move(row));
  }

  auto exact_cell = [](const std::optional<GameValue>& v) -> std::string {
    if (!v) return "";
    return v->solvable ? std::to_string(*v->queries) : "unsolvable";
  };

  if (a.format == "json") {
    json jrows = json::array();
    for (const TableRow& r : rows) {
      json jr{{"n", r.n},
              {"lower_bound", r.lower ? json(*r.lower) : json(nullptr)},
              {"upper_bound", r.upper ? json(*r.upper) : json(nullptr)},
              {"strategy", r.strategy},
              {"measured_worst",
               r.measured ? json(*r.measured) : json(nullptr)},
              {"note", r.note}};
      if (r.exact) {
        jr["exact"] =
            r.exact->solvable ? json(*r.exact->queries) : json("unsolvable");
      } else {
        jr["exact"] = nullptr;
      }
      jrows.push_back(std::move(jr));
    }
    json o{{"command", "table"},
           {"model", to_string(m)},
           {"k", a.k},
           {"rows", std::move(jrows)}};
    std::cout << o.dump(2) << "\n";
    return 0;
  }

  const std::vector<std::string> header{
      "n",     "model",    "k",       "lower_bound", "upper_bound",
      "exact", "strategy", "measured_worst", "note"};
  std::vector<std::vector<std::string>> cells;
  for (const TableRow& r : rows) {
    cells.push_back({std::to_string(r.n), to_string(m), std::to_string(a.k),
                     opt_str(r.lower), opt_str(r.upper), exact_cell(r.exact),
                     r.strategy, opt_str(r.measured), r.note});
  }
  if (a.format == "csv") {
    auto emit = [](const std::vector<std::string>& line) {
      for (std::size_t i = 0; i < line.size(); ++i)
        std::cout << (i ? "," : "") << csv_cell(line[i]);
      std::cout << "\n";
    };
    emit(header);
    for (const auto& line : cells) emit(line);
  } else {  // text
    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto& line : cells)
      for (std::size_t i = 0; i < line.size(); ++i)
        width[i] = std::max(width[i], line[i].size());
    auto emit = [&](const std::vector<std::string>& line) {
      for (std::size_t i = 0; i < line.size(); ++i) {
        std::cout << line[i]
                  << std::string(width[i] - line[i].size() + (i + 1 < line.size() ? 2 : 0), ' ');
      }
      std::cout << "\n";
    };
    emit(header);
    for (const auto& line : cells) emit(line);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  bool fast = false;
  bool as_json = false;
  int threads = 0;
  std::uint64_t seed = 20260818;
};

int cmd_verify(const VerifyArgs& a) {
  VerifyOptions vo;
  vo.fast = a.fast;
  vo.threads = a.threads;
  vo.seed = a.seed;
  const auto results = run_verification(vo);

  if (a.as_json) {
    json checks = json::array();
    for (const auto& r : results) {
      checks.push_back({{"name", r.name},
                        {"pass", r.pass},
                        {"seconds", r.seconds},
                        {"detail", r.detail}});
    }
    json o{{"command", "verify"},
           {"fast", a.fast},
           {"all_passed", all_passed(results)},
           {"checks", std::move(checks)}};
    std::cout << o.dump(2) << "\n";
  } else {
    int failed = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      if (!r.pass) ++failed;
      std::printf("[%s] %zu. %s (%.2fs) — %s\n", r.pass ? "PASS" : "FAIL",
                  i + 1, r.name.c_str(), r.seconds, r.detail.c_str());
    }
    std::printf("%d/%zu checks passed%s\n",
                static_cast<int>(results.size()) - failed, results.size(),
                a.fast ? " (fast subset)" : "");
  }
  return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact solver, strategies and adversaries for the two-color "
      "majority-search game with k-ball queries"};
  app.require_subcommand(1);

  SolveArgs sa;
  CLI::App* solve = app.add_subcommand(
      "solve", "Exact minimum worst-case query count of one instance");
  solve->add_option("--n", sa.n, "number of balls")->required();
  solve->add_option("--k", sa.k, "query arity (default 3)");
  solve->add_option("--model", sa.model, "oracle model (default yn)")
      ->check(CLI::IsMember({"yn", "pairing"}));
  solve->add_option("--strategy-out", sa.strategy_out,
                    "write the optimal strategy tree as JSON to this path");
  solve->add_option("--threads", sa.threads,
                    "solver worker threads (default: MQL_THREADS or 1)");
  solve->add_flag("--json", sa.as_json, "emit one JSON object");

  PlayArgs pa;
  CLI::App* play = app.add_subcommand(
      "play", "Run a questioner against an adversary and print the game");
  play->add_option("--questioner", pa.questioner,
                   "majority3 | majority3-full-count | majority3-gap | "
                   "pairing-bins | pair-bins | optimal")
      ->required();
  play->add_option("--adversary", pa.adversary,
                   "honest[:RRBB] | partition | greedy | exact")
      ->required();
  play->add_option("--n", pa.n, "number of balls")->required();
  play->add_option("--k", pa.k, "query arity (only for 'optimal'/'exact')");
  play->add_option("--model", pa.model,
                   "oracle model (default: inferred from the participants)")
      ->check(CLI::IsMember({"yn", "pairing"}));
  play->add_option("--coloring", pa.coloring,
                   "true coloring for the honest adversary, e.g. RRBB");
  play->add_option("--threads", pa.threads, "solver worker threads");
  play->add_flag("--json", pa.as_json, "emit one JSON object");

  TableArgs ta;
  CLI::App* table = app.add_subcommand(
      "table", "Bounds, exact values and measured worst cases over a range");
  table->add_option("--model", ta.model, "oracle model")
      ->check(CLI::IsMember({"yn", "pairing"}))
      ->required();
  table->add_option("--n-min", ta.n_min, "first n")->required();
  table->add_option("--n-max", ta.n_max, "last n")->required();
  table->add_option("--k", ta.k, "query arity, 2 or 3 (default 3)");
  table->add_option("--format", ta.format, "csv | text | json (default csv)")
      ->check(CLI::IsMember({"csv", "text", "json"}));
  table->add_option("--threads", ta.threads, "solver worker threads");

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run the self-verification suite (the acceptance checks)");
  verify->add_flag("--fast", va.fast,
                   "reduced instance ranges, finishes in seconds");
  verify->add_flag("--json", va.as_json, "emit one JSON summary object");
  verify->add_option("--threads", va.threads, "solver worker threads");
  verify->add_option("--seed", va.seed,
                     "seed for the randomized transcript corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(sa);
    if (play->parsed()) return cmd_play(pa);
    if (table->parsed()) return cmd_table(ta);
    return cmd_verify(va);
  } catch (const InfeasibleError& e) {
    return usage_error(e.what());
  } catch (const InconsistentAnswerError& e) {
    return consistency_error(e.what());
  } catch (const std::logic_error& e) {
    return usage_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
