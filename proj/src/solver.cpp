#include "mql/solver.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include <json.hpp>

#include "mql/adversaries.hpp"

namespace mql {
namespace {

// Knowledge states are bitsets over the 2^n colorings, stored as word
// vectors exactly like KnowledgeSet's internal representation.
using Bits = std::vector<std::uint64_t>;

constexpr int kMaxBalls = 12;  // 2^12-bit states; beyond this, enumeration
                               // of colorings stops being realistic
constexpr int kInfBudget = std::numeric_limits<int>::max() / 2;
// Relabeling canonicalization enumerates every ball permutation that
// preserves the signature cells; states whose cell structure is looser
// than this many permutations fall back to color-swap canonicalization
// only (still sound, just fewer memo merges).
constexpr std::uint64_t kPermCap = 20160;
constexpr std::size_t kShardCount = 64;
// Cap on cached raw-state -> canonical-state entries per shard.
constexpr std::size_t kCanonShardCap = 1u << 13;

std::size_t words_for(int n) {
  return ((std::size_t{1} << n) + 63) / 64;
}

void bit_set(Bits& b, std::uint32_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

bool bits_empty(const Bits& b) {
  for (std::uint64_t w : b) {
    if (w != 0) return false;
  }
  return true;
}

std::uint64_t bits_count(const Bits& b) {
  std::uint64_t c = 0;
  for (std::uint64_t w : b) c += std::popcount(w);
  return c;
}

Bits and_of(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
  return out;
}

Bits andnot_of(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & ~b[i];
  return out;
}

bool is_subset(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] & ~b[i]) != 0) return false;
  }
  return true;
}

template <typename F>
void for_each_bit(const Bits& b, F&& f) {
  for (std::size_t wi = 0; wi < b.size(); ++wi) {
    std::uint64_t w = b[wi];
    while (w != 0) {
      int bit = std::countr_zero(w);
      f(static_cast<std::uint32_t>(wi * 64 + bit));
      w &= w - 1;
    }
  }
}

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t w : b) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// Per-n precomputed coloring masks: which colorings are balanced, which
// put a given ball in the strict majority class, and which color a given
// pair of balls the same.
struct Tables {
  int n = 0;
  std::uint32_t color_mask = 0;
  Bits balanced;
  std::vector<Bits> majority;                  // [ball]
  std::vector<Bits> same_pair;                 // [pair index]
  std::vector<Bits> diff_pair;                 // [pair index]
  std::vector<std::pair<int, int>> pairs;      // index -> (a, b), a < b
  std::vector<std::vector<int>> pair_index;    // [a][b] -> index

  static Tables build(int n) {
    Tables t;
    t.n = n;
    t.color_mask = static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
    std::size_t nw = words_for(n);
    t.balanced.assign(nw, 0);
    t.majority.assign(n, Bits(nw, 0));
    t.pair_index.assign(n, std::vector<int>(n, -1));
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        t.pair_index[a][b] = static_cast<int>(t.pairs.size());
        t.pair_index[b][a] = t.pair_index[a][b];
        t.pairs.emplace_back(a, b);
      }
    }
    t.same_pair.assign(t.pairs.size(), Bits(nw, 0));
    t.diff_pair.assign(t.pairs.size(), Bits(nw, 0));
    for (std::uint32_t c = 0; c <= t.color_mask; ++c) {
      int reds = std::popcount(c);
      if (2 * reds == n) bit_set(t.balanced, c);
      for (int b = 0; b < n; ++b) {
        bool red = (c >> b) & 1u;
        if (2 * reds > n ? red : (2 * reds < n && !red)) {
          bit_set(t.majority[b], c);
        }
      }
      for (std::size_t p = 0; p < t.pairs.size(); ++p) {
        auto [a, b] = t.pairs[p];
        if ((((c >> a) ^ (c >> b)) & 1u) == 0) {
          bit_set(t.same_pair[p], c);
        } else {
          bit_set(t.diff_pair[p], c);
        }
      }
      if (c == t.color_mask) break;  // avoid wrap at n == 32 (never hit)
    }
    return t;
  }
};

// Mirrors KnowledgeSet::verdict on the raw bitset (callers guarantee the
// set is nonempty).
Verdict verdict_of(const Bits& s, const Tables& t) {
  if (is_subset(s, t.balanced)) return Verdict::no_majority();
  for (int b = 0; b < t.n; ++b) {
    if (is_subset(s, t.majority[b])) return Verdict::majority(b);
  }
  return Verdict::unknown();
}

Bits swapped_bits(const Bits& s, const Tables& t) {
  Bits out(s.size(), 0);
  for_each_bit(s, [&](std::uint32_t c) { bit_set(out, t.color_mask ^ c); });
  return out;
}

// Partition of the balls into cells that any knowledge-preserving
// relabeling must respect: iterated refinement of the per-pair counts of
// remaining colorings giving both balls one color. Class ids are assigned
// by the sorted order of the fingerprints each round, so they (and hence
// the order of the returned cells) depend only on the state's structure,
// never on ball labels: two states equal up to relabeling produce the
// same cell sizes in the same order, with corresponding members. The
// counts are invariant under the global color swap, so a state and its
// swap share one partition too.
std::vector<std::vector<int>> signature_cells(const Bits& s, const Tables& t) {
  int n = t.n;
  std::vector<std::uint64_t> same_count(t.pairs.size());
  for (std::size_t p = 0; p < t.pairs.size(); ++p) {
    same_count[p] = bits_count(and_of(s, t.same_pair[p]));
  }
  using Fingerprint =
      std::pair<int, std::vector<std::pair<int, std::uint64_t>>>;
  std::vector<int> sig(n, 0);
  int classes = 1;
  for (int round = 0; round < n; ++round) {
    std::vector<Fingerprint> fp(n);
    for (int v = 0; v < n; ++v) {
      fp[v].first = sig[v];
      for (int u = 0; u < n; ++u) {
        if (u == v) continue;
        fp[v].second.emplace_back(sig[u], same_count[t.pair_index[u][v]]);
      }
      std::sort(fp[v].second.begin(), fp[v].second.end());
    }
    std::map<Fingerprint, int> intern;
    for (int v = 0; v < n; ++v) intern.emplace(fp[v], 0);
    int id = 0;
    for (auto& [key, rank] : intern) rank = id++;
    for (int v = 0; v < n; ++v) sig[v] = intern.at(fp[v]);
    bool stable = static_cast<int>(intern.size()) == classes;
    classes = static_cast<int>(intern.size());
    if (stable) break;
  }
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < n; ++v) groups[sig[v]].push_back(v);
  std::vector<std::vector<int>> cells;
  cells.reserve(groups.size());
  for (auto& [key, members] : groups) cells.push_back(std::move(members));
  return cells;
}

std::uint64_t cell_perm_count(const std::vector<std::vector<int>>& cells) {
  std::uint64_t total = 1;
  for (const auto& cell : cells) {
    for (std::size_t i = 2; i <= cell.size(); ++i) {
      total *= i;
      if (total > kPermCap) return total;
    }
  }
  return total;
}

Bits permuted_bits(const Bits& s, const std::vector<int>& ball_map, int n) {
  Bits out(s.size(), 0);
  for_each_bit(s, [&](std::uint32_t c) {
    std::uint32_t mapped = 0;
    for (int v = 0; v < n; ++v) {
      mapped |= ((c >> v) & 1u) << ball_map[v];
    }
    bit_set(out, mapped);
  });
  return out;
}

// Least representative of the state's equivalence class: minimum over the
// global color swap and (optionally) every relabeling that sends the
// state's signature cells onto fixed target blocks (cell i's members to
// positions [start_i, start_i + |cell i|), in every order). The cells
// arrive in a label-independent order, so two states equal up to
// relabeling enumerate the same candidate set and agree on the minimum;
// and every candidate is itself a state with the same game value, so
// using these keys for memoization is sound even when the permutation
// budget forces the swap-only fallback.
Bits canonical_bits(const Bits& s, const Tables& t, bool relabel) {
  Bits sw = swapped_bits(s, t);
  Bits fallback = sw < s ? std::move(sw) : s;
  if (!relabel) return fallback;
  std::vector<std::vector<int>> cells = signature_cells(s, t);
  if (cell_perm_count(cells) > kPermCap) return fallback;
  // The raw state itself is not a candidate: only the block-mapped images
  // are label-independent, and mixing the raw bits in would break key
  // agreement between relabeled copies of the same state.
  std::optional<Bits> best;
  std::vector<int> block_start(cells.size());
  for (std::size_t ci = 1; ci < cells.size(); ++ci) {
    block_start[ci] =
        block_start[ci - 1] + static_cast<int>(cells[ci - 1].size());
  }
  std::vector<std::vector<int>> arranged = cells;
  std::vector<int> ball_map(t.n);
  while (true) {
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
      for (std::size_t j = 0; j < cells[ci].size(); ++j) {
        ball_map[arranged[ci][j]] = block_start[ci] + static_cast<int>(j);
      }
    }
    Bits p = permuted_bits(s, ball_map, t.n);
    Bits psw = swapped_bits(p, t);
    if (!best || p < *best) best = std::move(p);
    if (psw < *best) best = std::move(psw);
    std::size_t ci = 0;
    while (ci < arranged.size() &&
           !std::next_permutation(arranged[ci].begin(), arranged[ci].end())) {
      ++ci;
    }
    if (ci == arranged.size()) break;
  }
  return *best;
}

int resolve_threads(const SolveOptions& opts) {
  int t = opts.threads;
  if (t == 0) {
    if (const char* env = std::getenv("MQL_THREADS")) {
      t = std::atoi(env);
    }
  }
  if (t <= 0) t = 1;
  return std::min(t, 64);
}

bool resolve_relabel(const SolveOptions& opts, Model model, int n) {
  switch (opts.relabel) {
    case SolveOptions::Relabel::On: return true;
    case SolveOptions::Relabel::Off: return false;
    case SolveOptions::Relabel::Auto: break;
  }
  return model == Model::Pairing || n >= 6;
}

}  // namespace

struct GameSolver::Impl {
  struct QueryInfo {
    Query query;
    Bits mono;                  // colorings answering Yes
    std::vector<int> pair_ids;  // witness pairs (lex), Pairing model
  };

  struct Bounds {
    int ok_at = kInfBudget;  // least budget known sufficient
    int fail_at = -1;        // greatest budget known insufficient
  };

  struct Shard {
    std::mutex mu;
    std::unordered_map<Bits, Bounds, BitsHash> memo;
    std::unordered_map<Bits, Bits, BitsHash> canon;
  };

  int n;
  int k;
  Model model;
  bool relabel;
  int threads;
  Tables tables;
  std::vector<QueryInfo> queries;
  Bits full;
  int budget_cap;

  std::array<Shard, kShardCount> shards;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<std::uint64_t> memo_hits{0};
  std::mutex root_mu;
  std::optional<GameValue> root_value;

  Impl(int n_in, int k_in, Model model_in, const SolveOptions& opts)
      : n(n_in), k(k_in), model(model_in) {
    if (k < 2) throw std::invalid_argument("query arity k must be at least 2");
    if (n < k) {
      throw std::invalid_argument("need at least k balls (n >= k)");
    }
    if (n > kMaxBalls) {
      throw InfeasibleError("exact solving enumerates all 2^n colorings; n = " +
                            std::to_string(n) + " exceeds the supported " +
                            std::to_string(kMaxBalls));
    }
    relabel = resolve_relabel(opts, model, n);
    threads = resolve_threads(opts);
    tables = Tables::build(n);
    full.assign(words_for(n), ~std::uint64_t{0});
    // Mask the tail beyond 2^n (only matters for n < 6).
    std::size_t used = std::size_t{1} << n;
    if (used % 64 != 0) {
      full.back() = (std::uint64_t{1} << (used % 64)) - 1;
    }
    budget_cap = static_cast<int>(std::min<std::uint64_t>(
        (std::uint64_t{1} << n) - 1, std::uint64_t{kInfBudget}));
    build_queries();
  }

  void build_queries() {
    std::vector<BallId> sel(k);
    for (int i = 0; i < k; ++i) sel[i] = i;
    while (true) {
      QueryInfo qi;
      qi.query = Query(sel);
      std::uint32_t qmask = 0;
      for (BallId b : sel) qmask |= std::uint32_t{1} << b;
      qi.mono.assign(full.size(), 0);
      for (std::uint32_t c = 0; c <= tables.color_mask; ++c) {
        std::uint32_t inter = c & qmask;
        if (inter == 0 || inter == qmask) bit_set(qi.mono, c);
        if (c == tables.color_mask) break;
      }
      if (model == Model::Pairing) {
        for (int i = 0; i < k; ++i) {
          for (int j = i + 1; j < k; ++j) {
            qi.pair_ids.push_back(tables.pair_index[sel[i]][sel[j]]);
          }
        }
      }
      queries.push_back(std::move(qi));
      // next k-combination of [0, n)
      int i = k - 1;
      while (i >= 0 && sel[i] == n - k + i) --i;
      if (i < 0) break;
      ++sel[i];
      for (int j = i + 1; j < k; ++j) sel[j] = sel[j - 1] + 1;
    }
  }

  Shard& shard_for(const Bits& key) {
    return shards[BitsHash{}(key) % kShardCount];
  }

  Bits canon_of(const Bits& s) {
    Shard& sh = shard_for(s);
    {
      std::lock_guard<std::mutex> lock(sh.mu);
      auto it = sh.canon.find(s);
      if (it != sh.canon.end()) return it->second;
    }
    Bits c = canonical_bits(s, tables, relabel);
    {
      std::lock_guard<std::mutex> lock(sh.mu);
      if (sh.canon.size() < kCanonShardCap) sh.canon.emplace(s, c);
    }
    return c;
  }

  // Consistent-answer successor states of `s` under this query, in the
  // fixed enumeration order Yes, then (Y/N) No, then (Pairing) No per
  // witness pair lex. Returns false when the query cannot help: some
  // consistent answer would leave the state unchanged, so an adversary
  // giving it makes the query a pure waste.
  bool children_of(const Bits& s, const QueryInfo& qi,
                   std::vector<Bits>& out) const {
    out.clear();
    Bits yes = and_of(s, qi.mono);
    if (model == Model::YN) {
      Bits no = andnot_of(s, qi.mono);
      if (bits_empty(yes) || bits_empty(no)) return false;
      out.push_back(std::move(yes));
      out.push_back(std::move(no));
      return true;
    }
    if (!bits_empty(yes)) {
      if (yes == s) return false;
      out.push_back(std::move(yes));
    }
    for (int p : qi.pair_ids) {
      Bits d = and_of(s, tables.diff_pair[p]);
      if (bits_empty(d)) continue;
      if (d == s) return false;
      out.push_back(std::move(d));
    }
    return !out.empty();
  }

  // Same successors, labeled with the answers that produce them (used for
  // strategy extraction and optimal play; not on the hot path).
  std::vector<std::pair<Answer, Bits>> labeled_children(
      const Bits& s, const QueryInfo& qi) const {
    std::vector<std::pair<Answer, Bits>> out;
    Bits yes = and_of(s, qi.mono);
    if (!bits_empty(yes)) out.emplace_back(Answer::yes(), std::move(yes));
    if (model == Model::YN) {
      Bits no = andnot_of(s, qi.mono);
      if (!bits_empty(no)) out.emplace_back(Answer::no(), std::move(no));
    } else {
      for (int p : qi.pair_ids) {
        Bits d = and_of(s, tables.diff_pair[p]);
        if (bits_empty(d)) continue;
        auto [a, b] = tables.pairs[p];
        out.emplace_back(Answer::no_with(a, b), std::move(d));
      }
    }
    return out;
  }

  static void order_children(std::vector<Bits>& children) {
    std::sort(children.begin(), children.end(),
              [](const Bits& a, const Bits& b) {
                std::uint64_t ca = bits_count(a);
                std::uint64_t cb = bits_count(b);
                if (ca != cb) return ca > cb;  // hardest child first
                return a < b;
              });
  }

  // Can the questioner force a verdict from `s` within `budget` queries?
  bool solvable_within(const Bits& s, int budget) {
    if (verdict_of(s, tables).kind != Verdict::Kind::Unknown) return true;
    if (budget <= 0) return false;
    Bits key = canon_of(s);
    Shard& sh = shard_for(key);
    {
      std::lock_guard<std::mutex> lock(sh.mu);
      auto it = sh.memo.find(key);
      if (it != sh.memo.end()) {
        if (budget >= it->second.ok_at) {
          memo_hits.fetch_add(1, std::memory_order_relaxed);
          return true;
        }
        if (budget <= it->second.fail_at) {
          memo_hits.fetch_add(1, std::memory_order_relaxed);
          return false;
        }
      }
    }
    nodes.fetch_add(1, std::memory_order_relaxed);
    bool any_useful = false;
    bool ok = false;
    std::unordered_set<Bits, BitsHash> seen;
    std::vector<Bits> children;
    for (const QueryInfo& qi : queries) {
      if (!children_of(s, qi, children)) continue;
      any_useful = true;
      order_children(children);
      Bits flat;
      flat.reserve(children.size() * s.size());
      for (const Bits& ch : children) {
        flat.insert(flat.end(), ch.begin(), ch.end());
      }
      if (!seen.insert(std::move(flat)).second) continue;  // duplicate query
      bool all = true;
      for (const Bits& ch : children) {
        if (!solvable_within(ch, budget - 1)) {
          all = false;
          break;
        }
      }
      if (all) {
        ok = true;
        break;
      }
    }
    record(key, budget, ok, any_useful);
    return ok;
  }

  void record(const Bits& key, int budget, bool ok, bool any_useful) {
    Shard& sh = shard_for(key);
    std::lock_guard<std::mutex> lock(sh.mu);
    Bounds& b = sh.memo[key];
    if (ok) {
      b.ok_at = std::min(b.ok_at, budget);
    } else {
      b.fail_at = std::max(b.fail_at, any_useful ? budget : kInfBudget);
    }
  }

  // Root expansion, optionally fanning the deduplicated useful queries out
  // over worker threads. The result is an OR over queries, so it does not
  // depend on evaluation order or schedule.
  bool solvable_root(int budget) {
    if (verdict_of(full, tables).kind != Verdict::Kind::Unknown) return true;
    if (budget <= 0) return false;
    Bits key = canon_of(full);
    Shard& sh = shard_for(key);
    {
      std::lock_guard<std::mutex> lock(sh.mu);
      auto it = sh.memo.find(key);
      if (it != sh.memo.end()) {
        if (budget >= it->second.ok_at) return true;
        if (budget <= it->second.fail_at) return false;
      }
    }
    nodes.fetch_add(1, std::memory_order_relaxed);
    std::vector<std::vector<Bits>> tasks;
    std::unordered_set<Bits, BitsHash> seen;
    std::vector<Bits> children;
    for (const QueryInfo& qi : queries) {
      if (!children_of(full, qi, children)) continue;
      order_children(children);
      Bits flat;
      for (const Bits& ch : children) {
        flat.insert(flat.end(), ch.begin(), ch.end());
      }
      if (!seen.insert(std::move(flat)).second) continue;
      tasks.push_back(children);
    }
    bool any_useful = !tasks.empty();
    bool ok = false;
    if (threads <= 1 || tasks.size() <= 1) {
      for (const auto& task : tasks) {
        bool all = true;
        for (const Bits& ch : task) {
          if (!solvable_within(ch, budget - 1)) {
            all = false;
            break;
          }
        }
        if (all) {
          ok = true;
          break;
        }
      }
    } else {
      std::atomic<std::size_t> next{0};
      std::atomic<bool> found{false};
      auto worker = [&]() {
        while (!found.load(std::memory_order_relaxed)) {
          std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
          if (i >= tasks.size()) return;
          bool all = true;
          for (const Bits& ch : tasks[i]) {
            if (found.load(std::memory_order_relaxed)) return;
            if (!solvable_within(ch, budget - 1)) {
              all = false;
              break;
            }
          }
          if (all) found.store(true, std::memory_order_relaxed);
        }
      };
      std::vector<std::thread> pool;
      int want = std::min<int>(threads, static_cast<int>(tasks.size()));
      pool.reserve(want);
      for (int i = 0; i < want; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
      ok = found.load();
    }
    record(key, budget, ok, any_useful);
    return ok;
  }

  GameValue value_of_bits(const Bits& s) {
    if (verdict_of(s, tables).kind != Verdict::Kind::Unknown) {
      return GameValue::of(0);
    }
    for (int b = 1; b <= budget_cap; ++b) {
      if (solvable_within(s, b)) return GameValue::of(b);
    }
    return GameValue::unsolvable();
  }

  GameValue solve() {
    {
      std::lock_guard<std::mutex> lock(root_mu);
      if (root_value) return *root_value;
    }
    GameValue v = GameValue::unsolvable();
    if (verdict_of(full, tables).kind != Verdict::Kind::Unknown) {
      v = GameValue::of(0);
    } else {
      for (int b = 1; b <= budget_cap; ++b) {
        if (solvable_root(b)) {
          v = GameValue::of(b);
          break;
        }
      }
    }
    std::lock_guard<std::mutex> lock(root_mu);
    root_value = v;
    return v;
  }

  Bits refine_bits(const Bits& s, const QueryInfo& qi, const Answer& a) const {
    Bits next;
    if (a.is_yes()) {
      next = and_of(s, qi.mono);
    } else if (model == Model::YN) {
      next = andnot_of(s, qi.mono);
    } else {
      int p = tables.pair_index[a.witness->first][a.witness->second];
      next = and_of(s, tables.diff_pair[p]);
    }
    if (bits_empty(next)) {
      throw InconsistentAnswerError("answers admit no coloring");
    }
    return next;
  }

  // First query (in lex order) whose every consistent answer stays
  // solvable within value - 1; exists whenever the state is solvable.
  const QueryInfo* optimal_query(const Bits& s, int value) {
    std::vector<Bits> children;
    for (const QueryInfo& qi : queries) {
      if (!children_of(s, qi, children)) continue;
      bool all = true;
      for (const Bits& ch : children) {
        if (!solvable_within(ch, value - 1)) {
          all = false;
          break;
        }
      }
      if (all) return &qi;
    }
    return nullptr;
  }

  StrategyNode build_strategy(const Bits& s) {
    GameValue v = value_of_bits(s);
    if (!v.solvable) {
      throw std::logic_error("strategy requested for an unsolvable state");
    }
    const QueryInfo* qi = optimal_query(s, *v.queries);
    if (qi == nullptr) {
      throw std::logic_error("no optimal query despite solvable state");
    }
    StrategyNode node;
    node.query = qi->query;
    for (auto& [answer, child] : labeled_children(s, *qi)) {
      StrategyNode::Child c;
      c.answer = answer;
      Verdict vd = verdict_of(child, tables);
      if (vd.kind != Verdict::Kind::Unknown) {
        c.verdict = vd;
      } else {
        c.next = std::make_unique<StrategyNode>(build_strategy(child));
      }
      node.children.push_back(std::move(c));
    }
    return node;
  }

  QuestionerRun play_optimal(const AnswerSource& answers) {
    GameValue gv = solve();
    if (!gv.solvable) {
      throw std::logic_error("optimal play requested for an unsolvable game");
    }
    Bits s = full;
    Transcript t;
    t.model = model;
    t.k = k;
    t.n = n;
    int count = 0;
    while (true) {
      Verdict vd = verdict_of(s, tables);
      if (vd.kind != Verdict::Kind::Unknown) {
        t.validate();
        return QuestionerRun{vd, std::move(t), count, std::nullopt};
      }
      GameValue v = value_of_bits(s);
      const QueryInfo* qi = optimal_query(s, *v.queries);
      if (qi == nullptr) {
        throw std::logic_error("no optimal query despite solvable state");
      }
      Answer a = answers(qi->query);
      t.append(qi->query, a);
      t.validate();  // enforces witness shape and ball range per model
      s = refine_bits(s, *qi, a);
      ++count;
    }
  }

  SolveStats stats() {
    SolveStats st;
    st.nodes = nodes.load();
    st.memo_hits = memo_hits.load();
    for (Shard& sh : shards) {
      std::lock_guard<std::mutex> lock(sh.mu);
      st.memo_entries += sh.memo.size();
    }
    return st;
  }
};

CanonicalKey canonical_key(const KnowledgeSet& ks, bool relabel) {
  if (ks.empty()) {
    throw std::invalid_argument("canonical_key of an empty knowledge set");
  }
  Tables t = Tables::build(ks.n());
  return CanonicalKey{canonical_bits(ks.words(), t, relabel)};
}

GameSolver::GameSolver(int n, int k, Model model, SolveOptions opts)
    : impl_(std::make_unique<Impl>(n, k, model, opts)) {}

GameSolver::~GameSolver() = default;

int GameSolver::n() const { return impl_->n; }
int GameSolver::k() const { return impl_->k; }
Model GameSolver::model() const { return impl_->model; }

GameValue GameSolver::solve() { return impl_->solve(); }

GameValue GameSolver::value_of(const KnowledgeSet& ks) {
  if (ks.n() != impl_->n) {
    throw std::invalid_argument("knowledge set is for a different n");
  }
  if (ks.empty()) {
    throw std::invalid_argument("empty knowledge set has no game value");
  }
  return impl_->value_of_bits(ks.words());
}

StrategyNode GameSolver::strategy() {
  GameValue v = solve();
  if (!v.solvable) {
    throw std::logic_error("strategy requested for an unsolvable game");
  }
  return impl_->build_strategy(impl_->full);
}

QuestionerRun GameSolver::play_optimal(const AnswerSource& answers) {
  return impl_->play_optimal(answers);
}

Questioner GameSolver::questioner() {
  return [this](const AnswerSource& answers, int n) {
    if (n != impl_->n) {
      throw std::invalid_argument("optimal questioner is bound to n = " +
                                  std::to_string(impl_->n));
    }
    return impl_->play_optimal(answers);
  };
}

SolveStats GameSolver::stats() const { return impl_->stats(); }

GameValue solve_game(int n, int k, Model model, SolveOptions opts) {
  GameSolver solver(n, k, model, opts);
  return solver.solve();
}

namespace {

nlohmann::json strategy_node_json(const StrategyNode& node) {
  nlohmann::json children = nlohmann::json::array();
  for (const StrategyNode::Child& c : node.children) {
    nlohmann::json j;
    j["answer"] = c.answer.is_yes() ? "yes" : "no";
    if (c.answer.witness) {
      j["witness"] =
          nlohmann::json::array({c.answer.witness->first, c.answer.witness->second});
    }
    if (c.verdict) {
      j["verdict"] = c.verdict->to_string();
    } else {
      j["next"] = strategy_node_json(*c.next);
    }
    children.push_back(std::move(j));
  }
  return nlohmann::json{{"query", node.query.balls()},
                        {"children", std::move(children)}};
}

bool verdict_holds(const Verdict& v, const Coloring& c) {
  Verdict truth = ground_truth(c);
  if (v.kind != truth.kind) return false;
  if (v.kind == Verdict::Kind::Majority) {
    return c.is_red(v.ball) == c.is_red(truth.ball);
  }
  return true;
}

}  // namespace

std::string strategy_to_json(const StrategyNode& node, int indent) {
  return strategy_node_json(node).dump(indent);
}

WorstCase worst_case_count(const Questioner& questioner, int n, int k,
                           Model model) {
  if (n < 1 || n > 16) {
    throw std::invalid_argument("worst_case_count supports 1 <= n <= 16");
  }
  WorstCase wc{0, true};
  auto check_run = [&](const QuestionerRun& run, const KnowledgeSet& ks) {
    wc.max_queries = std::max(wc.max_queries, run.query_count);
    if (run.transcript.k != k || run.transcript.n != n ||
        run.transcript.model != model ||
        static_cast<int>(run.transcript.steps.size()) != run.query_count) {
      wc.all_correct = false;
      return;
    }
    for (const Coloring& c : ks.colorings()) {
      if (!verdict_holds(run.verdict, c)) {
        wc.all_correct = false;
        return;
      }
    }
  };

  if (model == Model::YN) {
    // Y/N answers are functions of the coloring, so every consistent
    // adversary plays like the honest oracle for some coloring; sweeping
    // all colorings is exhaustive.
    std::uint32_t total = static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
    for (std::uint32_t mask = 0;; ++mask) {
      Coloring c(n, mask);
      QuestionerRun run = questioner(honest_source(c, model), n);
      check_run(run, KnowledgeSet::from_colorings(n, {c}));
      if (mask == total) break;
    }
    return wc;
  }

  // Pairing: walk every consistent answer-and-witness choice. The
  // questioner is deterministic, so replaying a transcript prefix brings
  // it back to the same decision point; the next query is captured by
  // aborting the run with a sentinel.
  struct NextQueryProbe {
    Query query;
  };
  std::vector<Step> prefix;
  std::function<void(const KnowledgeSet&)> walk = [&](const KnowledgeSet& ks) {
    std::size_t replay_at = 0;
    Query pending{{0, 1}};
    bool probed = false;
    AnswerSource replay = [&](const Query& q) -> Answer {
      if (replay_at < prefix.size()) {
        if (!(q == prefix[replay_at].query)) {
          throw std::logic_error(
              "questioner replayed a different query; it is not "
              "deterministic");
        }
        return prefix[replay_at++].answer;
      }
      throw NextQueryProbe{q};
    };
    try {
      QuestionerRun run = questioner(replay, n);
      check_run(run, ks);
      return;
    } catch (const NextQueryProbe& probe) {
      pending = probe.query;
      probed = true;
    }
    if (!probed) return;
    // Enumerate consistent answers to the pending query.
    std::vector<Answer> options;
    options.push_back(Answer::yes());
    const std::vector<BallId>& balls = pending.balls();
    for (std::size_t i = 0; i < balls.size(); ++i) {
      for (std::size_t j = i + 1; j < balls.size(); ++j) {
        options.push_back(Answer::no_with(balls[i], balls[j]));
      }
    }
    bool any = false;
    for (const Answer& a : options) {
      KnowledgeSet next = ks;
      try {
        next = ks.refined(pending, a);
      } catch (const InconsistentAnswerError&) {
        continue;
      }
      any = true;
      prefix.push_back({pending, a});
      walk(next);
      prefix.pop_back();
    }
    if (!any) wc.all_correct = false;  // no consistent answer: broken query
  };
  walk(KnowledgeSet::full(n));
  return wc;
}

std::vector<std::pair<int, bool>> existence_table(int k, Model model,
                                                  int n_max,
                                                  SolveOptions opts) {
  if (n_max < k) {
    throw std::invalid_argument("existence_table needs n_max >= k");
  }
  std::vector<std::pair<int, bool>> out;
  out.reserve(static_cast<std::size_t>(n_max - k + 1));
  for (int n = k; n <= n_max; ++n) {
    out.emplace_back(n, solve_game(n, k, model, opts).solvable);
  }
  return out;
}

}  // namespace mql
