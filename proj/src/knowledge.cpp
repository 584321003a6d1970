#include "mql/knowledge.hpp"

#include <algorithm>
#include <bit>
#include <queue>

namespace mql {

namespace {

constexpr int kMaxEnumerable = 16;

std::size_t word_count(int n) {
  return n >= 6 ? (std::size_t{1} << (n - 6)) : 1;
}

std::uint32_t all_balls_mask(int n) { return (n == 32) ? ~0u : (1u << n) - 1; }

}  // namespace

KnowledgeSet::KnowledgeSet(int n, std::vector<std::uint64_t> words)
    : n_(n), words_(std::move(words)) {}

KnowledgeSet KnowledgeSet::full(int n) {
  if (n < 1 || n > kMaxEnumerable) {
    throw std::invalid_argument(
        "knowledge sets enumerate all colorings; n must be in [1, 16]");
  }
  std::vector<std::uint64_t> words(word_count(n), ~std::uint64_t{0});
  if (n < 6) words[0] = (std::uint64_t{1} << (1u << n)) - 1;
  return KnowledgeSet(n, std::move(words));
}

KnowledgeSet KnowledgeSet::from_colorings(int n,
                                          const std::vector<Coloring>& cs) {
  KnowledgeSet ks = full(n);
  std::fill(ks.words_.begin(), ks.words_.end(), 0);
  for (const Coloring& c : cs) {
    if (c.n() != n) throw std::invalid_argument("coloring has wrong n");
    ks.words_[c.reds() >> 6] |= std::uint64_t{1} << (c.reds() & 63);
  }
  return ks;
}

std::uint64_t KnowledgeSet::count() const {
  std::uint64_t total = 0;
  for (std::uint64_t w : words_) total += std::popcount(w);
  return total;
}

bool KnowledgeSet::contains(std::uint32_t coloring_mask) const {
  if (coloring_mask > all_balls_mask(n_)) return false;
  return (words_[coloring_mask >> 6] >> (coloring_mask & 63)) & 1;
}

KnowledgeSet KnowledgeSet::refined(const Query& q, const Answer& a) const {
  KnowledgeSet out(n_, std::vector<std::uint64_t>(words_.size(), 0));
  std::uint32_t qm = q.mask();
  std::uint32_t limit = all_balls_mask(n_);
  for (std::uint32_t c = 0; c <= limit; ++c) {
    if (!contains(c)) continue;
    std::uint32_t reds_in_q = c & qm;
    bool mono = reds_in_q == qm || reds_in_q == 0;
    bool keep;
    if (a.kind == AnswerKind::Yes) {
      keep = mono;
    } else {
      keep = !mono;
      if (keep && a.witness) {
        bool ra = (c >> a.witness->first) & 1;
        bool rb = (c >> a.witness->second) & 1;
        keep = ra != rb;
      }
    }
    if (keep) out.words_[c >> 6] |= std::uint64_t{1} << (c & 63);
  }
  if (out.empty()) {
    throw InconsistentAnswerError("answer " + a.to_string() + " to query " +
                                  q.to_string() +
                                  " contradicts every remaining coloring");
  }
  return out;
}

Verdict KnowledgeSet::verdict() const {
  if (empty()) throw std::invalid_argument("verdict of empty knowledge set");
  std::uint32_t full_mask = all_balls_mask(n_);
  bool any_balanced = false;
  bool any_unbalanced = false;
  std::uint32_t common_majority = full_mask;
  for (std::uint32_t c = 0; c <= full_mask; ++c) {
    if (!contains(c)) continue;
    int red = std::popcount(c);
    int blue = n_ - red;
    if (red == blue) {
      any_balanced = true;
    } else {
      any_unbalanced = true;
      common_majority &= (red > blue) ? c : (~c & full_mask);
    }
    if (any_balanced && (any_unbalanced || common_majority == 0)) break;
  }
  if (!any_unbalanced) return Verdict::no_majority();
  if (any_balanced || common_majority == 0) return Verdict::unknown();
  return Verdict::majority(std::countr_zero(common_majority));
}

std::vector<Coloring> KnowledgeSet::colorings() const {
  std::vector<Coloring> out;
  std::uint32_t limit = all_balls_mask(n_);
  for (std::uint32_t c = 0; c <= limit; ++c) {
    if (contains(c)) out.emplace_back(n_, c);
  }
  return out;
}

PairingGraph::PairingGraph(int n) : n_(n) {
  if (n < 1 || n > 30) {
    throw std::invalid_argument("pairing graph needs n in [1, 30]");
  }
}

void PairingGraph::add_edge(std::vector<std::pair<BallId, BallId>>& edges,
                            BallId a, BallId b) {
  if (a == b || a < 0 || b < 0 || a >= n_ || b >= n_) {
    throw std::invalid_argument("edge must join two distinct balls in [0, n)");
  }
  if (a > b) std::swap(a, b);
  auto e = std::make_pair(a, b);
  auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it == edges.end() || *it != e) edges.insert(it, e);
}

void PairingGraph::add_same(BallId a, BallId b) { add_edge(same_, a, b); }
void PairingGraph::add_diff(BallId a, BallId b) { add_edge(diff_, a, b); }

namespace {

// Two-colors the constraint graph by BFS: same-edges keep the side,
// diff-edges flip it. Returns false on contradiction. side[v] is 0/1 per
// component, -1 for unvisited.
bool two_color(const PairingGraph& g, std::vector<int>& side,
               std::vector<int>& component) {
  int n = g.n();
  struct Arc {
    int to;
    int flip;
  };
  std::vector<std::vector<Arc>> adj(static_cast<std::size_t>(n));
  for (auto [a, b] : g.same_edges()) {
    adj[a].push_back({b, 0});
    adj[b].push_back({a, 0});
  }
  for (auto [a, b] : g.diff_edges()) {
    adj[a].push_back({b, 1});
    adj[b].push_back({a, 1});
  }
  side.assign(static_cast<std::size_t>(n), -1);
  component.assign(static_cast<std::size_t>(n), -1);
  int comp = 0;
  for (int start = 0; start < n; ++start) {
    if (side[start] != -1) continue;
    side[start] = 0;
    component[start] = comp;
    std::queue<int> bfs;
    bfs.push(start);
    while (!bfs.empty()) {
      int v = bfs.front();
      bfs.pop();
      for (const Arc& arc : adj[v]) {
        int want = side[v] ^ arc.flip;
        if (side[arc.to] == -1) {
          side[arc.to] = want;
          component[arc.to] = comp;
          bfs.push(arc.to);
        } else if (side[arc.to] != want) {
          return false;
        }
      }
    }
    ++comp;
  }
  return true;
}

}  // namespace

bool PairingGraph::satisfiable() const {
  std::vector<int> side, component;
  return two_color(*this, side, component);
}

PairingGraph build_pairing_graph(const Transcript& t) {
  if (t.model != Model::Pairing) {
    throw std::invalid_argument("pairing graph needs a Pairing transcript");
  }
  t.validate();
  PairingGraph g(t.n);
  for (const Step& s : t.steps) {
    if (s.answer.kind == AnswerKind::Yes) {
      const auto& balls = s.query.balls();
      for (std::size_t i = 0; i + 1 < balls.size(); ++i) {
        g.add_same(balls[i], balls[i + 1]);
      }
    } else {
      g.add_diff(s.answer.witness->first, s.answer.witness->second);
    }
  }
  if (!g.satisfiable()) {
    throw InconsistentAnswerError(
        "transcript constraints admit no coloring");
  }
  return g;
}

std::vector<ComponentSummary> component_summaries(const PairingGraph& g) {
  std::vector<int> side, component;
  if (!two_color(g, side, component)) {
    throw std::invalid_argument("unsatisfiable pairing graph");
  }
  int comps = 0;
  for (int c : component) comps = std::max(comps, c + 1);
  std::vector<ComponentSummary> out(static_cast<std::size_t>(comps));
  for (int v = 0; v < g.n(); ++v) {
    ComponentSummary& cs = out[static_cast<std::size_t>(component[v])];
    cs.members.push_back(v);
    (side[v] == 0 ? cs.side_a : cs.side_b).push_back(v);
  }
  // BFS seeds each component's lowest id with side 0, so side_a already
  // holds the lowest member; swap only when side_b is strictly larger.
  for (ComponentSummary& cs : out) {
    if (cs.side_b.size() > cs.side_a.size()) std::swap(cs.side_a, cs.side_b);
    cs.delta = static_cast<int>(cs.side_a.size()) -
               static_cast<int>(cs.side_b.size());
  }
  return out;
}

Verdict structural_verdict(const PairingGraph& g) {
  std::vector<ComponentSummary> comps = component_summaries(g);
  int total = 0;
  for (const ComponentSummary& cs : comps) total += cs.delta;
  if (total == 0) return Verdict::no_majority();  // deltas are all >= 0
  for (const ComponentSummary& cs : comps) {
    // cs wins even when every other component lines up against it.
    if (2 * cs.delta > total) return Verdict::majority(cs.side_a.front());
  }
  return Verdict::unknown();
}

MatchingResult maximum_matching(const PairingGraph& g) {
  // Bipartition from the diff edges alone.
  PairingGraph diff_only(g.n());
  for (auto [a, b] : g.diff_edges()) diff_only.add_diff(a, b);
  std::vector<int> side, component;
  if (!two_color(diff_only, side, component)) {
    throw std::invalid_argument("diff edges are not bipartite");
  }
  int n = g.n();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto [a, b] : g.diff_edges()) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> match(static_cast<std::size_t>(n), -1);
  std::vector<char> seen;
  auto augment = [&](auto&& self, int v) -> bool {
    for (int to : adj[v]) {
      if (seen[to]) continue;
      seen[to] = 1;
      if (match[to] == -1 || self(self, match[to])) {
        match[v] = to;
        match[to] = v;
        return true;
      }
    }
    return false;
  };
  MatchingResult res;
  for (int v = 0; v < n; ++v) {
    if (side[v] != 0 || match[v] != -1 || adj[v].empty()) continue;
    seen.assign(static_cast<std::size_t>(n), 0);
    if (augment(augment, v)) ++res.size;
  }
  for (int v = 0; v < n; ++v) {
    if (match[v] == -1) {
      res.uncovered.push_back(v);
    } else if (v < match[v]) {
      res.edges.emplace_back(v, match[v]);
    }
  }
  return res;
}

std::optional<BallId> majority_by_matching(const PairingGraph& g) {
  if (g.n() % 2 == 0) {
    throw std::invalid_argument("majority_by_matching needs odd n");
  }
  if (!g.same_edges().empty()) {
    throw std::invalid_argument("majority_by_matching needs no same-edges");
  }
  MatchingResult mm = maximum_matching(g);
  if (mm.size != (g.n() - 1) / 2) return std::nullopt;
  // Every matched pair splits one ball per color; the lone uncovered ball
  // tips its class into the majority under every consistent coloring.
  return mm.uncovered.front();
}

bool edge_lower_bound_check(const PairingGraph& g) {
  if (!g.same_edges().empty()) {
    throw std::invalid_argument("edge_lower_bound_check needs no same-edges");
  }
  if (structural_verdict(g).kind != Verdict::Kind::Majority) {
    throw std::invalid_argument(
        "edge_lower_bound_check needs a guaranteed-majority ball");
  }
  return static_cast<int>(g.diff_edges().size()) >= g.n() / 2;
}

}  // namespace mql
