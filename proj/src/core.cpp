#include "mql/core.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

namespace mql {

namespace {

constexpr int kMaxBalls = 30;

void check_n(int n) {
  if (n < 1 || n > kMaxBalls) {
    throw std::invalid_argument("ball count must be in [1, 30], got " +
                                std::to_string(n));
  }
}

}  // namespace

std::string to_string(Model m) {
  return m == Model::YN ? "yn" : "pairing";
}

Model model_from_string(const std::string& s) {
  if (s == "yn") return Model::YN;
  if (s == "pairing") return Model::Pairing;
  throw std::invalid_argument("unknown model '" + s + "' (want yn|pairing)");
}

Coloring::Coloring(int n, std::uint32_t reds) : n_(n), reds_(reds) {
  check_n(n);
  if (n < 32 && (reds >> n) != 0) {
    throw std::invalid_argument("red mask has bits beyond ball count");
  }
}

Coloring Coloring::from_string(const std::string& spec) {
  check_n(static_cast<int>(spec.size()));
  std::uint32_t reds = 0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    switch (std::toupper(static_cast<unsigned char>(spec[i]))) {
      case 'R': reds |= 1u << i; break;
      case 'B': break;
      default:
        throw std::invalid_argument("coloring spec must use only R/B: '" +
                                    spec + "'");
    }
  }
  return Coloring(static_cast<int>(spec.size()), reds);
}

int Coloring::red_count() const { return std::popcount(reds_); }

Coloring Coloring::swapped() const {
  std::uint32_t all = (n_ == 32) ? ~0u : ((1u << n_) - 1);
  return Coloring(n_, ~reds_ & all);
}

std::string Coloring::to_string() const {
  std::string s(static_cast<std::size_t>(n_), 'B');
  for (int b = 0; b < n_; ++b) {
    if (is_red(b)) s[static_cast<std::size_t>(b)] = 'R';
  }
  return s;
}

Query::Query(std::vector<BallId> balls) : balls_(std::move(balls)) {
  std::sort(balls_.begin(), balls_.end());
  if (std::adjacent_find(balls_.begin(), balls_.end()) != balls_.end()) {
    throw std::invalid_argument("query balls must be distinct");
  }
  if (!balls_.empty() && (balls_.front() < 0 || balls_.back() >= kMaxBalls)) {
    throw std::invalid_argument("query ball id out of range");
  }
}

Query::Query(std::initializer_list<BallId> balls)
    : Query(std::vector<BallId>(balls)) {}

std::uint32_t Query::mask() const {
  std::uint32_t m = 0;
  for (BallId b : balls_) m |= 1u << b;
  return m;
}

bool Query::contains(BallId b) const {
  return std::binary_search(balls_.begin(), balls_.end(), b);
}

std::string Query::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < balls_.size(); ++i) {
    if (i) os << ',';
    os << balls_[i];
  }
  os << '}';
  return os.str();
}

Answer Answer::no_with(BallId a, BallId b) {
  if (a == b) throw std::invalid_argument("witness balls must differ");
  if (a > b) std::swap(a, b);
  return {AnswerKind::No, std::make_pair(a, b)};
}

std::string Answer::to_string() const {
  if (kind == AnswerKind::Yes) return "yes";
  if (!witness) return "no";
  return "no[" + std::to_string(witness->first) + "," +
         std::to_string(witness->second) + "]";
}

void Transcript::append(Query q, Answer a) {
  steps.push_back({std::move(q), a});
}

void Transcript::validate() const {
  check_n(n);
  if (k < 2 || k > n) {
    throw std::invalid_argument("query arity k must satisfy 2 <= k <= n");
  }
  for (const Step& s : steps) {
    if (s.query.size() != k) {
      throw std::invalid_argument("query " + s.query.to_string() +
                                  " does not have arity " + std::to_string(k));
    }
    if (s.query[0] < 0 || s.query[k - 1] >= n) {
      throw std::invalid_argument("query " + s.query.to_string() +
                                  " names a ball outside [0, n)");
    }
    bool want_witness =
        model == Model::Pairing && s.answer.kind == AnswerKind::No;
    if (want_witness != s.answer.witness.has_value()) {
      throw std::invalid_argument(
          "witness must be present exactly on Pairing-model No answers");
    }
    if (s.answer.witness) {
      auto [a, b] = *s.answer.witness;
      if (a >= b || !s.query.contains(a) || !s.query.contains(b)) {
        throw std::invalid_argument("witness must name two queried balls");
      }
    }
  }
}

std::string Verdict::to_string() const {
  switch (kind) {
    case Kind::NoMajority: return "no-majority";
    case Kind::Majority: return "majority(" + std::to_string(ball) + ")";
    case Kind::Unknown: return "unknown";
  }
  return "unknown";
}

Coloring make_coloring(int n, const std::vector<BallId>& red_balls) {
  check_n(n);
  std::uint32_t reds = 0;
  for (BallId b : red_balls) {
    if (b < 0 || b >= n) {
      throw std::invalid_argument("red ball id out of range");
    }
    reds |= 1u << b;
  }
  return Coloring(n, reds);
}

Verdict ground_truth(const Coloring& c) {
  int red = c.red_count();
  int blue = c.n() - red;
  if (red == blue) return Verdict::no_majority();
  bool red_wins = red > blue;
  for (BallId b = 0; b < c.n(); ++b) {
    if (c.is_red(b) == red_wins) return Verdict::majority(b);
  }
  return Verdict::unknown();  // unreachable: the larger class is nonempty
}

Answer honest_answer(const Coloring& c, const Query& q, Model model) {
  if (q.size() < 2) throw std::invalid_argument("query needs at least 2 balls");
  if (q.balls().back() >= c.n()) {
    throw std::invalid_argument("query names a ball outside the coloring");
  }
  std::uint32_t qm = q.mask();
  std::uint32_t reds_in_q = c.reds() & qm;
  if (reds_in_q == qm || reds_in_q == 0) return Answer::yes();
  if (model == Model::YN) return Answer::no();
  const auto& balls = q.balls();
  for (std::size_t i = 0; i < balls.size(); ++i) {
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      if (c.is_red(balls[i]) != c.is_red(balls[j])) {
        return Answer::no_with(balls[i], balls[j]);
      }
    }
  }
  return Answer::no();  // unreachable: a non-monochromatic query has a pair
}

bool is_consistent(const Coloring& c, const Transcript& t) {
  if (c.n() != t.n) {
    throw std::invalid_argument("coloring and transcript disagree on n");
  }
  for (const Step& s : t.steps) {
    std::uint32_t qm = s.query.mask();
    std::uint32_t reds_in_q = c.reds() & qm;
    bool mono = reds_in_q == qm || reds_in_q == 0;
    if (s.answer.kind == AnswerKind::Yes) {
      if (!mono) return false;
    } else {
      if (mono) return false;
      if (s.answer.witness &&
          c.is_red(s.answer.witness->first) ==
              c.is_red(s.answer.witness->second)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace mql
