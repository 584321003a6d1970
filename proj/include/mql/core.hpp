#pragma once
// Core domain types for the majority-query game: two-colorings of balls,
// k-ball queries, oracle answers, transcripts, and verdicts.
//
// All types here are small value types; they are safe to copy across
// threads and hold no shared state.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mql {

using BallId = int;

// Oracle models. YN: the oracle only says whether all queried balls share a
// color. Pairing: a "no" additionally exhibits two differing balls.
enum class Model { YN, Pairing };

std::string to_string(Model m);
Model model_from_string(const std::string& s);

// An answer source contradicted every coloring that was still possible.
class InconsistentAnswerError : public std::runtime_error {
 public:
  explicit InconsistentAnswerError(const std::string& what)
      : std::runtime_error(what) {}
};

// The requested instance exceeds the documented feasibility limits.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what)
      : std::runtime_error(what) {}
};

// Two-coloring of balls 0..n-1 (red/blue). Ball b is red iff bit b of
// reds() is set. Supports n up to 30.
class Coloring {
 public:
  Coloring(int n, std::uint32_t reds);

  // Parses strings like "RRBB" (index 0 first); accepts lowercase.
  static Coloring from_string(const std::string& spec);

  int n() const { return n_; }
  std::uint32_t reds() const { return reds_; }
  bool is_red(BallId b) const { return (reds_ >> b) & 1u; }
  int red_count() const;
  Coloring swapped() const;  // exchange the two colors
  std::string to_string() const;

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  int n_;
  std::uint32_t reds_;
};

// A query names k distinct balls; stored sorted ascending.
class Query {
 public:
  Query() = default;
  explicit Query(std::vector<BallId> balls);
  Query(std::initializer_list<BallId> balls);

  const std::vector<BallId>& balls() const { return balls_; }
  BallId operator[](int i) const { return balls_[i]; }
  int size() const { return static_cast<int>(balls_.size()); }
  std::uint32_t mask() const;
  bool contains(BallId b) const;
  std::string to_string() const;

  friend bool operator==(const Query&, const Query&) = default;

 private:
  std::vector<BallId> balls_;
};

enum class AnswerKind { Yes, No };

// Yes: all queried balls share a color. No: they do not; in the Pairing
// model a No carries a witness pair (normalized first < second) of two
// differing balls taken from the query.
struct Answer {
  AnswerKind kind = AnswerKind::No;
  std::optional<std::pair<BallId, BallId>> witness;

  static Answer yes() { return {AnswerKind::Yes, std::nullopt}; }
  static Answer no() { return {AnswerKind::No, std::nullopt}; }
  static Answer no_with(BallId a, BallId b);

  bool is_yes() const { return kind == AnswerKind::Yes; }
  std::string to_string() const;

  friend bool operator==(const Answer&, const Answer&) = default;
};

struct Step {
  Query query;
  Answer answer;

  friend bool operator==(const Step&, const Step&) = default;
};

// Full record of one game: the model, the query arity k, the number of
// balls n, and the queries with their answers in order.
struct Transcript {
  Model model = Model::YN;
  int k = 0;
  int n = 0;
  std::vector<Step> steps;

  void append(Query q, Answer a);

  // Enforces arity k, ball range [0, n), and the witness rules: a witness
  // appears exactly on Pairing-model No answers and names two queried
  // balls. Throws std::invalid_argument on violation.
  void validate() const;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

struct Verdict {
  enum class Kind { NoMajority, Majority, Unknown };

  Kind kind = Kind::Unknown;
  BallId ball = -1;  // meaningful only when kind == Majority

  static Verdict majority(BallId b) { return {Kind::Majority, b}; }
  static Verdict no_majority() { return {Kind::NoMajority, -1}; }
  static Verdict unknown() { return {Kind::Unknown, -1}; }

  std::string to_string() const;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

// Coloring with the given balls red and all others blue.
Coloring make_coloring(int n, const std::vector<BallId>& red_balls);

// The true outcome: lowest-id ball of the strictly larger color class, or
// NoMajority on an exact split.
Verdict ground_truth(const Coloring& c);

// Truthful oracle reply for a query under the given model. A Pairing-model
// No returns the lexicographically smallest differing pair of the query.
Answer honest_answer(const Coloring& c, const Query& q, Model model);

// Whether the coloring could have produced every answer in the transcript.
bool is_consistent(const Coloring& c, const Transcript& t);

}  // namespace mql
