#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <vector>

#include "mql/bounds.hpp"
#include "mql/core.hpp"
#include "mql/questioners.hpp"

using namespace mql;

namespace {

AnswerSource honest(const Coloring& c, Model model) {
  return [&c, model](const Query& q) { return honest_answer(c, q, model); };
}

// Plays back a fixed list of answers, one per query, in order.
AnswerSource scripted(std::vector<Answer> answers) {
  auto remaining = std::make_shared<std::vector<Answer>>(std::move(answers));
  return [remaining](const Query&) {
    REQUIRE(!remaining->empty());
    Answer a = remaining->front();
    remaining->erase(remaining->begin());
    return a;
  };
}

void check_verdict(const Coloring& c, const Verdict& got) {
  Verdict truth = ground_truth(c);
  REQUIRE(got.kind == truth.kind);
  if (truth.kind == Verdict::Kind::Majority) {
    // Any ball of the majority class is acceptable, not only the lowest.
    REQUIRE(c.is_red(got.ball) == c.is_red(truth.ball));
  }
}

void check_run(const Coloring& c, const QuestionerRun& run, Model model,
               int k) {
  check_verdict(c, run.verdict);
  REQUIRE(run.query_count == static_cast<int>(run.transcript.steps.size()));
  REQUIRE(run.transcript.model == model);
  REQUIRE(run.transcript.k == k);
  REQUIRE(run.transcript.n == c.n());
  run.transcript.validate();
  REQUIRE(is_consistent(c, run.transcript));
}

}  // namespace

TEST_CASE("triple Y/N strategy on small fixed colorings") {
  SUBCASE("three reds and a blue resolve after the first monochromatic hit") {
    Coloring c = Coloring::from_string("RRRB");
    auto run = run_majority3(honest(c, Model::YN), 4);
    CHECK(run.verdict == Verdict::majority(0));
    // {0,1,2} is monochromatic and three of four balls force the majority.
    CHECK(run.query_count == 1);

    auto full = run_majority3(honest(c, Model::YN), 4, {.early_exit = false});
    CHECK(full.verdict == Verdict::majority(0));
    CHECK(full.query_count == 2);
  }

  SUBCASE("a balanced group needs all four triples") {
    Coloring c = Coloring::from_string("RRBB");
    auto run = run_majority3(honest(c, Model::YN), 4);
    CHECK(run.verdict == Verdict::no_majority());
    CHECK(run.query_count == 4);
  }

  SUBCASE("late monochromatic triple pins the leftover ball for free") {
    Coloring c = Coloring::from_string("BRRR");
    auto run = run_majority3(honest(c, Model::YN), 4);
    CHECK(run.verdict == Verdict::majority(1));
    CHECK(run.query_count == 4);
  }

  SUBCASE("odd n drops the last ball first") {
    Coloring c = Coloring::from_string("RRRRR");
    auto run = run_majority3(honest(c, Model::YN), 5);
    CHECK(run.verdict == Verdict::majority(0));
    CHECK(run.query_count == 1);
    CHECK(run.transcript.n == 5);
  }

  SUBCASE("alternating colors hit the n+1 worst case for n = 6") {
    Coloring c = Coloring::from_string("RBRBRB");
    auto run = run_majority3(honest(c, Model::YN), 6);
    CHECK(run.verdict == Verdict::no_majority());
    CHECK(run.query_count == 7);
  }

  SUBCASE("instances below four balls are rejected") {
    Coloring c = Coloring::from_string("RRB");
    CHECK_THROWS_AS(run_majority3(honest(c, Model::YN), 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_majority3_with_gap(honest(c, Model::YN), 3),
                    std::invalid_argument);
  }
}

TEST_CASE("triple Y/N strategy is correct and within bounds for all "
          "colorings up to n = 12") {
  for (int n = 4; n <= 12; ++n) {
    int bound = triple_yn_upper_bound(n);
    int worst_seen = 0;
    for (std::uint32_t reds = 0; reds < (1u << n); ++reds) {
      Coloring c(n, reds);
      auto run = run_majority3(honest(c, Model::YN), n);
      check_run(c, run, Model::YN, 3);
      REQUIRE(run.query_count <= bound);
      REQUIRE(!run.gap.has_value());
      worst_seen = std::max(worst_seen, run.query_count);

      auto full = run_majority3(honest(c, Model::YN), n,
                                {.early_exit = false});
      check_run(c, full, Model::YN, 3);
      REQUIRE(full.query_count <= bound);
      REQUIRE(run.query_count <= full.query_count);
    }
    // The per-residue bound is tight: some coloring attains it.
    REQUIRE(worst_seen == bound);
  }
}

TEST_CASE("gap variant reports an exact class size") {
  SUBCASE("fixed colorings") {
    Coloring all7 = Coloring::from_string("RRRRRRR");
    auto run = run_majority3_with_gap(honest(all7, Model::YN), 7);
    CHECK(run.verdict == Verdict::majority(0));
    CHECK(run.gap == 7);
    CHECK(run.query_count == 5);

    Coloring mixed = Coloring::from_string("RRBBRRB");
    auto run2 = run_majority3_with_gap(honest(mixed, Model::YN), 7);
    CHECK(run2.verdict == Verdict::majority(0));
    CHECK(run2.gap == 4);
    CHECK(run2.query_count == 6);

    Coloring split = Coloring::from_string("RRBB");
    auto run3 = run_majority3_with_gap(honest(split, Model::YN), 4);
    CHECK(run3.verdict == Verdict::no_majority());
    CHECK(run3.gap == 2);
  }

  SUBCASE("all colorings up to n = 11") {
    for (int n = 4; n <= 11; ++n) {
      for (std::uint32_t reds = 0; reds < (1u << n); ++reds) {
        Coloring c(n, reds);
        auto run = run_majority3_with_gap(honest(c, Model::YN), n);
        check_run(c, run, Model::YN, 3);
        REQUIRE(run.gap.has_value());
        bool exact_class = *run.gap == c.red_count() ||
                           *run.gap == n - c.red_count();
        REQUIRE(exact_class);
        REQUIRE(run.query_count <= triple_yn_upper_bound(n) + 1);
        // Knowing an exact class size costs at most one query over the
        // plain strategy run in full (no early exit).
        auto full = run_majority3(honest(c, Model::YN), n,
                                  {.early_exit = false});
        REQUIRE(run.query_count <= full.query_count + 1);
      }
    }
  }
}

TEST_CASE("odd reduction maps an even-split sub-answer to the withheld "
          "ball") {
  Coloring c = Coloring::from_string("RRBBR");
  // Balls 0..3 split 2-2, so the inner run reports no majority and the
  // reduction must promote ball 4.
  auto run = odd_reduce(
      [](const AnswerSource& src, int inner_n) {
        return run_majority3(src, inner_n);
      },
      honest(c, Model::YN), 5);
  CHECK(run.verdict == Verdict::majority(4));
  CHECK(run.transcript.n == 5);
  CHECK_THROWS_AS(odd_reduce(
                      [](const AnswerSource& src, int inner_n) {
                        return run_majority3(src, inner_n);
                      },
                      honest(c, Model::YN), 4),
                  std::invalid_argument);
}

TEST_CASE("pairing bins strategy on small fixed colorings") {
  SUBCASE("all-same coloring merges three, three, then the top pair") {
    Coloring c = Coloring::from_string("RRRRRR");
    auto run = run_pairing_bins(honest(c, Model::Pairing), 6);
    CHECK(run.verdict == Verdict::majority(0));
    CHECK(run.query_count == 3);
    for (const Step& step : run.transcript.steps) {
      CHECK(step.answer.is_yes());
    }
  }

  SUBCASE("an even split walks the witness endgame") {
    Coloring c = Coloring::from_string("RRBB");
    auto run = run_pairing_bins(honest(c, Model::Pairing), 4);
    CHECK(run.verdict == Verdict::no_majority());
    CHECK(run.query_count == 3);
    CHECK(run.transcript.steps[0].answer ==
          Answer::no_with(0, 2));
  }

  SUBCASE("three balls always need exactly one query") {
    for (std::uint32_t reds = 0; reds < 8; ++reds) {
      Coloring c(3, reds);
      auto run = run_pairing_bins(honest(c, Model::Pairing), 3);
      check_verdict(c, run.verdict);
      CHECK(run.query_count == 1);
    }
  }

  SUBCASE("witness-only answers still shrink the game") {
    // A source that always denies and blames the two lowest queried balls
    // stays self-consistent; the strategy must still corner it.
    auto source = [](const Query& q) { return Answer::no_with(q[0], q[1]); };
    auto run = run_pairing_bins(source, 5);
    CHECK(run.verdict == Verdict::majority(4));
    CHECK(run.query_count == 2);
    bool some_consistent = false;
    for (std::uint32_t reds = 0; reds < 32; ++reds) {
      some_consistent |= is_consistent(Coloring(5, reds), run.transcript);
    }
    CHECK(some_consistent);
  }

  SUBCASE("instances below three balls are rejected") {
    Coloring c = Coloring::from_string("RB");
    CHECK_THROWS_AS(run_pairing_bins(honest(c, Model::Pairing), 2),
                    std::invalid_argument);
  }
}

TEST_CASE("pairing bins strategy is correct and within bounds for all "
          "colorings up to n = 11") {
  for (int n = 3; n <= 11; ++n) {
    int bound = triple_pairing_exact(n);
    int worst_seen = 0;
    for (std::uint32_t reds = 0; reds < (1u << n); ++reds) {
      Coloring c(n, reds);
      auto run = run_pairing_bins(honest(c, Model::Pairing), n);
      check_run(c, run, Model::Pairing, 3);
      REQUIRE(run.query_count <= bound);
      worst_seen = std::max(worst_seen, run.query_count);
    }
    REQUIRE(worst_seen == bound);
  }
}

TEST_CASE("pair-query bins strategy") {
  SUBCASE("fixed colorings") {
    Coloring c3 = Coloring::from_string("RRB");
    auto run = run_pair_bins(honest(c3, Model::YN), 3);
    CHECK(run.verdict == Verdict::majority(0));
    CHECK(run.query_count == 1);

    Coloring c4 = Coloring::from_string("RRRR");
    auto run4 = run_pair_bins(honest(c4, Model::YN), 4);
    CHECK(run4.verdict == Verdict::majority(0));
    CHECK(run4.query_count == 3);

    Coloring c5 = Coloring::from_string("RRRBB");
    auto run5 = run_pair_bins(honest(c5, Model::YN), 5);
    CHECK(run5.verdict == Verdict::majority(0));
    CHECK(run5.query_count == 2);

    CHECK_THROWS_AS(run_pair_bins(honest(c3, Model::YN), 1),
                    std::invalid_argument);
  }

  SUBCASE("correct and within n - popcount(n) in both models, n up to 12") {
    for (int n = 2; n <= 12; ++n) {
      int bound = pair_query_exact(n);
      int worst_seen = 0;
      for (std::uint32_t reds = 0; reds < (1u << n); ++reds) {
        Coloring c(n, reds);
        auto yn = run_pair_bins(honest(c, Model::YN), n);
        check_run(c, yn, Model::YN, 2);
        REQUIRE(yn.query_count <= bound);
        worst_seen = std::max(worst_seen, yn.query_count);

        // With pair queries a witness carries no extra information, so
        // both models must play out identically.
        auto pairing = run_pair_bins(honest(c, Model::Pairing), n,
                                     Model::Pairing);
        check_run(c, pairing, Model::Pairing, 2);
        REQUIRE(pairing.verdict == yn.verdict);
        REQUIRE(pairing.query_count == yn.query_count);
      }
      REQUIRE(worst_seen == bound);
    }
  }
}

TEST_CASE("answer sources that misbehave are rejected") {
  SUBCASE("witness contradicting an earlier merge") {
    auto source = scripted({Answer::yes(), Answer::yes(),
                            Answer::no_with(0, 1)});
    CHECK_THROWS_AS(run_pairing_bins(source, 6), InconsistentAnswerError);
  }

  SUBCASE("witness naming unqueried balls") {
    auto source = scripted({Answer::no_with(4, 5)});
    CHECK_THROWS_AS(run_pairing_bins(source, 6), std::invalid_argument);
  }

  SUBCASE("denial without a witness in the pairing model") {
    auto source = scripted({Answer::no()});
    CHECK_THROWS_AS(run_pairing_bins(source, 6), std::invalid_argument);
  }

  SUBCASE("affirmation carrying a witness") {
    auto source = scripted({Answer{AnswerKind::Yes, {{0, 1}}}});
    CHECK_THROWS_AS(run_pairing_bins(source, 6), std::invalid_argument);
  }
}
