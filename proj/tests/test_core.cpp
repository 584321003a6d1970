#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "mql/core.hpp"

using namespace mql;

TEST_CASE("coloring parsing, masks, swap") {
  Coloring c = Coloring::from_string("RRBB");
  CHECK(c.n() == 4);
  CHECK(c.reds() == 0b0011u);
  CHECK(c.is_red(0));
  CHECK(!c.is_red(2));
  CHECK(c.red_count() == 2);
  CHECK(c.swapped().reds() == 0b1100u);
  CHECK(c.swapped().swapped() == c);
  CHECK(c.to_string() == "RRBB");
  CHECK(Coloring::from_string("rbR") == make_coloring(3, {0, 2}));
  CHECK_THROWS_AS(Coloring::from_string("RX"), std::invalid_argument);
  CHECK_THROWS_AS(Coloring(2, 0b100u), std::invalid_argument);
  CHECK_THROWS_AS(make_coloring(3, {3}), std::invalid_argument);
}

TEST_CASE("query normalizes and validates") {
  Query q{5, 1, 3};
  CHECK(q.balls() == std::vector<BallId>{1, 3, 5});
  CHECK(q.mask() == 0b101010u);
  CHECK(q.contains(3));
  CHECK(!q.contains(2));
  CHECK_THROWS_AS(Query({1, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Query({-1, 0, 2}), std::invalid_argument);
}

TEST_CASE("ground truth picks the lowest ball of the larger class") {
  CHECK(ground_truth(Coloring::from_string("RRBB")) == Verdict::no_majority());
  CHECK(ground_truth(Coloring::from_string("RRRB")) == Verdict::majority(0));
  CHECK(ground_truth(Coloring::from_string("BRR")) == Verdict::majority(1));
  CHECK(ground_truth(Coloring::from_string("BBRB")) == Verdict::majority(0));
  CHECK(ground_truth(Coloring::from_string("R")) == Verdict::majority(0));
}

TEST_CASE("honest answers: monochromatic iff yes") {
  Coloring c = Coloring::from_string("RRRB");
  CHECK(honest_answer(c, Query{0, 1, 2}, Model::YN) == Answer::yes());
  CHECK(honest_answer(c, Query{0, 1, 3}, Model::YN) == Answer::no());
  CHECK(honest_answer(Coloring::from_string("RRBB"), Query{0, 1}, Model::YN) ==
        Answer::yes());
}

TEST_CASE("honest pairing answers carry the lex-smallest differing pair") {
  Coloring c = Coloring::from_string("RRRB");
  CHECK(honest_answer(c, Query{1, 2, 3}, Model::Pairing) ==
        Answer::no_with(1, 3));
  CHECK(honest_answer(c, Query{0, 1, 3}, Model::Pairing) ==
        Answer::no_with(0, 3));
  CHECK(honest_answer(Coloring::from_string("BRRB"), Query{0, 1, 2},
                      Model::Pairing) == Answer::no_with(0, 1));
  // Witness is normalized regardless of construction order.
  CHECK(Answer::no_with(3, 1) == Answer::no_with(1, 3));
  CHECK_THROWS_AS(Answer::no_with(2, 2), std::invalid_argument);
}

TEST_CASE("transcript validation") {
  Transcript t{Model::Pairing, 3, 4, {}};
  t.append(Query{0, 1, 2}, Answer::no_with(0, 2));
  CHECK_NOTHROW(t.validate());

  SUBCASE("witness outside the query") {
    t.steps[0].answer = Answer::no_with(0, 3);
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  }
  SUBCASE("pairing No without witness") {
    t.steps[0].answer = Answer::no();
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  }
  SUBCASE("witness on a YN answer") {
    t.model = Model::YN;
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  }
  SUBCASE("wrong arity") {
    t.steps[0].query = Query{0, 1};
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  }
  SUBCASE("ball out of range") {
    t.n = 3;
    t.steps[0] = {Query{1, 2, 3}, Answer::no_with(1, 3)};
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  }
}

TEST_CASE("consistency agrees with honest play") {
  // Every coloring is consistent with its own honest transcript, and an
  // inconsistent coloring is rejected.
  for (Model model : {Model::YN, Model::Pairing}) {
    for (std::uint32_t reds = 0; reds < 16; ++reds) {
      Coloring c(4, reds);
      Transcript t{model, 3, 4, {}};
      for (Query q : {Query{0, 1, 2}, Query{0, 2, 3}, Query{1, 2, 3}}) {
        t.append(q, honest_answer(c, q, model));
      }
      CHECK(is_consistent(c, t));
    }
  }
  Transcript t{Model::YN, 3, 4, {}};
  t.append(Query{0, 1, 2}, Answer::yes());
  CHECK(is_consistent(Coloring::from_string("RRRB"), t));
  CHECK(!is_consistent(Coloring::from_string("RBRB"), t));
  t.append(Query{1, 2, 3}, Answer::no());
  CHECK(is_consistent(Coloring::from_string("RRRB"), t));
  CHECK(!is_consistent(Coloring::from_string("RRRR"), t));
}

TEST_CASE("witnesses constrain beyond the bare No") {
  Transcript t{Model::Pairing, 3, 4, {}};
  t.append(Query{0, 1, 2}, Answer::no_with(0, 1));
  CHECK(is_consistent(Coloring::from_string("RBRB"), t));
  // Non-monochromatic on {0,1,2}, but 0 and 1 share a color.
  CHECK(!is_consistent(Coloring::from_string("RRBB"), t));
}

TEST_CASE("consistency is color-swap symmetric") {
  std::mt19937 rng(20240817);
  for (int n : {3, 4, 5, 6}) {
    for (int trial = 0; trial < 200; ++trial) {
      Transcript t{trial % 2 ? Model::Pairing : Model::YN, 3, n, {}};
      Coloring source(n, rng() & ((1u << n) - 1));
      for (int step = 0; step < 4; ++step) {
        std::vector<BallId> balls(static_cast<std::size_t>(n));
        for (int b = 0; b < n; ++b) balls[static_cast<std::size_t>(b)] = b;
        std::shuffle(balls.begin(), balls.end(), rng);
        Query q{balls[0], balls[1], balls[2]};
        t.append(q, honest_answer(source, q, t.model));
      }
      for (std::uint32_t reds = 0; reds < (1u << n); ++reds) {
        Coloring c(n, reds);
        CHECK(is_consistent(c, t) == is_consistent(c.swapped(), t));
      }
    }
  }
}
