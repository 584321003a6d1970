#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "mql/json_io.hpp"

using namespace mql;

namespace {

Transcript sample_pairing() {
  Transcript t{Model::Pairing, 3, 6, {}};
  t.append(Query{0, 1, 2}, Answer::yes());
  t.append(Query{3, 4, 5}, Answer::no_with(3, 5));
  return t;
}

}  // namespace

TEST_CASE("transcript round-trips through JSON") {
  Transcript t = sample_pairing();
  CHECK(transcript_from_json(transcript_to_json(t)) == t);

  Transcript yn{Model::YN, 2, 4, {}};
  yn.append(Query{0, 1}, Answer::no());
  yn.append(Query{2, 3}, Answer::yes());
  CHECK(transcript_from_json(transcript_to_json(yn)) == yn);
}

TEST_CASE("emitted JSON uses the documented field names") {
  std::string text = transcript_to_json(sample_pairing());
  for (const char* needle :
       {"\"model\"", "\"pairing\"", "\"k\"", "\"n\"", "\"steps\"",
        "\"query\"", "\"answer\"", "\"witness\"", "\"yes\"", "\"no\""}) {
    CAPTURE(needle);
    CHECK(text.find(needle) != std::string::npos);
  }
}

TEST_CASE("parser accepts the documented schema literally") {
  Transcript t = transcript_from_json(R"({
    "model": "pairing", "k": 3, "n": 5,
    "steps": [
      {"query": [2, 0, 1], "answer": "no", "witness": [2, 0]},
      {"query": [2, 3, 4], "answer": "yes"}
    ]
  })");
  CHECK(t.n == 5);
  REQUIRE(t.steps.size() == 2);
  CHECK(t.steps[0].query == Query{0, 1, 2});       // normalized order
  CHECK(t.steps[0].answer == Answer::no_with(0, 2));  // normalized pair
  CHECK(t.steps[1].answer == Answer::yes());
}

TEST_CASE("malformed transcripts are rejected") {
  CHECK_THROWS_AS(transcript_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(transcript_from_json(R"({"model":"yn","k":3})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      transcript_from_json(
          R"({"model":"maybe","k":3,"n":4,"steps":[]})"),
      std::invalid_argument);
  // Witness on a YN transcript violates the shape rules.
  CHECK_THROWS_AS(
      transcript_from_json(
          R"({"model":"yn","k":3,"n":4,"steps":[
              {"query":[0,1,2],"answer":"no","witness":[0,1]}]})"),
      std::invalid_argument);
  // Witness must come from the query.
  CHECK_THROWS_AS(
      transcript_from_json(
          R"({"model":"pairing","k":3,"n":4,"steps":[
              {"query":[0,1,2],"answer":"no","witness":[0,3]}]})"),
      std::invalid_argument);
}
