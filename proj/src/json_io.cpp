#include "mql/json_io.hpp"

#include "json.hpp"

namespace mql {

using nlohmann::json;

std::string transcript_to_json(const Transcript& t, int indent) {
  json steps = json::array();
  for (const Step& s : t.steps) {
    json step;
    step["query"] = s.query.balls();
    step["answer"] = s.answer.kind == AnswerKind::Yes ? "yes" : "no";
    if (s.answer.witness) {
      step["witness"] =
          json::array({s.answer.witness->first, s.answer.witness->second});
    }
    steps.push_back(std::move(step));
  }
  json out{{"model", to_string(t.model)},
           {"k", t.k},
           {"n", t.n},
           {"steps", std::move(steps)}};
  return out.dump(indent);
}

Transcript transcript_from_json(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("bad transcript JSON: ") +
                                e.what());
  }
  try {
    Transcript t;
    t.model = model_from_string(in.at("model").get<std::string>());
    t.k = in.at("k").get<int>();
    t.n = in.at("n").get<int>();
    for (const json& step : in.at("steps")) {
      Query q(step.at("query").get<std::vector<BallId>>());
      std::string kind = step.at("answer").get<std::string>();
      if (kind != "yes" && kind != "no") {
        throw std::invalid_argument("answer must be yes|no, got '" + kind +
                                    "'");
      }
      Answer a = kind == "yes" ? Answer::yes() : Answer::no();
      if (step.contains("witness")) {
        auto w = step.at("witness").get<std::vector<BallId>>();
        if (w.size() != 2) {
          throw std::invalid_argument("witness must name exactly two balls");
        }
        a = Answer::no_with(w[0], w[1]);
        if (kind == "yes") {
          throw std::invalid_argument("yes answers carry no witness");
        }
      }
      t.append(std::move(q), a);
    }
    t.validate();
    return t;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad transcript JSON: ") +
                                e.what());
  }
}

}  // namespace mql
