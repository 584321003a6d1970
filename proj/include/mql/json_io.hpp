#pragma once
// JSON (de)serialization for transcripts and strategy trees.
//
// Transcript schema:
//   {"model": "yn"|"pairing", "k": int, "n": int,
//    "steps": [{"query": [int, ...], "answer": "yes"|"no",
//               "witness": [int, int]?}, ...]}

#include <string>

#include "mql/core.hpp"

namespace mql {

std::string transcript_to_json(const Transcript& t, int indent = -1);

// Parses and validates; throws std::invalid_argument on malformed input.
Transcript transcript_from_json(const std::string& text);

}  // namespace mql
