#pragma once
// Closed-form query-count bounds for majority search, used as test oracles
// and for table output.

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace mql {

// Worst-case query bound met by the triple-query Y/N strategy, by residue
// of n mod 4: n, n-1, n+1, n respectively.
inline int triple_yn_upper_bound(int n) {
  if (n < 4) throw std::invalid_argument("triple Y/N bounds need n >= 4");
  switch (n % 4) {
    case 0: return n;
    case 1: return n - 1;
    case 2: return n + 1;
    default: return n;
  }
}

// Adversary floor for triple-query Y/N search: n-1 for even n (partition
// adversary), n-3 for odd n (even floor on n-1, minus the two queries an
// odd reduction can save).
inline int triple_yn_lower_bound(int n) {
  if (n < 4) throw std::invalid_argument("triple Y/N bounds need n >= 4");
  return n % 2 == 0 ? n - 1 : n - 3;
}

// Exact worst-case count for triple queries in the Pairing model:
// n/2 + 1 for even n, floor(n/2) for odd n.
inline int triple_pairing_exact(int n) {
  if (n < 3) throw std::invalid_argument("triple pairing bounds need n >= 3");
  return n % 2 == 0 ? n / 2 + 1 : n / 2;
}

// Exact worst-case count for pair queries (either model): n - popcount(n).
inline int pair_query_exact(int n) {
  if (n < 1) throw std::invalid_argument("pair bounds need n >= 1");
  return n - std::popcount(static_cast<unsigned>(n));
}

// Smallest n for which the game is solvable at arity k: 2k-2 in the Y/N
// model, 2k-3 in the Pairing model (never below k).
inline int yn_existence_threshold(int k) {
  if (k < 2) throw std::invalid_argument("arity must be at least 2");
  return std::max(k, 2 * k - 2);
}

inline int pairing_existence_threshold(int k) {
  if (k < 2) throw std::invalid_argument("arity must be at least 2");
  return std::max(k, 2 * k - 3);
}

}  // namespace mql
