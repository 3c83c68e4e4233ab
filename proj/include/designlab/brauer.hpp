#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "designlab/common.hpp"

// Brauer diagram combinatorics: perfect matchings of 2t points, diagram
// concatenation with loop counting, and the permutation / non-permutation
// split. Points 1..t form the bottom (input) row, t+1..2t the top (output)
// row. Everything here is exact integer arithmetic; the loop scalar stays
// symbolic as a power.

namespace designlab::brauer {

struct Pairing {
  int t = 0;
  // Canonical storage: each pair (a, b) with a < b, pairs sorted by a.
  std::vector<std::pair<int, int>> pairs;

  bool operator==(const Pairing&) const = default;
};

struct WeightedDiagram {
  Pairing diagram;
  int loop_power = 0;
};

// Strict ordering on canonical pair lists (size, then lexicographic).
bool pairing_less(const Pairing& a, const Pairing& b);

Pairing make_pairing(int t, std::vector<std::pair<int, int>> pairs);
Pairing identity_pairing(int t);
// one_line[i] is the 0-based image of strand i.
Pairing from_permutation(const std::vector<int>& one_line);

// All (2t-1)!! matchings, permutations first (lexicographic one-line order),
// then the rest ordered by canonical pair list. 1 <= t <= 8.
std::vector<Pairing> enumerate_pairings(int t);

// Concatenation a*b (b applied first). Counts closed loops removed.
WeightedDiagram compose(const Pairing& a, const Pairing& b);

int propagating_number(const Pairing& p);
bool is_permutation(const Pairing& p);
// 0-based one-line form when the diagram is a permutation.
std::optional<std::vector<int>> to_permutation(const Pairing& p);
// Swap the two rows.
Pairing transpose(const Pairing& p);

int permutation_sign(const std::vector<int>& one_line);

struct TableViolation {
  Pairing a, b, product;
  std::string rule;
};

// Checks S*S in S, S*J in J, J*S in J, J*J in J over all diagram pairs,
// plus multiplicativity of the indicator map r1 (1 on permutations, 0
// elsewhere). t <= 5.
bool composition_table_check(int t, TableViolation* violation = nullptr);

// Text form "t; (a,b)(c,d)..." with canonical ordering; parse/to_string
// round-trip bit-exactly.
std::string to_string(const Pairing& p);
Pairing parse_pairing(std::string_view text);

}  // namespace designlab::brauer
