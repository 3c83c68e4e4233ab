#include "designlab/brauer.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <numeric>

namespace designlab::brauer {

namespace {

void validate(const Pairing& p) {
  if (p.t < 1) throw validation_error("pairing size must be positive");
  if (static_cast<int>(p.pairs.size()) != p.t) {
    throw validation_error("pairing must contain exactly t pairs");
  }
  std::vector<char> seen(2 * p.t + 1, 0);
  for (auto [a, b] : p.pairs) {
    if (a < 1 || b < 1 || a > 2 * p.t || b > 2 * p.t || a >= b) {
      throw validation_error("pairing entries must satisfy 1 <= a < b <= 2t");
    }
    if (seen[a]++ || seen[b]++) throw validation_error("pairing points must be disjoint");
  }
}

void canonicalize(Pairing& p) {
  for (auto& pr : p.pairs) {
    if (pr.first > pr.second) std::swap(pr.first, pr.second);
  }
  std::sort(p.pairs.begin(), p.pairs.end());
}

void enumerate_rec(std::vector<int>& free_points, std::vector<std::pair<int, int>>& acc,
                   int t, std::vector<Pairing>& out) {
  if (free_points.empty()) {
    Pairing p{t, acc};
    canonicalize(p);
    out.push_back(std::move(p));
    return;
  }
  int a = free_points.front();
  for (std::size_t k = 1; k < free_points.size(); ++k) {
    int b = free_points[k];
    std::vector<int> rest;
    rest.reserve(free_points.size() - 2);
    for (std::size_t j = 1; j < free_points.size(); ++j) {
      if (j != k) rest.push_back(free_points[j]);
    }
    acc.emplace_back(a, b);
    enumerate_rec(rest, acc, t, out);
    acc.pop_back();
  }
}

}  // namespace

bool pairing_less(const Pairing& a, const Pairing& b) {
  if (a.t != b.t) return a.t < b.t;
  return a.pairs < b.pairs;
}

Pairing make_pairing(int t, std::vector<std::pair<int, int>> pairs) {
  Pairing p{t, std::move(pairs)};
  canonicalize(p);
  validate(p);
  return p;
}

Pairing identity_pairing(int t) {
  Pairing p;
  p.t = t;
  p.pairs.reserve(t);
  for (int i = 1; i <= t; ++i) p.pairs.emplace_back(i, t + i);
  return p;
}

Pairing from_permutation(const std::vector<int>& one_line) {
  int t = static_cast<int>(one_line.size());
  Pairing p;
  p.t = t;
  p.pairs.reserve(t);
  for (int i = 0; i < t; ++i) {
    int img = one_line[i];
    if (img < 0 || img >= t) throw validation_error("permutation image out of range");
    p.pairs.emplace_back(i + 1, t + img + 1);
  }
  canonicalize(p);
  validate(p);
  return p;
}

std::vector<Pairing> enumerate_pairings(int t) {
  if (t < 1 || t > 8) {
    throw budget_error("pairing enumeration supported for 1 <= t <= 8");
  }
  std::vector<Pairing> all;
  std::vector<int> pts(2 * t);
  std::iota(pts.begin(), pts.end(), 1);
  std::vector<std::pair<int, int>> acc;
  enumerate_rec(pts, acc, t, all);

  // Permutations first, in lexicographic one-line order.
  std::vector<Pairing> perms, rest;
  for (auto& p : all) {
    (is_permutation(p) ? perms : rest).push_back(std::move(p));
  }
  std::sort(perms.begin(), perms.end(), [](const Pairing& a, const Pairing& b) {
    return *to_permutation(a) < *to_permutation(b);
  });
  std::sort(rest.begin(), rest.end(), pairing_less);
  perms.insert(perms.end(), std::make_move_iterator(rest.begin()),
               std::make_move_iterator(rest.end()));
  return perms;
}

WeightedDiagram compose(const Pairing& a, const Pairing& b) {
  validate(a);
  validate(b);
  if (a.t != b.t) throw validation_error("composed diagrams must have equal size");
  const int t = a.t;

  // Point layout of the concatenation (b below, a on top):
  //   0 .. t-1     result bottom  = b's bottom
  //   t .. 2t-1    interface      = b's top glued to a's bottom
  //   2t .. 3t-1   result top     = a's top
  std::vector<std::array<int, 2>> adj(3 * t, {-1, -1});
  auto add_edge = [&](int u, int v) {
    adj[u][adj[u][0] < 0 ? 0 : 1] = v;
    adj[v][adj[v][0] < 0 ? 0 : 1] = u;
  };
  for (auto [x, y] : b.pairs) add_edge(x - 1, y - 1);
  for (auto [x, y] : a.pairs) add_edge(x - 1 + t, y - 1 + t);

  std::vector<char> used(3 * t, 0);
  auto walk = [&](int start) {
    int prev = -1, cur = start;
    used[cur] = 1;
    while (true) {
      int nxt = (adj[cur][0] != prev) ? adj[cur][0] : adj[cur][1];
      if (nxt < 0) return cur;
      prev = cur;
      cur = nxt;
      used[cur] = 1;
      if (cur < t || cur >= 2 * t) return cur;
    }
  };

  Pairing result;
  result.t = t;
  auto label = [&](int pt) { return pt < t ? pt + 1 : pt - 2 * t + t + 1; };
  for (int s = 0; s < 3 * t; ++s) {
    if (used[s] || (s >= t && s < 2 * t)) continue;
    int e = walk(s);
    result.pairs.emplace_back(label(s), label(e));
  }

  int loops = 0;
  for (int s = t; s < 2 * t; ++s) {
    if (used[s]) continue;
    ++loops;
    int prev = -1, cur = s;
    while (!used[cur]) {
      used[cur] = 1;
      int nxt = (adj[cur][0] != prev) ? adj[cur][0] : adj[cur][1];
      prev = cur;
      cur = nxt;
    }
  }

  canonicalize(result);
  return {std::move(result), loops};
}

int propagating_number(const Pairing& p) {
  validate(p);
  int n = 0;
  for (auto [a, b] : p.pairs) {
    if (a <= p.t && b > p.t) ++n;
  }
  return n;
}

bool is_permutation(const Pairing& p) { return propagating_number(p) == p.t; }

std::optional<std::vector<int>> to_permutation(const Pairing& p) {
  if (!is_permutation(p)) return std::nullopt;
  std::vector<int> one_line(p.t);
  for (auto [a, b] : p.pairs) one_line[a - 1] = b - p.t - 1;
  return one_line;
}

Pairing transpose(const Pairing& p) {
  validate(p);
  Pairing q;
  q.t = p.t;
  q.pairs.reserve(p.t);
  auto flip = [&](int x) { return x <= p.t ? x + p.t : x - p.t; };
  for (auto [a, b] : p.pairs) q.pairs.emplace_back(flip(a), flip(b));
  canonicalize(q);
  return q;
}

int permutation_sign(const std::vector<int>& one_line) {
  std::vector<char> seen(one_line.size(), 0);
  int sign = 1;
  for (std::size_t i = 0; i < one_line.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0, j = i;
    while (!seen[j]) {
      seen[j] = 1;
      j = static_cast<std::size_t>(one_line[j]);
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

bool composition_table_check(int t, TableViolation* violation) {
  if (t < 1 || t > 5) throw budget_error("composition table check supported for t <= 5");
  auto all = enumerate_pairings(t);
  auto r1 = [](const Pairing& p) { return is_permutation(p) ? 1 : 0; };
  for (const auto& a : all) {
    for (const auto& b : all) {
      auto prod = compose(a, b);
      int lhs = r1(prod.diagram);
      int rhs = r1(a) * r1(b);
      if (lhs != rhs) {
        if (violation) {
          *violation = {a, b, prod.diagram,
                        rhs ? "S*S left the permutation set" : "J product entered S"};
        }
        return false;
      }
    }
  }
  return true;
}

std::string to_string(const Pairing& p) {
  std::string s = std::to_string(p.t) + ";";
  for (auto [a, b] : p.pairs) {
    s += " (" + std::to_string(a) + "," + std::to_string(b) + ")";
  }
  return s;
}

Pairing parse_pairing(std::string_view text) {
  auto fail = [] { throw validation_error("malformed pairing text"); };
  auto skip_ws = [&](std::size_t& i) {
    while (i < text.size() && text[i] == ' ') ++i;
  };
  auto read_int = [&](std::size_t& i) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    if (ec != std::errc()) fail();
    i = static_cast<std::size_t>(ptr - text.data());
    return value;
  };

  std::size_t i = 0;
  skip_ws(i);
  int t = read_int(i);
  if (i >= text.size() || text[i] != ';') fail();
  ++i;
  std::vector<std::pair<int, int>> pairs;
  while (true) {
    skip_ws(i);
    if (i == text.size()) break;
    if (text[i] != '(') fail();
    ++i;
    int a = read_int(i);
    if (i >= text.size() || text[i] != ',') fail();
    ++i;
    int b = read_int(i);
    if (i >= text.size() || text[i] != ')') fail();
    ++i;
    pairs.emplace_back(a, b);
  }
  return make_pairing(t, std::move(pairs));
}

}  // namespace designlab::brauer
