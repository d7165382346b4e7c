#pragma once

// Test-only reference implementations, deliberately written without
// sharing code or layout with the library.

#include <algorithm>
#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// Textbook Wagner-Fischer over a full (n+1) x (m+1) matrix.
inline std::size_t levenshtein(const std::vector<std::string>& a,
                               const std::vector<std::string>& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1,
                                          std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
  return d[a.size()][b.size()];
}

// (S, I, D) of one alignment path.
using OpCounts = std::array<std::size_t, 3>;

// Every alignment path of a tiny pair, by exhaustive recursion. Exponential:
// keep inputs to a handful of tokens.
inline void enumerate(const std::vector<std::string>& ref,
                      const std::vector<std::string>& hyp, std::size_t i,
                      std::size_t j, OpCounts acc, std::vector<OpCounts>& out) {
  if (i == ref.size() && j == hyp.size()) {
    out.push_back(acc);
    return;
  }
  if (i < ref.size() && j < hyp.size()) {
    auto next = acc;
    if (ref[i] != hyp[j]) ++next[0];
    enumerate(ref, hyp, i + 1, j + 1, next, out);
  }
  if (j < hyp.size()) {
    auto next = acc;
    ++next[1];
    enumerate(ref, hyp, i, j + 1, next, out);
  }
  if (i < ref.size()) {
    auto next = acc;
    ++next[2];
    enumerate(ref, hyp, i + 1, j, next, out);
  }
}

struct BruteForce {
  std::size_t min_cost = 0;
  std::set<OpCounts> optimal;  // distinct (S, I, D) among cheapest paths
  std::size_t paths = 0;
};

inline BruteForce brute_force_alignments(const std::vector<std::string>& ref,
                                         const std::vector<std::string>& hyp) {
  std::vector<OpCounts> all;
  enumerate(ref, hyp, 0, 0, {0, 0, 0}, all);
  BruteForce r;
  r.paths = all.size();
  r.min_cost = static_cast<std::size_t>(-1);
  for (const auto& c : all) r.min_cost = std::min(r.min_cost, c[0] + c[1] + c[2]);
  for (const auto& c : all)
    if (c[0] + c[1] + c[2] == r.min_cost) r.optimal.insert(c);
  return r;
}

}  // namespace oracle
