#pragma once

// Ratcliff/Obershelp ("Gestalt") pattern matching over token sequences.
//
//   r = 2K / (|a| + |b|)
//
// K is found by taking a longest common contiguous block, then recursing on
// the pieces left of it and right of it. When several blocks share the
// maximal length the one starting earliest in `a` wins, then earliest in `b`.
// Both-empty input scores 0.

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "necorr/nea_format.hpp"
#include "necorr/rational.hpp"

namespace necorr {

struct SimilarityScore {
  std::size_t matched = 0;       // K
  std::size_t total_length = 0;  // |a| + |b|

  /// Exact 2K / (|a| + |b|), unreduced; 0/1 when both inputs are empty.
  Rational ratio() const {
    return total_length == 0 ? Rational(0, 1)
                             : Rational(2 * matched, total_length);
  }
  double value() const { return ratio().to_double(); }

  friend bool operator==(const SimilarityScore&,
                         const SimilarityScore&) = default;
};

/// Oracle input cap on |a| + |b|.
inline constexpr std::size_t kOracleMaxTotalLength = 24;

namespace detail {

struct Block {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t size = 0;
};

// Longest common block of a[alo,ahi) and b[blo,bhi) by the usual
// "length of common suffix ending here" table, two rows at a time.
// Scanning i then j ascending and replacing only on strictly longer blocks
// yields the earliest start in `a`, then in `b`, among maximal blocks.
template <class T>
Block longest_block(std::span<const T> a, std::span<const T> b,
                    std::size_t alo, std::size_t ahi, std::size_t blo,
                    std::size_t bhi, std::vector<std::size_t>& prev,
                    std::vector<std::size_t>& cur) {
  Block best{alo, blo, 0};
  const std::size_t width = bhi - blo;
  std::fill(prev.begin(), prev.begin() + width + 1, 0);
  for (std::size_t i = alo; i < ahi; ++i) {
    cur[0] = 0;
    for (std::size_t j = blo; j < bhi; ++j) {
      const std::size_t col = j - blo + 1;
      if (a[i] == b[j]) {
        const std::size_t len = prev[col - 1] + 1;
        cur[col] = len;
        if (len > best.size) best = {i + 1 - len, j + 1 - len, len};
      } else {
        cur[col] = 0;
      }
    }
    std::swap(prev, cur);
  }
  return best;
}

}  // namespace detail

/// Matched count K, iterative over an explicit range stack.
template <class T>
std::size_t gestalt_matched(std::span<const T> a, std::span<const T> b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::vector<std::array<std::size_t, 4>> pending{{0, a.size(), 0, b.size()}};
  std::size_t matched = 0;
  while (!pending.empty()) {
    auto [alo, ahi, blo, bhi] = pending.back();
    pending.pop_back();
    if (alo >= ahi || blo >= bhi) continue;
    auto block = detail::longest_block(a, b, alo, ahi, blo, bhi, prev, cur);
    if (block.size == 0) continue;
    matched += block.size;
    pending.push_back({alo, block.a, blo, block.b});
    pending.push_back({block.a + block.size, ahi, block.b + block.size, bhi});
  }
  return matched;
}

template <class T>
SimilarityScore gestalt_similarity(std::span<const T> a, std::span<const T> b) {
  return {gestalt_matched(a, b), a.size() + b.size()};
}

inline SimilarityScore gestalt_similarity(const TokenSeq& a, const TokenSeq& b) {
  return gestalt_similarity(std::span<const Token>(a), std::span<const Token>(b));
}

namespace detail {

// Every (i, j) start pair together with its maximal common run length.
template <class T>
std::size_t naive_matched(std::span<const T> a, std::span<const T> b) {
  std::vector<Block> candidates;
  std::size_t longest = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::size_t len = 0;
      while (i + len < a.size() && j + len < b.size() &&
             a[i + len] == b[j + len])
        ++len;
      if (len == 0) continue;
      candidates.push_back({i, j, len});
      longest = std::max(longest, len);
    }
  }
  if (longest == 0) return 0;

  const Block* chosen = nullptr;
  for (const auto& c : candidates) {
    if (c.size != longest) continue;
    if (!chosen || c.a < chosen->a || (c.a == chosen->a && c.b < chosen->b))
      chosen = &c;
  }
  return longest +
         naive_matched(a.first(chosen->a), b.first(chosen->b)) +
         naive_matched(a.subspan(chosen->a + longest),
                       b.subspan(chosen->b + longest));
}

[[noreturn]] void throw_oracle_size(std::size_t total);

}  // namespace detail

/// Reference implementation by plain recursion over all candidate blocks.
/// Exponential-safe only for short inputs; throws SizeLimitExceeded when
/// |a| + |b| > kOracleMaxTotalLength.
template <class T>
SimilarityScore oracle_similarity(std::span<const T> a, std::span<const T> b) {
  const std::size_t total = a.size() + b.size();
  if (total > kOracleMaxTotalLength) detail::throw_oracle_size(total);
  return {detail::naive_matched(a, b), total};
}

inline SimilarityScore oracle_similarity(const TokenSeq& a, const TokenSeq& b) {
  return oracle_similarity(std::span<const Token>(a), std::span<const Token>(b));
}

}  // namespace necorr
