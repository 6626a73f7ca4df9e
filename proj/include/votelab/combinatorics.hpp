#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "votelab/rational.hpp"

namespace votelab {

inline BigInt factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

/// C(n, k); zero when k is out of range.
inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i; // always divides exactly: r is C(n-k+i, i)
  }
  return r;
}

/// All k-element subsets of {0..n-1}, each ascending, in lexicographic order.
inline std::vector<std::vector<int>> subsets_of_size(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("subsets_of_size: k out of range");
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

/// All orderings of the given items, in lexicographic order of the input's
/// sorted sequence.
inline std::vector<std::vector<int>> all_orderings(std::vector<int> items) {
  std::sort(items.begin(), items.end());
  std::vector<std::vector<int>> out;
  do {
    out.push_back(items);
  } while (std::next_permutation(items.begin(), items.end()));
  return out;
}

/// SplitMix64 finalizer; used to derive independent seeds per query stream.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

} // namespace votelab
