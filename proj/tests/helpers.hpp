#pragma once

// Shared helpers for the test suite.  The counting and recovery routines here
// are deliberately written against definitions, not against the library's
// algorithms, so they can serve as independent cross-checks.

#include <algorithm>
#include <random>
#include <vector>

#include "pgroups/ints.hpp"

namespace testutil {

// Number of Lyndon words of length w over an alphabet of r letters: a word is
// counted when it is strictly smaller than every proper rotation.  This equals
// the number of basic commutators of weight w but is computed by brute force
// over all r^w strings.
inline long long lyndon_count(int r, int w) {
  std::vector<int> s(w, 0);
  long long count = 0;
  while (true) {
    bool lyndon = true;
    for (int k = 1; k < w && lyndon; ++k) {
      // compare s with its rotation by k
      for (int i = 0; i < w; ++i) {
        int a = s[i], b = s[(i + k) % w];
        if (a != b) {
          if (a > b) lyndon = false;
          break;
        }
        if (i == w - 1) lyndon = false;  // equal to a proper rotation
      }
    }
    if (lyndon) ++count;
    int pos = w - 1;
    while (pos >= 0 && s[pos] == r - 1) { s[pos] = 0; --pos; }
    if (pos < 0) break;
    ++s[pos];
  }
  return count;
}

// gcd of all k x k minors of a matrix, by brute force over row and column
// subsets with cofactor-expansion determinants.  Zero when every minor is zero.
inline pgroups::Int determinant(const std::vector<std::vector<pgroups::Int>>& a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  pgroups::Int det = 0, sign = 1;
  for (int c = 0; c < n; ++c) {
    std::vector<std::vector<pgroups::Int>> sub(n - 1, std::vector<pgroups::Int>(n - 1));
    for (int i = 1; i < n; ++i) {
      int jj = 0;
      for (int j = 0; j < n; ++j) {
        if (j == c) continue;
        sub[i - 1][jj++] = a[i][j];
      }
    }
    det += sign * a[0][c] * determinant(sub);
    sign = -sign;
  }
  return det;
}

inline pgroups::Int minor_gcd(const std::vector<std::vector<pgroups::Int>>& a, int k) {
  using pgroups::Int;
  const int rows = static_cast<int>(a.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  if (k > rows || k > cols) return 0;
  std::vector<int> ri(k), ci(k);
  Int g = 0;
  auto advance = [](std::vector<int>& idx, int limit) {
    int k2 = static_cast<int>(idx.size());
    int pos = k2 - 1;
    while (pos >= 0 && idx[pos] == limit - k2 + pos) --pos;
    if (pos < 0) return false;
    ++idx[pos];
    for (int i = pos + 1; i < k2; ++i) idx[i] = idx[i - 1] + 1;
    return true;
  };
  for (int i = 0; i < k; ++i) ri[i] = i;
  do {
    for (int i = 0; i < k; ++i) ci[i] = i;
    do {
      std::vector<std::vector<Int>> sub(k, std::vector<Int>(k));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub[i][j] = a[ri[i]][ci[j]];
      g = boost::multiprecision::gcd(g, determinant(sub));
    } while (advance(ci, cols));
  } while (advance(ri, rows));
  return boost::multiprecision::abs(g);
}

}  // namespace testutil
