#pragma once

// Hall basic commutators on r free generators, enumerated weight by weight.
// Entry ids are positions in the table; ids increase with weight, and inside
// one weight class entries are ordered lexicographically by (left id, right id).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "pgroups/ints.hpp"

namespace pgroups {

struct BasicCommutator {
  int id = -1;
  int weight = 0;
  int gen = -1;    // generator index for weight-1 entries, else -1
  int left = -1;   // component ids for composite entries
  int right = -1;
  bool is_generator() const { return gen >= 0; }
};

namespace detail {

// Moebius function by trial division.
inline int mobius(long long n) {
  int primes = 0;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      ++primes;
    }
  }
  if (n > 1) ++primes;
  return primes % 2 == 0 ? 1 : -1;
}

}  // namespace detail

// Number of basic commutators of weight w on r generators (Witt's formula).
inline long long witt_count(int r, int w) {
  if (r < 1 || w < 1) throw std::invalid_argument("witt_count: need r >= 1, w >= 1");
  Int acc = 0;
  for (long long d = 1; d <= w; ++d) {
    if (w % d != 0) continue;
    acc += detail::mobius(d) * ipow(Int(r), w / d);
  }
  if (acc % w != 0) throw std::logic_error("witt_count: sum not divisible by weight");
  return to_ll(acc / w);
}

// Number of basic commutators of weight <= i.
inline long long cumulative_count(int r, int i) {
  if (r < 1 || i < 1) throw std::invalid_argument("cumulative_count: need r >= 1, i >= 1");
  long long total = 0;
  for (int w = 1; w <= i; ++w) total += witt_count(r, w);
  return total;
}

class CommutatorTable {
 public:
  static constexpr long long kDefaultEntryCap = 100000;

  CommutatorTable(int r, int max_weight, long long entry_cap = kDefaultEntryCap)
      : rank_(r), max_weight_(max_weight) {
    if (r < 2) throw std::invalid_argument("CommutatorTable: need r >= 2");
    if (max_weight < 1) throw std::invalid_argument("CommutatorTable: need max_weight >= 1");
    if (entry_cap < 1) throw std::invalid_argument("CommutatorTable: need entry_cap >= 1");
    weight_first_.assign(max_weight + 2, 0);
    for (int g = 0; g < r; ++g) {
      BasicCommutator c;
      c.id = static_cast<int>(entries_.size());
      c.weight = 1;
      c.gen = g;
      push(c, entry_cap);
    }
    weight_first_[2] = static_cast<int>(entries_.size());
    for (int w = 2; w <= max_weight; ++w) {
      // Left component ascending, then right component ascending, gives the
      // lexicographic order within the weight class.
      for (int u = 0; u < weight_first_[w]; ++u) {
        int wv = w - entries_[u].weight;
        if (wv < 1) continue;
        for (int v = weight_first_[wv]; v < weight_first_[wv + 1]; ++v) {
          if (v >= u) break;
          if (!entries_[u].is_generator() && v < entries_[u].right) continue;
          BasicCommutator c;
          c.id = static_cast<int>(entries_.size());
          c.weight = w;
          c.left = u;
          c.right = v;
          push(c, entry_cap);
        }
      }
      weight_first_[w + 1] = static_cast<int>(entries_.size());
    }
  }

  int rank() const { return rank_; }
  int max_weight() const { return max_weight_; }
  int size() const { return static_cast<int>(entries_.size()); }
  const BasicCommutator& entry(int id) const { return entries_.at(id); }
  int weight(int id) const { return entries_.at(id).weight; }

  // First id of the given weight; one past the last via first_of_weight(w + 1).
  int first_of_weight(int w) const {
    if (w < 1) return 0;
    if (w > max_weight_) return size();
    return weight_first_[w];
  }
  int count_of_weight(int w) const { return first_of_weight(w + 1) - first_of_weight(w); }

  // Id of the basic commutator [left, right], or -1 if it is not in the table.
  int pair_id(int left, int right) const {
    auto it = pair_index_.find(key(left, right));
    return it == pair_index_.end() ? -1 : it->second;
  }

  std::string name(int id) const {
    const BasicCommutator& c = entry(id);
    if (c.is_generator()) {
      if (c.gen < 26) return std::string(1, static_cast<char>('a' + c.gen));
      return "g" + std::to_string(c.gen + 1);
    }
    return "[" + name(c.left) + "," + name(c.right) + "]";
  }

  bool operator==(const CommutatorTable& o) const {
    return rank_ == o.rank_ && max_weight_ == o.max_weight_;
  }

 private:
  static std::uint64_t key(int left, int right) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(left)) << 32) |
           static_cast<std::uint32_t>(right);
  }

  void push(const BasicCommutator& c, long long cap) {
    if (static_cast<long long>(entries_.size()) >= cap)
      throw ResourceError("commutator table exceeds entry cap " + std::to_string(cap),
                          Int(entries_.size()) + 1);
    entries_.push_back(c);
    if (!c.is_generator()) pair_index_.emplace(key(c.left, c.right), c.id);
  }

  int rank_;
  int max_weight_;
  std::vector<BasicCommutator> entries_;
  std::unordered_map<std::uint64_t, int> pair_index_;
  std::vector<int> weight_first_;
};

inline CommutatorTable basic_commutators(int r, int max_weight,
                                         long long entry_cap = CommutatorTable::kDefaultEntryCap) {
  return CommutatorTable(r, max_weight, entry_cap);
}

}  // namespace pgroups
