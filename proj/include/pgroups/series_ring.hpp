#pragma once

// Truncated integer power-series ring in r noncommuting variables, with all
// monomials of degree > degree() discarded.  Dense representation: monomials
// of length L are ranked by their base-r digit string, first letter most
// significant, and stored after all shorter monomials.

#include <stdexcept>
#include <vector>

#include "pgroups/ints.hpp"

namespace pgroups {

class TruncatedSeries {
 public:
  TruncatedSeries(int rank, int degree) : rank_(rank), degree_(degree) {
    if (rank < 1) throw std::invalid_argument("TruncatedSeries: need rank >= 1");
    if (degree < 0) throw std::invalid_argument("TruncatedSeries: need degree >= 0");
    offsets_.assign(degree + 2, 0);
    for (int l = 0; l <= degree; ++l)
      offsets_[l + 1] = offsets_[l] + ipow_ll(rank, l);
    c_.assign(offsets_[degree + 1], Int(0));
  }

  static TruncatedSeries one(int rank, int degree) {
    TruncatedSeries s(rank, degree);
    s.c_[0] = 1;
    return s;
  }

  // 1 + x_g
  static TruncatedSeries generator(int rank, int degree, int g) {
    TruncatedSeries s = one(rank, degree);
    if (g < 0 || g >= rank) throw std::invalid_argument("TruncatedSeries: bad generator");
    if (degree >= 1) s.c_[s.offsets_[1] + g] = 1;
    return s;
  }

  int rank() const { return rank_; }
  int degree() const { return degree_; }

  const Int& coefficient(const std::vector<int>& word) const {
    return c_.at(index_of(word));
  }

  template <typename Fn>  // Fn(const std::vector<int>& word, const Int& coeff)
  void for_each_nonzero(Fn fn) const {
    std::vector<int> word;
    for (int l = 0; l <= degree_; ++l) {
      word.assign(l, 0);
      for (long long v = 0; v < ipow_ll(rank_, l); ++v) {
        long long t = v;
        for (int i = l - 1; i >= 0; --i) { word[i] = static_cast<int>(t % rank_); t /= rank_; }
        const Int& cf = c_[offsets_[l] + v];
        if (cf != 0) fn(word, cf);
      }
    }
  }

  TruncatedSeries operator*(const TruncatedSeries& o) const {
    check_compatible(o);
    TruncatedSeries res(rank_, degree_);
    for (int la = 0; la <= degree_; ++la) {
      long long na = ipow_ll(rank_, la);
      for (int lb = 0; lb + la <= degree_; ++lb) {
        long long nb = ipow_ll(rank_, lb);
        long long base = offsets_[la + lb];
        for (long long va = 0; va < na; ++va) {
          const Int& ca = c_[offsets_[la] + va];
          if (ca == 0) continue;
          long long shifted = va * nb;
          for (long long vb = 0; vb < nb; ++vb) {
            const Int& cb = o.c_[o.offsets_[lb] + vb];
            if (cb == 0) continue;
            res.c_[base + shifted + vb] += ca * cb;
          }
        }
      }
    }
    return res;
  }

  TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

  // Inverse of a series with constant term 1: sum of powers of the nilpotent part.
  TruncatedSeries inverse() const {
    if (c_[0] != 1) throw std::invalid_argument("TruncatedSeries::inverse: constant term must be 1");
    TruncatedSeries n = *this;
    n.c_[0] = 0;
    TruncatedSeries inv = one(rank_, degree_);
    for (int k = 0; k < degree_; ++k) {
      TruncatedSeries t = n * inv;
      inv = one(rank_, degree_);
      for (std::size_t i = 0; i < inv.c_.size(); ++i) inv.c_[i] -= t.c_[i];
    }
    return inv;
  }

  TruncatedSeries pow(Int e) const {
    if (e < 0) return inverse().pow(-e);
    TruncatedSeries acc = one(rank_, degree_);
    TruncatedSeries base = *this;
    while (e > 0) {
      if ((e & 1) != 0) acc *= base;
      e >>= 1;
      if (e > 0) base *= base;
    }
    return acc;
  }

  bool operator==(const TruncatedSeries& o) const {
    return rank_ == o.rank_ && degree_ == o.degree_ && c_ == o.c_;
  }
  bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

 private:
  void check_compatible(const TruncatedSeries& o) const {
    if (rank_ != o.rank_ || degree_ != o.degree_)
      throw std::invalid_argument("TruncatedSeries: mixed rings");
  }

  long long index_of(const std::vector<int>& word) const {
    int l = static_cast<int>(word.size());
    if (l > degree_) throw std::out_of_range("TruncatedSeries: monomial too long");
    long long v = 0;
    for (int g : word) {
      if (g < 0 || g >= rank_) throw std::out_of_range("TruncatedSeries: bad letter");
      v = v * rank_ + g;
    }
    return offsets_[l] + v;
  }

  int rank_;
  int degree_;
  std::vector<long long> offsets_;
  std::vector<Int> c_;
};

}  // namespace pgroups
