#pragma once

// Free p-central groups of finite rank and class.  Elements are exponent
// vectors over the basic-commutator basis with coordinate moduli q^{n+1-w}
// (q = 4 for p = 2, q = p otherwise, w the commutator weight).  Products are
// computed exactly: lift both factors to the free nilpotent group of class n,
// collect, and reduce each coordinate by its modulus.  Small schemes can be
// enumerated into an explicit CayleyGroup, whose construction re-validates
// associativity of the reduced arithmetic.

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pgroups/cayley.hpp"
#include "pgroups/collection.hpp"
#include "pgroups/ints.hpp"

namespace pgroups {

struct FpcScheme {
  long long p = 0;
  int r = 0;
  int n = 0;
  long long q = 0;          // 4 when p = 2, p otherwise
  TablePtr table;           // basic commutators up to weight n
  std::vector<Int> moduli;  // per commutator id: q^{n+1-weight}

  Int order() const {
    Int o = 1;
    for (const Int& m : moduli) o *= m;
    return o;
  }
  Int exponent() const { return ipow(Int(q), n); }
  std::string name() const {
    return "fpc(" + std::to_string(p) + "," + std::to_string(r) + "," + std::to_string(n) + ")";
  }

  bool operator==(const FpcScheme& o) const { return p == o.p && r == o.r && n == o.n; }
  bool operator!=(const FpcScheme& o) const { return !(*this == o); }
};

using SchemePtr = std::shared_ptr<const FpcScheme>;

inline SchemePtr construct_free_pcentral(long long p, int r, int n,
                                         long long entry_cap = CommutatorTable::kDefaultEntryCap) {
  if (!is_prime(p)) throw std::invalid_argument("construct_free_pcentral: p must be prime");
  if (r < 1) throw std::invalid_argument("construct_free_pcentral: rank must be >= 1");
  if (n < 1) throw std::invalid_argument("construct_free_pcentral: class must be >= 1");
  FpcScheme s;
  s.p = p;
  s.r = r;
  s.n = n;
  s.q = p == 2 ? 4 : p;
  s.table = make_table(r, n, entry_cap);
  s.moduli.reserve(s.table->size());
  for (int id = 0; id < s.table->size(); ++id)
    s.moduli.push_back(ipow(Int(s.q), n + 1 - s.table->weight(id)));
  return std::make_shared<const FpcScheme>(std::move(s));
}

class FpcElement {
 public:
  explicit FpcElement(SchemePtr s) : s_(std::move(s)), e_(s_->table->size(), Int(0)) {}

  static FpcElement generator(SchemePtr s, int g) {
    FpcElement x(std::move(s));
    if (g < 0 || g >= x.s_->r) throw std::invalid_argument("FpcElement: bad generator index");
    x.e_[g] = 1;
    return x;
  }

  static FpcElement from_exponents(SchemePtr s, std::vector<Int> exps) {
    FpcElement x(std::move(s));
    if (exps.size() != x.e_.size())
      throw std::invalid_argument("FpcElement: exponent vector has wrong length");
    x.e_ = std::move(exps);
    x.reduce();
    return x;
  }

  const FpcScheme& scheme() const { return *s_; }
  const SchemePtr& scheme_ptr() const { return s_; }
  const std::vector<Int>& exponents() const { return e_; }
  const Int& exponent(int id) const { return e_.at(id); }

  bool is_identity() const {
    for (const Int& x : e_)
      if (x != 0) return false;
    return true;
  }

  std::string str() const { return lift().str(); }

  NormalForm lift() const { return NormalForm::from_exponents(s_->table, e_); }

  bool operator==(const FpcElement& o) const { return *s_ == *o.s_ && e_ == o.e_; }
  bool operator!=(const FpcElement& o) const { return !(*this == o); }

  friend FpcElement fpc_multiply(const FpcElement& a, const FpcElement& b) {
    if (*a.s_ != *b.s_) throw std::invalid_argument("fpc_multiply: mixed schemes");
    return a.from_collected(a.lift() * b.lift());
  }

  friend FpcElement fpc_inverse(const FpcElement& a) { return a.from_collected(inverse(a.lift())); }

  friend FpcElement fpc_power(const FpcElement& a, const Int& m) {
    return a.from_collected(pow(a.lift(), m));
  }

 private:
  FpcElement from_collected(const NormalForm& u) const {
    FpcElement x(s_);
    x.e_ = u.exponents();
    x.reduce();
    return x;
  }

  void reduce() {
    for (std::size_t i = 0; i < e_.size(); ++i) {
      e_[i] %= s_->moduli[i];
      if (e_[i] < 0) e_[i] += s_->moduli[i];
    }
  }

  SchemePtr s_;
  std::vector<Int> e_;
};

// (group order, group exponent) of the scheme.
inline std::pair<Int, Int> fpc_order_exponent(const FpcScheme& s) {
  return {s.order(), s.exponent()};
}

// Full multiplication table.  Element index is the mixed-radix encoding of the
// exponent vector with the first basic commutator most significant; the
// identity is index 0.
inline CayleyGroup fpc_enumerate(const SchemePtr& s, long long cap = 65536) {
  Int order = s->order();
  if (order > cap)
    throw ResourceError("fpc_enumerate: group order exceeds the enumeration cap", order);
  int nn = static_cast<int>(to_ll(order));
  int k = s->table->size();
  std::vector<long long> mod(k), place(k);
  long long pl = 1;
  for (int i = k - 1; i >= 0; --i) {
    mod[i] = to_ll(s->moduli[i]);
    place[i] = pl;
    pl *= mod[i];
  }

  std::vector<NormalForm> lift;
  lift.reserve(nn);
  for (int idx = 0; idx < nn; ++idx) {
    std::vector<Int> e(k);
    for (int i = 0; i < k; ++i) e[i] = idx / place[i] % mod[i];
    lift.push_back(NormalForm::from_exponents(s->table, std::move(e)));
  }

  std::vector<int> t(static_cast<std::size_t>(nn) * nn);
  for (int a = 0; a < nn; ++a)
    for (int b = 0; b < nn; ++b) {
      NormalForm prod = lift[a] * lift[b];
      long long idx = 0;
      for (int i = 0; i < k; ++i) {
        Int e = prod.exponent(i) % mod[i];
        if (e < 0) e += mod[i];
        idx += to_ll(e) * place[i];
      }
      t[static_cast<std::size_t>(a) * nn + b] = static_cast<int>(idx);
    }
  return CayleyGroup(nn, std::move(t), s->name());
}

}  // namespace pgroups
