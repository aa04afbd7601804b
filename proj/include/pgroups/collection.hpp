#pragma once

// Normal forms in the free nilpotent group of class c on r generators, written
// over the basic-commutator table, and the collection procedure that computes
// them.  Collection works from the left: the lowest uncollected table id is
// moved to the front one neighbour at a time, and each swap A B -> B A [A,B]
// spends a commutator word of strictly larger weight.  Words of weight beyond
// the class are discarded, which is exactly the defining quotient.
//
// Every commutator word handed back by comm_runs is itself in collected form,
// so its letters sit in weight classes >= weight(u) + weight(v) and therefore
// carry ids strictly above both arguments.  That invariant is what makes both
// the swap loop and the mutual recursion below terminate: each nested
// commutator strictly raises the minimum weight, which is capped by the class.

#include <cstdint>
#include <list>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "pgroups/commutators.hpp"
#include "pgroups/series_ring.hpp"

namespace pgroups {

namespace detail {

struct Run {
  int id;
  Int exp;
};
using Word = std::vector<Run>;

inline void append_run(Word& w, int id, Int exp) {
  if (exp == 0) return;
  if (!w.empty() && w.back().id == id) {
    w.back().exp += exp;
    if (w.back().exp == 0) w.pop_back();
    return;
  }
  w.push_back(Run{id, std::move(exp)});
}

inline void append_word(Word& w, const Word& tail) {
  for (const Run& r : tail) append_run(w, r.id, r.exp);
}

inline Word inverse_word(const Word& w) {
  Word res;
  res.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) append_run(res, it->id, -it->exp);
  return res;
}

struct CommKey {
  int rank, cls, u, v;
  long long e, f;
  bool operator==(const CommKey& o) const {
    return rank == o.rank && cls == o.cls && u == o.u && v == o.v && e == o.e && f == o.f;
  }
};

struct CommKeyHash {
  std::size_t operator()(const CommKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix(k.rank);
    mix(k.cls);
    mix(k.u);
    mix(k.v);
    mix(static_cast<std::uint64_t>(k.e));
    mix(static_cast<std::uint64_t>(k.f));
    return static_cast<std::size_t>(h);
  }
};

// Collection engine bound to one table.
class Collector {
 public:
  explicit Collector(const CommutatorTable& t) : t_(t), cls_(t.max_weight()) {}

  // Exponent vector of the collected word.
  std::vector<Int> collect(std::list<Run> w) const {
    std::vector<Int> out(t_.size(), Int(0));
    for (int t = 0; t < t_.size(); ++t) {
      while (true) {
        auto it = w.begin();
        while (it != w.end() && it->id != t) ++it;
        if (it == w.end()) break;
        while (it != w.begin()) {
          auto prev = std::prev(it);
          if (prev->id == t) {  // only possible via exponent cancellation corner cases
            prev->exp += it->exp;
            w.erase(it);
            it = prev;
            continue;
          }
          Word k = comm_runs(prev->id, prev->exp, t, it->exp);
          std::swap(*prev, *it);
          auto pos = std::next(it);
          for (const Run& r : k) w.insert(pos, r);
          it = prev;
        }
        out[t] += it->exp;
        w.erase(it);
      }
    }
    if (!w.empty()) throw std::logic_error("collection: uncollected letters remain");
    return out;
  }

  // Collected word equal to [c_u^e, c_v^f] modulo weight > class; its letters
  // all have weight >= weight(u) + weight(v).
  Word comm_runs(int u, const Int& e, int v, const Int& f) const {
    if (e == 0 || f == 0 || u == v) return {};
    if (t_.weight(u) + t_.weight(v) > cls_) return {};

    DepthGuard guard(depth_);
    bool memoable = fits_ll(e) && fits_ll(f);
    CommKey key{};
    if (memoable) {
      key = CommKey{t_.rank(), cls_, u, v, e.convert_to<long long>(), f.convert_to<long long>()};
      auto& cache = comm_cache();
      auto it = cache.find(key);
      if (it != cache.end()) return it->second;
    }

    Word res;
    if (e < 0) {
      // [C^-1, B] = [C,B]^-1 [[C,B]^-1, C^-1]
      Word k = comm_runs(u, -e, v, f);
      Word kinv = inverse_word(k);
      res = kinv;
      append_word(res, comm_words(kinv, Word{Run{u, e}}));
    } else if (f < 0) {
      // [A, C^-1] = [A,C]^-1 [[A,C]^-1, C^-1]
      Word k = comm_runs(u, e, v, -f);
      Word kinv = inverse_word(k);
      res = kinv;
      append_word(res, comm_words(kinv, Word{Run{v, f}}));
    } else if (e == 1 && f == 1) {
      res = comm_single(u, v);
    } else if (e > 1) {
      // [A^e1 A^e2, B] = [A^e1,B]^(A^e2) [A^e2,B]
      Int e2 = e > 8 ? e / 2 : Int(1);
      Int e1 = e - e2;
      res = conj_word(comm_runs(u, e1, v, f), Word{Run{u, e2}});
      append_word(res, comm_runs(u, e2, v, f));
    } else {
      // [A, B^f1 B^f2] = [A, B^f2] [A,B^f1]^(B^f2)
      Int f2 = f > 8 ? f / 2 : Int(1);
      Int f1 = f - f2;
      res = comm_runs(u, e, v, f2);
      append_word(res, conj_word(comm_runs(u, e, v, f1), Word{Run{v, f2}}));
    }
    res = normalized(std::move(res), t_.weight(u) + t_.weight(v));

    if (memoable) {
      auto& cache = comm_cache();
      if (cache.size() > 1u << 20) cache.clear();
      cache.emplace(key, res);
    }
    return res;
  }

  // Word equal to [A, B] modulo weight > class, for arbitrary words A, B.
  Word comm_words(const Word& a, const Word& b) const {
    if (a.empty() || b.empty()) return {};
    if (min_weight(a) + min_weight(b) > cls_) return {};
    if (a.size() == 1 && b.size() == 1) return comm_runs(a[0].id, a[0].exp, b[0].id, b[0].exp);
    if (a.size() > 1) {
      // [x A', B] = [x,B]^(A') [A',B]
      Word x{a[0]};
      Word rest(a.begin() + 1, a.end());
      Word res = conj_word(comm_words(x, b), rest);
      append_word(res, comm_words(rest, b));
      return res;
    }
    // [A, y B'] = [A,B'] [A,y]^(B')
    Word y{b[0]};
    Word rest(b.begin() + 1, b.end());
    Word res = comm_words(a, rest);
    append_word(res, conj_word(comm_words(a, y), rest));
    return res;
  }

  // Word equal to A^C = C^-1 A C, letterwise via x^C = x [x, C].
  Word conj_word(const Word& a, const Word& c) const {
    Word res;
    for (const Run& x : a) {
      append_run(res, x.id, x.exp);
      append_word(res, comm_words(Word{x}, c));
    }
    return res;
  }

 private:
  // Recollects a commutator word into ascending normal form.  The element lies
  // in the weight->=min_wt part of the lower central series, so exponents on
  // lighter letters must cancel; anything else is an internal error.
  Word normalized(Word w, int min_wt) const {
    if (w.size() <= 1) return w;
    std::vector<Int> e = collect(std::list<Run>(w.begin(), w.end()));
    Word res;
    for (int id = 0; id < t_.size(); ++id) {
      if (e[id] == 0) continue;
      if (t_.weight(id) < min_wt)
        throw std::logic_error("collection: commutator word escaped its weight class");
      res.push_back(Run{id, std::move(e[id])});
    }
    return res;
  }

  // [c_u, c_v] for single letters, any id order.
  Word comm_single(int u, int v) const {
    if (u == v) return {};
    if (t_.weight(u) + t_.weight(v) > cls_) return {};
    if (u < v) return inverse_word(comm_single(v, u));
    int pid = t_.pair_id(u, v);
    if (pid >= 0) return Word{Run{pid, Int(1)}};
    // Not a basic pair: expand the left entry by its defining word and recurse.
    const BasicCommutator& cu = t_.entry(u);
    Word w{Run{cu.left, Int(-1)}, Run{cu.right, Int(-1)}, Run{cu.left, Int(1)},
           Run{cu.right, Int(1)}};
    return comm_words(w, Word{Run{v, Int(1)}});
  }

  int min_weight(const Word& w) const {
    int m = cls_ + 1;
    for (const Run& r : w) m = std::min(m, t_.weight(r.id));
    return m;
  }

  static bool fits_ll(const Int& v) {
    static const Int lim = Int(1) << 62;
    return v < lim && v > -lim;
  }

  // Insurance against a runaway recursion; legitimate depth stays within a
  // small multiple of the class plus the bit length of the exponents.
  struct DepthGuard {
    int& d;
    explicit DepthGuard(int& depth) : d(depth) {
      if (++d > kMaxDepth) {
        --d;
        throw ResourceError("collection recursion depth exceeded", Int(kMaxDepth));
      }
    }
    ~DepthGuard() { --d; }
  };
  static constexpr int kMaxDepth = 2000;

  using Cache = std::unordered_map<CommKey, Word, CommKeyHash>;
  static Cache& comm_cache() {
    thread_local Cache cache;
    return cache;
  }

  const CommutatorTable& t_;
  int cls_;
  mutable int depth_ = 0;
};

}  // namespace detail

using TablePtr = std::shared_ptr<const CommutatorTable>;

inline TablePtr make_table(int r, int max_weight,
                           long long entry_cap = CommutatorTable::kDefaultEntryCap) {
  return std::make_shared<const CommutatorTable>(r, max_weight, entry_cap);
}

// Element of the free nilpotent group of class table->max_weight() on
// table->rank() generators, stored as the exponent vector of its unique
// ascending product of basic commutators.
class NormalForm {
 public:
  explicit NormalForm(TablePtr table)
      : t_(std::move(table)), e_(t_->size(), Int(0)) {}

  static NormalForm generator(TablePtr table, int g) {
    NormalForm u(std::move(table));
    if (g < 0 || g >= u.t_->rank()) throw std::invalid_argument("NormalForm: bad generator index");
    u.e_[g] = 1;
    return u;
  }

  static NormalForm from_exponents(TablePtr table, std::vector<Int> exps) {
    NormalForm u(std::move(table));
    if (exps.size() != u.e_.size())
      throw std::invalid_argument("NormalForm: exponent vector has wrong length");
    u.e_ = std::move(exps);
    return u;
  }

  const CommutatorTable& table() const { return *t_; }
  const TablePtr& table_ptr() const { return t_; }
  const std::vector<Int>& exponents() const { return e_; }
  const Int& exponent(int id) const { return e_.at(id); }

  bool is_identity() const {
    for (const Int& x : e_)
      if (x != 0) return false;
    return true;
  }

  bool operator==(const NormalForm& o) const { return *t_ == *o.t_ && e_ == o.e_; }
  bool operator!=(const NormalForm& o) const { return !(*this == o); }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < t_->size(); ++i) {
      if (e_[i] == 0) continue;
      if (!first) os << " ";
      first = false;
      os << t_->name(i);
      if (e_[i] != 1) os << "^" << e_[i].str();
    }
    return first ? "1" : os.str();
  }

  friend NormalForm operator*(const NormalForm& a, const NormalForm& b) {
    a.check_same(b);
    std::list<detail::Run> w;
    a.push_runs(w);
    b.push_runs(w);
    return from_exponents(a.t_, detail::Collector(*a.t_).collect(std::move(w)));
  }

  friend NormalForm inverse(const NormalForm& a) {
    std::list<detail::Run> w;
    for (int i = a.t_->size() - 1; i >= 0; --i)
      if (a.e_[i] != 0) w.push_back(detail::Run{i, -a.e_[i]});
    return from_exponents(a.t_, detail::Collector(*a.t_).collect(std::move(w)));
  }

 private:
  void check_same(const NormalForm& o) const {
    if (!(*t_ == *o.t_)) throw std::invalid_argument("NormalForm: mixed tables");
  }

  void push_runs(std::list<detail::Run>& w) const {
    for (int i = 0; i < t_->size(); ++i)
      if (e_[i] != 0) w.push_back(detail::Run{i, e_[i]});
  }

  TablePtr t_;
  std::vector<Int> e_;
};

inline NormalForm pow(const NormalForm& u, Int m) {
  if (m < 0) return pow(inverse(u), -m);
  NormalForm acc(u.table_ptr());
  NormalForm base = u;
  while (m > 0) {
    if ((m & 1) != 0) acc = acc * base;
    m >>= 1;
    if (m > 0) base = base * base;
  }
  return acc;
}

inline NormalForm commutator(const NormalForm& u, const NormalForm& v) {
  return inverse(u) * inverse(v) * u * v;
}

// Image of u under g_i -> 1 + x_i in the truncated series ring.  Computed from
// the table structure and series arithmetic only; collection is never invoked,
// so this is an independent check on the collection path.
inline TruncatedSeries magnus_image(const NormalForm& u) {
  const CommutatorTable& t = u.table();
  int r = t.rank(), deg = t.max_weight();

  thread_local std::unordered_map<long long, std::vector<TruncatedSeries>> cache;
  long long key = static_cast<long long>(r) * 64 + deg;
  auto it = cache.find(key);
  if (it == cache.end()) {
    std::vector<TruncatedSeries> entries;
    entries.reserve(t.size());
    for (int id = 0; id < t.size(); ++id) {
      const BasicCommutator& c = t.entry(id);
      if (c.is_generator()) {
        entries.push_back(TruncatedSeries::generator(r, deg, c.gen));
      } else {
        const TruncatedSeries& a = entries[c.left];
        const TruncatedSeries& b = entries[c.right];
        entries.push_back(a.inverse() * b.inverse() * a * b);
      }
    }
    it = cache.emplace(key, std::move(entries)).first;
  }

  TruncatedSeries acc = TruncatedSeries::one(r, deg);
  for (int id = 0; id < t.size(); ++id) {
    const Int& e = u.exponent(id);
    if (e != 0) acc *= it->second[id].pow(e);
  }
  return acc;
}

}  // namespace pgroups
