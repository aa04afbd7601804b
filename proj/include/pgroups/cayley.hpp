#pragma once

// Finite groups as explicit multiplication tables, together with the subgroup
// machinery built on them: closures, centers, the lower central / lambda /
// omega series, power subgroups, N_{n,k} products, p-centrality, and quotient
// tables.  Element 0 is always the identity.  Tables are validated on
// construction: identity row and column, Latin square, and associativity
// (exhaustive up to order 512, deterministically sampled above that).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pgroups/ints.hpp"

namespace pgroups {

class CayleyGroup {
 public:
  static constexpr int kMaxOrder = 65536;
  static constexpr int kFullCheckOrder = 512;

  CayleyGroup(int order, std::vector<int> table, std::string name = "")
      : order_(order), table_(std::move(table)), name_(std::move(name)) {
    if (order_ < 1) throw std::invalid_argument("CayleyGroup: order must be positive");
    if (order_ > kMaxOrder)
      throw ResourceError("CayleyGroup: order exceeds the supported bound", Int(order_));
    if (table_.size() != static_cast<std::size_t>(order_) * order_)
      throw std::invalid_argument("CayleyGroup: table size does not match order");
    validate();
    inv_.assign(order_, 0);
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b)
        if (mul(a, b) == 0) inv_[a] = b;
  }

  int order() const { return order_; }
  const std::string& name() const { return name_; }

  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  int inv(int a) const { return inv_[a]; }

  int pow(int x, long long m) const {
    if (m < 0) {
      x = inv(x);
      m = -m;
    }
    int acc = 0;
    while (m > 0) {
      if (m & 1) acc = mul(acc, x);
      m >>= 1;
      if (m > 0) x = mul(x, x);
    }
    return acc;
  }

  long long element_order(int x) const {
    long long ord = 1;
    for (int y = x; y != 0; y = mul(y, x)) ++ord;
    return ord;
  }

  long long exponent() const {
    long long e = 1;
    for (int x = 0; x < order_; ++x) e = std::lcm(e, element_order(x));
    return e;
  }

  bool is_abelian() const {
    for (int a = 0; a < order_; ++a)
      for (int b = a + 1; b < order_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  bool operator==(const CayleyGroup& o) const {
    return order_ == o.order_ && table_ == o.table_ && name_ == o.name_;
  }
  bool operator!=(const CayleyGroup& o) const { return !(*this == o); }

 private:
  void validate() const {
    for (int j = 0; j < order_; ++j)
      if (mul(0, j) != j || mul(j, 0) != j)
        throw std::invalid_argument("CayleyGroup: element 0 is not an identity");
    std::vector<char> seen(order_);
    for (int i = 0; i < order_; ++i) {
      std::fill(seen.begin(), seen.end(), 0);
      for (int j = 0; j < order_; ++j) {
        int v = mul(i, j);
        if (v < 0 || v >= order_ || seen[v])
          throw std::invalid_argument("CayleyGroup: table rows are not permutations");
        seen[v] = 1;
      }
    }
    for (int j = 0; j < order_; ++j) {
      std::fill(seen.begin(), seen.end(), 0);
      for (int i = 0; i < order_; ++i) {
        int v = mul(i, j);
        if (seen[v])
          throw std::invalid_argument("CayleyGroup: table columns are not permutations");
        seen[v] = 1;
      }
    }
    if (order_ <= kFullCheckOrder) {
      for (int a = 0; a < order_; ++a)
        for (int b = 0; b < order_; ++b)
          for (int c = 0; c < order_; ++c)
            if (mul(mul(a, b), c) != mul(a, mul(b, c)))
              throw std::invalid_argument("CayleyGroup: table is not associative");
    } else {
      std::uint64_t s = 0x9e3779b97f4a7c15ull;  // fixed seed: validation is deterministic
      auto next = [&s, this] {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<int>((s >> 33) % order_);
      };
      for (int t = 0; t < 200000; ++t) {
        int a = next(), b = next(), c = next();
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw std::invalid_argument("CayleyGroup: table is not associative");
      }
    }
  }

  int order_;
  std::vector<int> table_;
  std::string name_;
  std::vector<int> inv_;
};

inline int commutator_elt(const CayleyGroup& g, int x, int y) {
  return g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y));
}

// ---------------------------------------------------------------------------
// Builtin families.

inline CayleyGroup cyclic_group(int n) {
  if (n < 1) throw std::invalid_argument("cyclic_group: order must be positive");
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(i) * n + j] = (i + j) % n;
  return CayleyGroup(n, std::move(t), "cyclic(" + std::to_string(n) + ")");
}

inline CayleyGroup trivial_group() { return cyclic_group(1); }

inline CayleyGroup direct_product(const CayleyGroup& a, const CayleyGroup& b) {
  long long n = static_cast<long long>(a.order()) * b.order();
  if (n > CayleyGroup::kMaxOrder)
    throw ResourceError("direct_product: order exceeds the supported bound", Int(n));
  int nb = b.order(), nn = static_cast<int>(n);
  std::vector<int> t(static_cast<std::size_t>(nn) * nn);
  for (int x = 0; x < nn; ++x)
    for (int y = 0; y < nn; ++y) {
      int xa = x / nb, xb = x % nb, ya = y / nb, yb = y % nb;
      t[static_cast<std::size_t>(x) * nn + y] = a.mul(xa, ya) * nb + b.mul(xb, yb);
    }
  return CayleyGroup(nn, std::move(t), a.name() + " x " + b.name());
}

// Dihedral group of the given order 2m: indices 0..m-1 are rotations r^i,
// indices m..2m-1 are reflections s r^i.
inline CayleyGroup dihedral_group(int order) {
  if (order < 2 || order % 2 != 0)
    throw std::invalid_argument("dihedral_group: order must be even and >= 2");
  int m = order / 2;
  auto idx = [m](int s, int i) { return s * m + i; };
  std::vector<int> t(static_cast<std::size_t>(order) * order);
  auto set = [&](int x, int y, int v) { t[static_cast<std::size_t>(x) * order + y] = v; };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      set(idx(0, i), idx(0, j), idx(0, (i + j) % m));
      set(idx(0, i), idx(1, j), idx(1, (j - i + m) % m));
      set(idx(1, i), idx(0, j), idx(1, (i + j) % m));
      set(idx(1, i), idx(1, j), idx(0, (j - i + m) % m));
    }
  return CayleyGroup(order, std::move(t), "dihedral(" + std::to_string(order) + ")");
}

// Generalized quaternion group of order 2^k >= 8: a has order 2^{k-1},
// b^2 = a^{2^{k-2}}, b^-1 a b = a^-1.  Index = j * 2^{k-1} + i for a^i b^j.
inline CayleyGroup quaternion_group(int order) {
  int k = 0;
  if (order < 8 || !is_power_of(order, 2, &k))
    throw std::invalid_argument("quaternion_group: order must be a power of 2 and >= 8");
  int half = order / 2, m = half / 2;
  std::vector<int> t(static_cast<std::size_t>(order) * order);
  auto idx = [half](int i, int j) { return j * half + i; };
  auto set = [&](int x, int y, int v) { t[static_cast<std::size_t>(x) * order + y] = v; };
  for (int i1 = 0; i1 < half; ++i1)
    for (int j2 = 0; j2 < 2; ++j2)
      for (int i2 = 0; i2 < half; ++i2) {
        set(idx(i1, 0), idx(i2, j2), idx((i1 + i2) % half, j2));
        // (a^i1 b) a^i2 b^j2 = a^{i1-i2} b^{1+j2}, and b^2 = a^m.
        int i = (i1 - i2 + half) % half;
        if (j2 == 0)
          set(idx(i1, 1), idx(i2, 0), idx(i, 1));
        else
          set(idx(i1, 1), idx(i2, 1), idx((i + m) % half, 0));
      }
  return CayleyGroup(order, std::move(t), "quaternion(" + std::to_string(order) + ")");
}

// Modular maximal-cyclic group of order p^k, k >= 3: a has order p^{k-1},
// b has order p, b^-1 a b = a^{1+p^{k-2}}.  Index = j * p^{k-1} + i for
// the normal form b^j a^i.
inline CayleyGroup modular_group(int order) {
  long long p = 0;
  for (long long d = 2; d * d <= order; ++d)
    if (order % d == 0) {
      p = d;
      break;
    }
  if (p == 0) p = order;
  int k = 0;
  if (!is_prime(p) || !is_power_of(order, p, &k) || k < 3)
    throw std::invalid_argument("modular_group: order must be p^k with k >= 3");
  int pa = static_cast<int>(ipow_ll(p, k - 1));  // order of a
  int sigma = 1 + static_cast<int>(ipow_ll(p, k - 2));
  std::vector<long long> sig_pow(p);  // sigma^j mod pa
  sig_pow[0] = 1;
  for (int j = 1; j < p; ++j) sig_pow[j] = sig_pow[j - 1] * sigma % pa;
  std::vector<int> t(static_cast<std::size_t>(order) * order);
  auto idx = [pa](int j, int i) { return j * pa + i; };
  for (int j1 = 0; j1 < p; ++j1)
    for (int i1 = 0; i1 < pa; ++i1)
      for (int j2 = 0; j2 < p; ++j2)
        for (int i2 = 0; i2 < pa; ++i2) {
          // b^j1 a^i1 b^j2 a^i2 = b^{j1+j2} a^{i1 sigma^j2 + i2}
          int j = static_cast<int>((j1 + j2) % p);
          int i = static_cast<int>((i1 * sig_pow[j2] + i2) % pa);
          t[static_cast<std::size_t>(idx(j1, i1)) * order + idx(j2, i2)] = idx(j, i);
        }
  return CayleyGroup(order, std::move(t), "modular(" + std::to_string(order) + ")");
}

// Extraspecial group of order p^3 and exponent p (p odd): the Heisenberg
// group of upper unitriangular 3x3 matrices over Z_p.  Index = x p^2 + y p + z.
inline CayleyGroup extraspecial_group(long long p) {
  if (!is_prime(p) || p == 2)
    throw std::invalid_argument("extraspecial_group: p must be an odd prime");
  int pi = static_cast<int>(p), n = pi * pi * pi;
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  auto idx = [pi](int x, int y, int z) { return (x * pi + y) * pi + z; };
  for (int x1 = 0; x1 < pi; ++x1)
    for (int y1 = 0; y1 < pi; ++y1)
      for (int z1 = 0; z1 < pi; ++z1)
        for (int x2 = 0; x2 < pi; ++x2)
          for (int y2 = 0; y2 < pi; ++y2)
            for (int z2 = 0; z2 < pi; ++z2)
              t[static_cast<std::size_t>(idx(x1, y1, z1)) * n + idx(x2, y2, z2)] =
                  idx((x1 + x2) % pi, (y1 + y2) % pi, (z1 + z2 + x1 * y2) % pi);
  return CayleyGroup(n, std::move(t), "extraspecial(" + std::to_string(n) + ")");
}

inline CayleyGroup builtin_group(const std::string& family,
                                 const std::vector<long long>& params) {
  auto want = [&](std::size_t n) {
    if (params.size() != n)
      throw std::invalid_argument("builtin_group: wrong parameter count for " + family);
  };
  if (family == "trivial") {
    want(0);
    return trivial_group();
  }
  if (family == "cyclic") {
    want(1);
    return cyclic_group(static_cast<int>(params[0]));
  }
  if (family == "dihedral") {
    want(1);
    return dihedral_group(static_cast<int>(params[0]));
  }
  if (family == "quaternion") {
    want(1);
    return quaternion_group(static_cast<int>(params[0]));
  }
  if (family == "modular") {
    want(1);
    return modular_group(static_cast<int>(params[0]));
  }
  if (family == "extraspecial") {
    want(1);
    return extraspecial_group(params[0]);
  }
  throw std::invalid_argument("builtin_group: unknown family " + family);
}

// ---------------------------------------------------------------------------
// Subgroups.

class Subgroup {
 public:
  Subgroup(const CayleyGroup& g, std::vector<int> elems) : g_(&g), elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    in_.assign(g.order(), 0);
    for (int x : elems_) {
      if (x < 0 || x >= g.order())
        throw std::invalid_argument("Subgroup: element index out of range");
      in_[x] = 1;
    }
    if (elems_.empty() || !in_[0]) throw std::invalid_argument("Subgroup: missing identity");
    for (int x : elems_) {
      if (!in_[g.inv(x)]) throw std::invalid_argument("Subgroup: not closed under inverses");
      for (int y : elems_)
        if (!in_[g.mul(x, y)])
          throw std::invalid_argument("Subgroup: not closed under multiplication");
    }
  }

  const CayleyGroup& parent() const { return *g_; }
  int order() const { return static_cast<int>(elems_.size()); }
  const std::vector<int>& elements() const { return elems_; }
  bool contains(int x) const { return in_[x] != 0; }
  bool is_trivial() const { return order() == 1; }
  bool is_whole() const { return order() == g_->order(); }

  bool operator==(const Subgroup& o) const { return g_ == o.g_ && elems_ == o.elems_; }
  bool operator!=(const Subgroup& o) const { return !(*this == o); }

 private:
  const CayleyGroup* g_;
  std::vector<int> elems_;
  std::vector<char> in_;
};

inline Subgroup whole_subgroup(const CayleyGroup& g) {
  std::vector<int> all(g.order());
  for (int i = 0; i < g.order(); ++i) all[i] = i;
  return Subgroup(g, std::move(all));
}

inline Subgroup subgroup_closure(const CayleyGroup& g, const std::vector<int>& gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<int> members, work;
  auto add = [&](int x) {
    if (!in[x]) {
      in[x] = 1;
      members.push_back(x);
      work.push_back(x);
    }
  };
  add(0);
  for (int x : gens) {
    if (x < 0 || x >= g.order())
      throw std::invalid_argument("subgroup_closure: generator index out of range");
    add(x);
  }
  while (!work.empty()) {
    int x = work.back();
    work.pop_back();
    for (std::size_t i = 0; i < members.size(); ++i) {
      add(g.mul(x, members[i]));
      add(g.mul(members[i], x));
    }
  }
  std::sort(members.begin(), members.end());
  return Subgroup(g, std::move(members));
}

inline Subgroup center(const CayleyGroup& g) {
  std::vector<int> z;
  for (int x = 0; x < g.order(); ++x) {
    bool central = true;
    for (int y = 0; y < g.order() && central; ++y) central = g.mul(x, y) == g.mul(y, x);
    if (central) z.push_back(x);
  }
  return Subgroup(g, std::move(z));
}

// Lower central series down to stabilization; for nilpotent groups the last
// entry is the trivial subgroup.
inline std::vector<Subgroup> lower_central(const CayleyGroup& g) {
  std::vector<Subgroup> chain;
  chain.push_back(whole_subgroup(g));
  while (!chain.back().is_trivial()) {
    const Subgroup& prev = chain.back();
    std::vector<char> seen(g.order(), 0);
    std::vector<int> gens;
    for (int x : prev.elements())
      for (int y = 0; y < g.order(); ++y) {
        int c = commutator_elt(g, x, y);
        if (!seen[c]) {
          seen[c] = 1;
          gens.push_back(c);
        }
      }
    Subgroup next = subgroup_closure(g, gens);
    if (next.order() == prev.order()) break;
    chain.push_back(std::move(next));
  }
  return chain;
}

namespace detail {
inline int p_group_exponent_check(const CayleyGroup& g, long long p, const char* op) {
  int k = 0;
  if (!is_prime(p) || !is_power_of(g.order(), p, &k))
    throw std::invalid_argument(std::string(op) + ": group order is not a power of the prime");
  return k;
}
}  // namespace detail

// Subgroup generated by the elements of order dividing p^i.
inline Subgroup omega(const CayleyGroup& g, long long p, int i) {
  detail::p_group_exponent_check(g, p, "omega");
  if (i < 0) throw std::invalid_argument("omega: negative index");
  std::vector<int> gens;
  for (int x = 0; x < g.order(); ++x) {
    long long ord = g.element_order(x);
    int j = 0;
    while (ord % p == 0) {
      ord /= p;
      ++j;
    }
    if (ord == 1 && j <= i) gens.push_back(x);
  }
  return subgroup_closure(g, gens);
}

// Subgroup generated by all m-th powers.
inline Subgroup power_subgroup(const CayleyGroup& g, long long m) {
  if (m < 1) throw std::invalid_argument("power_subgroup: exponent must be >= 1");
  std::vector<int> gens;
  for (int x = 0; x < g.order(); ++x) gens.push_back(g.pow(x, m));
  return subgroup_closure(g, gens);
}

// Lambda series: L1 = G, L_{n+1} = L_n^q [L_n, G] with q = 4 for p = 2 and
// q = p for odd p; descends to the trivial subgroup on p-groups.
inline std::vector<Subgroup> lambda_series(const CayleyGroup& g, long long p) {
  detail::p_group_exponent_check(g, p, "lambda_series");
  long long q = p == 2 ? 4 : p;
  std::vector<Subgroup> chain;
  chain.push_back(whole_subgroup(g));
  while (!chain.back().is_trivial()) {
    const Subgroup& prev = chain.back();
    std::vector<char> seen(g.order(), 0);
    std::vector<int> gens;
    auto add = [&](int v) {
      if (!seen[v]) {
        seen[v] = 1;
        gens.push_back(v);
      }
    };
    for (int x : prev.elements()) {
      add(g.pow(x, q));
      for (int y = 0; y < g.order(); ++y) add(commutator_elt(g, x, y));
    }
    Subgroup next = subgroup_closure(g, gens);
    if (next.order() == prev.order())
      throw std::logic_error("lambda_series: series failed to descend");
    chain.push_back(std::move(next));
  }
  return chain;
}

// N_{n,k} = < gamma_j^{q^{n-j}} : j = k..n > with q as in lambda_series.
inline Subgroup n_subgroup(const CayleyGroup& g, long long p, int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("n_subgroup: need 1 <= k <= n");
  detail::p_group_exponent_check(g, p, "n_subgroup");
  long long q = p == 2 ? 4 : p;
  std::vector<Subgroup> gamma = lower_central(g);
  long long e = g.exponent();
  std::vector<char> seen(g.order(), 0);
  std::vector<int> gens;
  for (int j = k; j <= n; ++j) {
    const Subgroup& gj = gamma[std::min<std::size_t>(j, gamma.size()) - 1];
    long long m = (ipow(Int(q), n - j) % e).convert_to<long long>();
    for (int x : gj.elements()) {
      int v = m == 0 ? 0 : g.pow(x, m);
      if (!seen[v]) {
        seen[v] = 1;
        gens.push_back(v);
      }
    }
  }
  return subgroup_closure(g, gens);
}

// Omega_1 <= Z(G) for odd p, Omega_2 <= Z(G) for p = 2.
inline bool is_p_central(const CayleyGroup& g, long long p) {
  detail::p_group_exponent_check(g, p, "is_p_central");
  Subgroup om = omega(g, p, p == 2 ? 2 : 1);
  Subgroup z = center(g);
  for (int x : om.elements())
    if (!z.contains(x)) return false;
  return true;
}

inline CayleyGroup quotient(const CayleyGroup& g, const Subgroup& n) {
  if (&n.parent() != &g) throw std::invalid_argument("quotient: subgroup of a different group");
  for (int x : n.elements())
    for (int a = 0; a < g.order(); ++a)
      if (!n.contains(g.mul(g.mul(g.inv(a), x), a)))
        throw std::invalid_argument("quotient: subgroup is not normal");

  std::vector<int> coset_of(g.order(), -1), reps;
  for (int x = 0; x < g.order(); ++x) {
    if (coset_of[x] >= 0) continue;
    int ci = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int y : n.elements()) coset_of[g.mul(x, y)] = ci;
  }
  int nc = static_cast<int>(reps.size());
  std::vector<int> t(static_cast<std::size_t>(nc) * nc);
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j)
      t[static_cast<std::size_t>(i) * nc + j] = coset_of[g.mul(reps[i], reps[j])];
  std::string nm = g.name().empty() ? "" : g.name() + " / subgroup(" + std::to_string(n.order()) + ")";
  return CayleyGroup(nc, std::move(t), std::move(nm));
}

}  // namespace pgroups
