#pragma once

// Integral Smith normal form and second integral homology of small finite
// groups.  H2 is computed from the normalized bar complex: the kernel of the
// degree-2 boundary is expressed in lattice coordinates via a unimodular
// column transform, the degree-3 boundary image is accumulated inside those
// coordinates, and the finite quotient is read off prime-by-prime.  Every
// homology class is killed by the group order, which keeps all of the modular
// arithmetic in machine words; an independent rank certificate over a large
// prime guards the finiteness assumption.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pgroups/cayley.hpp"
#include "pgroups/commutators.hpp"
#include "pgroups/ints.hpp"

namespace pgroups {

using Matrix = std::vector<std::vector<Int>>;

struct SmithResult {
  std::vector<Int> factors;  // nonzero diagonal entries, each dividing the next
  long long rank = 0;

  bool operator==(const SmithResult& o) const { return factors == o.factors && rank == o.rank; }
};

// Full integer Smith reduction with a smallest-pivot strategy and the usual
// divisibility fixup; exact at any size.
inline SmithResult smith_normal_form(Matrix a) {
  using std::abs;
  const int rows = static_cast<int>(a.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  for (const auto& r : a)
    if (static_cast<int>(r.size()) != cols)
      throw std::invalid_argument("smith_normal_form: ragged matrix");
  SmithResult res;
  int t = 0;
  while (t < rows && t < cols) {
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pi < 0 || abs(a[i][j]) < abs(a[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    std::swap(a[t], a[pi]);
    if (pj != t)
      for (int i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pj]);

    bool restart = false;
    for (int i = t + 1; i < rows && !restart; ++i) {
      if (a[i][t] == 0) continue;
      Int q = a[i][t] / a[t][t];
      for (int c = t; c < cols; ++c) a[i][c] -= q * a[t][c];
      restart = a[i][t] != 0;  // remainder smaller than the pivot; reselect
    }
    if (restart) continue;
    for (int j = t + 1; j < cols && !restart; ++j) {
      if (a[t][j] == 0) continue;
      Int q = a[t][j] / a[t][t];
      for (int r = t; r < rows; ++r) a[r][j] -= q * a[r][t];
      restart = a[t][j] != 0;
    }
    if (restart) continue;
    for (int i = t + 1; i < rows && !restart; ++i)
      for (int j = t + 1; j < cols && !restart; ++j)
        if (a[i][j] % a[t][t] != 0) {
          for (int c = t; c < cols; ++c) a[t][c] += a[i][c];
          restart = true;
        }
    if (restart) continue;
    if (a[t][t] < 0)
      for (int j = t; j < cols; ++j) a[t][j] = -a[t][j];
    res.factors.push_back(a[t][t]);
    ++t;
  }
  res.rank = t;
  return res;
}

struct AbelianInvariants {
  std::vector<Int> factors;  // nontrivial invariant factors, each dividing the next
  long long free_rank = 0;

  Int exponent() const { return factors.empty() ? Int(1) : factors.back(); }
  Int order() const {
    Int o = 1;
    for (const Int& f : factors) o *= f;
    return o;
  }
  std::string str() const {
    if (factors.empty() && free_rank == 0) return "0";
    std::string s = "(";
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) s += ",";
      s += factors[i].str();
    }
    for (long long i = 0; i < free_rank; ++i) {
      if (!s.empty() && s.back() != '(') s += ",";
      s += "Z";
    }
    return s + ")";
  }

  bool operator==(const AbelianInvariants& o) const {
    return factors == o.factors && free_rank == o.free_rank;
  }
  bool operator!=(const AbelianInvariants& o) const { return !(*this == o); }
};

namespace detail {

// Invariant factors of (Z/p^a)^k modulo the column span of m, entries taken
// mod p^a.  Minimal-valuation pivoting keeps every value inside [0, p^a).
inline std::vector<long long> local_invariants(std::vector<std::vector<long long>> m, long long p,
                                               int a, long long pa) {
  const int k = static_cast<int>(m.size());
  for (auto& row : m)
    for (long long& v : row) {
      v %= pa;
      if (v < 0) v += pa;
    }
  auto valuation = [&](long long v) {
    int s = 0;
    while (v != 0 && v % p == 0) {
      v /= p;
      ++s;
    }
    return v == 0 ? a : s;
  };
  std::vector<long long> inv(k, pa);
  for (int t = 0; t < k; ++t) {
    int pi = -1, pj = -1, pv = a;
    for (int i = t; i < k; ++i)
      for (int j = t; j < k; ++j) {
        int v = valuation(m[i][j]);
        if (v < pv) {
          pv = v;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // all remaining entries vanish mod p^a
    std::swap(m[t], m[pi]);
    if (pj != t)
      for (int i = t; i < k; ++i) std::swap(m[i][t], m[i][pj]);
    // scale row t by the inverse of the pivot's unit part, leaving exactly p^pv
    long long unit = m[t][t];
    for (int s = 0; s < pv; ++s) unit /= p;
    long long r0 = pa, r1 = unit % pa, s0 = 0, s1 = 1;
    while (r1 != 0) {
      long long q = r0 / r1;
      r0 -= q * r1;
      std::swap(r0, r1);
      s0 -= q * s1;
      std::swap(s0, s1);
    }
    long long uinv = ((s0 % pa) + pa) % pa;
    for (int j = t; j < k; ++j) m[t][j] = m[t][j] * uinv % pa;
    long long piv = m[t][t];  // now exactly p^pv
    for (int i = t + 1; i < k; ++i) {
      if (m[i][t] == 0) continue;
      long long q = m[i][t] / piv;
      for (int j = t; j < k; ++j) m[i][j] = ((m[i][j] - q * m[t][j]) % pa + pa) % pa;
    }
    for (int j = t + 1; j < k; ++j) m[t][j] = 0;  // column ops change nothing else
    inv[t] = piv;
  }
  return inv;  // ascending p-power chain
}

// Row-echelon accumulator for an N-torsion lattice: vectors live in Z^k with
// the sublattice N Z^k always present, so entries stay reduced mod N.
class TorsionEchelon {
 public:
  TorsionEchelon(int k, long long n) : k_(k), n_(n), piv_(k) {}

  void insert(std::vector<long long> v) {
    for (int l = 0; l < k_; ++l) {
      v[l] = ((v[l] % n_) + n_) % n_;
      if (v[l] == 0) continue;
      if (piv_[l].empty()) {
        // combine with the implicit N e_l to pin the lead at gcd(v[l], N)
        long long g, x, y;
        ext_gcd(v[l], n_, g, x, y);
        std::vector<long long> p(k_ - l);
        for (int j = l; j < k_; ++j) p[j - l] = ((x * v[j]) % n_ + n_) % n_;
        p[0] = g;
        long long q = v[l] / g;
        for (int j = l; j < k_; ++j) v[j] = ((v[j] - q * p[j - l]) % n_ + n_) % n_;
        piv_[l] = std::move(p);
      } else {
        std::vector<long long>& p = piv_[l];
        if (v[l] % p[0] == 0) {
          long long q = v[l] / p[0];
          for (int j = l; j < k_; ++j) v[j] = ((v[j] - q * p[j - l]) % n_ + n_) % n_;
        } else {
          long long g, x, y;
          ext_gcd(p[0], v[l], g, x, y);
          std::vector<long long> np(k_ - l);
          for (int j = l; j < k_; ++j)
            np[j - l] = (((x % n_) * p[j - l] + (y % n_) * v[j]) % n_ + n_) % n_;
          np[0] = g;
          long long qv = v[l] / g, qp = p[0] / g;
          for (int j = l; j < k_; ++j)
            v[j] = (((qp % n_) * v[j] - (qv % n_) * p[j - l]) % n_ + n_) % n_;
          piv_[l] = std::move(np);
        }
      }
    }
  }

  // Lower-triangular basis matrix of the accumulated lattice plus N Z^k.
  std::vector<std::vector<long long>> basis() const {
    std::vector<std::vector<long long>> m(k_, std::vector<long long>(k_, 0));
    for (int l = 0; l < k_; ++l) {
      if (piv_[l].empty())
        m[l][l] = n_;
      else
        for (int j = l; j < k_; ++j) m[j][l] = piv_[l][j - l];
    }
    return m;
  }

 private:
  static void ext_gcd(long long a, long long b, long long& g, long long& x, long long& y) {
    long long r0 = a, r1 = b, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
    while (r1 != 0) {
      long long q = r0 / r1;
      r0 -= q * r1;
      std::swap(r0, r1);
      x0 -= q * x1;
      std::swap(x0, x1);
      y0 -= q * y1;
      std::swap(y0, y1);
    }
    g = r0;
    x = x0;
    y = y0;
  }

  int k_;
  long long n_;
  std::vector<std::vector<long long>> piv_;  // piv_[l]: suffix vector with lead at l
};

// Incremental rank over Z_P with early saturation exit.
class ModularRank {
 public:
  ModularRank(int k, long long p) : k_(k), p_(p), piv_(k) {}

  void insert(std::vector<long long> v) {
    if (rank_ == k_) return;
    for (int l = 0; l < k_; ++l) {
      v[l] = ((v[l] % p_) + p_) % p_;
      if (v[l] == 0) continue;
      if (piv_[l].empty()) {
        long long inv = inverse(v[l]);
        std::vector<long long> p(k_ - l);
        for (int j = l; j < k_; ++j) p[j - l] = v[j] % p_ * inv % p_;
        piv_[l] = std::move(p);
        ++rank_;
        return;
      }
      long long c = v[l];
      for (int j = l; j < k_; ++j) v[j] = ((v[j] - c * piv_[l][j - l]) % p_ + p_) % p_;
    }
  }

  bool saturated() const { return rank_ == k_; }
  int rank() const { return rank_; }

 private:
  long long inverse(long long a) const {
    long long r0 = p_, r1 = a % p_, x0 = 0, x1 = 1;
    while (r1 != 0) {
      long long q = r0 / r1;
      r0 -= q * r1;
      std::swap(r0, r1);
      x0 -= q * x1;
      std::swap(x0, x1);
    }
    return ((x0 % p_) + p_) % p_;
  }

  int k_;
  long long p_;
  int rank_ = 0;
  std::vector<std::vector<long long>> piv_;
};

}  // namespace detail

// Second integral homology (Schur multiplier) of a finite group given by its
// multiplication table, from the normalized bar complex in degrees <= 3.
inline AbelianInvariants h2_integral(const CayleyGroup& g, long long cap = 32) {
  if (g.order() > cap)
    throw ResourceError("h2_integral: group order exceeds the homology cap", Int(g.order()));
  const int m = g.order() - 1;  // nontrivial elements; element x <-> row x-1
  AbelianInvariants out;
  if (m == 0) return out;
  const int n2 = m * m;
  const long long nmod = g.order();  // annihilates every homology class
  auto pidx = [m](int x, int y) { return (x - 1) * m + (y - 1); };

  // Degree-2 boundary (g,h) -> [h] - [gh] + [g], identity terms dropped.
  Matrix a(m, std::vector<Int>(n2, Int(0)));
  for (int x = 1; x <= m; ++x)
    for (int y = 1; y <= m; ++y) {
      int c = pidx(x, y);
      a[x - 1][c] += 1;
      a[y - 1][c] += 1;
      int xy = g.mul(x, y);
      if (xy != 0) a[xy - 1][c] -= 1;
    }

  // Column-echelon reduction of the boundary; w accumulates the inverse of
  // the column transform so that w * c gives coordinates relative to it.
  std::vector<std::vector<Int>> w(n2, std::vector<Int>(n2, Int(0)));
  for (int i = 0; i < n2; ++i) w[i][i] = 1;
  using std::abs;
  int ra = 0;
  for (int i = 0; i < m && ra < n2; ++i) {
    while (true) {
      int best = -1;
      for (int j = ra; j < n2; ++j)
        if (a[i][j] != 0 && (best < 0 || abs(a[i][j]) < abs(a[i][best]))) best = j;
      if (best < 0) break;
      bool lone = true;
      for (int j = ra; j < n2; ++j) {
        if (j == best || a[i][j] == 0) continue;
        lone = false;
        Int q = a[i][j] / a[i][best];
        for (int r = i; r < m; ++r) a[r][j] -= q * a[r][best];
        for (int c = 0; c < n2; ++c) w[best][c] += q * w[j][c];
      }
      if (lone) {
        if (best != ra) {
          for (int r = i; r < m; ++r) std::swap(a[r][best], a[r][ra]);
          std::swap(w[best], w[ra]);
        }
        ++ra;
        break;
      }
    }
  }
  const int k = n2 - ra;  // kernel dimension
  if (k == 0) return out;

  detail::TorsionEchelon lattice(k, nmod);
  constexpr long long kCertPrime = 1073676287;
  detail::ModularRank cert(k, kCertPrime);

  // Degree-3 boundary columns, deduplicated in sparse form.
  std::set<std::vector<std::pair<int, long long>>> seen;
  for (int x = 1; x <= m; ++x)
    for (int y = 1; y <= m; ++y)
      for (int z = 1; z <= m; ++z) {
        std::map<int, long long> col;
        col[pidx(y, z)] += 1;
        int xy = g.mul(x, y);
        if (xy != 0) col[pidx(xy, z)] -= 1;
        int yz = g.mul(y, z);
        if (yz != 0) col[pidx(x, yz)] += 1;
        col[pidx(x, y)] -= 1;
        std::vector<std::pair<int, long long>> sparse;
        for (const auto& [j, v] : col)
          if (v != 0) sparse.emplace_back(j, v);
        if (sparse.empty() || !seen.insert(sparse).second) continue;

        std::vector<long long> tail_n(k), tail_p(k);
        for (int i = 0; i < n2; ++i) {
          Int yi = 0;
          for (const auto& [j, v] : sparse) yi += v * w[i][j];
          if (i < ra) {
            if (yi != 0) throw std::logic_error("h2_integral: boundary escaped the kernel");
          } else {
            tail_n[i - ra] = ((yi % nmod) + nmod).convert_to<long long>() % nmod;
            tail_p[i - ra] = ((yi % kCertPrime) + kCertPrime).convert_to<long long>() % kCertPrime;
          }
        }
        lattice.insert(std::move(tail_n));
        cert.insert(std::move(tail_p));
      }

  if (!cert.saturated())
    throw std::logic_error("h2_integral: homology rank certificate failed");
  out.free_rank = 0;

  // Read the finite quotient off prime-by-prime and recombine the chains.
  std::vector<std::vector<long long>> basis = lattice.basis();
  std::vector<Int> factors(k, Int(1));
  long long rest = nmod;
  for (long long p = 2; rest > 1; ++p)
    if (rest % p == 0) {
      int e = 0;
      long long pa = 1;
      while (rest % p == 0) {
        rest /= p;
        ++e;
        pa *= p;
      }
      std::vector<long long> local = detail::local_invariants(basis, p, e, pa);
      std::sort(local.begin(), local.end());
      for (int i = 0; i < k; ++i) factors[i] *= local[i];
    }
  for (const Int& f : factors)
    if (f > 1) out.factors.push_back(f);
  return out;
}

// Closed-form multiplier of the free p-central scheme: one cyclic factor of
// order q for every basic commutator of weight 2..n+1.
inline AbelianInvariants multiplier_free_pcentral(long long p, int r, int n) {
  if (!is_prime(p)) throw std::invalid_argument("multiplier_free_pcentral: p must be prime");
  if (r < 1 || n < 1)
    throw std::invalid_argument("multiplier_free_pcentral: rank and class must be >= 1");
  long long q = p == 2 ? 4 : p;
  long long copies = 0;
  for (int i = 2; i <= n + 1; ++i) copies += witt_count(r, i);
  AbelianInvariants out;
  out.factors.assign(copies, Int(q));
  return out;
}

// For p-central groups the multiplier exponent divides the group exponent;
// returns whether that bound holds for the given table.
inline bool check_exp_multiplier(const CayleyGroup& g, long long p, long long cap = 32) {
  if (!is_p_central(g, p))
    throw std::invalid_argument("check_exp_multiplier: group is not p-central");
  AbelianInvariants h2 = h2_integral(g, cap);
  return Int(g.exponent()) % h2.exponent() == 0;
}

}  // namespace pgroups
