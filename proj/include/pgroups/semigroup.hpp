#pragma once

// Exponent semigroup of a finite p-group: the set of n for which x -> x^n is
// an endomorphism.  For the groups treated here it is the union of two
// arithmetic progressions p^s Z and p^s Z + 1 inside Z / exp(G); the gap
// between s and the exponent e of G/Z(G) is the exponential rank.  The
// two-residue shape is verified exhaustively over a full period and any
// deviation raises immediately rather than returning a partial answer.

#include <stdexcept>
#include <string>

#include "pgroups/cayley.hpp"
#include "pgroups/ints.hpp"

namespace pgroups {

inline bool is_power_endomorphism(const CayleyGroup& g, long long m) {
  if (m < 0) throw std::invalid_argument("is_power_endomorphism: exponent must be >= 0");
  for (int x = 0; x < g.order(); ++x)
    for (int y = 0; y < g.order(); ++y)
      if (g.pow(g.mul(x, y), m) != g.mul(g.pow(x, m), g.pow(y, m))) return false;
  return true;
}

struct ExponentSemigroup {
  long long e = 0;        // exp(G/Z(G)) = p^e
  long long s = 0;        // least s >= e with x -> x^{p^s} an endomorphism
  long long exprank = 0;  // s - e
  long long exp_g = 0;    // exponent of G, the period of the semigroup

  bool operator==(const ExponentSemigroup& o) const {
    return e == o.e && s == o.s && exprank == o.exprank && exp_g == o.exp_g;
  }
};

inline ExponentSemigroup exponent_semigroup(const CayleyGroup& g, long long p) {
  detail::p_group_exponent_check(g, p, "exponent_semigroup");

  long long qz = quotient(g, center(g)).exponent();
  long long e = 0;
  while (qz % p == 0) {
    qz /= p;
    ++e;
  }
  if (qz != 1) throw std::logic_error("exponent_semigroup: central quotient exponent is not a p-power");

  long long exp_g = g.exponent();
  long long emax = 0;
  for (long long t = exp_g; t % p == 0; t /= p) ++emax;

  long long s = e;
  while (!is_power_endomorphism(g, ipow_ll(p, static_cast<int>(s)))) {
    ++s;
    if (s > emax + 2)
      throw std::logic_error("exponent_semigroup: power-map search escaped its bound");
  }

  // The semigroup is exp(G)-periodic; check the claimed two-residue shape on
  // one full period.
  long long ps = ipow_ll(p, static_cast<int>(s));
  for (long long n = 0; n < exp_g; ++n) {
    bool member = is_power_endomorphism(g, n);
    bool predicted = n % ps == 0 || n % ps == 1;
    if (member != predicted)
      throw std::logic_error(
          "exponent_semigroup: membership deviates from the two-residue pattern at exponent " +
          std::to_string(n));
  }
  return {e, s, s - e, exp_g};
}

}  // namespace pgroups
