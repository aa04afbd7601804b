#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace pgroups {

// Exact integer type used throughout.  Collection and Smith reduction both
// produce coefficients far beyond 64 bits on legitimate inputs.
using Int = boost::multiprecision::cpp_int;

inline long long ipow_ll(long long base, int exp) {
  long long v = 1;
  for (int i = 0; i < exp; ++i) v *= base;
  return v;
}

inline Int ipow(Int base, long long exp) {
  Int v = 1;
  while (exp-- > 0) v *= base;
  return v;
}

inline long long to_ll(const Int& v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw std::overflow_error("value does not fit in 64 bits: " + v.str());
  return v.convert_to<long long>();
}

// Thrown when a computation would exceed a configured cap; carries the size
// the caller would need to allow.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, Int required)
      : std::runtime_error(what), required_(std::move(required)) {}
  const Int& required() const { return required_; }

 private:
  Int required_;
};

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Largest e with p^e dividing n; requires n a power of p on the boolean twin.
inline bool is_power_of(long long n, long long p, int* exp_out = nullptr) {
  if (n < 1) return false;
  int e = 0;
  while (n % p == 0) { n /= p; ++e; }
  if (exp_out) *exp_out = e;
  return n == 1;
}

}  // namespace pgroups
