#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kh {

using Int = boost::multiprecision::cpp_int;

enum class ErrorKind { Parse = 2, Capability = 3, SizeCap = 4, Internal = 5 };

struct KhError : std::runtime_error {
  ErrorKind kind;
  KhError(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

inline Int int_abs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int int_gcd(Int a, Int b) {
  a = int_abs(a);
  b = int_abs(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// floor(log2(|a|)), -1 for a == 0
inline long bit_length(const Int& a) {
  if (a == 0) return -1;
  return static_cast<long>(boost::multiprecision::msb(int_abs(a)));
}

inline Int binomial(long n, long k) {
  if (k < 0 || k > n || n < 0) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (long i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

// value mod p in [0, p)
inline Int mod_reduce(const Int& a, const Int& p) {
  Int r = a % p;
  if (r < 0) r += p;
  return r;
}

inline Int mod_inverse(const Int& a, const Int& p) {
  Int t = 0, newt = 1, r = p, newr = mod_reduce(a, p);
  while (newr != 0) {
    Int q = r / newr;
    Int tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw KhError(ErrorKind::Internal, "mod_inverse: not invertible");
  return mod_reduce(t, p);
}

}  // namespace kh
