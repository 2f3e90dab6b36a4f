// Prime-field scalar arithmetic. One modulus per session, NTL-style: set it
// once at startup (or scope it in tests), everything downstream is exact.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gorkit::fp {

namespace detail {
inline std::uint32_t& modulus_ref() {
  static std::uint32_t p = 32003;
  return p;
}
}  // namespace detail

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint32_t prime() { return detail::modulus_ref(); }

inline void set_prime(std::uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("field modulus must be prime, got " + std::to_string(p));
  if (p > (1u << 31)) throw std::invalid_argument("field modulus too large");
  detail::modulus_ref() = p;
}

/// RAII modulus override for tests.
struct ScopedPrime {
  std::uint32_t saved;
  explicit ScopedPrime(std::uint32_t p) : saved(prime()) { set_prime(p); }
  ~ScopedPrime() { detail::modulus_ref() = saved; }
  ScopedPrime(const ScopedPrime&) = delete;
  ScopedPrime& operator=(const ScopedPrime&) = delete;
};

using Scalar = std::uint32_t;

inline Scalar normalize(std::int64_t x) {
  const std::int64_t p = prime();
  std::int64_t r = x % p;
  if (r < 0) r += p;
  return static_cast<Scalar>(r);
}

inline Scalar add(Scalar a, Scalar b) {
  const std::uint64_t s = std::uint64_t(a) + b;
  const std::uint32_t p = prime();
  return s >= p ? Scalar(s - p) : Scalar(s);
}

inline Scalar sub(Scalar a, Scalar b) {
  const std::uint32_t p = prime();
  return a >= b ? a - b : Scalar(a + p - b);
}

inline Scalar neg(Scalar a) { return a == 0 ? 0 : prime() - a; }

inline Scalar mul(Scalar a, Scalar b) {
  return Scalar((std::uint64_t(a) * b) % prime());
}

inline Scalar pow(Scalar a, std::uint64_t e) {
  Scalar r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

inline Scalar inv(Scalar a) {
  if (a == 0) throw std::domain_error("division by zero in F_p");
  return pow(a, prime() - 2);
}

}  // namespace gorkit::fp
