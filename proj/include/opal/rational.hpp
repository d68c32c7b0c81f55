#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace opal {

// Exact scalar field. All engine arithmetic runs over Q; Fp below satisfies
// the same contract for modular experiments.
using Q = mpq_class;

inline Q q_of(long num, long den = 1) {
  Q q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p", "-p", "p/q".
inline Q q_parse(const std::string& text) {
  Q q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: " + text);
  q.canonicalize();
  if (q.get_den() <= 0) throw std::invalid_argument("bad rational: " + text);
  return q;
}

inline std::string q_str(const Q& q) { return q.get_str(); }

inline bool q_is_zero(const Q& q) { return sgn(q) == 0; }

inline std::size_t q_hash(const Q& q) {
  // cheap limb mix; collisions are harmless (used for visited-set pruning)
  std::size_t h = 0x9e3779b97f4a7c15ull;
  auto mix = [&h](const mpz_class& z) {
    std::size_t n = mpz_size(z.get_mpz_t());
    for (std::size_t i = 0; i < n; ++i)
      h = (h ^ mpz_getlimbn(z.get_mpz_t(), i)) * 0x100000001b3ull;
    h ^= static_cast<std::size_t>(sgn(z)) + 0x517cc1b727220a95ull;
  };
  mix(q.get_num());
  mix(q.get_den());
  return h;
}

// Prime field scalar, p < 2^31. Same contract as Q: field ops, ==, zero test.
template <std::uint32_t P>
struct Fp {
  std::uint32_t v = 0;

  constexpr Fp() = default;
  constexpr Fp(long x) : v(static_cast<std::uint32_t>(((x % long(P)) + long(P)) % long(P))) {}

  friend constexpr Fp operator+(Fp a, Fp b) { return from(( std::uint64_t(a.v) + b.v) % P); }
  friend constexpr Fp operator-(Fp a, Fp b) { return from((std::uint64_t(a.v) + P - b.v) % P); }
  friend constexpr Fp operator*(Fp a, Fp b) { return from((std::uint64_t(a.v) * b.v) % P); }
  friend constexpr Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  constexpr Fp operator-() const { return from(v == 0 ? 0 : P - v); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  friend constexpr bool operator==(Fp a, Fp b) { return a.v == b.v; }

  constexpr Fp inverse() const {
    // Fermat; P prime
    if (v == 0) throw std::domain_error("division by zero in Fp");
    std::uint64_t base = v, acc = 1, e = P - 2;
    while (e) {
      if (e & 1) acc = acc * base % P;
      base = base * base % P;
      e >>= 1;
    }
    return from(acc);
  }

 private:
  static constexpr Fp from(std::uint64_t x) {
    Fp r;
    r.v = static_cast<std::uint32_t>(x);
    return r;
  }
};

template <std::uint32_t P>
inline bool q_is_zero(const Fp<P>& x) { return x.v == 0; }

template <std::uint32_t P>
inline std::string q_str(const Fp<P>& x) { return std::to_string(x.v); }

}  // namespace opal
