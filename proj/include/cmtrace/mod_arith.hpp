#pragma once

#include <cstdint>
#include <optional>

#include "cmtrace/rat_func.hpp"

namespace cmtrace {

/// Arithmetic modulo the Mersenne prime 2^61 - 1, used as a fast filter in
/// front of the exact elimination. A zero residue is only probabilistic
/// evidence; nonzero residues are proofs of nonvanishing.
namespace modp {

inline constexpr std::uint64_t P = (1ull << 61) - 1;

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= P ? s - P : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) {
  return a >= b ? a - b : a + P - b;
}
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % P);
}
inline std::uint64_t pow(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}
inline std::optional<std::uint64_t> inv(std::uint64_t a) {
  if (a == 0) return std::nullopt;
  return pow(a, P - 2);
}

inline std::optional<std::uint64_t> from_rational(const Rational& q) {
  std::uint64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), P);
  auto den = inv(mpz_fdiv_ui(q.get_den().get_mpz_t(), P));
  if (!den) return std::nullopt;
  return mul(num, *den);
}

inline std::optional<std::uint64_t> from_npoly(const NPoly& p,
                                               std::uint64_t n0) {
  std::uint64_t acc = 0;
  for (const auto& [k, c] : p.coeffs()) {
    auto cv = from_rational(c);
    if (!cv) return std::nullopt;
    acc = add(acc, mul(*cv, pow(n0, k)));
  }
  return acc;
}

inline std::optional<std::uint64_t> from_rat_func(const RatFunc& f,
                                                  std::uint64_t n0) {
  auto num = from_npoly(f.num(), n0);
  auto den = from_npoly(f.den(), n0);
  if (!num || !den) return std::nullopt;
  auto dinv = inv(*den);
  if (!dinv) return std::nullopt;
  return mul(*num, *dinv);
}

}  // namespace modp
}  // namespace cmtrace
