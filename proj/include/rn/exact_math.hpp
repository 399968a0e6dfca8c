#pragma once

// Exact-arithmetic helpers shared by the library: dyadic powers, rational
// floor/ceil/log2, a high-precision pi, and rational approximations of
// sin/cos, sqrt and 2^x with stated error bounds.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <utility>

namespace rn {

using big_int = boost::multiprecision::cpp_int;
using big_rational = boost::multiprecision::cpp_rational;

// floor(a/b); b > 0
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

inline big_int floor_rat(const big_rational& q) {
  big_int n = numerator(q);
  big_int d = denominator(q);  // canonical: d > 0
  if (n >= 0) return n / d;
  return -((-n + d - 1) / d);
}

inline big_int ceil_rat(const big_rational& q) { return -floor_rat(-q); }

// 2^k; |k| capped so the result stays materializable
inline big_rational pow2_exact(std::int64_t k) {
  constexpr std::int64_t cap = std::int64_t(1) << 24;
  if (k > cap || k < -cap) throw std::domain_error("pow2_exact: exponent too large to materialize");
  if (k >= 0) return big_rational(big_int(1) << static_cast<unsigned>(k));
  return big_rational(1, big_int(1) << static_cast<unsigned>(-k));
}

// E with 2^E <= q < 2^(E+1); q > 0
inline std::int64_t floor_log2(const big_rational& q) {
  if (q.sign() <= 0) throw std::domain_error("floor_log2: argument must be positive");
  const big_int n = numerator(q);
  const big_int d = denominator(q);
  std::int64_t e = static_cast<std::int64_t>(msb(n)) - static_cast<std::int64_t>(msb(d));
  if (e >= 0) {
    if (n >= (d << static_cast<unsigned>(e))) return e;
  } else {
    if ((n << static_cast<unsigned>(-e)) >= d) return e;
  }
  return e - 1;
}

// floor(pi * 2^200)
inline const big_int& pi_times_pow2_200() {
  static const big_int v("5048344754617993871973410141242436836214643421488662971535368");
  return v;
}

// floor(2^k * pi), 0 <= k <= 150
inline big_int floor_pow2_pi(int k) {
  if (k < 0 || k > 150) throw std::domain_error("floor_pow2_pi: k out of [0, 150]");
  return pi_times_pow2_200() >> static_cast<unsigned>(200 - k);
}

// pi with error in [0, 2^-bits)
inline big_rational pi_approx(int bits = 180) {
  if (bits < 1 || bits > 198) throw std::domain_error("pi_approx: bits out of [1, 198]");
  return big_rational(pi_times_pow2_200() >> static_cast<unsigned>(200 - bits),
                      big_int(1) << static_cast<unsigned>(bits));
}

// nearest multiple of 2^-bits; |error| <= 2^-(bits+1)
inline big_rational truncate_dyadic(const big_rational& q, int bits) {
  big_int scaled = floor_rat(q * pow2_exact(bits) + big_rational(1, 2));
  return big_rational(std::move(scaled)) * pow2_exact(-bits);
}

// (sin x, cos x), each within 2^-bits of exact; intended for |x| <= 7
inline std::pair<big_rational, big_rational> sin_cos(const big_rational& x, int bits) {
  const big_rational eps = pow2_exact(-(bits + 8));
  const big_rational x2 = x * x;
  big_rational s = 0;
  big_rational term = x;
  for (unsigned k = 1;; k += 2) {
    s += term;
    if (term.is_zero()) break;
    term = term * (-x2) / big_rational(big_int(k + 1) * (k + 2));
    if (abs(term) < eps) {
      s += term;
      break;
    }
  }
  big_rational c = 0;
  term = 1;
  for (unsigned k = 0;; k += 2) {
    c += term;
    term = term * (-x2) / big_rational(big_int(k + 1) * (k + 2));
    if (abs(term) < eps) {
      c += term;
      break;
    }
  }
  return {truncate_dyadic(s, bits + 4), truncate_dyadic(c, bits + 4)};
}

// sqrt(q) from below with relative error < 2^-bits; exact on perfect squares
inline big_rational sqrt_approx(const big_rational& q, int bits) {
  if (q.sign() < 0) throw std::domain_error("sqrt_approx: argument must be >= 0");
  if (q.is_zero()) return {};
  const big_int n = numerator(q);
  const big_int d = denominator(q);
  big_int s = sqrt(big_int((n * d) << static_cast<unsigned>(2 * bits)));
  return big_rational(std::move(s), d << static_cast<unsigned>(bits));
}

// floor(n^(1/k)); n >= 0, k >= 1
inline big_int kth_root(const big_int& n, unsigned k) {
  if (k == 0) throw std::domain_error("kth_root: k must be >= 1");
  if (n < 0) throw std::domain_error("kth_root: argument must be >= 0");
  if (n <= 1 || k == 1) return n;
  const auto bl = static_cast<std::uint64_t>(msb(n)) + 1;
  big_int x = big_int(1) << static_cast<unsigned>((bl + k - 1) / k + 1);
  while (true) {
    big_int y = ((k - 1) * x + n / pow(x, k - 1)) / k;
    if (y >= x) break;
    x = std::move(y);
  }
  while (pow(x, k) > n) --x;
  while (pow(x + 1, k) <= n) ++x;
  return x;
}

// 2^x: exact for integer x, otherwise relative error < 2^-bits
inline big_rational pow2_approx(const big_rational& x, int bits = 64) {
  const big_int z = floor_rat(x);
  if (z < -(std::int64_t(1) << 24) || z > (std::int64_t(1) << 24))
    throw std::domain_error("pow2_approx: exponent too large");
  const auto zi = z.convert_to<std::int64_t>();
  const big_rational f = x - big_rational(z);
  if (f.is_zero()) return pow2_exact(zi);
  const big_int q = denominator(f);
  if (q > 100000) throw std::domain_error("pow2_approx: fractional exponent denominator too large");
  const auto qk = q.convert_to<unsigned>();
  const auto p = numerator(f).convert_to<std::uint64_t>();  // 0 < p/q < 1
  big_int root = kth_root(big_int(1) << static_cast<unsigned>(p + std::uint64_t(qk) * bits), qk);
  return pow2_exact(zi) * big_rational(std::move(root), big_int(1) << static_cast<unsigned>(bits));
}

}  // namespace rn
