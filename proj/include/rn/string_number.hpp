#pragma once

// Numbers represented as signed finite binary strings of 2n digits with the
// binal point after digit n, scaled by 2^(2n*e): value = sign * m * 2^(-n) * 2^(2n*e)
// with m in [1, 2^(2n)-1] for nonzero values.  Zero exists only as (m=0, e=0).
// Text form: [-]b..b.b..b x2^E with n digits on each side and E = 2n*e,
// e.g. "10.10x2^4" (n=2, m=10, e=1, value 40).

#include "exact_math.hpp"

#include <charconv>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

namespace rn {

class precision {
 public:
  static constexpr int max_n = 1 << 16;

  explicit precision(int n) : n_(n) {
    if (n < 1 || n > max_n) throw std::invalid_argument("precision: n out of [1, 2^16]");
  }
  int n() const noexcept { return n_; }
  int digits() const noexcept { return 2 * n_; }
  big_int mantissa_limit() const { return (big_int(1) << static_cast<unsigned>(2 * n_)) - 1; }

  friend bool operator==(const precision&, const precision&) = default;

 private:
  int n_;
};

enum class tie_policy { toward_zero, away_from_zero };

class string_number {
 public:
  static constexpr std::int64_t max_scale = std::int64_t(1) << 48;

  static string_number zero(precision p) { return string_number(0, 0, 0, p); }

  static string_number from_parts(int sign, big_int mantissa, std::int64_t scale, precision p) {
    if (sign == 0 || mantissa.is_zero()) {
      if (sign != 0 || !mantissa.is_zero() || scale != 0)
        throw std::invalid_argument("string_number: zero is (sign 0, m 0, e 0) only");
      return zero(p);
    }
    if (sign != 1 && sign != -1) throw std::invalid_argument("string_number: sign must be -1, 0 or 1");
    if (mantissa < 0 || mantissa > p.mantissa_limit())
      throw std::invalid_argument("string_number: mantissa out of [1, 2^(2n)-1]");
    if (scale > max_scale || scale < -max_scale)
      throw std::invalid_argument("string_number: scale out of range");
    return string_number(sign, std::move(mantissa), scale, p);
  }

  int sign() const noexcept { return sign_; }
  const big_int& mantissa() const noexcept { return mantissa_; }
  std::int64_t scale() const noexcept { return scale_; }
  precision prec() const noexcept { return prec_; }
  bool is_zero() const noexcept { return sign_ == 0; }

  friend bool operator==(const string_number& a, const string_number& b) {
    return a.prec_ == b.prec_ && a.sign_ == b.sign_ && a.scale_ == b.scale_ &&
           a.mantissa_ == b.mantissa_;
  }

 private:
  string_number(int sign, big_int m, std::int64_t e, precision p)
      : sign_(sign), mantissa_(std::move(m)), scale_(e), prec_(p) {}

  int sign_;
  big_int mantissa_;
  std::int64_t scale_;
  precision prec_;
};

// grid spacing of scale section e: 2^(n(2e-1))
inline big_rational spacing(std::int64_t e, precision p) {
  return pow2_exact(p.n() * (2 * e - 1));
}

inline big_rational value_of(const string_number& x) {
  if (x.is_zero()) return {};
  big_rational v = big_rational(x.mantissa()) * spacing(x.scale(), x.prec());
  return x.sign() < 0 ? big_rational(-v) : v;
}

// nearest representable; ties break toward zero unless told otherwise.
// Nonzero input never rounds to zero (the grid accumulates at 0).
inline string_number round_to(const big_rational& v, precision p,
                              tie_policy ties = tie_policy::toward_zero) {
  if (v.is_zero()) return string_number::zero(p);
  const int s = v.sign() < 0 ? -1 : 1;
  const big_rational a = abs(v);
  const std::int64_t n = p.n();
  // section e holds magnitudes [2^(n(2e-1)), 2^(n(2e+1))]
  const std::int64_t e = floor_div(floor_log2(a) + n, 2 * n);
  const big_rational q = a / spacing(e, p);  // in [1, 2^(2n)]
  big_int k = floor_rat(q);
  const big_rational frac = q - big_rational(k);
  const big_rational half(1, 2);
  if (frac > half || (frac == half && ties == tie_policy::away_from_zero)) ++k;
  if (k > p.mantissa_limit()) return string_number::from_parts(s, 1, e + 1, p);
  return string_number::from_parts(s, std::move(k), e, p);
}

// next number in value order; the mantissa cycle wraps into the next section
inline string_number successor(const string_number& x) {
  if (x.is_zero()) throw std::domain_error("successor: undefined at zero");
  const big_int top = x.prec().mantissa_limit();
  if (x.sign() > 0) {
    if (x.mantissa() < top) return string_number::from_parts(1, x.mantissa() + 1, x.scale(), x.prec());
    return string_number::from_parts(1, 1, x.scale() + 1, x.prec());
  }
  if (x.mantissa() > 1) return string_number::from_parts(-1, x.mantissa() - 1, x.scale(), x.prec());
  return string_number::from_parts(-1, top, x.scale() - 1, x.prec());
}

inline string_number predecessor(const string_number& x) {
  if (x.is_zero()) throw std::domain_error("predecessor: undefined at zero");
  const big_int top = x.prec().mantissa_limit();
  if (x.sign() > 0) {
    if (x.mantissa() > 1) return string_number::from_parts(1, x.mantissa() - 1, x.scale(), x.prec());
    return string_number::from_parts(1, top, x.scale() - 1, x.prec());
  }
  if (x.mantissa() < top) return string_number::from_parts(-1, x.mantissa() + 1, x.scale(), x.prec());
  return string_number::from_parts(-1, 1, x.scale() + 1, x.prec());
}

inline string_number negate(const string_number& x) {
  if (x.is_zero()) return x;
  return string_number::from_parts(-x.sign(), x.mantissa(), x.scale(), x.prec());
}

// value order without materializing values: same-sign sections are disjoint
// and ordered by e, then by m
inline std::strong_ordering compare(const string_number& a, const string_number& b) {
  if (!(a.prec() == b.prec())) throw std::invalid_argument("compare: precision mismatch");
  if (a.sign() != b.sign()) return a.sign() <=> b.sign();
  if (a.sign() == 0) return std::strong_ordering::equal;
  int c;
  if (a.scale() != b.scale())
    c = a.scale() < b.scale() ? -1 : 1;
  else
    c = a.mantissa().compare(b.mantissa());
  if (a.sign() < 0) c = -c;
  return c <=> 0;
}

inline string_number add(const string_number& a, const string_number& b,
                         tie_policy ties = tie_policy::toward_zero) {
  if (!(a.prec() == b.prec())) throw std::invalid_argument("add: precision mismatch");
  return round_to(value_of(a) + value_of(b), a.prec(), ties);
}

inline string_number mul(const string_number& a, const string_number& b,
                         tie_policy ties = tie_policy::toward_zero) {
  if (!(a.prec() == b.prec())) throw std::invalid_argument("mul: precision mismatch");
  return round_to(value_of(a) * value_of(b), a.prec(), ties);
}

inline std::string to_text(const string_number& x) {
  const int n = x.prec().n();
  std::string bits(static_cast<std::size_t>(2 * n), '0');
  for (int i = 0; i < 2 * n; ++i)
    if (bit_test(x.mantissa(), static_cast<unsigned>(i))) bits[static_cast<std::size_t>(2 * n - 1 - i)] = '1';
  std::string out;
  if (x.sign() < 0) out += '-';
  out.append(bits, 0, static_cast<std::size_t>(n));
  out += '.';
  out.append(bits, static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  out += "x2^";
  out += std::to_string(2 * static_cast<std::int64_t>(n) * x.scale());
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const string_number& x) { return os << to_text(x); }

// inverse of to_text; n is inferred from the digit counts, which must match
inline string_number parse_number(std::string_view text) {
  const auto fail = [](const std::string& why) -> string_number {
    throw std::invalid_argument("parse_number: " + why);
  };
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    neg = text[i] == '-';
    ++i;
  }
  const std::size_t dot = text.find('.', i);
  if (dot == std::string_view::npos) return fail("missing binal point");
  const std::size_t marker = text.find("x2^", dot);
  if (marker == std::string_view::npos) return fail("missing x2^ scale marker");
  const std::string_view left = text.substr(i, dot - i);
  const std::string_view right = text.substr(dot + 1, marker - dot - 1);
  if (left.empty() || left.size() != right.size())
    return fail("digit counts before and after the point must match and be >= 1");
  if (left.size() > precision::max_n) return fail("too many digits");
  const int n = static_cast<int>(left.size());
  big_int m = 0;
  for (const auto part : {left, right})
    for (const char c : part) {
      if (c != '0' && c != '1') return fail("digits must be 0 or 1");
      m <<= 1;
      if (c == '1') ++m;
    }
  const std::string_view es = text.substr(marker + 3);
  if (es.empty()) return fail("empty scale exponent");
  std::int64_t big_e = 0;
  const auto [end, ec] = std::from_chars(es.data(), es.data() + es.size(), big_e);
  if (ec != std::errc() || end != es.data() + es.size()) return fail("bad scale exponent");
  if (big_e % (2 * n) != 0) return fail("scale exponent must be a multiple of 2n");
  const std::int64_t e = big_e / (2 * n);
  if (m.is_zero()) {
    if (neg) return fail("zero cannot carry a sign");
    if (e != 0) return fail("zero exists only at scale 0");
    return string_number::zero(precision(n));
  }
  return string_number::from_parts(neg ? -1 : 1, std::move(m), e, precision(n));
}

}  // namespace rn
