#pragma once

// Constant-rate expansion of a band of space driven by iterated outward
// steps, with the inflation phase ended by a jump in string-number precision.
// A band starting in section e0 at precision n0 must expand by m_I whole
// sections before the averaged step velocity of its innermost shell reaches
// the speed of light; the precision jump to n_I then makes the grid so fine
// that further steps are slower than light everywhere inside the band.

#include "io_util.hpp"
#include "space.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace rn {

inline constexpr double speed_of_light_cm_s = 2.9979e10;

struct inflation_config {
  std::int64_t e0;      // starting scale section of the band's outer edge
  precision n0;         // string-number precision during inflation
  double beta;          // outward steps per second
  double d_cm;          // physical length of one grid spacing unit, cm
  double c_cm_s;        // speed of light, cm/s
  big_rational log2_ratio;  // log2(c / (beta d)), kept exact for threshold math

  static inflation_config from_log2_ratio(std::int64_t e0, precision n0, double beta,
                                          big_rational log2_ratio,
                                          double c = speed_of_light_cm_s) {
    const double d = c / (beta * std::exp2(log2_ratio.convert_to<double>()));
    return {e0, n0, beta, d, c, std::move(log2_ratio)};
  }

  static inflation_config from_hop_length(std::int64_t e0, precision n0, double beta,
                                          double d_cm, double c = speed_of_light_cm_s) {
    // conversion from double is exact, so the stored ratio matches d_cm
    const big_rational ratio(std::log2(c / (beta * d_cm)));
    return {e0, n0, beta, d_cm, c, ratio};
  }
};

inline void validate(const inflation_config& cfg) {
  if (!(cfg.beta > 0)) throw std::invalid_argument("inflation_config: beta must be > 0");
  if (!(cfg.d_cm > 0)) throw std::invalid_argument("inflation_config: d must be > 0");
  if (!(cfg.c_cm_s > 0)) throw std::invalid_argument("inflation_config: c must be > 0");
  const double stated = cfg.log2_ratio.convert_to<double>();
  const double actual = std::log2(cfg.c_cm_s / (cfg.beta * cfg.d_cm));
  if (std::abs(stated - actual) > 1e-9 * std::max(1.0, std::abs(stated)))
    throw std::invalid_argument("inflation_config: log2_ratio inconsistent with c/(beta d)");
}

// a pure power of two, kept as the exponent so huge radii stay exact
struct pow2_value {
  std::int64_t exponent;

  double approx() const { return std::exp2(static_cast<double>(exponent)); }
  big_rational exact() const { return pow2_exact(exponent); }

  // decimal scientific form d.ddde+k computed from the exponent alone
  std::string scientific(int sig_digits = 4) const {
    const long double l = static_cast<long double>(exponent) * 0.301029995663981195213738894724L;
    long double ip = 0;
    long double fr = std::modf(l, &ip);
    if (fr < 0) {
      fr += 1;
      ip -= 1;
    }
    double mant = std::pow(10.0, static_cast<double>(fr));
    if (mant >= 10.0 - 0.5 * std::pow(10.0, 1 - sig_digits)) {
      mant /= 10.0;
      ip += 1;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*fe%+lld", sig_digits - 1, mant,
                  static_cast<long long>(ip));
    return buf;
  }
};

struct inflation_report {
  std::int64_t e0;
  int n0;
  big_rational delta_exact;  // band width in sections, -e0 + log2_ratio/(2 n0) + 1/2
  std::int64_t delta;        // delta_exact to the nearest integer, ties down
  std::int64_t m_I;          // sections the band must expand by: ceil(2 delta_exact)
  big_int j_I;               // outward steps to the stop: m_I (2^(2 n0) - 1)
  double tau_I_sec;          // j_I / beta
  std::int64_t n_I;          // precision after the stop jump
  big_int N_delta;           // lattice points in the band at the start
  pow2_value R_IO, R_FO;     // outer radius at start and stop, in units of d
  pow2_value R_II, R_FI;     // inner radius at start and stop, in units of d
};

// band width in sections, kept exact: delta = -e0 + log2_ratio/(2 n0) + 1/2
inline big_rational band_width(const inflation_config& cfg) {
  return big_rational(-cfg.e0) + cfg.log2_ratio / (2 * cfg.n0.n()) + big_rational(1, 2);
}

inline inflation_report solve_parameters(const inflation_config& cfg) {
  validate(cfg);
  const int n0 = cfg.n0.n();
  const big_rational delta_exact = band_width(cfg);
  if (delta_exact.sign() <= 0)
    throw std::domain_error("solve_parameters: band width must be positive");
  const std::int64_t m_i = ceil_rat(2 * delta_exact).convert_to<std::int64_t>();
  const big_int delta_b = ceil_rat(delta_exact - big_rational(1, 2));
  const std::int64_t delta = delta_b.convert_to<std::int64_t>();
  const big_int cycle = (big_int(1) << static_cast<unsigned>(2 * n0)) - 1;
  const big_int j_i = m_i * cycle;
  const std::int64_t n_i =
      ceil_rat(2 * n0 * delta_exact + cfg.log2_ratio + 2 * n0).convert_to<std::int64_t>();
  const auto radius = [n0](std::int64_t e) { return pow2_value{n0 * (2 * e + 1)}; };
  inflation_report r;
  r.e0 = cfg.e0;
  r.n0 = n0;
  r.delta_exact = delta_exact;
  r.delta = delta;
  r.m_I = m_i;
  r.j_I = j_i;
  r.tau_I_sec = j_i.convert_to<double>() / cfg.beta;
  r.n_I = n_i;
  r.N_delta = delta_b * cycle * floor_pow2_pi(n0) * floor_pow2_pi(n0 + 1);
  r.R_IO = radius(cfg.e0);
  r.R_FO = radius(cfg.e0 + m_i);
  r.R_II = radius(cfg.e0 - delta);
  r.R_FI = radius(cfg.e0 - delta + m_i);
  return r;
}

// Whether the innermost band shell, after m whole-section advances from outer
// section e, steps at or beyond light speed.  Its averaged step velocity is
// beta d 2^(n0 (2(e - delta + m) - 1)); the threshold is inclusive, so the
// least m for which this holds at e0 is exactly m_I.
inline bool superluminal_check(const inflation_config& cfg, std::int64_t m, std::int64_t e) {
  const big_rational sections = 2 * (big_rational(e + m) - band_width(cfg)) - 1;
  return cfg.n0.n() * sections >= cfg.log2_ratio;
}

// exponent bound B: precision n keeps the whole stopped band inside one
// section (radius 2^n grid units, spacing below light speed) iff n >= B
inline big_rational containment_bound(const inflation_config& cfg) {
  const int n0 = cfg.n0.n();
  return 2 * n0 * band_width(cfg) + cfg.log2_ratio + 2 * n0;
}

inline bool section_contains_band(const inflation_config& cfg, std::int64_t n) {
  return big_rational(n) >= containment_bound(cfg);
}

// averaged step velocity right after the precision jump, cm/s
inline double stop_velocity(std::int64_t n_i, const inflation_config& cfg) {
  if (n_i < 0 || n_i > (std::int64_t(1) << 30))
    throw std::invalid_argument("stop_velocity: n out of range");
  return std::ldexp(cfg.beta * cfg.d_cm, static_cast<int>(-n_i));
}

// per-step fractional growth averaged over one mantissa cycle: 2n / (2^(2n) - 1)
inline big_rational growth_rate(precision n) {
  return big_rational(2 * n.n(), (big_int(1) << static_cast<unsigned>(2 * n.n())) - 1);
}

// 2^(growth_rate * j): exact at whole cycles j = m (2^(2n) - 1)
inline big_rational exponential_approximation(precision n, const big_int& j, int bits = 64) {
  return pow2_approx(growth_rate(n) * big_rational(j), bits);
}

// least n at which one grid spacing of the section reaching a given length
// ratio is finer than the ratio itself: smallest n with 2^(2n) >= ratio
inline int smallest_indistinguishable_precision(const big_rational& length_ratio) {
  if (length_ratio.sign() <= 0)
    throw std::invalid_argument("smallest_indistinguishable_precision: ratio must be > 0");
  if (length_ratio <= 1) return 1;
  const std::int64_t lg = floor_log2(length_ratio);
  const std::int64_t l2 = pow2_exact(lg) == length_ratio ? lg : lg + 1;
  const std::int64_t n = (l2 + 1) / 2;
  return n < 1 ? 1 : static_cast<int>(n);
}

// universe radius ~10^28 cm against the Planck length ~10^-33 cm
inline int indistinguishability_bound() {
  return smallest_indistinguishable_precision(big_rational(pow(big_int(10), 61)));
}

struct expansion_trace {
  struct record {
    std::int64_t j;
    string_number D;                   // separation after j steps
    std::optional<big_rational> A;     // D_j / D_0, absent when D_0 = 0
    std::optional<big_rational> a;     // D_{j+1} / D_j, absent on the last row or at D_j = 0
    std::optional<double> V_cm_s;      // (a - 1) D_j beta d
  };
  inflation_config cfg;
  std::vector<record> records;
};

// steps both points outward in lockstep (an origin anchor stays put) and
// records the rounded separation after every step
inline expansion_trace run_trace(space_point p2, space_point p1, std::int64_t steps,
                                 const inflation_config& cfg) {
  validate(cfg);
  if (!(p2.prec() == cfg.n0) || !(p1.prec() == cfg.n0))
    throw std::invalid_argument("run_trace: point precision differs from the config");
  if (steps < 0) throw std::invalid_argument("run_trace: steps must be >= 0");
  expansion_trace tr{cfg, {}};
  tr.records.reserve(static_cast<std::size_t>(steps) + 1);
  string_number d = distance(p2, p1);
  const big_rational d0 = value_of(d);
  for (std::int64_t j = 0;; ++j) {
    expansion_trace::record rec{j, d, {}, {}, {}};
    const big_rational dv = value_of(d);
    if (!d0.is_zero()) rec.A = dv / d0;
    if (j == steps) {
      tr.records.push_back(std::move(rec));
      break;
    }
    p2 = transform_out(p2);
    if (!p1.is_origin()) p1 = transform_out(p1);
    string_number next = distance(p2, p1);
    if (!dv.is_zero()) {
      const big_rational a = value_of(next) / dv;
      rec.a = a;
      rec.V_cm_s = ((a - 1) * dv).convert_to<double>() * cfg.beta * cfg.d_cm;
    }
    tr.records.push_back(std::move(rec));
    d = std::move(next);
  }
  return tr;
}

// separation at the start of cycle m in grid units; the averaged velocity
// over that cycle is beta d times this value
inline big_rational averaged_velocity_exact(const expansion_trace& tr, std::int64_t m) {
  const int n0 = tr.cfg.n0.n();
  const big_int cycle = (big_int(1) << static_cast<unsigned>(2 * n0)) - 1;
  const big_int jm = m * cycle;
  if (tr.records.empty() || m < 0 || jm + cycle + 1 > tr.records.size())
    throw std::out_of_range("averaged_velocity: trace does not cover cycle m");
  return value_of(tr.records[jm.convert_to<std::size_t>()].D);
}

inline double averaged_velocity(const expansion_trace& tr, std::int64_t m) {
  return averaged_velocity_exact(tr, m).convert_to<double>() * tr.cfg.beta * tr.cfg.d_cm;
}

inline void write_trace_csv(std::ostream& os, const expansion_trace& tr) {
  os << "j,D_num,D_den,e_of_D,a_num,a_den,A_num,A_den,V_cm_s\n";
  for (const auto& rec : tr.records) {
    const big_rational dv = value_of(rec.D);
    std::vector<std::string> row{std::to_string(rec.j), numerator(dv).str(),
                                 denominator(dv).str(), std::to_string(rec.D.scale())};
    if (rec.a) {
      row.push_back(numerator(*rec.a).str());
      row.push_back(denominator(*rec.a).str());
    } else {
      row.push_back("");
      row.push_back("");
    }
    if (rec.A) {
      row.push_back(numerator(*rec.A).str());
      row.push_back(denominator(*rec.A).str());
    } else {
      row.push_back("");
      row.push_back("");
    }
    row.push_back(rec.V_cm_s ? fmt_g(*rec.V_cm_s, 9) : "");
    os << join_csv(row);
  }
}

inline void write_trace_text(std::ostream& os, const expansion_trace& tr) {
  std::vector<std::vector<std::string>> rows{{"j", "D", "a", "A", "V_cm_s"}};
  for (const auto& rec : tr.records) {
    const big_rational dv = value_of(rec.D);
    rows.push_back({std::to_string(rec.j),
                    numerator(dv).str() + "/" + denominator(dv).str(),
                    rec.a ? numerator(*rec.a).str() + "/" + denominator(*rec.a).str() : "-",
                    rec.A ? numerator(*rec.A).str() + "/" + denominator(*rec.A).str() : "-",
                    rec.V_cm_s ? fmt_g(*rec.V_cm_s, 9) : "-"});
  }
  write_aligned(os, rows);
}

struct table_defaults {
  double beta = 1e6;
  big_rational log2_ratio = big_rational(20);
  double c_cm_s = speed_of_light_cm_s;
};

// the eleven (e0, n0) rows used by the worked expansion table
inline std::vector<std::pair<std::int64_t, int>> builtin_rows() {
  return {{-3, 20}, {-2, 20}, {-10, 10}, {-5, 10}, {-10, 5}, {-5, 5},
          {-2, 5},  {0, 5},   {-10, 3},  {-5, 3},  {-2, 3}};
}

inline std::vector<inflation_report> generate_table(
    const std::vector<std::pair<std::int64_t, int>>& rows, const table_defaults& def = {}) {
  std::vector<inflation_report> out;
  out.reserve(rows.size());
  for (const auto& [e0, n0] : rows)
    out.push_back(solve_parameters(
        inflation_config::from_log2_ratio(e0, precision(n0), def.beta, def.log2_ratio, def.c_cm_s)));
  return out;
}

inline void write_table_csv(std::ostream& os, const std::vector<inflation_report>& table) {
  os << "e0,n0,mI,delta,R_IO,N_delta,nI,R_FO,tau_I_sec\n";
  for (const auto& r : table)
    os << join_csv({std::to_string(r.e0), std::to_string(r.n0), std::to_string(r.m_I),
                    std::to_string(r.delta), r.R_IO.scientific(), r.N_delta.str(),
                    std::to_string(r.n_I), r.R_FO.scientific(), fmt_g(r.tau_I_sec)});
}

inline void write_table_text(std::ostream& os, const std::vector<inflation_report>& table) {
  std::vector<std::vector<std::string>> rows{
      {"e0", "n0", "mI", "delta", "R_IO", "N_delta", "nI", "R_FO", "tau_I_sec"}};
  for (const auto& r : table)
    rows.push_back({std::to_string(r.e0), std::to_string(r.n0), std::to_string(r.m_I),
                    std::to_string(r.delta), r.R_IO.scientific(), fmt_big(r.N_delta),
                    std::to_string(r.n_I), r.R_FO.scientific(), fmt_g(r.tau_I_sec)});
  write_aligned(os, rows);
}

}  // namespace rn
