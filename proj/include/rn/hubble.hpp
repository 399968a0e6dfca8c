#pragma once

// Post-inflation expansion: precision keeps climbing at a steady rate gamma
// (one step every 1/gamma years), and each precision step stretches distances
// by the factor e^epsilon.  Light from a source D away leaves L = floor(D gamma / c)
// steps before it arrives, so recession velocity is a staircase in distance
// with riser height c epsilon and tread width c / gamma.

#include "inflation.hpp"
#include "io_util.hpp"
#include "string_number.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace rn {

inline constexpr double mpc_cm = 3.0857e24;
inline constexpr double year_sec = 3.15576e7;

// H0 in km/s/Mpc converted to fractional growth per year
inline double h0_per_year(double h0_km_s_mpc) { return h0_km_s_mpc * 1e5 / mpc_cm * year_sec; }

struct hubble_model {
  double gamma_per_yr;   // precision steps per year
  double epsilon;        // fractional stretch per step
  double t_I_sec = 0.0;  // epoch when stepping starts
  std::int64_t n_I = 0;  // precision at t_I
  double c_cm_s = speed_of_light_cm_s;
};

// gamma from the step period, epsilon chosen so gamma * epsilon reproduces H0
inline hubble_model model_from_h0(double h0_km_s_mpc, double period_yr, double t_i_sec = 0.0,
                                  std::int64_t n_i = 0, double c = speed_of_light_cm_s) {
  if (!(period_yr > 0)) throw std::invalid_argument("model_from_h0: period must be > 0");
  const double gamma = 1.0 / period_yr;
  return {gamma, h0_per_year(h0_km_s_mpc) / gamma, t_i_sec, n_i, c};
}

inline std::int64_t n_of_t(double t_sec, const hubble_model& m) {
  if (t_sec < m.t_I_sec) throw std::domain_error("n_of_t: time precedes the stepping epoch");
  const double years = (t_sec - m.t_I_sec) / year_sec;
  return static_cast<std::int64_t>(std::floor(m.gamma_per_yr * years)) + m.n_I;
}

// scale factor after delta_n further steps, seeded by an exact ratio a
inline double b_factor(const big_rational& a, std::int64_t delta_n, const hubble_model& m) {
  return a.convert_to<double>() * std::exp(m.epsilon * static_cast<double>(delta_n));
}

// fractional growth per year, gamma * epsilon
inline double hubble_constant(const hubble_model& m) { return m.gamma_per_yr * m.epsilon; }

inline double step_spacing_mpc(const hubble_model& m) {
  if (!(m.gamma_per_yr > 0)) throw std::domain_error("step_spacing: gamma must be > 0");
  return m.c_cm_s * year_sec / m.gamma_per_yr / mpc_cm;
}

inline double step_height_km_s(const hubble_model& m) { return m.c_cm_s * m.epsilon / 1e5; }

// staircase law: v = c epsilon floor(D gamma / c)
inline double recession_velocity_km_s(double distance_mpc, const hubble_model& m) {
  if (distance_mpc < 0) throw std::invalid_argument("recession_velocity: negative distance");
  const double steps = std::floor(distance_mpc / step_spacing_mpc(m));
  return step_height_km_s(m) * steps;
}

struct velocity_distance_sample {
  double distance_mpc;
  double velocity_km_s;
  double sigma_km_s;
};

inline constexpr const char* samples_csv_header = "distance_mpc,velocity_km_s,sigma_km_s";

inline std::vector<velocity_distance_sample> read_samples_csv(std::istream& in) {
  const auto fail = [](int line, const std::string& why) {
    throw std::invalid_argument("samples csv: " + why + " (line " + std::to_string(line) + ")");
  };
  std::string line;
  int lineno = 1;
  if (!std::getline(in, line)) fail(1, "empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != samples_csv_header) fail(1, "bad header");
  std::vector<velocity_distance_sample> out;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double field[3];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int i = 0; i < 3; ++i) {
      const auto [next, ec] = std::from_chars(p, end, field[i]);
      if (ec != std::errc()) fail(lineno, "malformed number");
      p = next;
      if (i < 2) {
        if (p >= end || *p != ',') fail(lineno, "expected 3 comma-separated fields");
        ++p;
      }
    }
    if (p != end) fail(lineno, "trailing characters");
    out.push_back({field[0], field[1], field[2]});
  }
  return out;
}

inline void write_samples_csv(std::ostream& os, const std::vector<velocity_distance_sample>& samples) {
  os << samples_csv_header << '\n';
  for (const auto& s : samples)
    os << join_csv({fmt_g(s.distance_mpc, 9), fmt_g(s.velocity_km_s, 9), fmt_g(s.sigma_km_s, 9)});
}

struct observability_report {
  double H_fit;                   // km/s/Mpc, least squares through the origin
  double rms_residual_km_s;       // scatter about the fitted line
  double step_rms_residual_km_s;  // scatter about the staircase model
  double step_height_km_s;
  double step_spacing_mpc;
  bool observable;                // riser height clears twice the linear-fit scatter
  double epsilon_upper_limit;     // largest epsilon hidden by this scatter: 2 rms / c
};

inline observability_report step_observability(const std::vector<velocity_distance_sample>& samples,
                                               const hubble_model& m) {
  if (samples.empty()) throw std::invalid_argument("step_observability: no samples");
  double sxy = 0, sxx = 0;
  for (const auto& s : samples) {
    sxy += s.velocity_km_s * s.distance_mpc;
    sxx += s.distance_mpc * s.distance_mpc;
  }
  const double h_fit = sxx > 0 ? sxy / sxx : 0.0;
  double line2 = 0, step2 = 0;
  for (const auto& s : samples) {
    const double rl = s.velocity_km_s - h_fit * s.distance_mpc;
    const double rs = s.velocity_km_s - recession_velocity_km_s(s.distance_mpc, m);
    line2 += rl * rl;
    step2 += rs * rs;
  }
  const double rms = std::sqrt(line2 / static_cast<double>(samples.size()));
  const double height = step_height_km_s(m);
  const double c_km_s = m.c_cm_s / 1e5;
  return {h_fit,
          rms,
          std::sqrt(step2 / static_cast<double>(samples.size())),
          height,
          step_spacing_mpc(m),
          height > 2 * rms,
          2 * rms / c_km_s};
}

struct synthetic_params {
  int count = 200;
  double d_min_mpc = 5.0;
  double d_max_mpc = 80.0;
  double noise_frac = 0.10;
  std::uint64_t seed = 42;
};

// explicit uniform and Box-Muller draws so streams are identical across platforms
class sample_rng {
 public:
  explicit sample_rng(std::uint64_t seed) : eng_(seed) {}

  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double normal() {
    double u1 = uniform01();
    if (u1 <= 0) u1 = 0x1.0p-53;
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
  }

 private:
  std::mt19937_64 eng_;
};

inline std::vector<velocity_distance_sample> synthesize_samples(const hubble_model& m,
                                                                const synthetic_params& sp = {}) {
  if (sp.count < 1) throw std::invalid_argument("synthesize_samples: count must be >= 1");
  if (!(sp.d_min_mpc >= 0) || !(sp.d_max_mpc >= sp.d_min_mpc))
    throw std::invalid_argument("synthesize_samples: bad distance range");
  if (sp.noise_frac < 0) throw std::invalid_argument("synthesize_samples: negative noise");
  sample_rng rng(sp.seed);
  std::vector<velocity_distance_sample> out;
  out.reserve(static_cast<std::size_t>(sp.count));
  for (int i = 0; i < sp.count; ++i) {
    const double dist = sp.d_min_mpc + (sp.d_max_mpc - sp.d_min_mpc) * rng.uniform01();
    const double v_true = recession_velocity_km_s(dist, m);
    const double v = v_true * (1.0 + sp.noise_frac * rng.normal());
    out.push_back({dist, v, sp.noise_frac * v_true});
  }
  return out;
}

struct epsilon_scan_result {
  double boundary_epsilon;   // least scanned epsilon whose risers clear the scatter; NaN if none
  double rms_residual_km_s;  // linear-fit scatter of the data, fixed across the scan
};

// sweeps epsilon on a log grid with gamma adjusted to hold gamma*epsilon at the
// measured rate; observability is monotone in epsilon, so the first hit is the boundary
inline epsilon_scan_result scan_epsilon(const std::vector<velocity_distance_sample>& samples,
                                        double h0_km_s_mpc, double lo = 1e-4, double hi = 1e-1,
                                        int points_per_decade = 200) {
  if (samples.empty()) throw std::invalid_argument("scan_epsilon: no samples");
  if (!(lo > 0) || !(hi > lo)) throw std::invalid_argument("scan_epsilon: bad range");
  if (points_per_decade < 1) throw std::invalid_argument("scan_epsilon: bad grid density");
  const double h_yr = h0_per_year(h0_km_s_mpc);
  double rms = 0;
  {
    hubble_model probe{h_yr / lo, lo};
    rms = step_observability(samples, probe).rms_residual_km_s;
  }
  const int total =
      static_cast<int>(std::ceil(std::log10(hi / lo) * points_per_decade)) + 1;
  for (int i = 0; i < total; ++i) {
    const double eps = lo * std::pow(10.0, static_cast<double>(i) / points_per_decade);
    if (eps > hi) break;
    const hubble_model m{h_yr / eps, eps};
    if (step_observability(samples, m).observable) return {eps, rms};
  }
  return {std::numeric_limits<double>::quiet_NaN(), rms};
}

// epsilon at which steps of the given period would match the measured rate
inline double epsilon_limit_for_period(double period_yr, double h0_km_s_mpc) {
  if (!(period_yr > 0)) throw std::invalid_argument("epsilon_limit_for_period: period must be > 0");
  return h0_per_year(h0_km_s_mpc) * period_yr;
}

// the same scale-0 value one precision finer: digits gain a leading and a
// trailing zero, the mantissa doubles, the value is unchanged
inline string_number precision_remap(const string_number& x) {
  if (x.scale() != 0) throw std::domain_error("precision_remap: defined on scale-0 values");
  const precision finer(x.prec().n() + 1);
  if (x.is_zero()) return string_number::zero(finer);
  return string_number::from_parts(x.sign(), x.mantissa() * 2, 0, finer);
}

}  // namespace rn
