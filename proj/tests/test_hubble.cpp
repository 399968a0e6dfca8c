#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rn/hubble.hpp>

#include <cmath>
#include <sstream>

using namespace rn;

namespace {

hubble_model calibrated() { return model_from_h0(71.0, 30e6); }

}  // namespace

TEST_CASE("rate conversion and model construction") {
  CHECK(h0_per_year(71.0) == doctest::Approx(7.26120361668341e-11).epsilon(1e-12));
  const auto m = calibrated();
  CHECK(m.gamma_per_yr == doctest::Approx(1.0 / 30e6).epsilon(1e-12));
  CHECK(m.epsilon == doctest::Approx(2.178361085005023e-3).epsilon(1e-12));
  // the product reproduces the measured expansion rate
  CHECK(hubble_constant(m) == doctest::Approx(h0_per_year(71.0)).epsilon(1e-12));
  CHECK(std::abs(hubble_constant(m) / 7.3e-11 - 1.0) <= 0.1);
  CHECK_THROWS_AS(model_from_h0(71.0, 0.0), std::invalid_argument);
}

TEST_CASE("precision step count over time") {
  hubble_model m = calibrated();
  m.t_I_sec = 1e9;
  m.n_I = 220;
  CHECK(n_of_t(1e9, m) == 220);
  CHECK(n_of_t(1e9 + 2.7 * 30e6 * year_sec, m) == 222);
  CHECK(n_of_t(1e9 + 100 * 30e6 * year_sec, m) == 320);
  CHECK_THROWS_AS(n_of_t(0.99e9, m), std::domain_error);
}

TEST_CASE("scale factor composes multiplicatively") {
  const auto m = calibrated();
  CHECK(b_factor(big_rational(2), 0, m) == 2.0);
  const double one = b_factor(big_rational(1), 1, m);
  CHECK(one == doctest::Approx(std::exp(m.epsilon)).epsilon(1e-15));
  CHECK(b_factor(big_rational(3, 2), 7, m) ==
        doctest::Approx(b_factor(big_rational(3, 2), 4, m) * std::exp(3 * m.epsilon))
            .epsilon(1e-13));
}

TEST_CASE("staircase geometry at the calibrated point") {
  const auto m = calibrated();
  CHECK(step_spacing_mpc(m) == doctest::Approx(9.198).epsilon(1e-3));
  CHECK(step_height_km_s(m) == doctest::Approx(653.05).epsilon(1e-3));
  const double s = step_spacing_mpc(m);
  const double h = step_height_km_s(m);
  CHECK(recession_velocity_km_s(0.0, m) == 0.0);
  CHECK(recession_velocity_km_s(0.5 * s, m) == 0.0);
  CHECK(recession_velocity_km_s(1.5 * s, m) == doctest::Approx(h));
  CHECK(recession_velocity_km_s(2.5 * s, m) == doctest::Approx(2 * h));
  // constant within a tread, monotone across treads
  CHECK(recession_velocity_km_s(1.2 * s, m) == recession_velocity_km_s(1.7 * s, m));
  double prev = -1;
  for (int k = 0; k < 8; ++k) {
    const double v = recession_velocity_km_s((k + 0.5) * s, m);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK_THROWS_AS(recession_velocity_km_s(-1.0, m), std::invalid_argument);
}

TEST_CASE("epsilon implied by a step period") {
  CHECK(epsilon_limit_for_period(30e6, 71.0) == doctest::Approx(2.178e-3).epsilon(1e-3));
  CHECK(epsilon_limit_for_period(60e6, 71.0) == doctest::Approx(4.357e-3).epsilon(1e-3));
  CHECK(epsilon_limit_for_period(30e6, 71.0) > 2e-3);
  CHECK(epsilon_limit_for_period(30e6, 71.0) < 3e-3);
  CHECK(epsilon_limit_for_period(60e6, 71.0) > 4e-3);
  CHECK(epsilon_limit_for_period(60e6, 71.0) < 5e-3);
  CHECK_THROWS_AS(epsilon_limit_for_period(0.0, 71.0), std::invalid_argument);
}

TEST_CASE("samples csv round-trips") {
  const std::vector<velocity_distance_sample> samples{
      {12.5, 630.25, 65.3}, {40.0, 2612.0, 261.5}, {79.5, 5224.5, 522.75}};
  std::ostringstream os;
  write_samples_csv(os, samples);
  std::istringstream is(os.str());
  const auto back = read_samples_csv(is);
  REQUIRE(back.size() == samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(back[i].distance_mpc == samples[i].distance_mpc);
    CHECK(back[i].velocity_km_s == samples[i].velocity_km_s);
    CHECK(back[i].sigma_km_s == samples[i].sigma_km_s);
  }
  std::istringstream crlf("distance_mpc,velocity_km_s,sigma_km_s\r\n1,2,3\r\n");
  CHECK(read_samples_csv(crlf).size() == 1);
  std::istringstream blank("distance_mpc,velocity_km_s,sigma_km_s\n\n1,2,3\n");
  CHECK(read_samples_csv(blank).size() == 1);
}

TEST_CASE("samples csv rejects malformed input with line numbers") {
  const auto message_of = [](const std::string& text) {
    std::istringstream is(text);
    try {
      read_samples_csv(is);
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message_of("").find("(line 1)") != std::string::npos);
  CHECK(message_of("dist,vel\n1,2,3\n").find("(line 1)") != std::string::npos);
  CHECK(message_of("distance_mpc,velocity_km_s,sigma_km_s\n1,2,3\n4,oops,6\n")
            .find("(line 3)") != std::string::npos);
  CHECK(message_of("distance_mpc,velocity_km_s,sigma_km_s\n1,2\n").find("(line 2)") !=
        std::string::npos);
  CHECK(message_of("distance_mpc,velocity_km_s,sigma_km_s\n1,2,3,4\n").find("(line 2)") !=
        std::string::npos);
}

TEST_CASE("noiseless staircase data leaves the steps in plain sight") {
  const auto m = calibrated();
  synthetic_params sp;
  sp.noise_frac = 0.0;
  const auto samples = synthesize_samples(m, sp);
  REQUIRE(samples.size() == 200);
  const auto rep = step_observability(samples, m);
  CHECK(rep.step_rms_residual_km_s == 0.0);  // the model generated the data
  CHECK(rep.rms_residual_km_s > 0.0);        // a straight line cannot absorb the treads
  CHECK(rep.observable);
  CHECK(rep.step_height_km_s == doctest::Approx(653.05).epsilon(1e-3));
}

TEST_CASE("ten percent scatter hides the calibrated steps") {
  const auto m = calibrated();
  const auto samples = synthesize_samples(m);
  const auto rep = step_observability(samples, m);
  CHECK_FALSE(rep.observable);
  CHECK(rep.H_fit > 55.0);
  CHECK(rep.H_fit < 80.0);
  CHECK(rep.epsilon_upper_limit == doctest::Approx(2 * rep.rms_residual_km_s /
                                                   (m.c_cm_s / 1e5)));
  CHECK_THROWS_AS(step_observability({}, m), std::invalid_argument);
}

TEST_CASE("flat model fits zero and stays hidden") {
  hubble_model flat = calibrated();
  flat.epsilon = 0.0;
  const auto samples = synthesize_samples(flat);
  const auto rep = step_observability(samples, flat);
  CHECK(rep.H_fit == 0.0);
  CHECK(rep.step_height_km_s == 0.0);
  CHECK_FALSE(rep.observable);
}

TEST_CASE("epsilon scan brackets the visibility boundary") {
  const auto samples = synthesize_samples(calibrated());
  const auto scan = scan_epsilon(samples, 71.0);
  CHECK(scan.boundary_epsilon >= 1e-3);
  CHECK(scan.boundary_epsilon <= 6e-3);
  CHECK(scan.rms_residual_km_s > 0.0);
  // the boundary sits above the epsilon that generated the data: steps of the
  // calibrated size are lost in this scatter
  CHECK(scan.boundary_epsilon > calibrated().epsilon);
  const auto none = scan_epsilon(samples, 71.0, 1e-4, 2e-4);
  CHECK(std::isnan(none.boundary_epsilon));
  CHECK_THROWS_AS(scan_epsilon({}, 71.0), std::invalid_argument);
  CHECK_THROWS_AS(scan_epsilon(samples, 71.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(scan_epsilon(samples, 71.0, 1e-3, 1e-4), std::invalid_argument);
  CHECK_THROWS_AS(scan_epsilon(samples, 71.0, 1e-4, 1e-1, 0), std::invalid_argument);
}

TEST_CASE("synthesis is deterministic per seed") {
  const auto a = synthesize_samples(calibrated());
  const auto b = synthesize_samples(calibrated());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].distance_mpc == b[i].distance_mpc);
    CHECK(a[i].velocity_km_s == b[i].velocity_km_s);
  }
  synthetic_params other;
  other.seed = 7;
  const auto c = synthesize_samples(calibrated(), other);
  CHECK(c[0].distance_mpc != a[0].distance_mpc);
  for (const auto& s : a) {
    CHECK(s.distance_mpc >= 5.0);
    CHECK(s.distance_mpc <= 80.0);
  }
  synthetic_params bad;
  bad.count = 0;
  CHECK_THROWS_AS(synthesize_samples(calibrated(), bad), std::invalid_argument);
  bad = {};
  bad.d_max_mpc = 1.0;
  CHECK_THROWS_AS(synthesize_samples(calibrated(), bad), std::invalid_argument);
  bad = {};
  bad.noise_frac = -0.5;
  CHECK_THROWS_AS(synthesize_samples(calibrated(), bad), std::invalid_argument);
}

TEST_CASE("remap to finer precision keeps every value") {
  for (int n = 1; n <= 4; ++n) {
    const precision p(n);
    CAPTURE(n);
    const auto zero = precision_remap(string_number::zero(p));
    CHECK(zero.is_zero());
    CHECK(zero.prec().n() == n + 1);
    for (std::int64_t m = 1; m < (std::int64_t(1) << (2 * n)); ++m) {
      for (const int sign : {1, -1}) {
        const auto x = string_number::from_parts(sign, m, 0, p);
        const auto y = precision_remap(x);
        CHECK(y.prec().n() == n + 1);
        CHECK(y.scale() == 0);
        CHECK(value_of(y) == value_of(x));
      }
    }
  }
  CHECK(to_text(precision_remap(parse_number("0.1x2^0"))) == "00.10x2^0");
  CHECK(to_text(precision_remap(parse_number("11.01x2^0"))) == "011.010x2^0");
  CHECK_THROWS_AS(precision_remap(parse_number("0.1x2^2")), std::domain_error);
}

TEST_CASE("grid population grows about sixteenfold per remap") {
  const double expected[] = {20.8333, 17.5, 16.1905, 16.1273};
  double prev = 1e9;
  for (int n = 1; n <= 4; ++n) {
    const big_int coarse = section_point_count({precision(n), 0});
    const big_int fine = section_point_count({precision(n + 1), 0});
    const double ratio = fine.convert_to<double>() / coarse.convert_to<double>();
    CAPTURE(n);
    CHECK(ratio == doctest::Approx(expected[n - 1]).epsilon(1e-4));
    CHECK(ratio >= 16.0);
    CHECK(ratio <= 21.0);
    CHECK(ratio < prev);
    prev = ratio;
  }
}
