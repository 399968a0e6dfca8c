#pragma once

// Command-line front end.  Subcommands: table (expansion parameter table),
// simulate (outward-step trace), num (exact string-number arithmetic),
// hubble (velocity-distance staircase analysis).  Exit codes: 0 success,
// 2 usage or input errors, 1 internal errors.

#include "hubble.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace rn::cli {

namespace detail {

inline std::pair<std::int64_t, int> parse_row_spec(const std::string& spec) {
  const auto comma = spec.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("table: --row expects 'e0,n0', got '" + spec + "'");
  std::size_t used1 = 0, used2 = 0;
  std::int64_t e0 = 0;
  int n0 = 0;
  try {
    e0 = std::stoll(spec.substr(0, comma), &used1);
    n0 = std::stoi(spec.substr(comma + 1), &used2);
  } catch (const std::exception&) {
    throw std::invalid_argument("table: --row expects 'e0,n0', got '" + spec + "'");
  }
  if (used1 != comma || used2 != spec.size() - comma - 1)
    throw std::invalid_argument("table: --row expects 'e0,n0', got '" + spec + "'");
  return {e0, n0};
}

inline tie_policy ties_from_name(const std::string& name) {
  return name == "away" ? tie_policy::away_from_zero : tie_policy::toward_zero;
}

inline void render_hubble_report(std::ostream& os, const observability_report& rep,
                                 const epsilon_scan_result* scan, const std::string& format) {
  const auto verdict = rep.observable ? "observable" : "hidden";
  if (format == "csv") {
    os << "key,value\n";
    os << join_csv({"H_fit_km_s_mpc", fmt_g(rep.H_fit)});
    os << join_csv({"rms_residual_km_s", fmt_g(rep.rms_residual_km_s)});
    os << join_csv({"step_rms_residual_km_s", fmt_g(rep.step_rms_residual_km_s)});
    os << join_csv({"step_height_km_s", fmt_g(rep.step_height_km_s)});
    os << join_csv({"step_spacing_mpc", fmt_g(rep.step_spacing_mpc)});
    os << join_csv({"verdict", verdict});
    os << join_csv({"epsilon_upper_limit", fmt_g(rep.epsilon_upper_limit)});
    if (scan) {
      os << join_csv({"scan_boundary_epsilon", fmt_g(scan->boundary_epsilon)});
      os << join_csv({"scan_rms_residual_km_s", fmt_g(scan->rms_residual_km_s)});
    }
    return;
  }
  os << "H_fit: " << fmt_g(rep.H_fit) << " km/s/Mpc\n";
  os << "rms_residual: " << fmt_g(rep.rms_residual_km_s) << " km/s\n";
  os << "step_rms_residual: " << fmt_g(rep.step_rms_residual_km_s) << " km/s\n";
  os << "step_height: " << fmt_g(rep.step_height_km_s) << " km/s\n";
  os << "step_spacing: " << fmt_g(rep.step_spacing_mpc) << " Mpc\n";
  os << "verdict: " << verdict << '\n';
  os << "epsilon_upper_limit: " << fmt_g(rep.epsilon_upper_limit) << '\n';
  if (scan) {
    os << "scan_boundary_epsilon: " << fmt_g(scan->boundary_epsilon) << '\n';
    os << "scan_rms_residual: " << fmt_g(scan->rms_residual_km_s) << " km/s\n";
  }
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"discrete scale-invariant numbers, expanding bands and stepped recession laws"};
  app.name("rnspace");
  app.require_subcommand(1);

  std::string format = "csv";
  std::string output;
  std::uint64_t seed = 42;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "text"}));
  app.add_option("--output", output, "write output to a file instead of stdout");
  app.add_option("--seed", seed, "seed for synthetic data");

  std::ostringstream buffer;

  // table
  auto* table = app.add_subcommand("table", "solve expansion parameters for (e0, n0) rows");
  table->fallthrough();
  bool builtin = false;
  std::int64_t t_e0 = 0;
  int t_n0 = 0;
  std::vector<std::string> row_specs;
  double t_beta = 1e6;
  double t_log2_ratio = 20.0;
  double t_c = speed_of_light_cm_s;
  table->add_flag("--paper", builtin, "use the built-in eleven example rows");
  auto* opt_e0 = table->add_option("--e0", t_e0, "starting section of a single row");
  auto* opt_n0 = table->add_option("--n0", t_n0, "precision of a single row");
  table->add_option("--row", row_specs, "extra row as 'e0,n0' (repeatable)");
  table->add_option("--beta", t_beta, "steps per second");
  table->add_option("--log2-ratio", t_log2_ratio, "log2 of c/(beta d)");
  table->add_option("--c", t_c, "speed of light, cm/s");
  table->callback([&] {
    if (opt_e0->count() != opt_n0->count())
      throw std::invalid_argument("table: --e0 and --n0 must be given together");
    std::vector<std::pair<std::int64_t, int>> rows;
    if (builtin) rows = builtin_rows();
    if (opt_e0->count()) rows.emplace_back(t_e0, t_n0);
    for (const auto& spec : row_specs) rows.push_back(detail::parse_row_spec(spec));
    table_defaults def;
    def.beta = t_beta;
    def.log2_ratio = big_rational(t_log2_ratio);
    def.c_cm_s = t_c;
    const auto reports = generate_table(rows, def);
    if (format == "text")
      write_table_text(buffer, reports);
    else
      write_table_csv(buffer, reports);
  });

  // num
  auto* num = app.add_subcommand("num", "exact string-number arithmetic");
  num->fallthrough();
  std::string op;
  std::vector<std::string> operands;
  int expected_n = 0;
  std::string ties = "zero";
  num->add_option("op", op, "add | mul | succ | pred")
      ->required()
      ->check(CLI::IsMember({"add", "mul", "succ", "pred"}));
  num->add_option("operands", operands, "numbers like 10.10x2^4");
  num->add_option("--n", expected_n, "require operands to have this precision");
  num->add_option("--ties", ties, "rounding tie direction")->check(CLI::IsMember({"zero", "away"}));
  num->callback([&] {
    const std::size_t need = (op == "add" || op == "mul") ? 2 : 1;
    if (operands.size() != need)
      throw std::invalid_argument("num: '" + op + "' takes " + std::to_string(need) +
                                  " operand(s), got " + std::to_string(operands.size()));
    std::vector<string_number> xs;
    for (const auto& text : operands) {
      string_number x = parse_number(text);
      if (expected_n && x.prec().n() != expected_n)
        throw std::invalid_argument("num: '" + text + "' has precision " +
                                    std::to_string(x.prec().n()) + ", expected " +
                                    std::to_string(expected_n));
      xs.push_back(std::move(x));
    }
    const tie_policy tp = detail::ties_from_name(ties);
    string_number result = op == "add"   ? add(xs[0], xs[1], tp)
                           : op == "mul" ? mul(xs[0], xs[1], tp)
                           : op == "succ" ? successor(xs[0])
                                          : predecessor(xs[0]);
    buffer << to_text(result) << '\n';
  });

  // simulate
  auto* sim = app.add_subcommand("simulate", "trace of outward steps for a point pair");
  sim->fallthrough();
  int s_n0 = 1;
  std::int64_t s_r = 1, s_e = 0, s_r1 = 0, s_e1 = 0;
  std::int64_t s_theta = 1, s_phi = 1;
  std::int64_t s_steps = 0, s_cycles = 0;
  bool s_force = false;
  double s_beta = 1e6;
  double s_log2_ratio = 20.0;
  sim->add_option("--n0", s_n0, "precision")->required();
  sim->add_option("--r", s_r, "radial mantissa of the traced point")->required();
  sim->add_option("--e", s_e, "scale section of the traced point");
  auto* opt_r1 = sim->add_option("--r1", s_r1, "radial mantissa of the anchor (default: origin)");
  sim->add_option("--e1", s_e1, "scale section of the anchor");
  sim->add_option("--theta-index", s_theta, "shared polar angle index");
  sim->add_option("--phi-index", s_phi, "shared azimuthal angle index");
  auto* opt_steps = sim->add_option("--steps", s_steps, "number of outward steps");
  auto* opt_cycles = sim->add_option("--cycles", s_cycles, "steps given as whole mantissa cycles");
  sim->add_flag("--force", s_force, "allow more than 10^8 steps");
  sim->add_option("--beta", s_beta, "steps per second");
  sim->add_option("--log2-ratio", s_log2_ratio, "log2 of c/(beta d)");
  sim->callback([&] {
    if (opt_steps->count() == opt_cycles->count())
      throw std::invalid_argument("simulate: give exactly one of --steps or --cycles");
    const precision p(s_n0);
    big_int total;
    const big_int cycle = p.mantissa_limit();
    if (opt_cycles->count()) {
      if (s_cycles < 1) throw std::invalid_argument("simulate: --cycles must be >= 1");
      total = s_cycles * cycle;
    } else {
      if (s_steps < 1) throw std::invalid_argument("simulate: --steps must be >= 1");
      total = s_steps;
    }
    if (total > 100000000 && !s_force)
      throw std::invalid_argument("simulate: more than 10^8 steps; pass --force to run anyway");
    if (total > (big_int(1) << 62)) throw std::invalid_argument("simulate: step count overflows");
    const auto cfg = inflation_config::from_log2_ratio(s_e, p, s_beta, big_rational(s_log2_ratio));
    const space_point p2(string_number::from_parts(1, s_r, s_e, p), s_theta, s_phi);
    const space_point p1 = opt_r1->count()
                               ? space_point(string_number::from_parts(1, s_r1, s_e1, p), s_theta, s_phi)
                               : space_point::origin(p);
    const auto trace = run_trace(p2, p1, total.convert_to<std::int64_t>(), cfg);
    if (format == "text") {
      write_trace_text(buffer, trace);
      if (opt_cycles->count()) {
        buffer << '\n';
        for (std::int64_t m = 0; m < s_cycles; ++m) {
          buffer << "cycle " << m << ": <V> = " << fmt_g(averaged_velocity(trace, m), 9) << " cm/s";
          if (m > 0) {
            const big_rational ratio =
                averaged_velocity_exact(trace, m) / averaged_velocity_exact(trace, m - 1);
            buffer << ", ratio to previous = " << numerator(ratio).str();
            if (denominator(ratio) != 1) buffer << '/' << denominator(ratio).str();
          }
          buffer << '\n';
        }
      }
    } else {
      write_trace_csv(buffer, trace);
    }
  });

  // hubble
  auto* hub = app.add_subcommand("hubble", "stepped recession-velocity analysis");
  hub->fallthrough();
  std::string input;
  bool synthetic = false;
  double h_h0 = 71.0;
  double h_period_myr = 30.0;
  double h_gamma = 0.0;
  double h_epsilon = 0.0;
  double h_t_i = 0.0;
  std::int64_t h_n_i = 0;
  int h_samples = 200;
  double h_dmin = 5.0, h_dmax = 80.0, h_noise = 0.10;
  bool h_scan = false;
  bool h_dump = false;
  hub->add_option("--input", input, "velocity-distance CSV file");
  hub->add_flag("--synthetic", synthetic, "generate a synthetic dataset instead");
  hub->add_option("--h0", h_h0, "measured rate, km/s/Mpc");
  hub->add_option("--gamma-period-myr", h_period_myr, "precision-step period, Myr");
  auto* opt_gamma = hub->add_option("--gamma", h_gamma, "precision steps per year (overrides period)");
  auto* opt_eps = hub->add_option("--epsilon", h_epsilon, "stretch per step (default: derived from --h0)");
  hub->add_option("--t-i", h_t_i, "stepping epoch, s");
  hub->add_option("--n-i", h_n_i, "precision at the stepping epoch");
  hub->add_option("--samples", h_samples, "synthetic sample count");
  hub->add_option("--dmin", h_dmin, "synthetic minimum distance, Mpc");
  hub->add_option("--dmax", h_dmax, "synthetic maximum distance, Mpc");
  hub->add_option("--noise", h_noise, "synthetic fractional velocity scatter");
  hub->add_flag("--scan-epsilon", h_scan, "scan epsilon for the observability boundary");
  hub->add_flag("--dump-samples", h_dump, "print the dataset instead of the analysis");
  hub->callback([&] {
    if (synthetic == !input.empty())
      throw std::invalid_argument("hubble: give exactly one of --input or --synthetic");
    hubble_model model;
    if (opt_gamma->count()) {
      if (!(h_gamma > 0)) throw std::invalid_argument("hubble: --gamma must be > 0");
      model = hubble_model{h_gamma, h0_per_year(h_h0) / h_gamma, h_t_i, h_n_i};
    } else {
      if (!(h_period_myr > 0)) throw std::invalid_argument("hubble: --gamma-period-myr must be > 0");
      model = model_from_h0(h_h0, h_period_myr * 1e6, h_t_i, h_n_i);
    }
    if (opt_eps->count()) {
      if (h_epsilon < 0) throw std::invalid_argument("hubble: --epsilon must be >= 0");
      model.epsilon = h_epsilon;
    }
    std::vector<velocity_distance_sample> samples;
    if (synthetic) {
      synthetic_params sp;
      sp.count = h_samples;
      sp.d_min_mpc = h_dmin;
      sp.d_max_mpc = h_dmax;
      sp.noise_frac = h_noise;
      sp.seed = seed;
      samples = synthesize_samples(model, sp);
    } else {
      std::ifstream file(input);
      if (!file) throw std::invalid_argument("hubble: cannot open input file '" + input + "'");
      samples = read_samples_csv(file);
    }
    if (h_dump) {
      write_samples_csv(buffer, samples);
      return;
    }
    const auto rep = step_observability(samples, model);
    epsilon_scan_result scan{};
    if (h_scan) scan = scan_epsilon(samples, h_h0);
    detail::render_hubble_report(buffer, rep, h_scan ? &scan : nullptr, format);
  });

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }

  if (output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(output, std::ios::binary);
    if (!file) {
      err << "error: cannot open output file '" << output << "'\n";
      return 2;
    }
    file << buffer.str();
  }
  return 0;
}

inline int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(std::move(args), std::cout, std::cerr);
}

}  // namespace rn::cli
