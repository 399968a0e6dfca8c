// Prints the built-in expansion parameter table, then a short trace from the
// origin showing the per-cycle growth factor 2^(2 n0) of a stepped point.

#include <rn/inflation.hpp>

#include <iostream>

int main() {
  using namespace rn;
  write_table_text(std::cout, generate_table(builtin_rows()));

  const precision p(1);
  const auto cfg = inflation_config::from_log2_ratio(0, p, 1e6, big_rational(20));
  const space_point start(string_number::from_parts(1, 1, 0, p), 1, 1);
  const auto tr = run_trace(start, space_point::origin(p), 6, cfg);
  std::cout << "\ntwo mantissa cycles at n0 = 1, anchored at the origin:\n";
  write_trace_text(std::cout, tr);
  std::cout << "\naveraged velocity per cycle:\n";
  for (std::int64_t m = 0; m < 2; ++m)
    std::cout << "  cycle " << m << ": " << averaged_velocity(tr, m) << " cm/s\n";
  return 0;
}
