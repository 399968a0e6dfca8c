// Tour of the finite-binary-string numbers at precision n = 2: parsing,
// grid spacing, stepping, rounding and exact-then-round arithmetic.

#include <rn/string_number.hpp>

#include <iostream>

int main() {
  using namespace rn;
  const precision p(2);

  const string_number x = parse_number("10.10x2^4");
  std::cout << "parsed " << x << ", exact value " << value_of(x) << '\n';

  std::cout << "\ngrid spacing by scale section:\n";
  for (std::int64_t e = -1; e <= 2; ++e)
    std::cout << "  e = " << e << ": " << spacing(e, p) << '\n';

  std::cout << "\nfive successor steps from " << x << ":\n";
  string_number w = x;
  for (int i = 0; i < 5; ++i) {
    w = successor(w);
    std::cout << "  " << w << " = " << value_of(w) << '\n';
  }

  std::cout << "\nrounding 1/3 gives " << round_to(big_rational(1, 3), p) << " = "
            << value_of(round_to(big_rational(1, 3), p)) << '\n';
  std::cout << "halfway cases pick a side: 96 rounds to "
            << round_to(big_rational(96), p) << " toward zero, "
            << round_to(big_rational(96), p, tie_policy::away_from_zero) << " away\n";

  std::cout << "\narithmetic rounds the exact result back onto the grid:\n";
  const auto show = [](const char* a, const char* b, bool product) {
    const string_number x1 = parse_number(a);
    const string_number x2 = parse_number(b);
    const string_number r = product ? mul(x1, x2) : add(x1, x2);
    std::cout << "  " << a << (product ? " * " : " + ") << b << " = " << r << " = "
              << value_of(r) << '\n';
  };
  show("00.10x2^8", "00.10x2^4", false);
  show("10.10x2^4", "11.10x2^4", false);
  show("01.01x2^4", "11.01x2^8", true);
  show("00.11x2^4", "10.01x2^-8", true);
  return 0;
}
