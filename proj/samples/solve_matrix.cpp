// Solves a discrete logarithm for a singular 3x3 matrix over Z_10 and
// prints the cycle structure next to the recovered exponent.

#include <iostream>

#include "sgdlp/sgdlp.hpp"

int main() {
  using namespace sgdlp;
  MatrixModPlatform platform(10, 3);
  auto const        g = platform.element({2, 1, 0, 0, 3, 1, 5, 0, 0});
  Exponent const    x = 123456789;

  DlpInstance<MatrixModPlatform> inst{g, power(platform, g, x)};
  Rng                            rng(7);
  auto                           sol = solve_periodic(platform, inst, rng);
  auto                           cs  = brute_force_structure(platform, g, 1u << 20);

  std::cout << "l=" << cs.index << " n=" << cs.period << " t=" << cs.threshold << "\n";
  std::cout << "k=" << sol.k << " (x mod n = " << x % cs.period
            << ", k mod n = " << sol.k % cs.period << ")\n";
  std::cout << sol.trace.records();
}
