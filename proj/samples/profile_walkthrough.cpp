// Minimal tour of the exact machinery: build a discrepancy profile for a
// small prefix, then read off its norms and the running sum two ways.

#include <iostream>

#include "corput/corput.hpp"

int main() {
    using namespace corput;
    const Base b(2);
    const std::uint64_t n = 12;

    const auto profile = DiscrepancyProfile::build(n, b);
    std::cout << "N = " << n << ", base = " << b.value() << "\n";
    std::cout << "points sit on the grid k / " << profile.scale() << "\n\n";

    std::cout << "S(N)  = " << to_fraction_string(profile.integral())
              << "  (digit formula: " << to_fraction_string(s_of_n_digits(n, b)) << ")\n";
    std::cout << "sup   = " << to_fraction_string(profile.sup_exact()) << "\n";
    std::cout << "L2    = " << lp_norm(profile, 2.0).value << "\n";
    std::cout << "L2.5  = " << lp_norm(profile, 2.5).value << "\n\n";

    std::cout << "Delta at a few x:\n";
    for (int k = 1; k <= 4; ++k) {
        const Rational x = make_rational(BigInt(k), BigInt(5));
        std::cout << "  Delta(" << to_fraction_string(x)
                  << ") = " << to_fraction_string(profile.eval_delta(x)) << "\n";
    }
    return 0;
}
