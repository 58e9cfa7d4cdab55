// Normalized running-sum deviations against the standard normal: the
// empirical CDF tightens as the scan length grows.

#include <iostream>

#include "corput/corput.hpp"

int main() {
    using namespace corput;
    const Base b(2);
    std::vector<double> grid;
    for (double x = -3.0; x <= 3.0; x += 0.5) grid.push_back(x);

    for (unsigned e : {12u, 16u, 20u}) {
        const std::uint64_t m_total = 1ull << e;
        const CltReport rep = clt_scan(m_total, b, grid, {}, ScanMode::fast, 2);
        std::cout << "M = 2^" << e << "  ks = " << rep.ks_distance
                  << "  envelope = " << rep.theory_envelope << "\n";
    }

    const TailReport tail = tail_scan(1ull << 20, b, 3.0, 2);
    std::cout << "\ntail lambda=3: fraction = " << tail.empirical_fraction
              << ", bound = " << tail.bound << ", satisfied = " << std::boolalpha
              << tail.satisfied << "\n";
    return 0;
}
