// Prints c(n,m,k) for small n, m on a catalog hypergroup (default legendre).

#include <iostream>
#include <string>

#include "hypermoment/hypermoment.hpp"

int main(int argc, char** argv)
{
    using namespace hypermoment;
    const std::string name = argc > 1 ? argv[1] : "legendre";
    const auto h = Hypergroup::catalog(name);
    for (std::uint64_t n = 0; n <= 4; ++n) {
        for (std::uint64_t m = 0; m <= n; ++m) {
            std::cout << "delta_" << n << " * delta_" << m << " =";
            const Measure mu = h.linearize(n, m);
            for (const auto& [k, w] : mu.atoms())
                std::cout << "  " << w << " delta_" << k;
            std::cout << '\n';
        }
    }
}
