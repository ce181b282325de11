// Rank-2, order-2 moment functions on the Chebyshev hypergroup, printed next
// to the closed forms in terms of T_n'(lambda) and T_n''(lambda).

#include <iostream>

#include "hypermoment/hypermoment.hpp"

using namespace hypermoment;

int main()
{
    const auto h = Hypergroup::catalog("chebyshev1");
    MomentSeed seed{2, 2, {}};
    seed.values[{0, 0}] = Scalar::ratio(1, 2);
    seed.values[{1, 0}] = Scalar(1);
    seed.values[{0, 1}] = Scalar::ratio(2, 3);
    seed.values[{1, 1}] = Scalar::ratio(1, 5);
    seed.values[{2, 0}] = Scalar(0);
    seed.values[{0, 2}] = Scalar(-1);

    const auto table = moment_table(h, seed, 6);
    const Scalar& lambda = seed.values.at({0, 0});
    const Scalar& c11 = seed.values.at({1, 1});
    const Scalar& c10 = seed.values.at({1, 0});
    const Scalar& c01 = seed.values.at({0, 1});

    for (std::uint64_t n = 0; n <= table.n_max(); ++n) {
        const auto p = h.basis_polynomial(n);
        const Scalar d1 = evaluate(derivative(p, 1), lambda);
        const Scalar d2 = evaluate(derivative(p, 2), lambda);
        const Scalar closed = c10 * c01 * d2 + c11 * d1;
        std::cout << "n=" << n << "  phi_00=" << table.at({0, 0}, n) << "  phi_11=" << table.at({1, 1}, n)
                  << "  closed form=" << closed << (closed == table.at({1, 1}, n) ? "  ok" : "  MISMATCH") << '\n';
    }
}
