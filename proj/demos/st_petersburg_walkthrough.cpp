// Walks through the St. Petersburg numbers: the divergent expectation, the
// truncated price at epsilon = 2^-28, and the two seller quotes.
#include <cmath>
#include <cstdio>

#include "truncprice/truncprice.hpp"

int main() {
    using namespace truncprice;

    const auto game = st_petersburg();
    std::printf("expectation: %s\n", expectation(game).is_unbounded() ? "unbounded" : "finite");

    const double eps = std::ldexp(1.0, -28);
    const auto t = truncated_expectation(game, eps);
    std::printf("epsilon = 2^-28: N = %zu, E = %.17g, retained mass = %.17g\n", t.n_epsilon,
                t.e_epsilon, t.retained_mass);

    for (double k : {1.0, 0.5}) {
        const auto p = buyer_max_price(game, BuyerProfile(eps, k));
        std::printf("buyer with k = %.2f pays at most %.17g\n", k, p.value());
    }

    std::printf("committed seller: %s\n",
                seller_min_price_committed(game).is_unbounded() ? "cannot quote" : "finite");
    std::printf("closeable seller at k = 1.5: %.17g\n",
                seller_quote_closeable(game, eps, 1.5).value());

    const auto dec = verify_decomposition(50);
    std::printf("lottery decomposition, depth 50: %llu mismatches\n",
                static_cast<unsigned long long>(dec.mismatches));
    return 0;
}
