#include "quadpencil/sampling.hpp"

#include <algorithm>

namespace qp {

Complex random_complex(Rng& rng, double r) {
    std::uniform_real_distribution<double> u(-r, r);
    const double re = u(rng);
    return {re, u(rng)};
}

std::vector<Complex> random_separated(Rng& rng, int count, double r, double sep,
                                      const std::vector<Complex>& avoid) {
    std::vector<Complex> out;
    int attempts = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++attempts > 100000) throw Error(ErrorKind::NoConvergence, "could not place separated points");
        const Complex z = random_complex(rng, r);
        auto far = [&](Complex w) { return std::abs(z - w) >= sep; };
        if (std::all_of(out.begin(), out.end(), far) && std::all_of(avoid.begin(), avoid.end(), far))
            out.push_back(z);
    }
    return out;
}

DiagonalIntersection random_variety(Rng& rng, int n) {
    return make_variety(random_separated(rng, n + 3, 1.0, 0.05, {Complex(0.0)}));
}

std::vector<bool> random_signs(Rng& rng, int count) {
    std::bernoulli_distribution b(0.5);
    std::vector<bool> s(count);
    for (int i = 0; i < count; ++i) s[i] = b(rng);
    return s;
}

RegularSample random_regular_point(Rng& rng, const DiagonalIntersection& X, bool need_generic, int max_tries) {
    for (int t = 0; t < max_tries; ++t) {
        auto avoid = X.lambdas;
        avoid.push_back(0.0);
        auto alphas = random_separated(rng, X.n, 1.0, 0.05, avoid);
        sort_roots(alphas);
        const auto signs = random_signs(rng, X.ambient_dim());
        try {
            SurfacePoint p = point_from_fiber(X, BinaryForm::from_roots(alphas), signs);
            const RegularityReport rep = is_regular(X, p);
            if (need_generic ? rep.regular() : rep.basic()) return {p, alphas};
        } catch (const Error&) {
        }
    }
    throw Error(ErrorKind::NotRegular, "no regular point found");
}

} // namespace qp
