#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "quadpencil/numkit.hpp"
#include "quadpencil/variety.hpp"

namespace qp {

using Rng = std::mt19937_64;

// Uniform in the square [-r, r] x [-r, r].
Complex random_complex(Rng& rng, double r = 1.0);

// n values in the box of radius r, pairwise at least sep apart and at
// least sep away from every entry of avoid.
std::vector<Complex> random_separated(Rng& rng, int count, double r, double sep,
                                      const std::vector<Complex>& avoid = {});

DiagonalIntersection random_variety(Rng& rng, int n);

struct RegularSample {
    SurfacePoint point;
    std::vector<Complex> alphas; // the roots used to build the point, sorted
};

// A point over random distinct alphas with random signs. With need_generic
// the point satisfies all four regularity conditions, otherwise (i), (ii), (iv).
RegularSample random_regular_point(Rng& rng, const DiagonalIntersection& X, bool need_generic = true,
                                   int max_tries = 100);

std::vector<bool> random_signs(Rng& rng, int count);

} // namespace qp
