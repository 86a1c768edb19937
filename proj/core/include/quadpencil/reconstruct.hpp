#pragma once

#include <cstdint>
#include <vector>

#include "quadpencil/numkit.hpp"
#include "quadpencil/poised.hpp"
#include "quadpencil/variety.hpp"

namespace qp {

// Coefficients sigma_0..sigma_{n+3} of sum sigma_k lambda^{n+3-k}, up to scale.
struct SigmaVector {
    CVector coeffs;
};

struct SigmaSolution {
    SigmaVector sigma;
    double residual = 0.0;   // |R z| / (|R| |z|) on the equilibrated system
    double gap = 0.0;        // second smallest relative singular value
    int rank = 0;
    int rows = 0;
};

// One refined sample per alpha set; the first sample uses baseAlphas. Every
// extra set must share exactly its first root with baseAlphas. Empty sign
// lists are drawn from the seed.
std::vector<RefinedSample> samples_from_variety(const DiagonalIntersection& X,
                                                const std::vector<Complex>& baseAlphas,
                                                const std::vector<std::vector<Complex>>& extraAlphaSets,
                                                const std::vector<std::vector<bool>>& signs = {},
                                                std::uint64_t seed = 0);

SigmaSolution solve_sigma(const std::vector<RefinedSample>& samples, int n, double tol = kTol);

std::vector<Complex> recover_lambdas(const SigmaVector& sigma);

bool varieties_match(const std::vector<Complex>& lamA, const std::vector<Complex>& lamB, double tol = kDistinct);

} // namespace qp
