#pragma once

#include <optional>
#include <vector>

#include "quadpencil/numkit.hpp"
#include "quadpencil/pencil.hpp"
#include "quadpencil/sl2.hpp"
#include "quadpencil/variety.hpp"

namespace qp {

// span{u, alpha(u), alpha^2(u)} for a general vector u.
struct PoisedSubspace {
    MatrixC basis; // n x 3, columns u, alpha u, alpha^2 u
    ProjectiveVector witness;
};

PoisedSubspace poised_span(const Pencil& P, const CVector& u);
PoisedSubspace poised_span(const StandardBasis& sb, const CVector& u);

// The witness [u] of a poised 3-space, if there is one.
std::optional<ProjectiveVector> is_poised(const Pencil& P, const MatrixC& span);
std::optional<ProjectiveVector> is_poised(const StandardBasis& sb, const MatrixC& span);

// Squared standard coordinates of the witness.
ProjectiveVector tilde_v(const Pencil& P, const PoisedSubspace& S);

// -prod_{k != i}(alpha_i - alpha_k) / prod_j (alpha_i - lambda_j), i = 1..n.
CVector refined_coordinates(const std::vector<Complex>& lambdas, const std::vector<Complex>& alphas);

struct KernelSubspace {
    TangentFrame frame;
    std::vector<Complex> alphas; // sorted; column i of the standard basis belongs to alphas[i]
    StandardBasis standard;      // of the restricted pencil, aligned with alphas
    MatrixC uGen;                // n x 3 frame coordinates of u^(0), u^(1), u^(2)
    MatrixC v;                   // n x 3 standard coordinates of the same vectors

    CVector v0() const { return v.col(0); }
    // The generators as vectors of the ambient space.
    MatrixC ambient() const { return frame.vectors * uGen; }
};

KernelSubspace kernel_subspace(const DiagonalIntersection& X, const SurfacePoint& x);

ProjectiveVector fiber_point_image(const DiagonalIntersection& X, const SurfacePoint& x, const SL2Element& g);

struct TangentImage {
    std::vector<Complex> alphas;
    CVector w0, w1, w2, vx;
    int rankT4 = 0;
    int rankT5 = 0;
};

TangentImage tangent_image(const DiagonalIntersection& X, const SurfacePoint& x);

// Relative residuals of alpha(w0) - w1 = (n+3) vx and alpha(w1) - w2 = (sum lambda) vx.
std::pair<double, double> tangent_relations(const DiagonalIntersection& X, const TangentImage& T);

struct RefinedSample {
    std::vector<Complex> alphas;
    ProjectiveVector v;
};

RefinedSample refined_mu(const DiagonalIntersection& X, const SurfacePoint& x);

bool injectivity_certificate(const DiagonalIntersection& X, const SurfacePoint& x);

} // namespace qp
