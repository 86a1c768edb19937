#pragma once

#include <array>
#include <optional>
#include <vector>

#include "quadpencil/numkit.hpp"
#include "quadpencil/pencil.hpp"

namespace qp {

// X in P^{n+2}: sum x_i^2 = 0 and sum lambda_i x_i^2 = 0.
struct DiagonalIntersection {
    int n = 0;
    std::vector<Complex> lambdas; // n + 3 values

    int ambient_dim() const { return n + 3; }
    // (diag(lambda), I), the pencil that cuts out X.
    Pencil ambient_pencil() const { return Pencil::diagonal(lambdas); }
};

DiagonalIntersection make_variety(const std::vector<Complex>& lambdas);

struct SurfacePoint {
    ProjectiveVector coords;
    bool phi_general = true; // every coordinate away from zero

    const CVector& x() const { return coords.coords(); }
};

// max(|phi_1(x)|, |phi_2(x)|) / (max|lambda| |x|^2).
double membership_residual(const DiagonalIntersection& X, const CVector& x);

// Throws NotRegular-free InvalidInput unless x has length n+3 and lies on X.
SurfacePoint make_point(const DiagonalIntersection& X, const CVector& x, double tol = kTol);

// x_i^2 = psi(1, lambda_i) / prod_{j != i} (lambda_i - lambda_j), unnormalized.
CVector fiber_squares(const DiagonalIntersection& X, const BinaryForm& psi);

// signs[i] == true flips the sign of the i-th coordinate. An empty sign list
// means all positive.
SurfacePoint point_from_fiber(const DiagonalIntersection& X, const BinaryForm& psi,
                              const std::vector<bool>& signs = {});

struct TangentFrame {
    SurfacePoint point;
    std::array<int, 3> pivots{};   // (p, q, r) play the roles n+1, n+2, n+3
    std::vector<int> others;       // the remaining n indices, ascending
    MatrixC vectors;               // (n+3) x n, column i is e'_i
    Pencil restricted;             // phi_k on the frame
};

TangentFrame tangent_frame(const DiagonalIntersection& X, const SurfacePoint& x);
TangentFrame tangent_frame(const DiagonalIntersection& X, const SurfacePoint& x,
                           const std::array<int, 3>& pivots);

// Indices of the three largest coordinates, ordered by index.
std::array<int, 3> default_pivots(const CVector& x);

enum class ThetaMode { Closed, Brute };

BinaryForm theta(const DiagonalIntersection& X, const SurfacePoint& x, ThetaMode mode = ThetaMode::Closed);
BinaryForm theta(const DiagonalIntersection& X, const SurfacePoint& x, ThetaMode mode,
                 const std::array<int, 3>& pivots);

struct RegularityReport {
    bool phiGeneral = false;
    bool sffNonsingular = false;
    bool sffGeneric = false;
    bool restrictionsNondegenerate = false;
    std::vector<Complex> alphaRoots; // sorted by (Re, Im)

    bool regular() const { return phiGeneral && sffNonsingular && sffGeneric && restrictionsNondegenerate; }
    // Conditions (i), (ii) and (iv): enough for the kernel formulas.
    bool basic() const { return phiGeneral && sffNonsingular && restrictionsNondegenerate; }
};

RegularityReport is_regular(const DiagonalIntersection& X, const SurfacePoint& x);

// Throws NotRegular unless the requested conditions hold; returns the report.
RegularityReport require_regular(const DiagonalIntersection& X, const SurfacePoint& x, bool need_generic);

struct SffDiagonalization {
    TangentFrame frame;
    std::vector<Complex> alphas;
    std::vector<Complex> c;
    MatrixC F;                // row i holds the coefficients of F_i in frame coordinates
    bool ill_conditioned = false;
};

// s phi_1|W - t phi_2|W = -sum_i (alpha_i s - t) c_i F_i^2, with x rescaled so
// that x_i^2 = prod_k (lambda_i - alpha_k) / prod_{j != i} (lambda_i - lambda_j).
SffDiagonalization diagonalize_sff(const DiagonalIntersection& X, const SurfacePoint& x);

struct CombinatorialResidual {
    Complex S0, S1;
    double scale0 = 0.0, scale1 = 0.0; // sums of moduli of the terms
};
CombinatorialResidual combinatorial_residual(const std::vector<Complex>& l, const std::vector<Complex>& a);

// Sorts complex values by (Re, Im).
void sort_roots(std::vector<Complex>& r);

// The representative of x on X whose squares match the fiber formula over
// the given alphas. Returns the factor kappa with x_i^2 = kappa * target_i.
Complex fiber_scale(const DiagonalIntersection& X, const CVector& x, const std::vector<Complex>& alphas);

} // namespace qp
