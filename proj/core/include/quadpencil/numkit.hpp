#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "quadpencil/error.hpp"

namespace qp {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using MatrixC = Eigen::MatrixXcd;

// Relative tolerance used wherever the caller does not pass one.
inline constexpr double kTol = 1e-8;
// Two points of the Riemann sphere closer than this are treated as equal.
inline constexpr double kDistinct = 1e-6;

// Coefficients are stored in ascending powers: c[0] + c[1] z + ...
class Polynomial {
public:
    Polynomial() : c_{Complex(0.0)} {}
    explicit Polynomial(std::vector<Complex> coeffs);

    static Polynomial from_roots(const std::vector<Complex>& roots, Complex lead = 1.0);

    const std::vector<Complex>& coeffs() const { return c_; }
    std::size_t size() const { return c_.size(); }
    Complex operator[](std::size_t k) const { return c_[k]; }

    // Index of the last coefficient with modulus above tol * max|c|; -1 for
    // the zero polynomial.
    int degree(double tol = 0.0) const;
    double max_abs() const;

    Complex evaluate(Complex z) const;
    // Returns p(z) and p'(z) from one Horner pass.
    std::pair<Complex, Complex> evaluate_with_derivative(Complex z) const;

    Polynomial trimmed(double tol = 0.0) const;
    Polynomial operator*(const Polynomial& other) const;

private:
    std::vector<Complex> c_;
};

// Roots with multiplicity, by Aberth-Ehrlich iteration followed by Newton
// polishing of isolated roots. Leading coefficients below machine precision
// relative to the largest one are dropped before iterating.
std::vector<Complex> poly_roots(const Polynomial& p, double tol = kTol);

// Elementary symmetric polynomials e_0..e_m of the given values.
std::vector<Complex> elementary_symmetric(const std::vector<Complex>& values);

// A point of projective space. The stored representative has its earliest
// coordinate of maximal modulus equal to exactly 1.
class ProjectiveVector {
public:
    ProjectiveVector() = default;
    explicit ProjectiveVector(const CVector& coords);

    const CVector& coords() const { return v_; }
    Eigen::Index size() const { return v_.size(); }
    Complex operator[](Eigen::Index i) const { return v_(i); }

    // Sine of the angle between the two lines; 0 when equal.
    double distance(const ProjectiveVector& other) const;

private:
    CVector v_;
};

CVector normalize_projective(const CVector& v);
double projective_distance(const CVector& a, const CVector& b);

// Smallest right singular vector of M together with relative singular value
// information. sigma_min and sigma_next are divided by the largest singular
// value; missing singular values (cols > rows) count as zero.
struct SingularInfo {
    CVector vector;
    double sigma_max = 0.0;
    double sigma_min = 0.0;
    double sigma_next = 0.0;
    int nullity = 0;
};
SingularInfo smallest_singular(const MatrixC& M, double tol = kTol);

ProjectiveVector homogeneous_nullvector(const MatrixC& M, double tol = kTol);

// Full-pivot elimination; a pivot counts if it exceeds tol times the first one.
int numerical_rank(const MatrixC& M, double tol = kTol);

// Orthonormal basis of the column space (rank decided at tol).
MatrixC orthonormal_basis(const MatrixC& M, double tol = kTol);
// Largest sine of the principal angles between two column spaces of equal
// dimension; 1 when the dimensions differ.
double subspace_distance(const MatrixC& A, const MatrixC& B, double tol = kTol);
// Rescales rows and columns to unit max-modulus; the rank is unchanged.
MatrixC equilibrate(const MatrixC& M);

// Distance on the Riemann sphere. Infinite arguments are the point at infinity.
double chordal_distance(Complex a, Complex b);

struct RootMatching {
    std::vector<std::size_t> perm; // A[i] is paired with B[perm[i]]
    double max_distance = 0.0;
    double total_distance = 0.0;
};
RootMatching match_roots(const std::vector<Complex>& A, const std::vector<Complex>& B);

double min_pairwise_chordal(const std::vector<Complex>& values);

std::vector<Complex> to_std(const CVector& v);
CVector to_eigen(const std::vector<Complex>& v);

} // namespace qp
