#pragma once

#include <vector>

#include "quadpencil/numkit.hpp"
#include "quadpencil/sl2.hpp"

namespace qp {

class QuadraticForm {
public:
    QuadraticForm() = default;
    // Throws NotSymmetric when ||A - A^T|| > tol ||A||.
    explicit QuadraticForm(const MatrixC& A, double tol = kTol);

    const MatrixC& matrix() const { return A_; }
    Eigen::Index dim() const { return A_.rows(); }
    Complex operator()(const CVector& x) const { return (x.transpose() * A_ * x)(0, 0); }
    Complex bilinear(const CVector& x, const CVector& y) const { return (x.transpose() * A_ * y)(0, 0); }

private:
    MatrixC A_;
};

// An ordered pair of symmetric forms of equal dimension.
class Pencil {
public:
    Pencil() = default;
    Pencil(QuadraticForm phi1, QuadraticForm phi2);
    Pencil(const MatrixC& phi1, const MatrixC& phi2, double tol = kTol);

    static Pencil diagonal(const std::vector<Complex>& tau);

    const QuadraticForm& phi1() const { return phi1_; }
    const QuadraticForm& phi2() const { return phi2_; }
    const MatrixC& A1() const { return phi1_.matrix(); }
    const MatrixC& A2() const { return phi2_.matrix(); }
    Eigen::Index dim() const { return phi1_.dim(); }

private:
    QuadraticForm phi1_, phi2_;
};

// Sum_k c_k s^k t^(n-k), stored with the coefficient vector normalized
// projectively.
class BinaryForm {
public:
    BinaryForm() = default;
    explicit BinaryForm(const CVector& coeffs);
    explicit BinaryForm(const std::vector<Complex>& coeffs) : BinaryForm(to_eigen(coeffs)) {}

    // prod_i (tau_i s - t); the finite roots are exactly the tau_i.
    static BinaryForm from_roots(const std::vector<Complex>& tau);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const CVector& coeffs() const { return c_; }
    Complex evaluate(Complex s, Complex t) const;

    // The polynomial psi(1, t) in ascending powers of t.
    Polynomial dehomogenized() const;

    struct Roots {
        std::vector<Complex> finite; // tau with psi(1, tau) = 0
        int at_infinity = 0;         // multiplicity of the root [s:t] = [0:1]
    };
    Roots roots(double tol = kTol) const;

    // Sine of the angle between coefficient vectors.
    double distance(const BinaryForm& other) const { return projective_distance(c_, other.c_); }

private:
    CVector c_;
};

// Max chordal distance between matched finite root sets; 1 when the root
// structures differ (degree or number of roots at infinity).
double root_distance(const BinaryForm& a, const BinaryForm& b);

BinaryForm discriminant(const Pencil& P);

struct NonsingularReport {
    bool nonsingular = false;
    std::vector<Complex> roots;
    int roots_at_infinity = 0;
};
NonsingularReport is_nonsingular(const Pencil& P, double tol = kTol);

struct StandardBasis {
    MatrixC basis;              // columns w'_1..w'_n
    MatrixC inverse;            // standard coordinates of a vector u are inverse * u
    std::vector<Complex> roots; // tau_i, in the column order
};
StandardBasis standard_basis(const Pencil& P, double tol = kTol);

// Columns sorted so that roots appear in the order (Re, Im) ascending.
void sort_standard_basis(StandardBasis& sb);

MatrixC alpha_map(const Pencil& P);
MatrixC alpha_map(const StandardBasis& sb);

Pencil transform_pair(const Pencil& P, const SL2Element& g);
Pencil pullback(const Pencil& P, const MatrixC& T, double tol = kTol);

// Sign fix for a vector determined up to +-1: the earliest entry of maximal
// modulus gets argument in (-pi/2, pi/2].
CVector fix_sign(const CVector& w);

} // namespace qp
