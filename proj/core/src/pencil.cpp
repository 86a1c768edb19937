#include "quadpencil/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace qp {

QuadraticForm::QuadraticForm(const MatrixC& A, double tol) : A_(A) {
    if (A.rows() != A.cols())
        throw Error(ErrorKind::DimensionMismatch, "quadratic form matrix must be square");
    if (A.rows() == 0) throw Error(ErrorKind::DimensionMismatch, "empty quadratic form");
    if ((A - A.transpose()).norm() > tol * A.norm())
        throw Error(ErrorKind::NotSymmetric, "matrix is not symmetric");
    A_ = (A + A.transpose()) / 2.0;
}

Pencil::Pencil(QuadraticForm phi1, QuadraticForm phi2) : phi1_(std::move(phi1)), phi2_(std::move(phi2)) {
    if (phi1_.dim() != phi2_.dim())
        throw Error(ErrorKind::DimensionMismatch, "pencil forms have different dimensions");
}

Pencil::Pencil(const MatrixC& phi1, const MatrixC& phi2, double tol)
    : Pencil(QuadraticForm(phi1, tol), QuadraticForm(phi2, tol)) {}

Pencil Pencil::diagonal(const std::vector<Complex>& tau) {
    const auto n = static_cast<Eigen::Index>(tau.size());
    return Pencil(MatrixC(to_eigen(tau).asDiagonal()), MatrixC::Identity(n, n));
}

BinaryForm::BinaryForm(const CVector& coeffs) : c_(normalize_projective(coeffs)) {}

BinaryForm BinaryForm::from_roots(const std::vector<Complex>& tau) {
    // prod (tau_i s - t) at s = 1 is prod (tau_i - t) = (-1)^n prod (t - tau_i).
    const Polynomial p = Polynomial::from_roots(tau, tau.size() % 2 ? -1.0 : 1.0);
    const int n = static_cast<int>(tau.size());
    CVector c(n + 1);
    for (int k = 0; k <= n; ++k) c(k) = p[n - k];
    return BinaryForm(c);
}

Complex BinaryForm::evaluate(Complex s, Complex t) const {
    const int n = degree();
    Complex acc = 0.0;
    for (int k = 0; k <= n; ++k) acc += c_(k) * std::pow(s, k) * std::pow(t, n - k);
    return acc;
}

Polynomial BinaryForm::dehomogenized() const {
    const int n = degree();
    std::vector<Complex> p(n + 1);
    for (int j = 0; j <= n; ++j) p[j] = c_(n - j);
    return Polynomial(std::move(p));
}

BinaryForm::Roots BinaryForm::roots(double tol) const {
    Roots out;
    const int n = degree();
    const Polynomial p = dehomogenized();
    const int d = p.trimmed(64.0 * std::numeric_limits<double>::epsilon()).degree();
    out.at_infinity = n - d;
    if (d >= 1) {
        for (const auto& r : poly_roots(p, tol)) {
            if (chordal_distance(r, Complex(INFINITY, 0.0)) < kDistinct)
                ++out.at_infinity;
            else
                out.finite.push_back(r);
        }
    }
    return out;
}

double root_distance(const BinaryForm& a, const BinaryForm& b) {
    if (a.degree() != b.degree()) return 1.0;
    const auto ra = a.roots(), rb = b.roots();
    if (ra.at_infinity != rb.at_infinity) return 1.0;
    if (ra.finite.empty()) return 0.0;
    return match_roots(ra.finite, rb.finite).max_distance;
}

BinaryForm discriminant(const Pencil& P) {
    const Eigen::Index n = P.dim();
    const MatrixC& A1 = P.A1();
    const MatrixC& A2 = P.A2();
    const double n1 = A1.norm(), n2 = A2.norm();
    if (n1 == 0.0 || n2 == 0.0)
        throw Error(ErrorKind::DegeneratePencil, "a pencil member is the zero form");

    // Proportional matrices span only a point of the space of quadrics.
    {
        MatrixC stacked(n * n, 2);
        stacked.col(0) = A1.reshaped() / n1;
        stacked.col(1) = A2.reshaped() / n2;
        if (numerical_rank(stacked, kTol) < 2)
            throw Error(ErrorKind::DegeneratePencil, "phi1 and phi2 are linearly dependent");
    }

    // det(A1 - t A2) sampled on a circle of radius |A1|/|A2|; the discrete
    // Fourier transform of the samples gives the coefficients in t.
    const double rho = n1 / n2;
    const Eigen::Index m = n + 1;
    std::vector<Complex> values(m);
    double vmax = 0.0;
    Eigen::Index kmax = 0;
    for (Eigen::Index k = 0; k < m; ++k) {
        const Complex t = rho * std::polar(1.0, 2.0 * std::numbers::pi * k / m);
        const MatrixC M = A1 - t * A2;
        values[k] = M.partialPivLu().determinant();
        if (std::abs(values[k]) >= vmax) {
            vmax = std::abs(values[k]);
            kmax = k;
        }
    }
    // If even the best sampled member is singular, every member is.
    {
        const Complex t = rho * std::polar(1.0, 2.0 * std::numbers::pi * kmax / m);
        const Eigen::VectorXd sv = Eigen::JacobiSVD<MatrixC>(A1 - t * A2).singularValues();
        if (!(sv(n - 1) > 1e-12 * sv(0)))
            throw Error(ErrorKind::DegeneratePencil, "determinant vanishes identically on the pencil");
    }

    // p(t) = sum_j a_j t^j; a_j is the coefficient of s^(n-j) t^j.
    CVector c(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        Complex acc = 0.0;
        for (Eigen::Index k = 0; k < m; ++k)
            acc += values[k] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j * k % m) / m);
        const Complex a = acc / static_cast<double>(m) / std::pow(rho, static_cast<double>(j));
        c(n - j) = a;
    }
    return BinaryForm(c);
}

NonsingularReport is_nonsingular(const Pencil& P, double tol) {
    const BinaryForm disc = discriminant(P);
    const auto r = disc.roots(tol);
    NonsingularReport rep;
    rep.roots = r.finite;
    rep.roots_at_infinity = r.at_infinity;
    rep.nonsingular = r.at_infinity == 0 && min_pairwise_chordal(r.finite) > kDistinct;
    return rep;
}

CVector fix_sign(const CVector& w) {
    const CVector nrm = normalize_projective(w);
    Eigen::Index pivot = 0;
    while (nrm(pivot) != Complex(1.0)) ++pivot;
    const Complex e = w(pivot);
    const bool keep = e.real() > 0.0 || (e.real() == 0.0 && e.imag() > 0.0);
    return keep ? CVector(w) : CVector(-w);
}

void sort_standard_basis(StandardBasis& sb) {
    const std::size_t n = sb.roots.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        const Complex a = sb.roots[i], b = sb.roots[j];
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    StandardBasis out;
    out.basis.resize(sb.basis.rows(), sb.basis.cols());
    out.inverse.resize(sb.inverse.rows(), sb.inverse.cols());
    for (std::size_t k = 0; k < n; ++k) {
        out.basis.col(k) = sb.basis.col(order[k]);
        out.inverse.row(k) = sb.inverse.row(order[k]);
        out.roots.push_back(sb.roots[order[k]]);
    }
    sb = std::move(out);
}

StandardBasis standard_basis(const Pencil& P, double tol) {
    const Eigen::Index n = P.dim();
    const auto rep = is_nonsingular(P, tol);
    if (rep.roots_at_infinity > 0)
        throw Error(ErrorKind::DegenerateForm, "phi2 is degenerate (discriminant root at [0:1])");
    if (!rep.nonsingular)
        throw Error(ErrorKind::DegeneratePencil, "pencil is singular: discriminant roots are not distinct");
    for (const auto& r : rep.roots)
        if (chordal_distance(r, 0.0) <= kDistinct)
            throw Error(ErrorKind::DegenerateForm, "phi1 is degenerate (zero discriminant root)");

    StandardBasis sb;
    sb.basis.resize(n, n);
    const double n2 = P.A2().norm();
    for (Eigen::Index i = 0; i < n; ++i) {
        const Complex tau = rep.roots[i];
        const MatrixC M = P.A1() - tau * P.A2();
        CVector w = homogeneous_nullvector(M, tol).coords();
        w /= w.norm();
        const Complex q = P.phi2()(w);
        if (std::abs(q) <= tol * n2)
            throw Error(ErrorKind::DegenerateForm, "singular direction is isotropic for phi2");
        w /= std::sqrt(q);
        sb.basis.col(i) = fix_sign(w);
        // Rayleigh quotient sharpens the root to the accuracy of w.
        sb.roots.push_back(P.phi1()(sb.basis.col(i)));
    }
    sb.inverse = sb.basis.transpose() * P.A2();
    sort_standard_basis(sb);
    return sb;
}

MatrixC alpha_map(const StandardBasis& sb) {
    return sb.basis * to_eigen(sb.roots).asDiagonal() * sb.inverse;
}

MatrixC alpha_map(const Pencil& P) { return alpha_map(standard_basis(P)); }

Pencil transform_pair(const Pencil& P, const SL2Element& g) {
    if (std::abs(g.det() - 1.0) > kTol)
        throw Error(ErrorKind::NotUnimodular, "ad - bc differs from 1");
    return Pencil(MatrixC(g.a() * P.A1() + g.b() * P.A2()), MatrixC(g.c() * P.A1() + g.d() * P.A2()));
}

Pencil pullback(const Pencil& P, const MatrixC& T, double tol) {
    const Eigen::Index n = P.dim();
    if (T.rows() != n || T.cols() != n)
        throw Error(ErrorKind::DimensionMismatch, "transform has the wrong shape");
    if (numerical_rank(T, tol) < n)
        throw Error(ErrorKind::SingularTransform, "transform is numerically singular");
    return Pencil(MatrixC(T.transpose() * P.A1() * T), MatrixC(T.transpose() * P.A2() * T));
}

} // namespace qp
