#include "quadpencil/poised.hpp"

#include <cmath>
#include <numeric>

namespace qp {

namespace {

bool general_coordinates(const CVector& z) {
    const double zmax = z.cwiseAbs().maxCoeff();
    if (zmax == 0.0) return false;
    for (Eigen::Index i = 0; i < z.size(); ++i)
        if (std::abs(z(i)) <= kDistinct * zmax) return false;
    return true;
}

// Reorders the columns of sb so that column i carries the root matched to alphas[i].
StandardBasis align(const StandardBasis& sb, const std::vector<Complex>& alphas) {
    const auto m = match_roots(alphas, sb.roots);
    if (m.max_distance > 1e-6)
        throw Error(ErrorKind::IllConditioned, "standard basis roots disagree with the closed-form discriminant");
    StandardBasis out;
    const Eigen::Index n = sb.basis.cols();
    out.basis.resize(sb.basis.rows(), n);
    out.inverse.resize(n, sb.inverse.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
        out.basis.col(i) = sb.basis.col(m.perm[i]);
        out.inverse.row(i) = sb.inverse.row(m.perm[i]);
        out.roots.push_back(sb.roots[m.perm[i]]);
    }
    return out;
}

} // namespace

PoisedSubspace poised_span(const Pencil& P, const CVector& u) { return poised_span(standard_basis(P), u); }

PoisedSubspace poised_span(const StandardBasis& sb, const CVector& u) {
    if (u.size() != sb.basis.rows())
        throw Error(ErrorKind::DimensionMismatch, "vector length differs from the pencil dimension");
    const CVector z = sb.inverse * u;
    if (!general_coordinates(z))
        throw Error(ErrorKind::NotGeneral, "vector has a vanishing standard coordinate");
    const MatrixC alpha = alpha_map(sb);
    PoisedSubspace S;
    S.basis.resize(u.size(), 3);
    S.basis.col(0) = u;
    S.basis.col(1) = alpha * u;
    S.basis.col(2) = alpha * S.basis.col(1);
    if (numerical_rank(equilibrate(S.basis), kTol) != 3)
        throw Error(ErrorKind::RankDeficient, "u, alpha(u), alpha^2(u) are numerically dependent");
    S.witness = ProjectiveVector(u);
    return S;
}

std::optional<ProjectiveVector> is_poised(const Pencil& P, const MatrixC& span) {
    return is_poised(standard_basis(P), span);
}

std::optional<ProjectiveVector> is_poised(const StandardBasis& sb, const MatrixC& span) {
    const Eigen::Index n = sb.basis.rows();
    if (n < 4) throw Error(ErrorKind::DimensionTooSmall, "poised witnesses are unique only for n >= 4");
    if (span.rows() != n || numerical_rank(equilibrate(span), kTol) != 3)
        throw Error(ErrorKind::RankDeficient, "expected three independent spanning vectors");

    const MatrixC U = orthonormal_basis(span, kTol);
    MatrixC alpha = alpha_map(sb);
    alpha /= alpha.norm();
    const MatrixC Qperp = MatrixC::Identity(n, n) - U * U.adjoint();
    // u = U c is a witness iff alpha u and alpha^2 u stay inside the span.
    MatrixC K(2 * n, 3);
    K.topRows(n) = Qperp * alpha * U;
    K.bottomRows(n) = Qperp * alpha * alpha * U;
    Eigen::JacobiSVD<MatrixC> svd(K, Eigen::ComputeFullV);
    if (svd.singularValues()(2) > 1e-7) return std::nullopt;
    const CVector u = U * svd.matrixV().col(2);

    if (!general_coordinates(sb.inverse * u)) return std::nullopt;
    MatrixC re(n, 3);
    re.col(0) = u;
    re.col(1) = alpha * u;
    re.col(2) = alpha * re.col(1);
    if (subspace_distance(re, span, kTol) > 1e-6) return std::nullopt;
    return ProjectiveVector(u);
}

ProjectiveVector tilde_v(const Pencil& P, const PoisedSubspace& S) {
    const StandardBasis sb = standard_basis(P);
    const auto w = is_poised(sb, S.basis);
    if (!w) throw Error(ErrorKind::NotPoised, "subspace is not poised by the pencil");
    const CVector z = sb.inverse * w->coords();
    return ProjectiveVector(CVector(z.array().square()));
}

CVector refined_coordinates(const std::vector<Complex>& lambdas, const std::vector<Complex>& alphas) {
    const auto n = static_cast<Eigen::Index>(alphas.size());
    CVector z(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Complex num = -1.0, den = 1.0;
        for (Eigen::Index k = 0; k < n; ++k)
            if (k != i) num *= alphas[i] - alphas[k];
        for (const auto& l : lambdas) den *= alphas[i] - l;
        z(i) = num / den;
    }
    return z;
}

KernelSubspace kernel_subspace(const DiagonalIntersection& X, const SurfacePoint& x) {
    const RegularityReport rep = require_regular(X, x, false);
    const int n = X.n;
    KernelSubspace K;
    K.frame = tangent_frame(X, x);
    K.alphas = rep.alphaRoots;

    const CVector xs = x.x() / std::sqrt(fiber_scale(X, x.x(), K.alphas));
    const Complex lp = X.lambdas[K.frame.pivots[0]];
    K.uGen.resize(n, 3);
    for (int k = 0; k < n; ++k) {
        const int i = K.frame.others[k];
        const Complex li = X.lambdas[i];
        for (int l = 0; l < 3; ++l) {
            Complex s = 0.0;
            for (int j = 0; j < n; ++j) {
                const Complex aj = K.alphas[j];
                s += (lp - li) * std::pow(aj, l) / ((li - aj) * (lp - aj));
            }
            K.uGen(k, l) = s * xs(i);
        }
    }
    K.standard = align(standard_basis(K.frame.restricted), K.alphas);
    K.v = K.standard.inverse * K.uGen;
    return K;
}

ProjectiveVector fiber_point_image(const DiagonalIntersection& X, const SurfacePoint& x, const SL2Element& g) {
    const RegularityReport rep = require_regular(X, x, false);
    std::vector<Complex> lp;
    for (const auto& l : X.lambdas) {
        const Complex den = -g.c() * l + g.a();
        if (std::abs(den) <= kTol * (std::abs(g.c() * l) + std::abs(g.a())))
            throw Error(ErrorKind::IllConditioned, "transformed lambda is at infinity");
        lp.push_back((g.d() * l - g.b()) / den);
    }
    for (const auto& a : rep.alphaRoots)
        for (const auto& l : lp)
            if (chordal_distance(a, l) <= kDistinct)
                throw Error(ErrorKind::IllConditioned, "a root coincides with a transformed lambda");
    return ProjectiveVector(refined_coordinates(lp, rep.alphaRoots));
}

TangentImage tangent_image(const DiagonalIntersection& X, const SurfacePoint& x) {
    const RegularityReport rep = require_regular(X, x, true);
    const int n = X.n;
    TangentImage T;
    T.alphas = rep.alphaRoots;
    T.vx = refined_coordinates(X.lambdas, T.alphas);
    T.w0.resize(n);
    T.w1.resize(n);
    T.w2.resize(n);
    for (int i = 0; i < n; ++i) {
        Complex s0 = 0.0, s1 = 0.0, s2 = 0.0;
        for (const auto& l : X.lambdas) {
            const Complex r = 1.0 / (T.alphas[i] - l);
            s0 += r;
            s1 += l * r;
            s2 += l * l * r;
        }
        T.w0(i) = T.vx(i) * s0;
        T.w1(i) = T.vx(i) * s1;
        T.w2(i) = T.vx(i) * s2;
    }
    const CVector a = to_eigen(T.alphas);
    MatrixC M4(n, 4);
    M4 << T.w0, T.w1, T.w2, T.vx;
    MatrixC M5(n, 5);
    M5 << T.w0, a.cwiseProduct(T.w0), a.cwiseProduct(a).cwiseProduct(T.w0), T.vx, a.cwiseProduct(T.vx);
    T.rankT4 = numerical_rank(equilibrate(M4), kTol);
    T.rankT5 = numerical_rank(equilibrate(M5), kTol);
    return T;
}

std::pair<double, double> tangent_relations(const DiagonalIntersection& X, const TangentImage& T) {
    const CVector a = to_eigen(T.alphas);
    Complex lsum = 0.0;
    for (const auto& l : X.lambdas) lsum += l;
    const double m = static_cast<double>(X.lambdas.size());
    const CVector aw0 = a.cwiseProduct(T.w0), aw1 = a.cwiseProduct(T.w1);
    const double r1 = (aw0 - T.w1 - m * T.vx).norm() / (aw0.norm() + T.w1.norm() + m * T.vx.norm());
    const double r2 = (aw1 - T.w2 - lsum * T.vx).norm() / (aw1.norm() + T.w2.norm() + std::abs(lsum) * T.vx.norm());
    return {r1, r2};
}

RefinedSample refined_mu(const DiagonalIntersection& X, const SurfacePoint& x) {
    const RegularityReport rep = require_regular(X, x, true);
    const CVector v = refined_coordinates(X.lambdas, rep.alphaRoots);
    // Distinct alphas keep every entry nonzero, though the dynamic range can be wide.
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!std::isfinite(std::abs(v(i))) || std::abs(v(i)) == 0.0)
            throw Error(ErrorKind::NotRegular, "refined coordinates vanish");
    return {rep.alphaRoots, ProjectiveVector(v)};
}

bool injectivity_certificate(const DiagonalIntersection& X, const SurfacePoint& x) {
    if (X.n <= 4)
        throw Error(ErrorKind::DimensionTooSmall, "the rank-five condition needs n > 4");
    const TangentImage T = tangent_image(X, x);
    return T.rankT4 == 4 && T.rankT5 == 5;
}

} // namespace qp
