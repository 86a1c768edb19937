#include "quadpencil/variety.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "quadpencil/moduli.hpp"

namespace qp {

namespace {

// lambda and x permuted into the layout (others..., p, q, r).
struct Relabeled {
    std::vector<Complex> lam;
    std::vector<Complex> x;
};

Relabeled relabel(const DiagonalIntersection& X, const CVector& x, const std::vector<int>& others,
                  const std::array<int, 3>& piv) {
    Relabeled r;
    for (int i : others) {
        r.lam.push_back(X.lambdas[i]);
        r.x.push_back(x(i));
    }
    for (int i : piv) {
        r.lam.push_back(X.lambdas[i]);
        r.x.push_back(x(i));
    }
    return r;
}

std::vector<int> complement(int total, const std::array<int, 3>& piv) {
    std::vector<int> out;
    for (int i = 0; i < total; ++i)
        if (std::find(piv.begin(), piv.end(), i) == piv.end()) out.push_back(i);
    return out;
}

void check_point(const DiagonalIntersection& X, const SurfacePoint& x) {
    if (x.coords.size() != X.ambient_dim())
        throw Error(ErrorKind::DimensionMismatch, "point has " + std::to_string(x.coords.size()) +
                                                      " coordinates, variety needs " +
                                                      std::to_string(X.ambient_dim()));
}

} // namespace

void sort_roots(std::vector<Complex>& r) {
    std::stable_sort(r.begin(), r.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
}

DiagonalIntersection make_variety(const std::vector<Complex>& lambdas) {
    if (lambdas.size() < 6)
        throw Error(ErrorKind::InvalidLambdas, "need at least six lambdas (n >= 3)");
    for (const auto& l : lambdas) {
        if (!std::isfinite(l.real()) || !std::isfinite(l.imag()))
            throw Error(ErrorKind::InvalidLambdas, "non-finite lambda");
        if (chordal_distance(l, 0.0) <= kDistinct)
            throw Error(ErrorKind::InvalidLambdas, "lambda too close to zero");
    }
    if (min_pairwise_chordal(lambdas) <= kDistinct)
        throw Error(ErrorKind::InvalidLambdas, "lambdas are not pairwise distinct");
    DiagonalIntersection X;
    X.n = static_cast<int>(lambdas.size()) - 3;
    X.lambdas = lambdas;
    if (!is_nonsingular(X.ambient_pencil()).nonsingular)
        throw Error(ErrorKind::InvalidLambdas, "ambient pencil is singular");
    return X;
}

double membership_residual(const DiagonalIntersection& X, const CVector& x) {
    Complex f1 = 0.0, f2 = 0.0;
    double lmax = 0.0;
    for (int i = 0; i < X.ambient_dim(); ++i) {
        f1 += X.lambdas[i] * x(i) * x(i);
        f2 += x(i) * x(i);
        lmax = std::max(lmax, std::abs(X.lambdas[i]));
    }
    const double nx = x.squaredNorm();
    return std::max(std::abs(f1) / (lmax * nx), std::abs(f2) / nx);
}

SurfacePoint make_point(const DiagonalIntersection& X, const CVector& x, double tol) {
    if (x.size() != X.ambient_dim())
        throw Error(ErrorKind::DimensionMismatch, "point has the wrong number of coordinates");
    SurfacePoint p{ProjectiveVector(x), true};
    if (membership_residual(X, p.x()) > tol)
        throw Error(ErrorKind::InvalidInput, "point does not lie on the variety");
    const double xmax = p.x().cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < p.x().size(); ++i)
        if (std::abs(p.x()(i)) <= kDistinct * xmax) p.phi_general = false;
    return p;
}

CVector fiber_squares(const DiagonalIntersection& X, const BinaryForm& psi) {
    if (psi.degree() != X.n)
        throw Error(ErrorKind::InvalidInput, "binary form degree " + std::to_string(psi.degree()) +
                                                 " differs from dim X = " + std::to_string(X.n));
    const int m = X.ambient_dim();
    CVector sq(m);
    for (int i = 0; i < m; ++i) {
        Complex den = 1.0;
        for (int j = 0; j < m; ++j)
            if (j != i) den *= X.lambdas[i] - X.lambdas[j];
        sq(i) = psi.evaluate(1.0, X.lambdas[i]) / den;
    }
    return sq;
}

SurfacePoint point_from_fiber(const DiagonalIntersection& X, const BinaryForm& psi, const std::vector<bool>& signs) {
    const CVector sq = fiber_squares(X, psi);
    const int m = X.ambient_dim();
    if (!signs.empty() && static_cast<int>(signs.size()) != m)
        throw Error(ErrorKind::LengthMismatch, "need one sign bit per coordinate");
    CVector x(m);
    for (int i = 0; i < m; ++i) {
        x(i) = std::sqrt(sq(i));
        if (!signs.empty() && signs[i]) x(i) = -x(i);
    }
    SurfacePoint p{ProjectiveVector(x), true};
    const double xmax = p.x().cwiseAbs().maxCoeff();
    for (int i = 0; i < m; ++i)
        if (std::abs(p.x()(i)) <= kDistinct * xmax) p.phi_general = false;
    return p;
}

std::array<int, 3> default_pivots(const CVector& x) {
    std::vector<int> idx(x.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return std::abs(x(a)) > std::abs(x(b)); });
    std::array<int, 3> piv{idx[0], idx[1], idx[2]};
    std::sort(piv.begin(), piv.end());
    return piv;
}

TangentFrame tangent_frame(const DiagonalIntersection& X, const SurfacePoint& x) {
    return tangent_frame(X, x, default_pivots(x.x()));
}

TangentFrame tangent_frame(const DiagonalIntersection& X, const SurfacePoint& x, const std::array<int, 3>& piv) {
    check_point(X, x);
    const CVector& v = x.x();
    const double xmax = v.cwiseAbs().maxCoeff();
    for (int i : piv) {
        if (i < 0 || i >= X.ambient_dim())
            throw Error(ErrorKind::InvalidInput, "pivot index out of range");
        if (std::abs(v(i)) <= kDistinct * xmax)
            throw Error(ErrorKind::InvalidInput, "pivot coordinate vanishes");
    }
    TangentFrame f;
    f.point = x;
    f.pivots = piv;
    f.others = complement(X.ambient_dim(), piv);
    const int n = X.n;
    const auto [p, q, r] = piv;
    (void)p;
    const Complex lq = X.lambdas[q], lr = X.lambdas[r];

    // e'_i = e_i - B_i e_q - C_i e_r
    std::vector<Complex> B(n), C(n);
    f.vectors = MatrixC::Zero(X.ambient_dim(), n);
    for (int k = 0; k < n; ++k) {
        const int i = f.others[k];
        const Complex li = X.lambdas[i];
        B[k] = (lr - li) * v(i) / ((lr - lq) * v(q));
        C[k] = (lq - li) * v(i) / ((lq - lr) * v(r));
        f.vectors(i, k) = 1.0;
        f.vectors(q, k) = -B[k];
        f.vectors(r, k) = -C[k];
    }
    MatrixC A1(n, n), A2(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const Complex bb = B[a] * B[b], cc = C[a] * C[b];
            A1(a, b) = lq * bb + lr * cc;
            A2(a, b) = bb + cc;
            if (a == b) {
                A1(a, b) += X.lambdas[f.others[a]];
                A2(a, b) += 1.0;
            }
        }
    f.restricted = Pencil(A1, A2);
    return f;
}

BinaryForm theta(const DiagonalIntersection& X, const SurfacePoint& x, ThetaMode mode) {
    return theta(X, x, mode, default_pivots(x.x()));
}

BinaryForm theta(const DiagonalIntersection& X, const SurfacePoint& x, ThetaMode mode, const std::array<int, 3>& piv) {
    check_point(X, x);
    if (mode == ThetaMode::Brute) return discriminant(tangent_frame(X, x, piv).restricted);

    const int n = X.n;
    const auto rl = relabel(X, x.x(), complement(X.ambient_dim(), piv), piv);
    const Complex l2 = rl.lam[n + 1], l3 = rl.lam[n + 2];
    CVector a = CVector::Zero(n + 1);
    for (int i = 0; i <= n; ++i) {
        std::vector<Complex> rest;
        for (int j = 0; j <= n; ++j)
            if (j != i) rest.push_back(rl.lam[j]);
        const std::vector<Complex> gamma = elementary_symmetric(rest);
        const Complex w = (rl.lam[i] - l2) * (rl.lam[i] - l3) * rl.x[i] * rl.x[i];
        for (int k = 0; k <= n; ++k) a(k) += w * gamma[k];
    }
    for (int k = 0; k <= n; ++k)
        if ((n - k) % 2) a(k) = -a(k);
    if (a.cwiseAbs().maxCoeff() == 0.0)
        throw Error(ErrorKind::DegenerateInput, "discriminant of the second fundamental form vanishes");
    return BinaryForm(a);
}

RegularityReport is_regular(const DiagonalIntersection& X, const SurfacePoint& x) {
    check_point(X, x);
    RegularityReport rep;
    const CVector& v = x.x();
    const int n = X.n;
    const double xmax = v.cwiseAbs().maxCoeff();
    rep.phiGeneral = true;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) <= kDistinct * xmax) rep.phiGeneral = false;

    try {
        const auto roots = theta(X, x, ThetaMode::Closed).roots();
        rep.alphaRoots = roots.finite;
        sort_roots(rep.alphaRoots);
        bool ok = roots.at_infinity == 0 && static_cast<int>(roots.finite.size()) == n &&
                  min_pairwise_chordal(roots.finite) > kDistinct;
        for (const auto& a : roots.finite) {
            if (chordal_distance(a, 0.0) <= kDistinct) ok = false;
            for (const auto& l : X.lambdas)
                if (chordal_distance(a, l) <= kDistinct) ok = false;
        }
        rep.sffNonsingular = ok;
    } catch (const Error&) {
        rep.sffNonsingular = false;
    }

    try {
        // det(phi_2|W) and det(phi_1|W) are the extreme coefficients of the
        // restricted discriminant: a root at [0:1] or at 0 means degeneracy.
        const auto r = discriminant(tangent_frame(X, x).restricted).roots();
        bool ok = r.at_infinity == 0;
        for (const auto& a : r.finite)
            if (chordal_distance(a, 0.0) <= kDistinct) ok = false;
        rep.restrictionsNondegenerate = ok;
    } catch (const Error&) {
        rep.restrictionsNondegenerate = false;
    }

    rep.sffGeneric = rep.sffNonsingular && n >= 4 && !has_root_symmetry(rep.alphaRoots);
    return rep;
}

RegularityReport require_regular(const DiagonalIntersection& X, const SurfacePoint& x, bool need_generic) {
    RegularityReport rep = is_regular(X, x);
    std::string failed;
    if (!rep.phiGeneral) failed += " phiGeneral";
    if (!rep.sffNonsingular) failed += " sffNonsingular";
    if (!rep.restrictionsNondegenerate) failed += " restrictionsNondegenerate";
    if (need_generic && !rep.sffGeneric) failed += " sffGeneric";
    if (!failed.empty()) throw Error(ErrorKind::NotRegular, "failed conditions:" + failed);
    return rep;
}

Complex fiber_scale(const DiagonalIntersection& X, const CVector& x, const std::vector<Complex>& alphas) {
    const int m = X.ambient_dim();
    Complex num = 0.0;
    double den = 0.0;
    for (int i = 0; i < m; ++i) {
        Complex t = 1.0;
        for (const auto& a : alphas) t *= X.lambdas[i] - a;
        for (int j = 0; j < m; ++j)
            if (j != i) t /= X.lambdas[i] - X.lambdas[j];
        num += std::conj(t) * x(i) * x(i);
        den += std::norm(t);
    }
    return num / den;
}

SffDiagonalization diagonalize_sff(const DiagonalIntersection& X, const SurfacePoint& x) {
    const RegularityReport rep = require_regular(X, x, false);
    const int n = X.n;
    SffDiagonalization out;
    out.frame = tangent_frame(X, x);
    out.alphas = rep.alphaRoots;

    const CVector xs = x.x() / std::sqrt(fiber_scale(X, x.x(), out.alphas));
    const auto rl = relabel(X, xs, out.frame.others, out.frame.pivots);
    const Complex lq = rl.lam[n + 1], lr = rl.lam[n + 2];

    out.c.resize(n);
    out.F.resize(n, n);
    double closest = 1.0;
    for (int i = 0; i < n; ++i) {
        const Complex ai = out.alphas[i];
        Complex c = 1.0;
        for (int j = 0; j < n; ++j)
            if (j != i) c /= ai - out.alphas[j];
        for (int k = 0; k <= n; ++k) c *= ai - rl.lam[k];
        c /= (ai - lq) * (ai - lr);
        out.c[i] = c;
        for (int j = 0; j < n; ++j)
            out.F(i, j) = (lq - rl.lam[j]) * (lr - rl.lam[j]) / (ai - rl.lam[j]) * rl.x[j];
        for (const auto& l : X.lambdas) closest = std::min(closest, chordal_distance(ai, l));
    }
    out.ill_conditioned = closest < 1e-3;
    return out;
}

CombinatorialResidual combinatorial_residual(const std::vector<Complex>& l, const std::vector<Complex>& a) {
    if (l.size() != a.size() + 3)
        throw Error(ErrorKind::InvalidInput, "need exactly three more l-values than a-values");
    std::vector<Complex> all(l);
    all.insert(all.end(), a.begin(), a.end());
    if (min_pairwise_chordal(all) <= kDistinct)
        throw Error(ErrorKind::InvalidInput, "inputs are not pairwise distinct");

    CombinatorialResidual r;
    for (std::size_t i = 0; i < l.size(); ++i) {
        Complex P = 1.0, Q = 1.0;
        for (const auto& al : a) P *= l[i] - al;
        for (std::size_t j = 0; j < l.size(); ++j)
            if (j != i) Q *= l[i] - l[j];
        const Complex term = P / Q;
        r.S0 += term;
        r.S1 += l[i] * term;
        r.scale0 += std::abs(term);
        r.scale1 += std::abs(l[i] * term);
    }
    return r;
}

} // namespace qp
