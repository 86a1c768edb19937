#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <quadpencil/sampling.hpp>
#include <quadpencil/variety.hpp>

#include "oracle.hpp"

using namespace qp;

namespace {

// Tangent space {y : sum x_i y_i = 0, sum lambda_i x_i y_i = 0} from an SVD,
// restricted forms, and their determinant at (s, t).
Complex sff_det(const DiagonalIntersection& X, const CVector& x, Complex s, Complex t) {
    const int m = X.ambient_dim();
    MatrixC J(2, m);
    for (int i = 0; i < m; ++i) {
        J(0, i) = x(i);
        J(1, i) = X.lambdas[i] * x(i);
    }
    Eigen::JacobiSVD<MatrixC> svd(J, Eigen::ComputeFullV);
    const MatrixC V = svd.matrixV().rightCols(m - 2);
    // x lies in V; quotient by it through its Hermitian complement.
    const CVector xn = x / x.norm();
    const MatrixC W = V - xn * (xn.adjoint() * V);
    Eigen::JacobiSVD<MatrixC> w(W, Eigen::ComputeThinU);
    const MatrixC B = w.matrixU().leftCols(m - 3);
    const MatrixC L = to_eigen(X.lambdas).asDiagonal();
    return oracle::det(MatrixC(B.transpose() * (s * L - t * MatrixC::Identity(m, m)) * B));
}

double theta_vs_oracle(const DiagonalIntersection& X, const SurfacePoint& p, Rng& rng) {
    const auto f = theta(X, p);
    Complex ratio = 0.0;
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
        const Complex s = random_complex(rng), t = random_complex(rng);
        const Complex r = f.evaluate(s, t) / sff_det(X, p.x(), s, t);
        if (k == 0) ratio = r;
        worst = std::max(worst, std::abs(r - ratio) / std::abs(ratio));
    }
    return worst;
}

} // namespace

TEST_CASE("make_variety validates lambdas") {
    CHECK_NOTHROW(make_variety({1.0, 2.0, 3.0, 4.0, 5.0, 6.0}));
    auto kind = [](std::vector<Complex> l) {
        try {
            make_variety(l);
        } catch (const Error& e) {
            return std::string(e.name());
        }
        return std::string();
    };
    CHECK(kind({1.0, 1.0, 3.0, 4.0, 5.0, 6.0}) == "InvalidLambdas");
    CHECK(kind({0.0, 2.0, 3.0, 4.0, 5.0, 6.0}) == "InvalidLambdas");
    CHECK(kind({1.0, 2.0, 3.0, 4.0, 5.0}) == "InvalidLambdas");
}

TEST_CASE("points from the fiber lie on X") {
    Rng rng(21);
    for (int n = 3; n <= 8; ++n) {
        const auto X = random_variety(rng, n);
        const auto psi = BinaryForm::from_roots(random_separated(rng, n, 1.0, 0.05, X.lambdas));
        const auto p = point_from_fiber(X, psi, random_signs(rng, n + 3));
        Complex s1 = 0.0, s2 = 0.0;
        for (int i = 0; i < n + 3; ++i) {
            s1 += p.x()(i) * p.x()(i);
            s2 += X.lambdas[i] * p.x()(i) * p.x()(i);
        }
        CHECK(std::abs(s1) < 1e-12 * p.x().squaredNorm());
        CHECK(std::abs(s2) < 1e-12 * p.x().squaredNorm());
        CHECK(membership_residual(X, p.x()) < 1e-12);
    }
}

TEST_CASE("make_point rejects points off X") {
    const auto X = make_variety({1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
    CVector x = CVector::Ones(6);
    try {
        make_point(X, x);
        FAIL("expected InvalidInput");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidInput);
    }
    CHECK_THROWS_AS(make_point(X, CVector::Ones(5)), Error);
}

TEST_CASE("tangent frame vectors are tangent") {
    Rng rng(3);
    const auto X = random_variety(rng, 5);
    const auto S = random_regular_point(rng, X);
    const auto f = tangent_frame(X, S.point);
    const CVector& x = S.point.x();
    const CVector lx = to_eigen(X.lambdas).cwiseProduct(x);
    for (int k = 0; k < X.n; ++k) {
        CHECK(std::abs(x.cwiseProduct(f.vectors.col(k)).sum()) < 1e-12);
        CHECK(std::abs(lx.cwiseProduct(f.vectors.col(k)).sum()) < 1e-12);
    }
    const MatrixC L = to_eigen(X.lambdas).asDiagonal();
    CHECK((f.vectors.transpose() * L * f.vectors - f.restricted.A1()).norm() < 1e-12);
    CHECK((f.vectors.transpose() * f.vectors - f.restricted.A2()).norm() < 1e-12);
}

TEST_CASE("closed-form theta matches an independent tangent-space determinant") {
    Rng rng(17);
    for (int n = 3; n <= 7; ++n) {
        const auto X = random_variety(rng, n);
        const auto S = random_regular_point(rng, X, false);
        CHECK(theta_vs_oracle(X, S.point, rng) < 1e-8);
        CHECK(root_distance(theta(X, S.point, ThetaMode::Closed), theta(X, S.point, ThetaMode::Brute)) < 1e-8);
    }
}

TEST_CASE("theta does not depend on the pivots") {
    Rng rng(31);
    const auto X = random_variety(rng, 6);
    const auto S = random_regular_point(rng, X);
    const auto a = theta(X, S.point, ThetaMode::Closed, {0, 1, 2});
    const auto b = theta(X, S.point, ThetaMode::Closed, {3, 5, 8});
    const auto c = theta(X, S.point, ThetaMode::Brute, {2, 4, 7});
    CHECK(root_distance(a, b) < 1e-9);
    CHECK(root_distance(a, c) < 1e-9);
}

TEST_CASE("fiber round trip") {
    Rng rng(41);
    for (int n = 3; n <= 8; ++n) {
        const auto X = random_variety(rng, n);
        const auto roots = random_separated(rng, n, 1.0, 0.05, X.lambdas);
        const auto p = point_from_fiber(X, BinaryForm::from_roots(roots), random_signs(rng, n + 3));
        CHECK(root_distance(theta(X, p), BinaryForm::from_roots(roots)) < 1e-9);
        // Sign flips stay in the fiber.
        const auto q = point_from_fiber(X, BinaryForm::from_roots(roots));
        CHECK(root_distance(theta(X, q), theta(X, p)) < 1e-9);
    }
}

TEST_CASE("regularity flags") {
    const auto X3 = make_variety({-1.0, -2.0, -3.0, 4.0, 5.0, 6.0});
    const auto p3 = point_from_fiber(X3, BinaryForm::from_roots({1.0, 2.0, 3.0}));
    const auto r3 = is_regular(X3, p3);
    CHECK(r3.phiGeneral);
    CHECK(r3.sffNonsingular);
    CHECK_FALSE(r3.sffGeneric);
    CHECK_FALSE(r3.regular());

    Rng rng(5);
    const auto X = random_variety(rng, 5);
    const auto S = random_regular_point(rng, X);
    const auto r = is_regular(X, S.point);
    CHECK(r.regular());
    CHECK(match_roots(r.alphaRoots, S.alphas).max_distance < 1e-9);

    // A root at lambda_1 forces x_1 = 0.
    auto roots = random_separated(rng, 5, 1.0, 0.05, X.lambdas);
    roots[0] = X.lambdas[0];
    const auto z = point_from_fiber(X, BinaryForm::from_roots(roots));
    CHECK_FALSE(is_regular(X, z).phiGeneral);
    CHECK_THROWS_AS(require_regular(X, z, false), Error);
}

TEST_CASE("combinatorial identities") {
    Rng rng(8);
    for (int n = 3; n <= 8; ++n) {
        const auto l = random_separated(rng, n + 3, 1.0, 0.05);
        const auto a = random_separated(rng, n, 1.0, 0.05, l);
        const auto c = combinatorial_residual(l, a);
        CHECK(std::abs(c.S0) < 1e-12 * c.scale0);
        CHECK(std::abs(c.S1) < 1e-12 * c.scale1);
    }
    // Sizes must differ by three, and all values must be distinct.
    CHECK_THROWS_AS(combinatorial_residual({1.0, 2.0, 3.0}, {4.0, 5.0}), Error);
    CHECK_THROWS_AS(combinatorial_residual({1.0, 2.0, 3.0, 4.0}, {4.0}), Error);
}

TEST_CASE("diagonalization of the second fundamental form") {
    Rng rng(14);
    for (int n : {3, 5, 6}) {
        const auto X = random_variety(rng, n);
        const auto S = random_regular_point(rng, X, false);
        const auto D = diagonalize_sff(X, S.point);
        for (int k = 0; k < 3; ++k) {
            const Complex s = random_complex(rng), t = random_complex(rng);
            const MatrixC L = s * D.frame.restricted.A1() - t * D.frame.restricted.A2();
            MatrixC R = MatrixC::Zero(n, n);
            for (int i = 0; i < n; ++i) R += (D.alphas[i] * s - t) * D.c[i] * D.F.row(i).transpose() * D.F.row(i);
            CHECK((L + R).norm() < 1e-9 * L.norm());
        }
        // The F_i are independent, so the F_i^2 diagonalize both forms.
        CHECK(numerical_rank(D.F) == n);
    }
}

TEST_CASE("fiber scale normalizes the squares") {
    Rng rng(15);
    const auto X = random_variety(rng, 5);
    const auto S = random_regular_point(rng, X);
    const CVector x = Complex(0.3, 1.7) * S.point.x();
    const Complex kappa = fiber_scale(X, x, S.alphas);
    const CVector xs = x / std::sqrt(kappa);
    for (int i = 0; i < 8; ++i) {
        Complex t = 1.0;
        for (const auto& a : S.alphas) t *= X.lambdas[i] - a;
        for (int j = 0; j < 8; ++j)
            if (j != i) t /= X.lambdas[i] - X.lambdas[j];
        CHECK(std::abs(xs(i) * xs(i) - t) < 1e-10 * std::abs(t));
    }
}

TEST_CASE("random fibers are regular for larger n") {
    // The restricted pencil has small determinants for n = 8; none of them
    // may be mistaken for an identically singular pencil.
    Rng rng(4);
    for (int n : {7, 8}) {
        int ok = 0;
        for (int k = 0; k < 100; ++k) {
            const auto X = random_variety(rng, n);
            auto avoid = X.lambdas;
            avoid.push_back(0.0);
            const auto roots = random_separated(rng, n, 1.0, 0.05, avoid);
            const auto p = point_from_fiber(X, BinaryForm::from_roots(roots), random_signs(rng, n + 3));
            if (is_regular(X, p).basic()) ++ok;
        }
        CHECK(ok == 100);
    }
}
