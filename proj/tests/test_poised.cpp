#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include <quadpencil/poised.hpp>
#include <quadpencil/sampling.hpp>

#include "oracle.hpp"

using namespace qp;

namespace {

MatrixC random_symmetric(Rng& rng, int n) {
    MatrixC A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) A(i, j) = A(j, i) = random_complex(rng);
    return A;
}

CVector random_vector(Rng& rng, int n) {
    CVector v(n);
    for (int i = 0; i < n; ++i) v(i) = random_complex(rng);
    return v;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::DegenerateInput;
}

CVector squares(const CVector& v) { return v.array().square(); }

} // namespace

TEST_CASE("poised span and its witness") {
    Rng rng(3);
    for (int n : {4, 5, 7}) {
        const Pencil P(random_symmetric(rng, n), random_symmetric(rng, n));
        const CVector u = random_vector(rng, n);
        const auto S = poised_span(P, u);
        const MatrixC a = alpha_map(P);
        CHECK((S.basis.col(1) - a * u).norm() < 1e-9 * S.basis.col(1).norm());
        const auto w = is_poised(P, S.basis);
        REQUIRE(w.has_value());
        CHECK(projective_distance(w->coords(), u) < 1e-7);
        // Any other basis of the same span has the same witness.
        const MatrixC mixed = S.basis * (MatrixC(3, 3) << 1, 2, 0, 0, 1, 1, 1, 0, 3).finished();
        const auto w2 = is_poised(P, mixed);
        REQUIRE(w2.has_value());
        CHECK(projective_distance(w2->coords(), u) < 1e-7);
    }
}

TEST_CASE("random 3-spaces are not poised") {
    // For n = 4 every generic hyperplane is poised, so start at 5.
    Rng rng(4);
    for (int n : {5, 6}) {
        const Pencil P(random_symmetric(rng, n), random_symmetric(rng, n));
        MatrixC span(n, 3);
        for (int j = 0; j < 3; ++j) span.col(j) = random_vector(rng, n);
        CHECK_FALSE(is_poised(P, span).has_value());
    }
}

TEST_CASE("poised preconditions") {
    Rng rng(5);
    const Pencil P3(random_symmetric(rng, 3), random_symmetric(rng, 3));
    CHECK(kind_of([&] { is_poised(P3, MatrixC(MatrixC::Identity(3, 3))); }) == ErrorKind::DimensionTooSmall);

    const Pencil P(random_symmetric(rng, 5), random_symmetric(rng, 5));
    const auto sb = standard_basis(P);
    CVector z = random_vector(rng, 5);
    z(2) = 0.0;
    CHECK(kind_of([&] { poised_span(sb, CVector(sb.basis * z)); }) == ErrorKind::NotGeneral);
    CHECK(kind_of([&] { poised_span(sb, random_vector(rng, 4)); }) == ErrorKind::DimensionMismatch);
    MatrixC flat(5, 3);
    flat.col(0) = random_vector(rng, 5);
    flat.col(1) = 2.0 * flat.col(0);
    flat.col(2) = random_vector(rng, 5);
    CHECK(kind_of([&] { is_poised(sb, flat); }) == ErrorKind::RankDeficient);
}

TEST_CASE("tilde_v is the square of the standard coordinates") {
    Rng rng(6);
    const Pencil P(random_symmetric(rng, 5), random_symmetric(rng, 5));
    const CVector u = random_vector(rng, 5);
    const auto S = poised_span(P, u);
    const auto sb = standard_basis(P);
    CHECK(projective_distance(tilde_v(P, S).coords(), squares(sb.inverse * u)) < 1e-7);

    PoisedSubspace bogus;
    bogus.basis.resize(5, 3);
    for (int j = 0; j < 3; ++j) bogus.basis.col(j) = random_vector(rng, 5);
    CHECK(kind_of([&] { tilde_v(P, bogus); }) == ErrorKind::NotPoised);
}

TEST_CASE("refined coordinates by hand") {
    // n = 1: -1 / prod (a - l_j)
    const CVector r = refined_coordinates({1.0, 2.0, 3.0, 4.0}, {5.0});
    CHECK(std::abs(r(0) - Complex(-1.0 / 24.0)) < 1e-15);
    const CVector s = refined_coordinates({0.0, 1.0, -1.0, 2.0, 3.0}, {Complex(0, 1), 4.0});
    const Complex i(0, 1);
    CHECK(std::abs(s(0) + (i - 4.0) / (i * (i - 1.0) * (i + 1.0) * (i - 2.0) * (i - 3.0))) < 1e-14);
}

TEST_CASE("kernel subspace is poised by the tangent pencil") {
    Rng rng(8);
    for (int n : {3, 4, 5, 6}) {
        const auto X = random_variety(rng, n);
        const auto S = random_regular_point(rng, X, false);
        const auto K = kernel_subspace(X, S.point);
        CHECK(match_roots(K.alphas, S.alphas).max_distance < 1e-9);
        const CVector a = to_eigen(K.alphas);
        const CVector v0 = K.v0();
        const double scale = v0.norm() * (1.0 + a.cwiseAbs().maxCoeff());
        CHECK((K.v.col(1) - a.cwiseProduct(v0)).norm() < 1e-8 * scale);
        CHECK((K.v.col(2) - a.cwiseProduct(a).cwiseProduct(v0)).norm() < 1e-8 * scale * scale / v0.norm());
        // Squares of v0 are the refined coordinates, not just up to scale.
        const CVector target = refined_coordinates(X.lambdas, K.alphas);
        CHECK((squares(v0) - target).norm() < 1e-8 * target.norm());
        // The generators are tangent vectors.
        const MatrixC amb = K.ambient();
        const CVector& x = S.point.x();
        for (int l = 0; l < 3; ++l) CHECK(std::abs(x.cwiseProduct(amb.col(l)).sum()) < 1e-9 * x.norm() * amb.col(l).norm());
    }
}

TEST_CASE("kernel subspace agrees with is_poised") {
    Rng rng(9);
    const auto X = random_variety(rng, 6);
    const auto S = random_regular_point(rng, X);
    const auto K = kernel_subspace(X, S.point);
    const auto w = is_poised(K.frame.restricted, K.uGen);
    REQUIRE(w.has_value());
    CHECK(projective_distance(w->coords(), K.uGen.col(0)) < 1e-6);
}

TEST_CASE("fiber point image") {
    Rng rng(10);
    const auto X = random_variety(rng, 5);
    const auto S = random_regular_point(rng, X);
    const auto id = fiber_point_image(X, S.point, SL2Element::identity());
    CHECK(projective_distance(id.coords(), refined_coordinates(X.lambdas, S.alphas)) < 1e-9);

    // Second path: the kernel subspace at a point over the same alphas on the
    // variety with lambda' = g^-1(lambda).
    const SL2Element g = SL2Element::normalized(1.0, 0.3, Complex(0.2, -0.1), 1.1);
    std::vector<Complex> lp;
    for (const auto& l : X.lambdas) lp.push_back(g.inverse().apply(l));
    const auto Xp = make_variety(lp);
    const auto xp = point_from_fiber(Xp, BinaryForm::from_roots(S.alphas), random_signs(rng, 8));
    const auto K = kernel_subspace(Xp, xp);
    const auto img = fiber_point_image(X, S.point, g);
    CHECK(projective_distance(img.coords(), squares(K.v0())) < 1e-8);

    // c lambda - a vanishing at some lambda.
    const Complex l0 = X.lambdas[0];
    const SL2Element bad = SL2Element::normalized(l0, 1.0, 1.0, 2.0);
    CHECK(kind_of([&] { fiber_point_image(X, S.point, bad); }) == ErrorKind::IllConditioned);
}

TEST_CASE("tangent image relations and ranks") {
    Rng rng(11);
    for (int n : {5, 6, 7}) {
        const auto X = random_variety(rng, n);
        const auto S = random_regular_point(rng, X);
        const auto T = tangent_image(X, S.point);
        const auto [r1, r2] = tangent_relations(X, T);
        CHECK(r1 < 1e-10);
        CHECK(r2 < 1e-10);
        CHECK(T.rankT4 == 4);
        CHECK(T.rankT5 == 5);
        CHECK(injectivity_certificate(X, S.point));
        const auto R = refined_mu(X, S.point);
        CHECK(projective_distance(R.v.coords(), T.vx) < 1e-12);
    }
    const auto X4 = random_variety(rng, 4);
    const auto S4 = random_regular_point(rng, X4, false);
    CHECK(kind_of([&] { injectivity_certificate(X4, S4.point); }) == ErrorKind::DimensionTooSmall);
}

TEST_CASE("refined mu needs a generic point") {
    const auto X = make_variety({-1.0, -2.0, -3.0, 4.0, 5.0, 6.0});
    const auto p = point_from_fiber(X, BinaryForm::from_roots({1.0, 2.0, 3.0}));
    CHECK(kind_of([&] { refined_mu(X, p); }) == ErrorKind::NotRegular);
    // The kernel only needs the basic conditions.
    CHECK_NOTHROW(kernel_subspace(X, p));
}
