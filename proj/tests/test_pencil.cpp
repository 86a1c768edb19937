#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <quadpencil/pencil.hpp>
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

MatrixC diag(const std::vector<Complex>& d) { return to_eigen(d).asDiagonal(); }

// max |f(s,t) / det(s A1 - t A2) - ratio| over sample points, relative.
double det_mismatch(const BinaryForm& f, const Pencil& P, Rng& rng) {
    Complex ratio = 0.0;
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) {
        const Complex s = random_complex(rng), t = random_complex(rng);
        const Complex d = oracle::det(MatrixC(s * P.A1() - t * P.A2()));
        const Complex r = f.evaluate(s, t) / d;
        if (k == 0) ratio = r;
        worst = std::max(worst, std::abs(r - ratio) / std::abs(ratio));
    }
    return worst;
}

} // namespace

TEST_CASE("QuadraticForm checks symmetry") {
    MatrixC A(2, 2);
    A << 1, 2, 3, 4;
    CHECK_THROWS_AS(QuadraticForm{A}, Error);
    try {
        QuadraticForm q(A);
    } catch (const Error& e) {
        CHECK(e.name() == "NotSymmetric");
    }
    MatrixC S(2, 2);
    S << 1, 2, 2, 5;
    const QuadraticForm q(S);
    CVector x(2);
    x << 1, 1;
    CHECK(std::abs(q(x) - Complex(10.0)) < 1e-15);
}

TEST_CASE("discriminant of a diagonal pencil") {
    const std::vector<Complex> tau{1.0, 2.0, 3.0};
    const auto f = discriminant(Pencil::diagonal(tau));
    CHECK(f.degree() == 3);
    CHECK(f.distance(BinaryForm::from_roots(tau)) < 1e-12);
    // prod (tau_i s - t) = sum_k e_k(tau) s^k (-t)^(3-k), so c_k = -expand[3 - k].
    const auto c = oracle::expand(tau);
    CVector expect(4);
    for (int k = 0; k <= 3; ++k) expect(k) = -c[3 - k];
    CHECK(projective_distance(f.coeffs(), expect) < 1e-12);
}

TEST_CASE("discriminant matches direct determinants") {
    Rng rng(5);
    for (int n = 2; n <= 10; ++n) {
        const Pencil P(random_symmetric(rng, n), random_symmetric(rng, n));
        CHECK(det_mismatch(discriminant(P), P, rng) < 1e-8);
    }
}

TEST_CASE("degenerate pencils are rejected") {
    Rng rng(2);
    const MatrixC A = random_symmetric(rng, 3);
    CHECK_THROWS_AS(discriminant(Pencil(A, MatrixC(2.0 * A))), Error);
    CHECK_THROWS_AS(discriminant(Pencil(A, MatrixC::Zero(3, 3))), Error);
    // Both forms share a kernel vector: det vanishes identically.
    MatrixC B = MatrixC::Zero(3, 3), C = MatrixC::Zero(3, 3);
    B(0, 0) = 1;
    B(1, 1) = 2;
    C(0, 0) = 3;
    C(1, 1) = 1;
    C(0, 1) = C(1, 0) = 1;
    try {
        discriminant(Pencil(B, C));
        FAIL("expected DegeneratePencil");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegeneratePencil);
    }
}

TEST_CASE("is_nonsingular") {
    const auto good = is_nonsingular(Pencil::diagonal({1.0, 2.0, 3.0}));
    CHECK(good.nonsingular);
    CHECK(oracle::set_distance(good.roots, {1.0, 2.0, 3.0}) < 1e-12);
    CHECK_FALSE(is_nonsingular(Pencil::diagonal({1.0, 1.0, 3.0})).nonsingular);
    // phi2 degenerate: root at [0:1]
    const auto inf = is_nonsingular(Pencil(diag({1.0, 2.0, 3.0}), diag({1.0, 1.0, 0.0})));
    CHECK(inf.roots_at_infinity == 1);
}

TEST_CASE("standard basis diagonalizes both forms") {
    Rng rng(9);
    for (int n : {2, 4, 7}) {
        const Pencil P(random_symmetric(rng, n), random_symmetric(rng, n));
        const auto sb = standard_basis(P);
        const MatrixC D1 = sb.basis.transpose() * P.A1() * sb.basis;
        const MatrixC D2 = sb.basis.transpose() * P.A2() * sb.basis;
        CHECK((D2 - MatrixC::Identity(n, n)).norm() < 1e-9);
        CHECK((D1 - diag(sb.roots)).norm() < 1e-9 * (1.0 + D1.norm()));
        CHECK((sb.inverse * sb.basis - MatrixC::Identity(n, n)).norm() < 1e-9);
        for (std::size_t i = 1; i < sb.roots.size(); ++i)
            CHECK((sb.roots[i - 1].real() < sb.roots[i].real() ||
                   (sb.roots[i - 1].real() == sb.roots[i].real() && sb.roots[i - 1].imag() <= sb.roots[i].imag())));
    }
}

TEST_CASE("standard basis preconditions") {
    CHECK_THROWS_AS(standard_basis(Pencil::diagonal({1.0, 1.0, 2.0})), Error);
    try {
        standard_basis(Pencil(diag({0.0, 1.0, 2.0}), diag({1.0, 1.0, 1.0})));
        FAIL("expected DegenerateForm");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateForm);
    }
}

TEST_CASE("alpha map") {
    const std::vector<Complex> tau{1.0, -2.0, Complex(0, 3)};
    CHECK((alpha_map(Pencil::diagonal(tau)) - diag(tau)).norm() < 1e-12);

    Rng rng(4);
    MatrixC T = MatrixC::Identity(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) T(i, j) += 0.3 * random_complex(rng);
    const MatrixC Ti = T.inverse();
    // Forms Ti^T D Ti have standard basis T e_i.
    const Pencil P(MatrixC(Ti.transpose() * diag(tau) * Ti), MatrixC(Ti.transpose() * Ti));
    CHECK((alpha_map(P) - T * diag(tau) * Ti).norm() < 1e-9);
    const auto sb = standard_basis(P);
    const MatrixC a = alpha_map(sb);
    for (int i = 0; i < 3; ++i)
        CHECK((a * a * sb.basis.col(i) - sb.roots[i] * sb.roots[i] * sb.basis.col(i)).norm() < 1e-9);
}

TEST_CASE("transform_pair moves roots by the Mobius map") {
    const Pencil P = Pencil::diagonal({1.0, 2.0, 3.0});
    const SL2Element g(1.0, 1.0, 0.0, 1.0);
    const auto r = is_nonsingular(transform_pair(P, g)).roots;
    CHECK(oracle::set_distance(r, {2.0, 3.0, 4.0}) < 1e-12);

    const auto same = transform_pair(P, SL2Element::identity());
    CHECK((same.A1() - P.A1()).norm() == 0.0);
    CHECK_THROWS_AS(SL2Element(2.0, 0.0, 0.0, 2.0), Error);

    Rng rng(8);
    const Pencil Q(random_symmetric(rng, 4), random_symmetric(rng, 4));
    const auto h = SL2Element::normalized(1.0, 0.5, Complex(0, 0.3), 2.0);
    std::vector<Complex> expect;
    for (const auto& t : is_nonsingular(Q).roots) expect.push_back((h.a() * t + h.b()) / (h.c() * t + h.d()));
    CHECK(oracle::set_distance(is_nonsingular(transform_pair(Q, h)).roots, expect) < 1e-9);
}

TEST_CASE("pullback") {
    Rng rng(12);
    const Pencil P(random_symmetric(rng, 4), random_symmetric(rng, 4));
    const auto same = pullback(P, MatrixC::Identity(4, 4));
    CHECK((same.A1() - P.A1()).norm() < 1e-15);
    const auto scaled = pullback(P, MatrixC(3.0 * MatrixC::Identity(4, 4)));
    CHECK((scaled.A2() - 9.0 * P.A2()).norm() < 1e-12);
    MatrixC T = MatrixC::Identity(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) T(i, j) += 0.5 * random_complex(rng);
    CHECK(root_distance(discriminant(pullback(P, T)), discriminant(P)) < 1e-9);
    MatrixC S = T;
    S.col(3) = S.col(0) + S.col(1);
    CHECK_THROWS_AS(pullback(P, S), Error);
}

TEST_CASE("fix_sign") {
    CVector w(3);
    w << Complex(0.1, 0), Complex(-2, 0.1), Complex(1, 0);
    const CVector f = fix_sign(w);
    CHECK(f(1).real() > 0.0);
    CHECK((fix_sign(CVector(-w)) - f).norm() < 1e-15);
}
