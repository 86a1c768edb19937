#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <quadpencil/numkit.hpp>
#include <quadpencil/sampling.hpp>

#include "oracle.hpp"

using namespace qp;

TEST_CASE("poly_roots recovers constructed roots") {
    const std::vector<Complex> roots{{1, 0}, {2, 0}, {3, 0}};
    const auto r = poly_roots(Polynomial(oracle::expand(roots)));
    CHECK(r.size() == 3);
    CHECK(oracle::set_distance(r, roots) < 1e-12);
}

TEST_CASE("poly_roots on random complex roots") {
    Rng rng(11);
    for (int deg : {1, 2, 5, 9, 14}) {
        const auto roots = random_separated(rng, deg, 2.0, 0.05);
        const auto r = poly_roots(Polynomial(oracle::expand(roots)));
        CHECK(oracle::set_distance(r, roots) < 1e-9);
    }
}

TEST_CASE("poly_roots with wide dynamic range") {
    const std::vector<Complex> roots{1e-3, 1.0, 1e3};
    const auto r = poly_roots(Polynomial(oracle::expand(roots)));
    REQUIRE(r.size() == 3);
    for (const auto& z : roots) {
        double best = 1e300;
        for (const auto& w : r) best = std::min(best, std::abs(w - z) / std::abs(z));
        CHECK(best < 1e-10);
    }
}

TEST_CASE("poly_roots rejects constants") {
    CHECK_THROWS_AS(poly_roots(Polynomial({Complex(2.0)})), Error);
}

TEST_CASE("Polynomial evaluation and product") {
    const Polynomial p({1.0, 2.0, 3.0});       // 1 + 2z + 3z^2
    CHECK(std::abs(p.evaluate(2.0) - Complex(17.0)) < 1e-14);
    const auto [v, d] = p.evaluate_with_derivative(2.0);
    CHECK(std::abs(v - Complex(17.0)) < 1e-14);
    CHECK(std::abs(d - Complex(14.0)) < 1e-14);
    const Polynomial q = p * Polynomial({-1.0, 1.0});
    CHECK(q.degree() == 3);
    CHECK(std::abs(q.evaluate(1.0)) < 1e-14);
    CHECK(Polynomial({1.0, 0.0, 1e-20}).degree(1e-12) == 0);
}

TEST_CASE("elementary symmetric values match the expansion") {
    const std::vector<Complex> v{{1, 1}, {2, 0}, {0, -3}, {0.5, 0.25}};
    const auto e = elementary_symmetric(v);
    const auto c = oracle::expand(v); // prod (z - v_i)
    const int m = static_cast<int>(v.size());
    for (int k = 0; k <= m; ++k) {
        const Complex sign = (k % 2 == 0) ? 1.0 : -1.0;
        CHECK(std::abs(e[k] * sign - c[m - k]) < 1e-12);
    }
}

TEST_CASE("projective normalization") {
    CVector v(3);
    v << Complex(1, 2), Complex(-3, 0), Complex(0, 3);
    const CVector n1 = normalize_projective(v);
    CHECK(n1(1) == Complex(1.0));
    const CVector n2 = normalize_projective(Complex(0.3, -2.0) * v);
    CHECK((n1 - n2).norm() < 1e-14);
    CHECK(projective_distance(v, Complex(0, 5) * v) < 1e-15);
    CVector w = v;
    w(0) += 1e-9;
    CHECK(projective_distance(v, w) > 1e-11);
    CHECK_THROWS_AS(ProjectiveVector(CVector::Zero(3)), Error);
}

TEST_CASE("smallest singular vector and nullvector") {
    MatrixC M(2, 3);
    M << 1, 2, 3, 4, 5, 6;
    const auto p = homogeneous_nullvector(M);
    CHECK((M * p.coords()).norm() < 1e-12);
    CVector expect(3);
    expect << 1, -2, 1;
    CHECK(projective_distance(p.coords(), expect) < 1e-12);

    MatrixC full = MatrixC::Identity(3, 3);
    CHECK_THROWS_AS(homogeneous_nullvector(full), Error);
    MatrixC two(1, 3);
    two << 1, 0, 0;
    try {
        homogeneous_nullvector(two);
        FAIL("expected AmbiguousNullspace");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::AmbiguousNullspace);
    }
}

TEST_CASE("numerical rank and subspace distance") {
    MatrixC A(4, 3);
    A << 1, 0, 1, 0, 1, 1, 0, 0, 0, 1, 1, 2;
    CHECK(numerical_rank(A) == 2);
    MatrixC B = A.leftCols(2);
    CHECK(subspace_distance(B, B * (MatrixC(2, 2) << 1, 2, 3, 4).finished()) < 1e-14);
    MatrixC E = MatrixC::Identity(4, 2), F = MatrixC::Zero(4, 2);
    F(0, 0) = 1;
    F(2, 1) = 1;
    CHECK(std::abs(subspace_distance(E, F) - 1.0) < 1e-14);
    CHECK(numerical_rank(equilibrate(A)) == 2);
}

TEST_CASE("chordal distance handles infinity") {
    const Complex inf(INFINITY, 0.0);
    CHECK(chordal_distance(inf, inf) == 0.0);
    CHECK(std::abs(chordal_distance(0.0, inf) - 1.0) < 1e-15);
    CHECK(chordal_distance(1e9, inf) < 1e-8);
    // |a - b| / sqrt((1 + |a|^2)(1 + |b|^2))
    CHECK(std::abs(chordal_distance(1.0, Complex(0, 1)) - std::sqrt(0.5)) < 1e-15);
    CHECK(std::abs(chordal_distance(2.0, 3.0) - chordal_distance(3.0, 2.0)) < 1e-16);
}

TEST_CASE("match_roots finds the permutation") {
    const std::vector<Complex> a{{1, 0}, {0, 1}, {-1, 0}, {2, 2}};
    const std::vector<Complex> b{{2, 2}, {-1, 0}, {1, 0}, {0, 1}};
    const auto m = match_roots(a, b);
    CHECK(m.max_distance < 1e-15);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[m.perm[i]] == a[i]);
    CHECK(min_pairwise_chordal(a) > 0.1);
}

TEST_CASE("poly_roots resolves multiple roots") {
    const std::vector<Complex> roots{1.0, 1.0, 3.0, Complex(0, 2), Complex(0, 2), Complex(0, 2)};
    const auto r = poly_roots(Polynomial(oracle::expand(roots)));
    REQUIRE(r.size() == roots.size());
    CHECK(oracle::set_distance(r, roots) < 1e-9);
}
