#include "quadpencil/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qp {

SL2Element::SL2Element(Complex a, Complex b, Complex c, Complex d, double tol) : a_(a), b_(b), c_(c), d_(d) {
    if (!(std::abs(det() - 1.0) <= tol))
        throw Error(ErrorKind::NotUnimodular, "ad - bc differs from 1");
}

SL2Element SL2Element::normalized(Complex a, Complex b, Complex c, Complex d) {
    const Complex det = a * d - b * c;
    if (std::abs(det) == 0.0) throw Error(ErrorKind::NotUnimodular, "matrix is singular");
    const Complex s = std::sqrt(det);
    return SL2Element(a / s, b / s, c / s, d / s, 1e-6);
}

Complex SL2Element::apply(Complex tau) const {
    if (!std::isfinite(tau.real()) || !std::isfinite(tau.imag())) {
        if (c_ == Complex(0.0)) return {INFINITY, 0.0};
        return a_ / c_;
    }
    const Complex den = c_ * tau + d_;
    if (den == Complex(0.0)) return {INFINITY, 0.0};
    return (a_ * tau + b_) / den;
}

SL2Element SL2Element::operator*(const SL2Element& r) const {
    return SL2Element::normalized(a_ * r.a_ + b_ * r.c_, a_ * r.b_ + b_ * r.d_, c_ * r.a_ + d_ * r.c_,
                                  c_ * r.b_ + d_ * r.d_);
}

namespace {

using Key = std::pair<long long, long long>;

Key quantize(Complex z) {
    constexpr double q = 1e-6;
    constexpr double lim = 9e15;
    auto one = [&](double v) { return static_cast<long long>(std::llround(std::clamp(v / q, -lim, lim))); };
    return {one(z.real()), one(z.imag())};
}

std::vector<Complex> stable_roots(const BinaryForm& psi) {
    const auto r = psi.roots();
    if (r.at_infinity > 0) throw Error(ErrorKind::RootAtInfinity, "binary form has a root at [0:1]");
    return r.finite;
}

} // namespace

double invariant_distance(const ModuliInvariant& a, const ModuliInvariant& b) {
    if (a.n != b.n || a.canon.size() != b.canon.size()) return 1.0;
    double d = 0.0;
    for (std::size_t i = 0; i < a.canon.size(); ++i) d = std::max(d, chordal_distance(a.canon[i], b.canon[i]));
    return d;
}

BinaryForm sl2_act(const SL2Element& g, const BinaryForm& psi) {
    const auto roots = stable_roots(psi);
    std::vector<Complex> out;
    for (const auto& t : roots) {
        const Complex den = g.c() * t + g.d();
        if (std::abs(den) <= kTol * (std::abs(g.c() * t) + std::abs(g.d())))
            throw Error(ErrorKind::RootAtInfinity, "transformed root is at infinity");
        out.push_back((g.a() * t + g.b()) / den);
    }
    return BinaryForm::from_roots(out);
}

ModuliInvariant canonical_invariant(const BinaryForm& psi) { return canonical_invariant(stable_roots(psi)); }

ModuliInvariant canonical_invariant(const std::vector<Complex>& roots) {
    const int n = static_cast<int>(roots.size());
    if (n >= 2 && min_pairwise_chordal(roots) <= kDistinct)
        throw Error(ErrorKind::NotStable, "binary form has repeated roots");
    ModuliInvariant inv;
    inv.n = n;
    if (n <= 3) return inv;

    std::vector<Key> best_keys;
    std::vector<Complex> best;
    std::vector<std::pair<Key, Complex>> keyed;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                // Cross-ratio map sending r_i, r_j, r_k to 0, 1, infinity.
                const Complex num = roots[j] - roots[k], den = roots[j] - roots[i];
                keyed.clear();
                for (int m = 0; m < n; ++m) {
                    if (m == i || m == j || m == k) continue;
                    const Complex z = (roots[m] - roots[i]) * num / ((roots[m] - roots[k]) * den);
                    keyed.emplace_back(quantize(z), z);
                }
                std::sort(keyed.begin(), keyed.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                std::vector<Key> keys;
                for (const auto& kz : keyed) keys.push_back(kz.first);
                if (best_keys.empty() || keys < best_keys) {
                    best_keys = std::move(keys);
                    best.clear();
                    for (const auto& kz : keyed) best.push_back(kz.second);
                }
            }
    inv.canon = best;
    return inv;
}

SL2Element mobius_from_triples(const std::array<Complex, 3>& z, const std::array<Complex, 3>& w) {
    // M_z sends z to (0, 1, infinity); the answer is M_w^{-1} M_z.
    auto to_standard = [](const std::array<Complex, 3>& p) {
        const Complex u = p[1] - p[2], v = p[1] - p[0];
        return std::array<Complex, 4>{u, -p[0] * u, v, -p[2] * v};
    };
    const auto A = to_standard(z);
    const auto B = to_standard(w);
    // adj(B) = [[d, -b], [-c, a]]
    const Complex b11 = B[3], b12 = -B[1], b21 = -B[2], b22 = B[0];
    return SL2Element::normalized(b11 * A[0] + b12 * A[2], b11 * A[1] + b12 * A[3], b21 * A[0] + b22 * A[2],
                                  b21 * A[1] + b22 * A[3]);
}

bool has_root_symmetry(const std::vector<Complex>& roots, double tol) {
    const int n = static_cast<int>(roots.size());
    if (n <= 3) return true;
    const std::array<Complex, 3> src{roots[0], roots[1], roots[2]};
    std::vector<Complex> img(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                if (i == 0 && j == 1 && k == 2) continue;
                const SL2Element g = mobius_from_triples(src, {roots[i], roots[j], roots[k]});
                for (int m = 0; m < n; ++m) img[m] = g.apply(roots[m]);
                if (match_roots(img, roots).max_distance <= tol) return true;
            }
    return false;
}

std::optional<SL2Element> same_class(const BinaryForm& psi1, const BinaryForm& psi2, double tol) {
    if (psi1.degree() != psi2.degree()) return std::nullopt;
    std::vector<Complex> r1, r2;
    try {
        r1 = stable_roots(psi1);
        r2 = stable_roots(psi2);
    } catch (const Error&) {
        return std::nullopt;
    }
    const int n = static_cast<int>(r1.size());
    if (n == 0 || static_cast<int>(r2.size()) != n) return std::nullopt;
    if (n >= 2 && (min_pairwise_chordal(r1) <= kDistinct || min_pairwise_chordal(r2) <= kDistinct))
        return std::nullopt;

    // Pad short root lists with auxiliary points so a triple always exists.
    auto pad = [](std::vector<Complex> r) {
        Complex extra = 1.0;
        while (r.size() < 3) {
            while (std::any_of(r.begin(), r.end(), [&](Complex z) { return std::abs(z - extra) < 0.5; }))
                extra += 1.0;
            r.push_back(extra);
        }
        return r;
    };
    const auto p1 = pad(r1);
    const auto p2 = pad(r2);
    const std::array<Complex, 3> src{p1[0], p1[1], p1[2]};
    const int m = static_cast<int>(p2.size());
    std::vector<Complex> img(n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                if (i == j || j == k || i == k) continue;
                const SL2Element g = mobius_from_triples(src, {p2[i], p2[j], p2[k]});
                for (int q = 0; q < n; ++q) img[q] = g.apply(r1[q]);
                if (match_roots(img, r2).max_distance <= tol) return g;
            }
    return std::nullopt;
}

ModuliInvariant mu(const DiagonalIntersection& X, const SurfacePoint& x) {
    const RegularityReport rep = require_regular(X, x, false);
    return canonical_invariant(rep.alphaRoots);
}

} // namespace qp
