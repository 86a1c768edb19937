#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <quadpencil/quadpencil.hpp>

namespace qp::verify {

namespace {

struct Tally {
    Result r;
    void record(bool pass, double residual) {
        ++r.trials;
        if (pass) ++r.passed;
        if (std::isfinite(residual)) r.maxResidual = std::max(r.maxResidual, residual);
        else r.maxResidual = INFINITY;
    }
    void fail(const Error& e) {
        ++r.trials;
        if (r.note.empty()) r.note = e.what();
    }
};

std::vector<int> ns_or(const Options& o, std::vector<int> d) { return o.ns.empty() ? d : o.ns; }
int trials_or(const Options& o, int d) { return o.trials > 0 ? o.trials : d; }
double tol_or(const Options& o, double d) { return o.tol > 0.0 ? o.tol : d; }

SL2Element random_sl2(Rng& rng) {
    return SL2Element::normalized(1.0 + 0.5 * random_complex(rng), 0.5 * random_complex(rng),
                                  0.5 * random_complex(rng), 1.0 + 0.5 * random_complex(rng));
}

MatrixC random_symmetric(Rng& rng, int n) {
    MatrixC A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) A(i, j) = A(j, i) = random_complex(rng);
    return A;
}

MatrixC random_transform(Rng& rng, int n) {
    MatrixC T = MatrixC::Identity(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) T(i, j) += 0.5 * random_complex(rng);
    return T;
}

CVector random_vector(Rng& rng, int n) {
    CVector v(n);
    for (int i = 0; i < n; ++i) v(i) = random_complex(rng);
    return v;
}

// ---- prop37: closed form against the brute-force restricted discriminant

Result prop37(const Options& o) {
    Tally t;
    t.r.tol = tol_or(o, 1e-7);
    const auto ns = ns_or(o, {3, 4, 5, 6, 7, 8});
    const int trials = trials_or(o, 100 * static_cast<int>(ns.size()));
    Rng rng(o.seed);
    for (int k = 0; k < trials; ++k) {
        const int n = ns[k % ns.size()];
        try {
            const auto X = random_variety(rng, n);
            const auto S = random_regular_point(rng, X, false);
            const double e = root_distance(theta(X, S.point, ThetaMode::Closed), theta(X, S.point, ThetaMode::Brute));
            t.record(e <= t.r.tol, e);
        } catch (const Error& e) {
            t.fail(e);
        }
    }
    t.r.ok = t.r.passed == t.r.trials;
    return t.r;
}

// ---- roundtrip-theta: theta(point_from_fiber(psi)) = psi

Result roundtrip_theta(const Options& o) {
    Tally t;
    t.r.tol = tol_or(o, 1e-7);
    const auto ns = ns_or(o, {3, 4, 5, 6, 7, 8});
    const int trials = trials_or(o, 100);
    Rng rng(o.seed);
    for (int k = 0; k < trials; ++k) {
        const int n = ns[k % ns.size()];
        try {
            const auto X = random_variety(rng, n);
            const auto psi = BinaryForm::from_roots(random_separated(rng, n, 1.0, 0.05, X.lambdas));
            const auto p = point_from_fiber(X, psi, random_signs(rng, X.ambient_dim()));
            const double e = root_distance(theta(X, p), psi);
            t.record(e <= t.r.tol, e);
        } catch (const Error& e) {
            t.fail(e);
        }
    }
    t.r.ok = t.r.passed == t.r.trials;
    return t.r;
}

// ---- prop39: the two combinatorial identities

Result prop39(const Options& o) {
    Tally t;
    t.r.tol = tol_or(o, 1e-9);
    const auto ns = ns_or(o, {3, 4, 5, 6, 7, 8});
    const int trials = trials_or(o, 200);
    Rng rng(o.seed);
    for (int k = 0; k < trials; ++k) {
        const int n = ns[k % ns.size()];
        try {
            const auto l = random_separated(rng, n + 3, 1.0, 0.05);
            const auto a = random_separated(rng, n, 1.0, 0.05, l);
            const auto c = combinatorial_residual(l, a);
            const double e = std::max(std::abs(c.S0) / c.scale0, std::abs(c.S1) / c.scale1);
            t.record(e <= t.r.tol, e);
        } catch (const Error& e) {
            t.fail(e);
        }
    }
    t.r.ok = t.r.passed == t.r.trials;
    return t.r;
}

// ---- lemma55: s phi1|W - t phi2|W + sum (alpha_i s - t) c_i F_i^2 = 0

Result lemma55(const Options& o) {
    Tally t;
    t.r.tol = tol_or(o, 1e-7);
    const auto ns = ns_or(o, {5});
    const int trials = trials_or(o, 50);
    Rng rng(o.seed);
    for (int k = 0; k < trials; ++k) {
        const int n = ns[k % ns.size()];
        try {
            const auto X = random_variety(rng, n);
            const auto S = random_regular_point(rng, X, false);
            const auto D = diagonalize_sff(X, S.point);
            double e = 0.0;
            for (int q = 0; q < 3; ++q) {
                const Complex s = random_complex(rng), u = random_complex(rng);
                const MatrixC L = s * D.frame.restricted.A1() - u * D.frame.restricted.A2();
                MatrixC R = MatrixC::Zero(n, n);
                for (int i = 0; i < n; ++i)
                    R += (D.alphas[i] * s - u) * D.c[i] * D.F.row(i).transpose() * D.F.row(i);
                e = std::max(e, (L + R).norm() / L.norm());
            }
            t.record(e <= t.r.tol, e);
        } catch (const Error& e) {
            t.fail(e);
        }
    }
    t.r.ok = t.r.passed == t.r.trials;
    return t.r;
}

// ---- lemma56: kernel structure and finite-difference drift of the moduli

// Newton projection of z back onto the cone over X (minimal-norm steps).
CVector project_to_variety(const DiagonalIntersection& X, CVector z) {
    const CVector lam = to_eigen(X.lambdas);
    for (int it = 0; it < 8; ++it) {
        Eigen::Vector2cd F(z.cwiseProduct(z).sum(), lam.cwiseProduct(z).cwiseProduct(z).sum());
        if (F.norm() < 1e-15) break;
        MatrixC J(2, z.size());
        J.row(0) = 2.0 * z.transpose();
        J.row(1) = 2.0 * lam.cwiseProduct(z).transpose();
        const Eigen::Matrix2cd G = J * J.adjoint();
        z -= J.adjoint() * G.lu().solve(F);
    }
    return z;
}

// Largest chordal change of the cross ratios (r_m, r_0, r_1, r_2), roots
// labelled by matching against the base point.
double moduli_drift(const std::vector<Complex>& base, const std::vector<Complex>& moved) {
    const auto m = match_roots(base, moved);
    auto cr = [](Complex z, Complex a, Complex b, Complex c) { return (z - a) * (b - c) / ((z - c) * (b - a)); };
    double d = 0.0;
    for (std::size_t i = 3; i < base.size(); ++i) {
        const Complex c0 = cr(base[i], base[0], base[1], base[2]);
        const Complex c1 = cr(moved[m.perm[i]], moved[m.perm[0]], moved[m.perm[1]], moved[m.perm[2]]);
        d = std::max(d, chordal_distance(c0, c1));
    }
    return d;
}

double drift_along(const DiagonalIntersection& X, const CVector& x, const std::vector<Complex>& roots,
                   const CVector& dir, double h) {
    const CVector z = project_to_variety(X, x + h * dir);
    const auto th = theta(X, make_point(X, z, 1e-9));
    return moduli_drift(roots, th.roots().finite);
}

Result lemma56(const Options& o) {
    Tally t;
    t.r.tol = tol_or(o, 1e-7);
    const auto ns = ns_or(o, {5});
    const int trials = trials_or(o, 50);
    Rng rng(o.seed);
    double minKer = INFINITY, maxCtl = 0.0, minRatio = INFINITY;
    for (int k = 0; k < trials; ++k) {
        const int n = ns[k % ns.size()];
        try {
            const auto X = random_variety(rng, n);
            const auto S = random_regular_point(rng, X, false);
            const auto K = kernel_subspace(X, S.point);
            const CVector a = to_eigen(K.alphas);
            const CVector v0 = K.v.col(0);
            const double e1 = (K.v.col(1) - a.cwiseProduct(v0)).norm() / K.v.col(1).norm();
            const double e2 = (K.v.col(2) - a.cwiseProduct(a).cwiseProduct(v0)).norm() / K.v.col(2).norm();
            const CVector sq = v0.cwiseProduct(v0);
            const CVector ref = refined_coordinates(X.lambdas, K.alphas);
            const double e3 = (sq - ref).norm() / ref.norm();
            const double e = std::max({e1, e2, e3});

            bool fd = true;
            if (n >= 4) {
                const CVector x = S.point.x() / S.point.x().norm();
                const auto roots = theta(X, S.point).roots().finite;
                CVector ker = K.ambient() * random_vector(rng, 3);
                CVector ctl = K.frame.vectors * random_vector(rng, n);
                ker /= ker.norm();
                ctl /= ctl.norm();
                const double k4 = drift_along(X, x, roots, ker, 1e-4), k5 = drift_along(X, x, roots, ker, 1e-5);
                const double c4 = drift_along(X, x, roots, ctl, 1e-4), c5 = drift_along(X, x, roots, ctl, 1e-5);
                const double ks = std::log10(k4 / k5), cs = std::log10(c4 / c5);
                const double ratio = std::min(c4 / k4, c5 / k5);
                minKer = std::min(minKer, ks);
                maxCtl = std::max(maxCtl, cs);
                minRatio = std::min(minRatio, ratio);
                fd = ks >= 1.7 && cs <= 1.3 && ratio >= 10.0;
            }
            t.record(e <= t.r.tol && fd, e);
        } catch (const Error& e) {
            t.fail(e);
        }
    }
    t.r.metrics = {{"minKernelSlope", minKer}, {"maxControlSlope", maxCtl}, {"minDriftRatio", minRatio}};
    t.r.ok = t.r.passed == t.r.trials;
    return t.r;
}

// ---- lemma66: the two linear relations among w0, w1, w2 and v^x

Result lemma66(const Options& o) {
    Tally t;
    t.r.tol = tol_or(o, 1e-9);
    const auto ns = ns_or(o, {5});
    const int trials = trials_or(o, 50);
    Rng rng(o.seed);
    for (int k = 0; k < trials; ++k) {
        const int n = ns[k % ns.size()];
        try {
            const auto X = random_variety(rng, n);
            const auto S = random_regular_point(rng, X, true);
            const auto [r1, r2] = tangent_relations(X, tangent_image(X, S.point));
            const double e = std::max(r1, r2);
            t.record(e <= t.r.tol, e);
        } catch (const Error& e) {
            t.fail(e);
        }
    }
    t.r.ok = t.r.passed == t.r.trials;
    return t.r;
}

// ---- rank5: injectivity certificate rates, and refusal for n = 4

Result rank5(const Options& o) {
    Tally t;
    const auto ns = ns_or(o, {5, 6, 7});
    const int trials = trials_or(o, 50 * static_cast<int>(ns.size()));
    const double rate = tol_or(o, 0.95);
    t.r.tol = rate;
    Rng rng(o.seed);
    std::map<int, std::pair<int, int>> per; // n -> (passed, total)
    for (int k = 0; k < trials; ++k) {
        const int n = ns[k % ns.size()];
        auto& [ok, total] = per[n];
        ++total;
        try {
            const auto X = random_variety(rng, n);
            const auto S = random_regular_point(rng, X, true);
            const bool c = injectivity_certificate(X, S.point);
            if (c) ++ok;
            t.record(c, 0.0);
        } catch (const Error& e) {
            t.fail(e);
        }
    }
    bool refused = false;
    try {
        const auto X = random_variety(rng, 4);
        const auto S = random_regular_point(rng, X, false);
        injectivity_certificate(X, S.point);
    } catch (const Error& e) {
        refused = e.kind() == ErrorKind::DimensionTooSmall;
    }
    t.r.ok = refused;
    for (const auto& [n, pt] : per) {
        const double fr = static_cast<double>(pt.first) / pt.second;
        t.r.metrics.emplace_back("rate_n" + std::to_string(n), fr);
        if (fr < rate) t.r.ok = false;
    }
    t.r.metrics.emplace_back("refusesN4", refused ? 1.0 : 0.0);
    return t.r;
}

// ---- roundtrip-reconstruct: samples -> sigma -> lambdas

struct AlphaSets {
    std::vector<Complex> base;
    std::vector<Complex> extra;
};

AlphaSets shared_first_sets(Rng& rng, int n, std::vector<Complex> avoid) {
    AlphaSets s;
    avoid.push_back(0.0);
    s.base = random_separated(rng, n, 1.0, 0.05, avoid);
    auto avoid2 = avoid;
    avoid2.insert(avoid2.end(), s.base.begin(), s.base.end());
    s.extra = random_separated(rng, n - 1, 1.0, 0.05, avoid2);
    s.extra.insert(s.extra.begin(), s.base[0]);
    return s;
}

Result roundtrip_reconstruct(const Options& o) {
    Tally t;
    t.r.tol = tol_or(o, 1e-6);
    const auto ns = ns_or(o, {5, 6});
    const int trials = trials_or(o, 25);
    Rng rng(o.seed);
    double minGap = INFINITY;
    int rankOk = 0;
    for (int k = 0; k < trials; ++k) {
        const int n = ns[k % ns.size()];
        try {
            const auto X = random_variety(rng, n);
            const auto sets = shared_first_sets(rng, n, X.lambdas);
            const auto samples = samples_from_variety(X, sets.base, {sets.extra}, {}, rng());
            const auto sol = solve_sigma(samples, n);
            const auto lam = recover_lambdas(sol.sigma);
            const double e = match_roots(lam, X.lambdas).max_distance;
            const bool rk = sol.rank == n + 4;
            if (rk) ++rankOk;
            minGap = std::min(minGap, sol.gap);
            t.record(e <= t.r.tol && rk && varieties_match(lam, X.lambdas, t.r.tol), e);
        } catch (const Error& e) {
            t.fail(e);
        }
    }
    t.r.metrics = {{"rankExact", static_cast<double>(rankOk)}, {"minGap", minGap}};
    t.r.ok = t.r.passed == t.r.trials;
    return t.r;
}

// ---- equivariance: pair changes, SL2 action on theta, witness transform, GL action

Result equivariance(const Options& o) {
    Tally t;
    t.r.tol = tol_or(o, 1e-7);
    const auto ns = ns_or(o, {5});
    const int trials = trials_or(o, 100);
    Rng rng(o.seed);
    double m219 = 0, m312 = 0, m410 = 0, m414 = 0;
    for (int k = 0; k < trials; ++k) {
        const int n = ns[k % ns.size()];
        try {
            const Pencil P(random_symmetric(rng, n), random_symmetric(rng, n));
            const auto tau = is_nonsingular(P).roots;
            const SL2Element g = random_sl2(rng);

            // Pair changes: a GL pullback keeps the discriminant, an SL2 change moves roots by g.
            const MatrixC T = random_transform(rng, n);
            double e219 = root_distance(discriminant(pullback(P, T)), discriminant(P));
            std::vector<Complex> moved;
            for (const auto& z : tau) moved.push_back(g.apply(z));
            e219 = std::max(e219, match_roots(is_nonsingular(transform_pair(P, g)).roots, moved).max_distance);

            // theta of the transformed ambient pair equals g acting on theta.
            const auto X = random_variety(rng, n);
            const auto S = random_regular_point(rng, X, false);
            std::vector<Complex> lg;
            CVector y = S.point.x();
            for (int j = 0; j < X.ambient_dim(); ++j) {
                const Complex den = g.c() * X.lambdas[j] + g.d();
                lg.push_back((g.a() * X.lambdas[j] + g.b()) / den);
                y(j) *= std::sqrt(den);
            }
            const auto Xg = make_variety(lg);
            const double e312 = root_distance(theta(Xg, make_point(Xg, y)), sl2_act(g, theta(X, S.point)));

            // Witness transform (c alpha_i + d)^-2 between the two pairs.
            const CVector u = random_vector(rng, n);
            const auto Sg = poised_span(transform_pair(P, g), u);
            const auto sb = standard_basis(P);
            CVector z = sb.inverse * u;
            for (int i = 0; i < n; ++i) z(i) /= std::pow(g.c() * sb.roots[i] + g.d(), 2);
            const CVector v = sb.basis * z;
            const auto Sv = poised_span(sb, v);
            double e410 = subspace_distance(Sg.basis, Sv.basis);
            const auto w = is_poised(sb, Sg.basis);
            e410 = std::max(e410, w ? projective_distance(w->coords(), v) : 1.0);

            // GL equivariance of poised spans.
            const MatrixC Ti = T.inverse();
            const auto Su = poised_span(P, u);
            const auto St = poised_span(pullback(P, T), CVector(Ti * u));
            const double e414 = subspace_distance(St.basis, Ti * Su.basis);

            m219 = std::max(m219, e219);
            m312 = std::max(m312, e312);
            m410 = std::max(m410, e410);
            m414 = std::max(m414, e414);
            const double e = std::max({e219, e312, e410, e414});
            t.record(e <= t.r.tol, e);
        } catch (const Error& e) {
            t.fail(e);
        }
    }
    t.r.metrics = {{"pairChange", m219}, {"thetaAction", m312}, {"witnessTransform", m410}, {"glAction", m414}};
    t.r.ok = t.r.passed == t.r.trials;
    return t.r;
}

// ---- negative-control: equal moduli, distinguishable refined data

Result negative_control(const Options& o) {
    Tally t;
    t.r.tol = tol_or(o, 1e-6);
    const auto ns = ns_or(o, {5});
    const int trials = trials_or(o, 10);
    Rng rng(o.seed);
    double muGap = 0.0, vGap = INFINITY;
    for (int k = 0; k < trials; ++k) {
        const int n = ns[k % ns.size()];
        try {
            const auto X = random_variety(rng, n);
            const auto Y = random_variety(rng, n);
            auto avoid = X.lambdas;
            avoid.insert(avoid.end(), Y.lambdas.begin(), Y.lambdas.end());
            const auto sets = shared_first_sets(rng, n, avoid);
            const auto psi = BinaryForm::from_roots(sets.base);
            const auto x = point_from_fiber(X, psi, random_signs(rng, X.ambient_dim()));
            const auto y = point_from_fiber(Y, psi, random_signs(rng, Y.ambient_dim()));
            const double dmu = invariant_distance(mu(X, x), mu(Y, y));

            const auto sx = samples_from_variety(X, sets.base, {sets.extra}, {}, rng());
            const auto sy = samples_from_variety(Y, sets.base, {sets.extra}, {}, rng());
            const double dv = sx[0].v.distance(sy[0].v);
            const auto lx = recover_lambdas(solve_sigma(sx, n).sigma);
            const auto ly = recover_lambdas(solve_sigma(sy, n).sigma);

            const bool pass = dmu <= 1e-7 && varieties_match(lx, X.lambdas, t.r.tol) &&
                              varieties_match(ly, Y.lambdas, t.r.tol) && !varieties_match(lx, Y.lambdas, t.r.tol) &&
                              !varieties_match(ly, X.lambdas, t.r.tol);
            muGap = std::max(muGap, dmu);
            vGap = std::min(vGap, dv);
            t.record(pass, dmu);
        } catch (const Error& e) {
            t.fail(e);
        }
    }
    t.r.metrics = {{"maxMuDistance", muGap}, {"minRefinedDistance", vGap}};
    t.r.ok = t.r.passed == t.r.trials;
    return t.r;
}

using Runner = Result (*)(const Options&);

const std::vector<std::pair<std::string, Runner>>& table() {
    static const std::vector<std::pair<std::string, Runner>> t{
        {"prop37", prop37},
        {"roundtrip-theta", roundtrip_theta},
        {"prop39", prop39},
        {"lemma55", lemma55},
        {"lemma56", lemma56},
        {"lemma66", lemma66},
        {"rank5", rank5},
        {"roundtrip-reconstruct", roundtrip_reconstruct},
        {"equivariance", equivariance},
        {"negative-control", negative_control},
    };
    return t;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : table()) v.push_back(name);
        return v;
    }();
    return names;
}

Result run(const std::string& suite, const Options& opt) {
    for (const auto& [name, fn] : table())
        if (name == suite) {
            Result r = fn(opt);
            r.suite = suite;
            return r;
        }
    throw std::invalid_argument("unknown suite '" + suite + "'");
}

} // namespace qp::verify
