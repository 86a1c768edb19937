#include "quadpencil/reconstruct.hpp"

#include <algorithm>
#include <cmath>

#include "quadpencil/sampling.hpp"

namespace qp {

namespace {

struct RootValue {
    Complex alpha;
    Complex u;
};

std::vector<RootValue> u_values(const RefinedSample& s) {
    const auto n = s.alphas.size();
    if (static_cast<std::size_t>(s.v.size()) != n)
        throw Error(ErrorKind::LengthMismatch, "sample has different numbers of alphas and v entries");
    std::vector<RootValue> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(s.v[i]) == 0.0) throw Error(ErrorKind::InvalidInput, "sample has a zero v entry");
        Complex p = -1.0;
        for (std::size_t k = 0; k < n; ++k)
            if (k != i) p *= s.alphas[i] - s.alphas[k];
        out.push_back({s.alphas[i], p / s.v[i]});
    }
    return out;
}

bool relative_close(Complex a, Complex b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

} // namespace

std::vector<RefinedSample> samples_from_variety(const DiagonalIntersection& X,
                                                const std::vector<Complex>& baseAlphas,
                                                const std::vector<std::vector<Complex>>& extraAlphaSets,
                                                const std::vector<std::vector<bool>>& signs, std::uint64_t seed) {
    if (baseAlphas.empty()) throw Error(ErrorKind::InvalidInput, "empty base alpha set");
    std::vector<std::vector<Complex>> sets{baseAlphas};
    for (const auto& s : extraAlphaSets) {
        if (s.size() != baseAlphas.size())
            throw Error(ErrorKind::LengthMismatch, "alpha sets differ in size");
        int shared = 0;
        for (const auto& a : s)
            for (const auto& b : baseAlphas)
                if (chordal_distance(a, b) <= kDistinct) ++shared;
        if (shared != 1 || chordal_distance(s[0], baseAlphas[0]) > kDistinct)
            throw Error(ErrorKind::InvalidInput, "each extra set must share exactly the first root");
        sets.push_back(s);
    }
    if (!signs.empty() && signs.size() != sets.size())
        throw Error(ErrorKind::LengthMismatch, "one sign list per alpha set expected");

    Rng rng(seed);
    std::vector<RefinedSample> out;
    for (std::size_t k = 0; k < sets.size(); ++k) {
        const auto sg = signs.empty() ? random_signs(rng, X.ambient_dim()) : signs[k];
        try {
            const SurfacePoint p = point_from_fiber(X, BinaryForm::from_roots(sets[k]), sg);
            out.push_back(refined_mu(X, p));
        } catch (const Error& e) {
            throw Error(ErrorKind::NotRegular, "alpha set " + std::to_string(k) + ": " + e.detail());
        }
    }
    return out;
}

SigmaSolution solve_sigma(const std::vector<RefinedSample>& samples, int n, double tol) {
    if (n < 5) throw Error(ErrorKind::DimensionTooSmall, "reconstruction needs n >= 5");
    for (const auto& s : samples)
        if (static_cast<int>(s.alphas.size()) != n)
            throw Error(ErrorKind::LengthMismatch, "every sample must carry n roots");

    std::vector<std::vector<RootValue>> uv;
    for (const auto& s : samples) uv.push_back(u_values(s));

    // Align the per-sample scales through shared roots, starting from sample 0.
    std::vector<RootValue> rows;
    std::vector<bool> done(uv.size(), false);
    if (!uv.empty()) {
        rows = uv[0];
        done[0] = true;
    }
    for (bool progress = true; progress;) {
        progress = false;
        for (std::size_t k = 0; k < uv.size(); ++k) {
            if (done[k]) continue;
            std::vector<std::pair<std::size_t, std::size_t>> shared; // (row, entry)
            for (std::size_t e = 0; e < uv[k].size(); ++e)
                for (std::size_t r = 0; r < rows.size(); ++r)
                    if (chordal_distance(uv[k][e].alpha, rows[r].alpha) <= kDistinct) shared.emplace_back(r, e);
            if (shared.empty()) continue;
            const Complex ratio = rows[shared[0].first].u / uv[k][shared[0].second].u;
            for (auto& rv : uv[k]) rv.u *= ratio;
            for (const auto& [r, e] : shared)
                if (!relative_close(rows[r].u, uv[k][e].u, kDistinct))
                    throw Error(ErrorKind::InconsistentSamples, "shared root values disagree after alignment");
            for (std::size_t e = 0; e < uv[k].size(); ++e)
                if (std::none_of(shared.begin(), shared.end(), [&](const auto& p) { return p.second == e; }))
                    rows.push_back(uv[k][e]);
            done[k] = true;
            progress = true;
        }
    }
    if (std::find(done.begin(), done.end(), false) != done.end())
        throw Error(ErrorKind::InconsistentSamples, "a sample shares no root with the others");

    const int m = n + 3;
    const auto distinct = static_cast<Eigen::Index>(rows.size());
    if (distinct < m + 1)
        throw Error(ErrorKind::AmbiguousNullspace,
                    std::to_string(distinct) + " distinct roots for " + std::to_string(m + 2) + " unknowns");

    // Each sample keeps its own scale unknown. Every sample recomputes its
    // alphas from its own point, so copies of a shared root differ at the
    // rounding level; merging them into one row would leave an inconsistency
    // that the weakest direction of the system amplifies.
    const auto S = static_cast<Eigen::Index>(uv.size());
    const Eigen::Index cols = m + 1 + S;
    Eigen::Index R = 0;
    for (const auto& u : uv) R += static_cast<Eigen::Index>(u.size());
    MatrixC A = MatrixC::Zero(R, cols);
    Eigen::Index r = 0;
    for (Eigen::Index k = 0; k < S; ++k)
        for (const auto& rv : uv[k]) {
            Complex p = 1.0;
            for (int c = m; c >= 0; --c) {
                A(r, c) = p;
                p *= rv.alpha;
            }
            A(r, m + 1 + k) = -rv.u;
            ++r;
        }
    // Row and column equilibration; the column scales are undone afterwards.
    for (Eigen::Index i = 0; i < R; ++i) A.row(i) /= A.row(i).cwiseAbs().maxCoeff();
    Eigen::VectorXd cs(cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        cs(c) = A.col(c).cwiseAbs().maxCoeff();
        A.col(c) /= cs(c);
    }

    const SingularInfo info = smallest_singular(A, tol);
    SigmaSolution sol;
    sol.rows = static_cast<int>(R);
    // Reported with a single scale unknown, as if the samples were merged.
    sol.rank = static_cast<int>(cols - info.nullity - (S - 1));
    sol.gap = info.sigma_next;
    sol.residual = info.sigma_min;
    if (info.nullity > 1 || info.sigma_next <= tol)
        throw Error(ErrorKind::AmbiguousNullspace, "the Vandermonde system has more than one null direction");
    CVector z = info.vector.cwiseQuotient(cs.cast<Complex>());
    sol.sigma.coeffs = normalize_projective(z.head(m + 1));
    return sol;
}

std::vector<Complex> recover_lambdas(const SigmaVector& sigma) {
    const auto m = sigma.coeffs.size() - 1;
    if (m < 1) throw Error(ErrorKind::DegenerateRecovery, "sigma has fewer than two coefficients");
    std::vector<Complex> asc(sigma.coeffs.data(), sigma.coeffs.data() + sigma.coeffs.size());
    std::reverse(asc.begin(), asc.end());
    const double top = sigma.coeffs.cwiseAbs().maxCoeff();
    if (top == 0.0 || std::abs(asc.back()) <= kTol * top)
        throw Error(ErrorKind::DegenerateRecovery, "leading coefficient vanishes");
    auto roots = poly_roots(Polynomial(asc));
    if (static_cast<Eigen::Index>(roots.size()) != m || min_pairwise_chordal(roots) <= kDistinct)
        throw Error(ErrorKind::DegenerateRecovery, "recovered lambdas are not distinct");
    sort_roots(roots);
    return roots;
}

bool varieties_match(const std::vector<Complex>& lamA, const std::vector<Complex>& lamB, double tol) {
    if (lamA.size() != lamB.size()) return false;
    return match_roots(lamA, lamB).max_distance <= tol;
}

} // namespace qp
