#include "quadpencil/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace

Polynomial::Polynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(0.0);
    for (const auto& z : c_)
        if (!finite(z)) throw Error(ErrorKind::DegenerateInput, "non-finite polynomial coefficient");
}

Polynomial Polynomial::from_roots(const std::vector<Complex>& roots, Complex lead) {
    std::vector<Complex> c{lead};
    for (const auto& r : roots) {
        c.push_back(0.0);
        for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
        c[0] = -r * c[0];
    }
    return Polynomial(std::move(c));
}

double Polynomial::max_abs() const {
    double m = 0.0;
    for (const auto& z : c_) m = std::max(m, std::abs(z));
    return m;
}

int Polynomial::degree(double tol) const {
    const double cut = tol * max_abs();
    for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k)
        if (std::abs(c_[k]) > cut && c_[k] != Complex(0.0)) return k;
    return -1;
}

Complex Polynomial::evaluate(Complex z) const {
    Complex acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::pair<Complex, Complex> Polynomial::evaluate_with_derivative(Complex z) const {
    Complex p = 0.0, dp = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
    }
    return {p, dp};
}

Polynomial Polynomial::trimmed(double tol) const {
    const int d = degree(tol);
    if (d < 0) return Polynomial();
    return Polynomial(std::vector<Complex>(c_.begin(), c_.begin() + d + 1));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    std::vector<Complex> out(c_.size() + other.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < other.c_.size(); ++j) out[i + j] += c_[i] * other.c_[j];
    return Polynomial(std::move(out));
}

std::vector<Complex> elementary_symmetric(const std::vector<Complex>& values) {
    std::vector<Complex> e{1.0};
    for (const auto& v : values) {
        e.push_back(0.0);
        for (std::size_t k = e.size() - 1; k > 0; --k) e[k] += v * e[k - 1];
    }
    return e;
}

std::vector<Complex> poly_roots(const Polynomial& p, double tol) {
    const Polynomial q = p.trimmed(64.0 * kEps);
    const int n = q.degree();
    if (n < 1) throw Error(ErrorKind::DegenerateInput, "polynomial of degree < 1 has no roots");

    std::vector<Complex> a(q.coeffs());
    const Complex lead = a[n];
    for (auto& z : a) z /= lead;

    if (n == 1) return {-a[0]};

    std::vector<double> absa(n + 1);
    for (int k = 0; k <= n; ++k) absa[k] = std::abs(a[k]);

    // Starting circle: geometric mean of the root moduli when available,
    // otherwise half the Fujiwara bound.
    double radius = 0.0;
    if (absa[0] > 0.0) {
        radius = std::pow(absa[0], 1.0 / n);
    } else {
        for (int k = 0; k < n; ++k) radius = std::max(radius, std::pow(absa[k], 1.0 / (n - k)));
    }
    if (!(radius > 0.0) || !std::isfinite(radius)) radius = 1.0;

    std::vector<Complex> z(n);
    for (int k = 0; k < n; ++k) {
        const double ang = 2.0 * std::numbers::pi * k / n + 0.4;
        z[k] = radius * (1.0 + 0.01 * k / n) * std::polar(1.0, ang);
    }

    auto error_bound = [&](Complex x) {
        const double r = std::abs(x);
        double s = 0.0;
        for (int k = n; k >= 0; --k) s = s * r + absa[k];
        return 8.0 * kEps * s;
    };

    std::vector<bool> done(n, false);
    const int max_iter = 1000;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        bool all = true;
        for (int i = 0; i < n; ++i) {
            if (done[i]) continue;
            Complex pv = 0.0, dp = 0.0;
            for (int k = n; k >= 0; --k) {
                dp = dp * z[i] + pv;
                pv = pv * z[i] + a[k];
            }
            if (std::abs(pv) <= error_bound(z[i])) {
                done[i] = true;
                continue;
            }
            all = false;
            Complex sum = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) sum += 1.0 / (z[i] - z[j]);
            Complex w;
            if (dp == Complex(0.0)) {
                w = std::polar(1e-3 * (1.0 + std::abs(z[i])), 1.0 + i);
            } else {
                const Complex ratio = pv / dp;
                w = ratio / (1.0 - ratio * sum);
            }
            if (!finite(w)) w = std::polar(1e-3 * (1.0 + std::abs(z[i])), 2.0 + i);
            z[i] -= w;
        }
        if (all) break;
    }
    if (iter == max_iter)
        throw Error(ErrorKind::NoConvergence, "Aberth iteration did not converge");

    // Newton polishing of roots that are well separated from the rest.
    for (int i = 0; i < n; ++i) {
        double sep = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j)
            if (j != i) sep = std::min(sep, std::abs(z[i] - z[j]));
        if (sep < 1e-3 * (1.0 + std::abs(z[i]))) continue;
        for (int step = 0; step < 3; ++step) {
            Complex pv = 0.0, dp = 0.0;
            for (int k = n; k >= 0; --k) {
                dp = dp * z[i] + pv;
                pv = pv * z[i] + a[k];
            }
            if (dp == Complex(0.0)) break;
            const Complex cand = z[i] - pv / dp;
            Complex pc = 0.0;
            for (int k = n; k >= 0; --k) pc = pc * cand + a[k];
            if (std::abs(pc) >= std::abs(pv)) break;
            z[i] = cand;
        }
    }

    // The rebuilt polynomial must reproduce the input up to scale.
    auto mismatch = [&] {
        const Polynomial rebuilt = Polynomial::from_roots(z, lead);
        double err = 0.0;
        for (int k = 0; k <= n; ++k) err = std::max(err, std::abs(rebuilt[k] - q[k]));
        return err;
    };
    const double allowed = std::max(tol, 1e3 * kEps) * q.max_abs();
    if (!(mismatch() <= allowed)) {
        // Copies of an m-fold root stop anywhere in a disc of radius about
        // eps^(1/m). Each cluster is replaced by one accurate value.
        std::vector<int> label(n);
        for (int i = 0; i < n; ++i) label[i] = i;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (std::abs(z[i] - z[j]) < 1e-3 * (1.0 + std::abs(z[i]))) {
                    const int from = label[j], to = label[i];
                    for (auto& l : label)
                        if (l == from) l = to;
                }
        for (int c = 0; c < n; ++c) {
            Complex sum = 0.0;
            int count = 0;
            for (int i = 0; i < n; ++i)
                if (label[i] == c) {
                    sum += z[i];
                    ++count;
                }
            if (count < 2) continue;
            // A root of multiplicity m is a simple root of the (m-1)-th derivative.
            std::vector<Complex> d(a);
            for (int r = 1; r < count; ++r) {
                for (std::size_t k = 1; k < d.size(); ++k) d[k - 1] = static_cast<double>(k) * d[k];
                d.pop_back();
            }
            Complex w = sum / static_cast<double>(count);
            for (int step = 0; step < 20; ++step) {
                Complex pv = 0.0, dp = 0.0;
                for (int k = static_cast<int>(d.size()) - 1; k >= 0; --k) {
                    dp = dp * w + pv;
                    pv = pv * w + d[k];
                }
                if (dp == Complex(0.0)) break;
                const Complex delta = pv / dp;
                w -= delta;
                if (std::abs(delta) <= 4.0 * kEps * (1.0 + std::abs(w))) break;
            }
            for (int i = 0; i < n; ++i)
                if (label[i] == c) z[i] = w;
        }
        if (!(mismatch() <= allowed))
            throw Error(ErrorKind::NoConvergence, "root set does not reproduce the polynomial");
    }
    return z;
}

ProjectiveVector::ProjectiveVector(const CVector& coords) : v_(normalize_projective(coords)) {}

double ProjectiveVector::distance(const ProjectiveVector& other) const {
    return projective_distance(v_, other.v_);
}

CVector normalize_projective(const CVector& v) {
    if (v.size() == 0) throw Error(ErrorKind::DegenerateInput, "empty projective vector");
    double best = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!finite(v(i))) throw Error(ErrorKind::DegenerateInput, "non-finite coordinate");
        best = std::max(best, std::abs(v(i)));
    }
    if (best == 0.0) throw Error(ErrorKind::DegenerateInput, "zero vector has no projective class");
    Eigen::Index pivot = 0;
    while (std::abs(v(pivot)) < best * (1.0 - 1e-12)) ++pivot;
    CVector out = v / v(pivot);
    out(pivot) = 1.0;
    return out;
}

double projective_distance(const CVector& a, const CVector& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::LengthMismatch, "projective vectors of different length");
    const double na = a.norm(), nb = b.norm();
    if (na == 0.0 || nb == 0.0) throw Error(ErrorKind::DegenerateInput, "zero vector");
    const CVector ua = a / na;
    CVector ub = b / nb;
    const Complex rho = ua.dot(ub); // conj(ua) . ub
    if (std::abs(rho) > 0.0) ub *= std::conj(rho) / std::abs(rho);
    const double chord = (ua - ub).norm();
    // chord = 2 sin(angle/2); convert to sin(angle).
    const double half = std::min(1.0, chord / 2.0);
    return 2.0 * half * std::sqrt(std::max(0.0, 1.0 - half * half));
}

SingularInfo smallest_singular(const MatrixC& M, double tol) {
    SingularInfo info;
    const Eigen::Index cols = M.cols();
    if (cols == 0) throw Error(ErrorKind::DegenerateInput, "matrix without columns");
    Eigen::JacobiSVD<MatrixC> svd(M, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    // Singular values padded with zeros up to the column count.
    std::vector<double> sv(cols, 0.0);
    for (Eigen::Index i = 0; i < s.size(); ++i) sv[i] = s(i);
    info.sigma_max = sv[0];
    info.vector = svd.matrixV().col(cols - 1);
    if (info.sigma_max == 0.0) {
        info.nullity = static_cast<int>(cols);
        return info;
    }
    info.sigma_min = sv[cols - 1] / info.sigma_max;
    info.sigma_next = cols >= 2 ? sv[cols - 2] / info.sigma_max : 1.0;
    for (double x : sv)
        if (x <= tol * info.sigma_max) ++info.nullity;
    return info;
}

ProjectiveVector homogeneous_nullvector(const MatrixC& M, double tol) {
    const SingularInfo info = smallest_singular(M, tol);
    if (info.nullity == 0)
        throw Error(ErrorKind::FullRank, "matrix has trivial numerical nullspace");
    if (info.nullity >= 2)
        throw Error(ErrorKind::AmbiguousNullspace,
                    "numerical nullity " + std::to_string(info.nullity) + " exceeds one");
    return ProjectiveVector(info.vector);
}

int numerical_rank(const MatrixC& M, double tol) {
    if (M.size() == 0 || M.cwiseAbs().maxCoeff() == 0.0) return 0;
    Eigen::FullPivLU<MatrixC> lu(M);
    lu.setThreshold(tol);
    return static_cast<int>(lu.rank());
}

MatrixC orthonormal_basis(const MatrixC& M, double tol) {
    Eigen::JacobiSVD<MatrixC> svd(M, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > tol * s(0)) ++r;
    return svd.matrixU().leftCols(r);
}

double subspace_distance(const MatrixC& A, const MatrixC& B, double tol) {
    const MatrixC QA = orthonormal_basis(A, tol), QB = orthonormal_basis(B, tol);
    if (QA.cols() != QB.cols()) return 1.0;
    const MatrixC R = QB - QA * (QA.adjoint() * QB);
    if (R.size() == 0) return 0.0;
    return std::min(1.0, Eigen::JacobiSVD<MatrixC>(R).singularValues()(0));
}

MatrixC equilibrate(const MatrixC& M) {
    MatrixC out = M;
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        const double m = out.row(i).cwiseAbs().maxCoeff();
        if (m > 0.0) out.row(i) /= m;
    }
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
        const double m = out.col(j).cwiseAbs().maxCoeff();
        if (m > 0.0) out.col(j) /= m;
    }
    return out;
}

double chordal_distance(Complex a, Complex b) {
    const bool ia = !finite(a), ib = !finite(b);
    if (ia && ib) return 0.0;
    if (ia) return 1.0 / std::sqrt(1.0 + std::norm(b));
    if (ib) return 1.0 / std::sqrt(1.0 + std::norm(a));
    return std::abs(a - b) / (std::sqrt(1.0 + std::norm(a)) * std::sqrt(1.0 + std::norm(b)));
}

RootMatching match_roots(const std::vector<Complex>& A, const std::vector<Complex>& B) {
    if (A.size() != B.size())
        throw Error(ErrorKind::LengthMismatch,
                    "cannot match " + std::to_string(A.size()) + " roots against " + std::to_string(B.size()));
    const std::size_t n = A.size();
    std::vector<std::vector<double>> d(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i][j] = chordal_distance(A[i], B[j]);

    // Greedy: repeatedly take the globally closest free pair.
    RootMatching m;
    m.perm.assign(n, 0);
    std::vector<bool> usedA(n, false), usedB(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (usedA[i]) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!usedB[j] && d[i][j] < best) { best = d[i][j]; bi = i; bj = j; }
        }
        usedA[bi] = usedB[bj] = true;
        m.perm[bi] = bj;
    }
    // Pairwise swaps while they lower the total.
    for (bool improved = true; improved;) {
        improved = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = i + 1; k < n; ++k) {
                const double now = d[i][m.perm[i]] + d[k][m.perm[k]];
                const double swapped = d[i][m.perm[k]] + d[k][m.perm[i]];
                if (swapped < now - 1e-15) {
                    std::swap(m.perm[i], m.perm[k]);
                    improved = true;
                }
            }
    }
    for (std::size_t i = 0; i < n; ++i) {
        m.max_distance = std::max(m.max_distance, d[i][m.perm[i]]);
        m.total_distance += d[i][m.perm[i]];
    }
    return m;
}

double min_pairwise_chordal(const std::vector<Complex>& values) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j)
            best = std::min(best, chordal_distance(values[i], values[j]));
    return best;
}

std::vector<Complex> to_std(const CVector& v) { return std::vector<Complex>(v.data(), v.data() + v.size()); }

CVector to_eigen(const std::vector<Complex>& v) {
    CVector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
    return out;
}

} // namespace qp
