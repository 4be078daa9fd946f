#pragma once

// Local covariance matrices of a curve over the parameter window [t - eps, t + eps]:
//   on-curve       C(t)    = 1/(2 eps) int (gamma(s) - gamma(t)) (gamma(s) - gamma(t))^T ds
//   mean-centered  Cbar(t) = 1/(2 eps) int (gamma(s) - mean) (gamma(s) - mean)^T ds

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "frenet_svd/curve.hpp"
#include "frenet_svd/errors.hpp"
#include "frenet_svd/linalg.hpp"
#include "frenet_svd/quadrature.hpp"

namespace frenet_svd {

inline constexpr int kDefaultQuadratureOrder = 24;

template <typename Scalar>
struct CovarianceMatrix {
    Scalar t;
    Scalar eps;
    Matrix<Scalar> entries;
    bool centered = false;
};

namespace detail {

/// Gauss-Legendre nodes/weights on [t - eps, t] and [t, t + eps].
template <typename Scalar>
void window_rule(const Scalar& t, const Scalar& eps, int order, std::vector<Scalar>& nodes, std::vector<Scalar>& weights) {
    const GaussLegendreRule<Scalar>& rule = gauss_legendre<Scalar>(order);
    const Scalar half = eps / 2;
    nodes.clear();
    weights.clear();
    for (const Scalar mid : {Scalar(t - half), Scalar(t + half)}) {
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            nodes.push_back(mid + half * rule.nodes[k]);
            weights.push_back(half * rule.weights[k]);
        }
    }
}

template <typename Scalar>
void check_window(const Curve<Scalar>& curve, const Scalar& t, const Scalar& eps) {
    if (!(eps > 0)) throw Error(ErrorCode::InvalidParams, "eps must be positive");
    if (!curve.contains(Scalar(t - eps), Scalar(t + eps)))
        throw Error(ErrorCode::DomainError, "window [t - eps, t + eps] leaves the domain of '" + curve.name + "'");
}

/// Accumulates weight * d d^T into the upper triangle, mirrored at the end.
template <typename Scalar>
void add_outer_upper(Matrix<Scalar>& acc, const Vector<Scalar>& d, const Scalar& weight) {
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        const Scalar wi = weight * d[i];
        for (Eigen::Index j = i; j < d.size(); ++j) acc(i, j) += wi * d[j];
    }
}

template <typename Scalar>
void mirror_upper(Matrix<Scalar>& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < i; ++j) m(i, j) = m(j, i);
}

}  // namespace detail

template <typename Scalar>
CovarianceMatrix<Scalar> covariance_on_curve(const Curve<Scalar>& curve, const Scalar& t, const Scalar& eps,
                                             int quadrature_order = kDefaultQuadratureOrder) {
    detail::check_window(curve, t, eps);
    std::vector<Scalar> nodes, weights;
    detail::window_rule(t, eps, quadrature_order, nodes, weights);

    const Vector<Scalar> center = curve.value(t);
    Matrix<Scalar> acc = Matrix<Scalar>::Zero(curve.dim, curve.dim);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const Vector<Scalar> d = curve.value(nodes[k]) - center;
        detail::add_outer_upper(acc, d, weights[k]);
    }
    detail::mirror_upper(acc);
    return {t, eps, Matrix<Scalar>(acc / (2 * eps)), false};
}

template <typename Scalar>
CovarianceMatrix<Scalar> covariance_mean_centered(const Curve<Scalar>& curve, const Scalar& t, const Scalar& eps,
                                                  int quadrature_order = kDefaultQuadratureOrder) {
    detail::check_window(curve, t, eps);
    std::vector<Scalar> nodes, weights;
    detail::window_rule(t, eps, quadrature_order, nodes, weights);

    std::vector<Vector<Scalar>> values;
    values.reserve(nodes.size());
    Vector<Scalar> mean = Vector<Scalar>::Zero(curve.dim);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        values.push_back(curve.value(nodes[k]));
        mean += weights[k] * values.back();
    }
    mean /= 2 * eps;

    Matrix<Scalar> acc = Matrix<Scalar>::Zero(curve.dim, curve.dim);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const Vector<Scalar> d = values[k] - mean;
        detail::add_outer_upper(acc, d, weights[k]);
    }
    detail::mirror_upper(acc);
    return {t, eps, Matrix<Scalar>(acc / (2 * eps)), true};
}

/// E(i, j) = eps^{i+j} / (i! j! (i+j+1)) for i + j even, 0 otherwise (1-based).
template <typename Scalar>
Matrix<Scalar> taylor_moment_matrix(int order, const Scalar& eps) {
    if (order < 1 || !(eps > 0)) throw Error(ErrorCode::InvalidParams, "taylor_moment_matrix needs order >= 1, eps > 0");
    std::vector<Scalar> scaled(static_cast<std::size_t>(order) + 1);  // eps^i / i!
    scaled[0] = 1;
    for (int i = 1; i <= order; ++i) scaled[i] = scaled[i - 1] * eps / i;
    Matrix<Scalar> e = Matrix<Scalar>::Zero(order, order);
    for (int i = 1; i <= order; ++i)
        for (int j = 1; j <= order; ++j)
            if ((i + j) % 2 == 0) e(i - 1, j - 1) = scaled[i] * scaled[j] / (i + j + 1);
    return e;
}

/// Gamma E Gamma^T with Gamma = [gamma'(t) ... gamma^(n)(t)]: the covariance
/// of the n-th order Taylor polynomial of the curve.
template <typename Scalar>
Matrix<Scalar> surrogate_covariance(const Matrix<Scalar>& derivatives, const Scalar& eps) {
    const Matrix<Scalar> e = taylor_moment_matrix<Scalar>(static_cast<int>(derivatives.cols()), eps);
    Matrix<Scalar> s = derivatives * e * derivatives.transpose();
    for (Eigen::Index i = 0; i < s.rows(); ++i)
        for (Eigen::Index j = 0; j < i; ++j) s(i, j) = s(j, i);
    return s;
}

template <typename Scalar>
struct CheckerboardBlocks {
    Matrix<Scalar> odd_block;   ///< rows/cols 1, 3, 5, ... (1-based)
    Matrix<Scalar> even_block;  ///< rows/cols 2, 4, 6, ...
    std::vector<Eigen::Index> permutation;  ///< 0-based: odd indices first, then even
};

/// Splits a matrix whose (i, j) entries vanish for i + j odd into its two
/// diagonal blocks.
template <typename Scalar>
CheckerboardBlocks<Scalar> checkerboard_blocks(const Matrix<Scalar>& m) {
    using std::abs;
    const Eigen::Index n = m.rows();
    if (m.cols() != n) throw Error(ErrorCode::InvalidParams, "checkerboard split needs a square matrix");
    const Scalar tolerance = Scalar(1e-13) * m.norm();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if ((i + j) % 2 == 1 && abs(m(i, j)) > tolerance)
                throw Error(ErrorCode::PatternViolation, "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                                             ") breaks the checkerboard pattern");

    CheckerboardBlocks<Scalar> out;
    std::vector<Eigen::Index> odd, even;
    for (Eigen::Index i = 0; i < n; ++i) (i % 2 == 0 ? odd : even).push_back(i);
    auto extract = [&](const std::vector<Eigen::Index>& idx) {
        Matrix<Scalar> b(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
        for (std::size_t r = 0; r < idx.size(); ++r)
            for (std::size_t c = 0; c < idx.size(); ++c) b(r, c) = m(idx[r], idx[c]);
        return b;
    };
    out.odd_block = extract(odd);
    out.even_block = extract(even);
    out.permutation = odd;
    out.permutation.insert(out.permutation.end(), even.begin(), even.end());
    return out;
}

namespace detail {

/// Cubic Lagrange interpolation through the 4 samples nearest to x.
template <typename Scalar>
Vector<Scalar> interpolate_sample(const SampledCurve& samples, double x) {
    const std::size_t n = samples.size();
    auto upper = std::upper_bound(samples.t.begin(), samples.t.end(), x);
    std::size_t right = static_cast<std::size_t>(upper - samples.t.begin());
    std::size_t first = right >= 2 ? right - 2 : 0;
    if (first + 4 > n) first = n >= 4 ? n - 4 : 0;
    const std::size_t count = std::min<std::size_t>(4, n);

    Vector<Scalar> out = Vector<Scalar>::Zero(samples.dim);
    const Scalar xs = x;
    for (std::size_t a = first; a < first + count; ++a) {
        Scalar basis = 1;
        for (std::size_t b = first; b < first + count; ++b)
            if (b != a) basis *= (xs - Scalar(samples.t[b])) / (Scalar(samples.t[a]) - Scalar(samples.t[b]));
        out += basis * vector_cast<Scalar>(samples.points[a]);
    }
    return out;
}

/// Sample at x when x sits on the grid (within 1e-9 of the local spacing),
/// otherwise the cubic interpolant.
template <typename Scalar>
Vector<Scalar> sample_or_interpolate(const SampledCurve& samples, double x) {
    auto it = std::lower_bound(samples.t.begin(), samples.t.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - samples.t.begin());
    for (std::size_t k : {i, i == 0 ? i : i - 1}) {
        if (k >= samples.size()) continue;
        const double spacing = k + 1 < samples.size() ? samples.t[k + 1] - samples.t[k] : samples.t[k] - samples.t[k - 1];
        if (std::abs(samples.t[k] - x) <= 1e-9 * spacing) return vector_cast<Scalar>(samples.points[k]);
    }
    return interpolate_sample<Scalar>(samples, x);
}

}  // namespace detail

/// Trapezoid-rule version of the on-curve covariance over the samples inside
/// [t - eps, t + eps]; the window ends and gamma(t) are interpolated when they
/// fall between samples. Accumulation happens in Scalar.
template <typename Scalar>
CovarianceMatrix<Scalar> discrete_covariance(const SampledCurve& samples, double t, double eps) {
    if (!(eps > 0)) throw Error(ErrorCode::InvalidParams, "eps must be positive");
    if (samples.size() < 5) throw Error(ErrorCode::TooFewSamples, "need at least 5 samples");
    const double lo = t - eps, hi = t + eps;
    const double slack = 1e-9 * (samples.t[1] - samples.t[0]);
    if (lo < samples.t.front() - slack || hi > samples.t.back() + slack)
        throw Error(ErrorCode::TooFewSamples, "window [t - eps, t + eps] is not covered by the samples");

    std::vector<double> grid{lo};
    std::vector<Vector<Scalar>> values{detail::sample_or_interpolate<Scalar>(samples, lo)};
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const double s = samples.t[k];
        const double spacing = k + 1 < samples.size() ? samples.t[k + 1] - s : s - samples.t[k - 1];
        if (s > lo + 1e-9 * spacing && s < hi - 1e-9 * spacing) {
            grid.push_back(s);
            values.push_back(vector_cast<Scalar>(samples.points[k]));
        }
    }
    grid.push_back(hi);
    values.push_back(detail::sample_or_interpolate<Scalar>(samples, hi));
    if (grid.size() < 5) throw Error(ErrorCode::TooFewSamples, "fewer than 5 samples inside the window");

    const Vector<Scalar> center = detail::sample_or_interpolate<Scalar>(samples, t);
    Matrix<Scalar> acc = Matrix<Scalar>::Zero(samples.dim, samples.dim);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        Scalar weight = 0;
        if (k > 0) weight += (Scalar(grid[k]) - Scalar(grid[k - 1])) / 2;
        if (k + 1 < grid.size()) weight += (Scalar(grid[k + 1]) - Scalar(grid[k])) / 2;
        const Vector<Scalar> d = values[k] - center;
        detail::add_outer_upper(acc, d, weight);
    }
    detail::mirror_upper(acc);
    return {Scalar(t), Scalar(eps), Matrix<Scalar>(acc / (2 * Scalar(eps))), false};
}

}  // namespace frenet_svd
