#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "frenet_svd/curve.hpp"
#include "frenet_svd/errors.hpp"
#include "frenet_svd/linalg.hpp"

namespace frenet_svd {

template <typename Scalar>
struct FrenetApparatus {
    Scalar t;
    Matrix<Scalar> frame;        ///< columns e_1..e_n
    Vector<Scalar> curvatures;   ///< kappa_1..kappa_{n-1}, arc-length rates
};

/// Curvatures straight from the Gram-Schmidt residuals: the k-th derivative
/// has component v^k kappa_1 ... kappa_{k-1} along e_k (v = speed), so
/// kappa_i = ||e~_{i+1}|| / (||e~_i|| v).
template <typename Scalar>
Vector<Scalar> curvatures_from_derivatives(const Matrix<Scalar>& derivatives) {
    const GramSchmidtResult<Scalar> gs = gram_schmidt(derivatives);
    const Eigen::Index n = derivatives.cols();
    Vector<Scalar> kappa(n - 1);
    const Scalar speed = gs.residual_norms[0];
    for (Eigen::Index i = 0; i + 1 < n; ++i) kappa[i] = gs.residual_norms[i + 1] / (gs.residual_norms[i] * speed);
    return kappa;
}

namespace detail {

template <typename Scalar>
Matrix<Scalar> frame_at(const Curve<Scalar>& curve, const Scalar& t) {
    return gram_schmidt_frame(curve.derivative_matrix(t, curve.dim));
}

template <typename Scalar>
Matrix<Scalar> aligned(Matrix<Scalar> frame, const Matrix<Scalar>& reference) {
    for (Eigen::Index j = 0; j < frame.cols(); ++j)
        if (frame.col(j).dot(reference.col(j)) < 0) frame.col(j) = -frame.col(j);
    return frame;
}

template <typename Scalar>
Matrix<Scalar> central_frame_derivative(const Curve<Scalar>& curve, const Scalar& t, const Scalar& h,
                                        const Matrix<Scalar>& reference) {
    const Matrix<Scalar> ahead = aligned(frame_at(curve, Scalar(t + h)), reference);
    const Matrix<Scalar> behind = aligned(frame_at(curve, Scalar(t - h)), reference);
    return (ahead - behind) / (2 * h);
}

}  // namespace detail

/// Frenet frame by Gram-Schmidt of gamma', ..., gamma^(n) and curvatures
/// kappa_i = <e_i', e_{i+1}> / ||gamma'||, with e_i' from central differences of
/// the frame at t +- h and t +- h/2 combined by one Richardson step,
/// h = max(1e-5, 1e-5 |t|).
template <typename Scalar>
FrenetApparatus<Scalar> frenet_apparatus(const Curve<Scalar>& curve, const Scalar& t) {
    using std::abs;
    const int n = curve.dim;
    const Matrix<Scalar> derivatives = curve.derivative_matrix(t, n);
    FrenetApparatus<Scalar> out{t, gram_schmidt_frame(derivatives), Vector<Scalar>(n - 1)};

    const Scalar h = std::max(Scalar(1e-5), Scalar(Scalar(1e-5) * abs(t)));
    if (!curve.contains(Scalar(t - h), Scalar(t + h)))
        throw Error(ErrorCode::DomainError, "frame differencing leaves the curve domain");

    const Matrix<Scalar> coarse = detail::central_frame_derivative(curve, t, h, out.frame);
    const Matrix<Scalar> fine = detail::central_frame_derivative(curve, t, Scalar(h / 2), out.frame);
    const Matrix<Scalar> rate = (4 * fine - coarse) / 3;

    const Scalar speed = derivatives.col(0).norm();
    for (int i = 0; i + 1 < n; ++i) out.curvatures[i] = rate.col(i).dot(out.frame.col(i + 1)) / speed;
    return out;
}

/// Solves the constant-curvature relations top-down. Writing
/// gamma^(k) = sum_j c^(k)_j e_j, E' = EK gives
///   c^(k+1)_j = kappa_{j-1} c^(k)_{j-1} - kappa_j c^(k)_{j+1},
/// and |gamma^(k+1)|^2 = G_{2k+2} introduces exactly one new unknown kappa_k
/// through the leading term c^(k+1)_{k+1} = kappa_k c^(k)_k. For k = 1..3 this
/// is the familiar kappa_1^2 = G_4, kappa_1^2 kappa_2^2 = G_6 - kappa_1^4, ...
template <typename Scalar>
Vector<Scalar> params_to_curvatures(int dim, const CanonicalCurveParams<Scalar>& params) {
    using std::abs;
    using std::sqrt;
    if (params.dim() != dim)
        throw Error(ErrorCode::InvalidParams, "parameters describe a curve in R^" + std::to_string(params.dim()) +
                                                  ", not R^" + std::to_string(dim));
    if (dim < 2) throw Error(ErrorCode::InvalidParams, "dimension must be at least 2");
    if (abs(params.speed_squared() - 1) > Scalar(1e-10))
        throw Error(ErrorCode::NotUnitSpeed, "sum a_i^2 alpha_i^2 (+ b^2) must equal 1");

    // 1-based coefficient vectors with guard cells at 0 and dim+1.
    std::vector<Scalar> coeff(static_cast<std::size_t>(dim) + 2, Scalar(0));
    std::vector<Scalar> kappa(static_cast<std::size_t>(dim) + 1, Scalar(0));
    coeff[1] = 1;
    Vector<Scalar> out(dim - 1);
    for (int k = 1; k < dim; ++k) {
        std::vector<Scalar> next(coeff.size(), Scalar(0));
        Scalar known = 0;
        for (int j = 1; j <= k; ++j) {
            next[j] = kappa[j - 1] * coeff[j - 1] - kappa[j] * coeff[j + 1];
            known += next[j] * next[j];
        }
        const Scalar g = params.moment(2 * k + 2);
        const Scalar leading_sq = g - known;
        if (!(leading_sq > Scalar(1e-12) * abs(g)))
            throw Error(ErrorCode::DegenerateCurve, "kappa_" + std::to_string(k) + "^2 <= 0: curve is not regular of order " +
                                                        std::to_string(dim));
        kappa[k] = sqrt(leading_sq) / abs(coeff[k]);
        next[k + 1] = kappa[k] * coeff[k];
        out[k - 1] = kappa[k];
        coeff = std::move(next);
    }
    return out;
}

/// Inverse of kappa_1^2 = a^2 alpha^4, kappa_2^2 = b^2 alpha^2 under a^2 alpha^2 + b^2 = 1.
template <typename Scalar>
CanonicalCurveParams<Scalar> curvatures_to_params_r3(const Scalar& kappa1, const Scalar& kappa2) {
    using std::sqrt;
    if (!(kappa1 > 0)) throw Error(ErrorCode::InvalidCurvature, "kappa_1 must be positive");
    if (kappa2 < 0) throw Error(ErrorCode::InvalidCurvature, "kappa_2 must be non-negative");
    const Scalar alpha = sqrt(kappa1 * kappa1 + kappa2 * kappa2);
    CanonicalCurveParams<Scalar> p;
    p.amplitudes = {Scalar(kappa1 / (alpha * alpha))};
    p.frequencies = {alpha};
    p.drift = Scalar(kappa2 / alpha);
    return p;
}

}  // namespace frenet_svd
