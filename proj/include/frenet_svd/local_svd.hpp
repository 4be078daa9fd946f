#pragma once

// Local singular structure of a curve: eigen-decomposition of the on-curve
// covariance across a ladder of window radii, leading-coefficient extraction
// lambda_i ~ c_i eps^{2i}, curvatures kappa_j = sqrt(a_j c_{j+1} / (c_1 c_j)) and
// the approximate Frenet frame.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "frenet_svd/covariance.hpp"
#include "frenet_svd/curve.hpp"
#include "frenet_svd/errors.hpp"
#include "frenet_svd/hankel.hpp"
#include "frenet_svd/linalg.hpp"

namespace frenet_svd {

inline constexpr double kDefaultLadderStart = 1e-2;
inline constexpr int kDefaultLadderRungs = 4;

/// An eigenvalue counts as resolved when it exceeds this many times the
/// eigen-solver floor 4.5 * machine_epsilon * lambda_1.
inline constexpr double kResolutionMargin = 100;

template <typename Scalar>
struct LocalSpectrum {
    Scalar t;
    std::vector<Scalar> eps_ladder;             ///< decreasing radii
    std::vector<Vector<Scalar>> eigenvalues;    ///< per radius, descending
    std::vector<Matrix<Scalar>> eigenvectors;   ///< per radius, sign-fixed columns
    Vector<Scalar> coefficients;                ///< fitted c_1..c_n
    std::vector<int> resolved_rungs;            ///< per i: leading rungs where lambda_i is resolved
};

template <typename Scalar>
struct CurvatureEstimate {
    Scalar t;
    Vector<Scalar> kappa;        ///< kappa_1..kappa_{n-1}
    std::vector<bool> reliable;  ///< per kappa_j
    LocalSpectrum<Scalar> spectrum;

    bool all_reliable() const {
        for (bool r : reliable)
            if (!r) return false;
        return true;
    }

    /// Throws UnderResolved naming the unreliable kappa_j, if any.
    void require_resolved() const {
        std::string which;
        for (std::size_t j = 0; j < reliable.size(); ++j)
            if (!reliable[j]) which += (which.empty() ? "kappa_" : ", kappa_") + std::to_string(j + 1);
        if (!which.empty())
            throw Error(ErrorCode::UnderResolved, which + " under-resolved: eigenvalues too close to the solver floor");
    }
};

/// eps0, eps0 * ratio, eps0 * ratio^2, ...
template <typename Scalar>
std::vector<Scalar> make_ladder(const Scalar& eps0, int rungs, const Scalar& ratio = Scalar(0.5)) {
    if (!(eps0 > 0) || rungs < 1 || !(ratio > 0) || !(ratio < 1))
        throw Error(ErrorCode::InvalidParams, "ladder needs eps0 > 0, rungs >= 1 and 0 < ratio < 1");
    std::vector<Scalar> ladder{eps0};
    for (int k = 1; k < rungs; ++k) ladder.push_back(ladder.back() * ratio);
    return ladder;
}

template <typename Scalar>
bool is_resolved(const Scalar& lambda, const Scalar& lambda1) {
    return lambda > Scalar(kResolutionMargin * 4.5) * machine_epsilon<Scalar>() * lambda1;
}

/// Number of leading rungs on which lambda_i stays resolved (index i is 0-based).
template <typename Scalar>
int resolved_prefix(const std::vector<Vector<Scalar>>& eigenvalues, Eigen::Index i) {
    int count = 0;
    for (const Vector<Scalar>& lambda : eigenvalues) {
        if (!is_resolved(lambda[i], lambda[0])) break;
        ++count;
    }
    return count;
}

/// c_i from r_k = lambda_i(eps_k) / eps_k^{2i} by Richardson extrapolation in
/// eps^2 (Neville tableau), which eliminates the eps^2, eps^4, ... corrections;
/// with ratio 1/2 and two rungs this is c_i = (4 r_{eps/2} - r_eps) / 3. A
/// single rung gives c_i = r_0.
/// `rungs[i]` limits coefficient i to the leading rungs (0 means use all).
template <typename Scalar>
Vector<Scalar> fit_leading_coefficients(const std::vector<Vector<Scalar>>& eigenvalues, const std::vector<Scalar>& ladder,
                                        const std::vector<int>& rungs = {}) {
    using std::pow;
    if (eigenvalues.empty() || ladder.empty()) throw Error(ErrorCode::InsufficientLadder, "no eigenvalues to fit");
    if (eigenvalues.size() != ladder.size())
        throw Error(ErrorCode::InvalidParams, "one eigenvalue list per ladder radius required");
    const Eigen::Index n = eigenvalues.front().size();
    Vector<Scalar> c(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        std::size_t m = ladder.size();
        if (!rungs.empty() && rungs[static_cast<std::size_t>(i)] > 0)
            m = std::min(m, static_cast<std::size_t>(rungs[static_cast<std::size_t>(i)]));
        std::vector<Scalar> column(m);
        for (std::size_t k = 0; k < m; ++k) column[k] = eigenvalues[k][i] / pow(ladder[k], static_cast<int>(2 * (i + 1)));
        for (std::size_t level = 1; level < m; ++level) {
            for (std::size_t k = 0; k + level < m; ++k) {
                const Scalar ratio = ladder[k] / ladder[k + level];
                const Scalar factor = ratio * ratio;
                column[k] = (factor * column[k + 1] - column[k]) / (factor - 1);
            }
        }
        c[i] = column[0];
    }
    return c;
}

/// Least-squares slope of log lambda_i against log eps over the ladder, per i.
template <typename Scalar>
std::vector<double> eigenvalue_slopes(const LocalSpectrum<Scalar>& spectrum) {
    using std::log;
    const std::size_t m = spectrum.eps_ladder.size();
    const Scalar count = static_cast<double>(m);
    if (m < 2) throw Error(ErrorCode::InsufficientLadder, "slopes need at least 2 radii");
    const Eigen::Index n = spectrum.eigenvalues.front().size();
    std::vector<double> slopes;
    for (Eigen::Index i = 0; i < n; ++i) {
        Scalar sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t k = 0; k < m; ++k) {
            const Scalar x = log(spectrum.eps_ladder[k]);
            const Scalar y = log(spectrum.eigenvalues[k][i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        slopes.push_back(to_double(Scalar((count * sxy - sx * sy) / (count * sxx - sx * sx))));
    }
    return slopes;
}

/// Eigen-decomposes covariance(eps) on every rung and fits c_1..c_n over the
/// rungs where each lambda_i is resolved.
template <typename Scalar>
LocalSpectrum<Scalar> local_spectrum(const std::function<Matrix<Scalar>(const Scalar&)>& covariance, const Scalar& t,
                                     const std::vector<Scalar>& ladder) {
    if (ladder.empty()) throw Error(ErrorCode::InsufficientLadder, "empty eps ladder");
    for (std::size_t k = 1; k < ladder.size(); ++k)
        if (!(ladder[k] < ladder[k - 1])) throw Error(ErrorCode::InvalidParams, "eps ladder must be strictly decreasing");
    LocalSpectrum<Scalar> out;
    out.t = t;
    out.eps_ladder = ladder;
    for (const Scalar& eps : ladder) {
        SymmetricEigen<Scalar> eig = symmetric_eigen(covariance(eps));
        out.eigenvalues.push_back(std::move(eig.values));
        out.eigenvectors.push_back(std::move(eig.vectors));
    }
    const Eigen::Index n = out.eigenvalues.front().size();
    for (Eigen::Index i = 0; i < n; ++i) out.resolved_rungs.push_back(resolved_prefix(out.eigenvalues, i));
    std::vector<int> usable = out.resolved_rungs;
    for (int& r : usable) r = std::max(r, 1);
    out.coefficients = fit_leading_coefficients(out.eigenvalues, ladder, usable);
    return out;
}

/// kappa_j = sqrt(a_j c_{j+1} / (c_1 c_j)); kappa_j is reliable when lambda_j
/// and lambda_{j+1} are resolved on every rung.
template <typename Scalar>
CurvatureEstimate<Scalar> curvatures_from_spectrum(LocalSpectrum<Scalar> spectrum) {
    using std::sqrt;
    const Vector<Scalar>& c = spectrum.coefficients;
    const Eigen::Index n = c.size();
    const int rungs = static_cast<int>(spectrum.eps_ladder.size());
    CurvatureEstimate<Scalar> out{spectrum.t, Vector<Scalar>(n - 1), {}, {}};
    for (Eigen::Index j = 1; j < n; ++j) {
        const Scalar a = Scalar(to_double(hankel::curvature_coefficient(static_cast<std::size_t>(j))));
        const Scalar square = a * c[j] / (c[0] * c[j - 1]);
        const bool positive = square > 0;
        out.kappa[j - 1] = positive ? Scalar(sqrt(square)) : Scalar(std::numeric_limits<double>::quiet_NaN());
        out.reliable.push_back(positive && spectrum.resolved_rungs[j - 1] == rungs && spectrum.resolved_rungs[j] == rungs);
    }
    out.spectrum = std::move(spectrum);
    return out;
}

template <typename Scalar>
CurvatureEstimate<Scalar> estimate_curvatures(const Curve<Scalar>& curve, const Scalar& t, const std::vector<Scalar>& ladder,
                                              int quadrature_order = kDefaultQuadratureOrder) {
    if (curve.dim < 2) throw Error(ErrorCode::InvalidParams, "curvatures need dimension >= 2");
    auto covariance = [&](const Scalar& eps) { return covariance_on_curve(curve, t, eps, quadrature_order).entries; };
    return curvatures_from_spectrum(local_spectrum<Scalar>(covariance, t, ladder));
}

/// Sampled input: trapezoid covariance accumulated in Scalar.
template <typename Scalar>
CurvatureEstimate<Scalar> estimate_curvatures(const SampledCurve& samples, double t, const std::vector<double>& ladder) {
    if (samples.dim < 2) throw Error(ErrorCode::InvalidParams, "curvatures need dimension >= 2");
    std::vector<Scalar> scaled(ladder.begin(), ladder.end());
    auto covariance = [&](const Scalar& eps) {
        return discrete_covariance<Scalar>(samples, t, to_double(eps)).entries;
    };
    return curvatures_from_spectrum(local_spectrum<Scalar>(covariance, Scalar(t), scaled));
}

template <typename Scalar>
struct FrameEstimate {
    Matrix<Scalar> frame;        ///< columns u_1..u_n
    Vector<Scalar> eigenvalues;  ///< descending
    bool aligned = false;        ///< signs set by <u_i, e_i> > 0 rather than the eigenvector convention
};

/// Eigenvectors of C_eps(t) by descending eigenvalue. Throws DegenerateSpectrum
/// when two adjacent eigenvalues agree to 1e-12 relative.
template <typename Scalar>
FrameEstimate<Scalar> estimate_frame(const Curve<Scalar>& curve, const Scalar& t, const Scalar& eps,
                                     int quadrature_order = kDefaultQuadratureOrder) {
    using std::abs;
    SymmetricEigen<Scalar> eig = symmetric_eigen(covariance_on_curve(curve, t, eps, quadrature_order).entries);
    for (Eigen::Index i = 0; i + 1 < eig.values.size(); ++i)
        if (abs(eig.values[i] - eig.values[i + 1]) <= Scalar(1e-12) * abs(eig.values[i]))
            throw Error(ErrorCode::DegenerateSpectrum, "eigenvalues " + std::to_string(i + 1) + " and " + std::to_string(i + 2) +
                                                           " coincide; frame is not determined");
    FrameEstimate<Scalar> out{std::move(eig.vectors), std::move(eig.values), false};
    if (curve.has_derivatives()) {
        const Matrix<Scalar> reference = gram_schmidt_frame(curve.derivative_matrix(t, curve.dim));
        for (Eigen::Index i = 0; i < out.frame.cols(); ++i)
            if (out.frame.col(i).dot(reference.col(i)) < 0) out.frame.col(i) = -out.frame.col(i);
        out.aligned = true;
    }
    return out;
}

}  // namespace frenet_svd
