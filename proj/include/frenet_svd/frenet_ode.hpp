#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "frenet_svd/curve.hpp"
#include "frenet_svd/errors.hpp"
#include "frenet_svd/linalg.hpp"

namespace frenet_svd {

using CurvatureFunction = std::function<double(double)>;

struct FrenetTrajectory {
    SampledCurve curve;
    std::vector<Matrix<double>> frames;  ///< E at every sample
};

/// Tridiagonal skew matrix with K(i+1, i) = kappa_i, K(i, i+1) = -kappa_i.
inline Matrix<double> curvature_matrix(const std::vector<CurvatureFunction>& kappa, double t) {
    const auto n = static_cast<Eigen::Index>(kappa.size()) + 1;
    Matrix<double> k = Matrix<double>::Zero(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const double value = kappa[static_cast<std::size_t>(i)](t);
        if (!(value > 0))
            throw Error(ErrorCode::NonPositiveCurvature, "kappa_" + std::to_string(i + 1) + "(" + std::to_string(t) + ") <= 0");
        k(i + 1, i) = value;
        k(i, i + 1) = -value;
    }
    return k;
}

/// Integrates gamma' = e_1, E' = E K(t) with classical RK4 at a fixed step
/// (adjusted so the range is covered exactly), re-orthonormalizing E every
/// `reorth_every` steps. The result is unit speed by construction.
inline FrenetTrajectory integrate_frenet_system(int dim, const std::vector<CurvatureFunction>& kappa,
                                                const Vector<double>& gamma0, const Matrix<double>& frame0,
                                                double t_begin, double t_end, double step, int reorth_every = 16) {
    if (dim < 2 || static_cast<int>(kappa.size()) != dim - 1)
        throw Error(ErrorCode::InvalidParams, "need dim >= 2 and dim-1 curvature functions");
    if (gamma0.size() != dim || frame0.rows() != dim || frame0.cols() != dim)
        throw Error(ErrorCode::InvalidParams, "initial point/frame do not match the dimension");
    if (!(step > 0) || !(t_end > t_begin)) throw Error(ErrorCode::InvalidParams, "need step > 0 and a non-empty range");
    if (max_orthonormality_error(frame0) > 1e-10) throw Error(ErrorCode::InvalidFrame, "initial frame is not orthonormal");

    const long long steps = std::max(1LL, std::llround((t_end - t_begin) / step));
    const double h = (t_end - t_begin) / static_cast<double>(steps);

    FrenetTrajectory out;
    out.curve.dim = dim;
    out.curve.t.reserve(static_cast<std::size_t>(steps) + 1);
    out.curve.points.reserve(static_cast<std::size_t>(steps) + 1);
    out.frames.reserve(static_cast<std::size_t>(steps) + 1);

    Vector<double> gamma = gamma0;
    Matrix<double> frame = frame0;
    out.curve.t.push_back(t_begin);
    out.curve.points.push_back(gamma);
    out.frames.push_back(frame);

    for (long long s = 0; s < steps; ++s) {
        const double t = t_begin + static_cast<double>(s) * h;
        const Matrix<double> k_start = curvature_matrix(kappa, t);
        const Matrix<double> k_mid = curvature_matrix(kappa, t + h / 2);
        const Matrix<double> k_end = curvature_matrix(kappa, t + h);

        const Matrix<double> e1 = frame * k_start;
        const Vector<double> g1 = frame.col(0);
        const Matrix<double> f2 = frame + (h / 2) * e1;
        const Matrix<double> e2 = f2 * k_mid;
        const Vector<double> g2 = f2.col(0);
        const Matrix<double> f3 = frame + (h / 2) * e2;
        const Matrix<double> e3 = f3 * k_mid;
        const Vector<double> g3 = f3.col(0);
        const Matrix<double> f4 = frame + h * e3;
        const Matrix<double> e4 = f4 * k_end;
        const Vector<double> g4 = f4.col(0);

        gamma += (h / 6) * (g1 + 2 * g2 + 2 * g3 + g4);
        frame += (h / 6) * (e1 + 2 * e2 + 2 * e3 + e4);
        if ((s + 1) % reorth_every == 0) frame = gram_schmidt_frame(frame);

        out.curve.t.push_back(s + 1 == steps ? t_end : t_begin + static_cast<double>(s + 1) * h);
        out.curve.points.push_back(gamma);
        out.frames.push_back(frame);
    }
    return out;
}

/// Constant curvature functions.
inline std::vector<CurvatureFunction> constant_curvatures(const std::vector<double>& values) {
    std::vector<CurvatureFunction> fns;
    for (double v : values) fns.push_back([v](double) { return v; });
    return fns;
}

}  // namespace frenet_svd
