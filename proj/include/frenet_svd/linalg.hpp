#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "frenet_svd/errors.hpp"
#include "frenet_svd/precision.hpp"

namespace frenet_svd {

template <typename Scalar>
struct GramSchmidtResult {
    Matrix<Scalar> frame;           ///< columns e_1..e_n
    Vector<Scalar> residual_norms;  ///< ||e~_i|| before normalization
};

/// Modified Gram-Schmidt with one reorthogonalization pass over the columns
/// of `vectors`. Throws RankDeficient when a residual falls below
/// 1e-10 * ||input column||.
template <typename Scalar>
GramSchmidtResult<Scalar> gram_schmidt(const Matrix<Scalar>& vectors) {
    using std::sqrt;
    const Eigen::Index dim = vectors.rows();
    const Eigen::Index count = vectors.cols();
    if (count > dim) throw Error(ErrorCode::RankDeficient, "more vectors than dimensions");

    GramSchmidtResult<Scalar> out{Matrix<Scalar>(dim, count), Vector<Scalar>(count)};
    const Scalar threshold = Scalar(1e-10);
    for (Eigen::Index i = 0; i < count; ++i) {
        Vector<Scalar> v = vectors.col(i);
        const Scalar input_norm = v.norm();
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index k = 0; k < i; ++k) v -= out.frame.col(k).dot(v) * out.frame.col(k);
        }
        const Scalar norm = v.norm();
        if (!(norm > threshold * input_norm) || input_norm == 0)
            throw Error(ErrorCode::RankDeficient, "vector " + std::to_string(i + 1) + " is dependent on its predecessors");
        out.frame.col(i) = v / norm;
        out.residual_norms[i] = norm;
    }
    return out;
}

template <typename Scalar>
Matrix<Scalar> gram_schmidt_frame(const Matrix<Scalar>& vectors) {
    return gram_schmidt(vectors).frame;
}

template <typename Scalar>
Scalar max_orthonormality_error(const Matrix<Scalar>& frame) {
    const Matrix<Scalar> gram = frame.transpose() * frame;
    Scalar worst = 0;
    for (Eigen::Index i = 0; i < gram.rows(); ++i)
        for (Eigen::Index j = 0; j < gram.cols(); ++j) {
            using std::abs;
            const Scalar e = abs(gram(i, j) - (i == j ? Scalar(1) : Scalar(0)));
            if (e > worst) worst = e;
        }
    return worst;
}

template <typename Scalar>
struct SymmetricEigen {
    Vector<Scalar> values;   ///< descending
    Matrix<Scalar> vectors;  ///< columns, matching values
};

/// Flip v so that its largest-magnitude entry (first one on ties) is positive.
template <typename Scalar>
void fix_sign(Eigen::Ref<Vector<Scalar>> v) {
    using std::abs;
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < v.size(); ++k)
        if (abs(v[k]) > abs(v[best])) best = k;
    if (v[best] < 0) v = -v;
}

/// Cyclic Jacobi eigensolver. A rotation is applied whenever
/// |a_pq| > eps * sqrt(|a_pp a_qq|), which keeps small eigenvalues of graded
/// matrices accurate to working precision.
template <typename Scalar>
SymmetricEigen<Scalar> symmetric_eigen(const Matrix<Scalar>& input, int max_sweeps = 100) {
    using std::abs;
    using std::sqrt;
    const Eigen::Index n = input.rows();
    if (input.cols() != n) throw Error(ErrorCode::InvalidParams, "eigenproblem needs a square matrix");

    const Scalar scale = input.norm();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (abs(input(i, j) - input(j, i)) > Scalar(1e-12) * scale)
                throw Error(ErrorCode::InvalidParams, "eigenproblem needs a symmetric matrix");

    Matrix<Scalar> a = input;
    Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);
    const Scalar eps = machine_epsilon<Scalar>();

    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Scalar apq = a(p, q);
                if (apq == 0 || abs(apq) <= eps * sqrt(abs(a(p, p)) * abs(a(q, q)))) continue;
                converged = false;
                const Scalar tau = (a(q, q) - a(p, p)) / (2 * apq);
                const Scalar t = (tau >= 0 ? Scalar(1) : Scalar(-1)) / (abs(tau) + sqrt(Scalar(1) + tau * tau));
                const Scalar c = 1 / sqrt(Scalar(1) + t * t);
                const Scalar s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Scalar akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Scalar apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0;
                a(q, p) = 0;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Scalar vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (!converged) throw Error(ErrorCode::NoConvergence, "Jacobi did not converge in " + std::to_string(max_sweeps) + " sweeps");

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return a(x, x) > a(y, y); });

    SymmetricEigen<Scalar> out{Vector<Scalar>(n), Matrix<Scalar>(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        out.vectors.col(k) = v.col(order[k]);
        fix_sign<Scalar>(out.vectors.col(k));
    }
    return out;
}

}  // namespace frenet_svd
