#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <limits>

namespace frenet_svd {

/// 64 decimal digits. Needed whenever lambda_n / lambda_1 drops below double
/// round-off (e.g. lambda_3 / lambda_1 ~ 1e-19 for the twisted cubic at eps = 1e-3).
using HighPrecision =
    boost::multiprecision::number<boost::multiprecision::cpp_bin_float<64>, boost::multiprecision::et_off>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
Scalar machine_epsilon() {
    return std::numeric_limits<Scalar>::epsilon();
}

template <typename Scalar>
double to_double(const Scalar& x) {
    return static_cast<double>(x);
}

template <typename Target, typename Source>
Vector<Target> vector_cast(const Vector<Source>& v) {
    Vector<Target> out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = static_cast<Target>(v[i]);
    return out;
}

template <typename Target, typename Source>
Matrix<Target> matrix_cast(const Matrix<Source>& m) {
    Matrix<Target> out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = static_cast<Target>(m(i, j));
    return out;
}

}  // namespace frenet_svd
