// Curvatures and frame of the twisted cubic (t, t^2, t^3) at t = 1, estimated
// from the local covariance over a ladder of window radii and compared with
// the exact values from the derivatives.

#include <iomanip>
#include <iostream>

#include "frenet_svd/frenet_svd.hpp"

int main() {
    using namespace frenet_svd;
    using HP = HighPrecision;

    const Curve<HP> curve = twisted_cubic<HP>();
    const HP t = 1;
    const CurvatureEstimate<HP> est = estimate_curvatures(curve, t, make_ladder(HP(1e-2), kDefaultLadderRungs));
    const Vector<HP> exact = curvatures_from_derivatives(curve.derivative_matrix(t, curve.dim));

    std::cout << std::setprecision(15);
    for (Eigen::Index j = 0; j < est.kappa.size(); ++j)
        std::cout << "kappa_" << j + 1 << "  estimate " << to_double(est.kappa[j]) << "  exact " << to_double(exact[j])
                  << (est.reliable[static_cast<std::size_t>(j)] ? "" : "  (unreliable)") << '\n';

    const FrameEstimate<HP> frame = estimate_frame(curve, t, HP(1e-4));
    const Matrix<HP> reference = gram_schmidt_frame(curve.derivative_matrix(t, curve.dim));
    for (Eigen::Index i = 0; i < frame.frame.cols(); ++i)
        std::cout << "<u_" << i + 1 << ", e_" << i + 1 << "> = " << to_double(HP(frame.frame.col(i).dot(reference.col(i)))) << '\n';
    return 0;
}
