// Curves, Gram-Schmidt frames, the Frenet apparatus, the parameter/curvature
// relations, the Frenet ODE integrator, the Jacobi eigensolver and CSV I/O.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "frenet_svd/csv.hpp"
#include "frenet_svd/curve.hpp"
#include "frenet_svd/frenet.hpp"
#include "frenet_svd/frenet_ode.hpp"
#include "frenet_svd/linalg.hpp"

using namespace frenet_svd;

namespace {

Matrix<double> columns(std::initializer_list<std::initializer_list<double>> cols) {
    const auto n = static_cast<Eigen::Index>(cols.begin()->size());
    Matrix<double> m(n, static_cast<Eigen::Index>(cols.size()));
    Eigen::Index c = 0;
    for (const auto& col : cols) {
        Eigen::Index r = 0;
        for (double x : col) m(r++, c) = x;
        ++c;
    }
    return m;
}

// Closed forms for (t, t^2, t^3): curvature |g' x g''| / |g'|^3 and torsion
// det(g', g'', g''') / |g' x g''|^2.
double cubic_kappa1(double t) {
    return 2 * std::sqrt(9 * t * t * t * t + 9 * t * t + 1) / std::pow(1 + 4 * t * t + 9 * t * t * t * t, 1.5);
}
double cubic_kappa2(double t) { return 3 / (9 * t * t * t * t + 9 * t * t + 1); }

template <typename F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no frenet_svd::Error thrown";
    return ErrorCode::ParseError;
}

}  // namespace

TEST(GramSchmidt, IdentityStaysIdentity) {
    const Matrix<double> id = Matrix<double>::Identity(3, 3);
    EXPECT_LE((gram_schmidt_frame(id) - id).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(GramSchmidt, TwistedCubicTangent) {
    const Matrix<double> e = gram_schmidt_frame(columns({{1, 6, 27}, {0, 2, 18}, {0, 0, 6}}));
    EXPECT_NEAR(e(0, 0), 0.036131468, 1e-9);
    EXPECT_NEAR(e(1, 0), 0.216788812, 1e-9);
    EXPECT_NEAR(e(2, 0), 0.975549654, 1e-9);
    EXPECT_LE(max_orthonormality_error(e), 1e-10);
}

TEST(GramSchmidt, ScaleInvariantAndSpanPreserving) {
    const Matrix<double> v = columns({{1, 2, 0.5, -1}, {0.3, -1, 2, 4}, {2, 2, 1, 0}, {-1, 0.2, 0.7, 3}});
    const Matrix<double> e = gram_schmidt_frame(v);
    EXPECT_LE((gram_schmidt_frame(Matrix<double>(3.7 * v)) - e).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LE(max_orthonormality_error(e), 1e-10);
    for (Eigen::Index k = 0; k < v.cols(); ++k) {
        const Matrix<double> basis = e.leftCols(k + 1);
        const Vector<double> residual = v.col(k) - basis * (basis.transpose() * v.col(k));
        EXPECT_LE(residual.norm(), 1e-9 * v.col(k).norm());
    }
}

TEST(GramSchmidt, RankDeficientInput) {
    EXPECT_EQ(code_of([] { gram_schmidt_frame(columns({{1, 2, 3}, {2, 4, 6}, {0, 0, 1}})); }), ErrorCode::RankDeficient);
    EXPECT_EQ(code_of([] { gram_schmidt_frame(columns({{0, 0}, {1, 0}})); }), ErrorCode::RankDeficient);
}

TEST(SymmetricEigen, DiagonalIsSortedPermutation) {
    Matrix<double> d = Matrix<double>::Zero(3, 3);
    d.diagonal() << 3, 1, 2;
    const SymmetricEigen<double> eig = symmetric_eigen(d);
    EXPECT_EQ(eig.values, (Vector<double>(3) << 3, 2, 1).finished());
    EXPECT_EQ(eig.vectors, columns({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}));
}

TEST(SymmetricEigen, SwapMatrix) {
    const SymmetricEigen<double> eig = symmetric_eigen(columns({{0, 1}, {1, 0}}));
    EXPECT_NEAR(eig.values[0], 1, 1e-15);
    EXPECT_NEAR(eig.values[1], -1, 1e-15);
    const double h = 1 / std::sqrt(2.0);
    EXPECT_NEAR(eig.vectors(0, 0), h, 1e-15);
    EXPECT_NEAR(eig.vectors(1, 0), h, 1e-15);
    EXPECT_NEAR(std::abs(eig.vectors(0, 1)), h, 1e-15);
    EXPECT_NEAR(eig.vectors(0, 1), -eig.vectors(1, 1), 1e-15);
}

TEST(SymmetricEigen, ReconstructsRandomMatrices) {
    std::srand(7);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 6;
        Matrix<double> a = Matrix<double>::Random(n, n);
        a = (a + a.transpose()).eval();
        const SymmetricEigen<double> eig = symmetric_eigen(a);
        const Matrix<double> rebuilt = eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose();
        EXPECT_LE((rebuilt - a).cwiseAbs().maxCoeff(), 1e-13 * a.norm());
        EXPECT_LE(max_orthonormality_error(eig.vectors), 1e-13);
        for (int k = 0; k + 1 < n; ++k) EXPECT_GE(eig.values[k], eig.values[k + 1]);
        for (int k = 0; k < n; ++k) {
            Eigen::Index best = 0;
            eig.vectors.col(k).cwiseAbs().maxCoeff(&best);
            EXPECT_GT(eig.vectors(best, k), 0);
        }
    }
}

TEST(SymmetricEigen, GradedMatrixKeepsTinyEigenvalues) {
    // diag(1, 1e-10, 1e-20) in a rotated basis with the grading kept: D Q D.
    Matrix<double> q = gram_schmidt_frame(columns({{1, 0.5, 0.25}, {0.3, 1, -0.2}, {0.1, 0.4, 1}}));
    Matrix<double> g = Matrix<double>::Zero(3, 3);
    g.diagonal() << 1, 1e-5, 1e-10;
    const Matrix<double> a = g * (q * q.transpose() + Matrix<double>::Identity(3, 3)) * g;
    const SymmetricEigen<double> eig = symmetric_eigen(a);
    // det(a) = prod of eigenvalues; the smallest keeps relative accuracy.
    const double det = a.determinant();
    EXPECT_NEAR(eig.values.prod() / det, 1, 1e-8);
    EXPECT_GT(eig.values[2], 0);
}

TEST(SymmetricEigen, RejectsNonSymmetric) {
    EXPECT_EQ(code_of([] { symmetric_eigen(columns({{1, 0}, {1, 1}})); }), ErrorCode::InvalidParams);
}

TEST(Curves, BuiltinValues) {
    const Curve<double> cubic = make_builtin_curve<double>("twisted-cubic").curve;
    EXPECT_EQ(cubic.derivative(2, 1.5), (Vector<double>(3) << 0, 2, 9).finished());
    const Curve<double> circle = make_builtin_curve<double>("circle", {{"a", 2.0}}).curve;
    EXPECT_EQ(circle.value(0), (Vector<double>(2) << 2, 0).finished());
    const Curve<double> helix = make_builtin_curve<double>("helix", {{"a", 2.0}, {"alpha", 0.3}, {"b", 0.5}}).curve;
    const double t = 1.7;
    EXPECT_LE((helix.value(t) - (Vector<double>(3) << 2 * std::cos(0.3 * t), 2 * std::sin(0.3 * t), 0.5 * t).finished())
                  .cwiseAbs()
                  .maxCoeff(),
              1e-15);
}

TEST(Curves, DerivativeOraclesMatchFiniteDifferences) {
    for (const std::string& name : builtin_curve_names()) {
        const Curve<double> c = make_builtin_curve<double>(name).curve;
        const double t = 0.7, h = 1e-4;
        for (int k = 1; k <= c.dim; ++k) {
            const Vector<double> fd = (c.derivative(k - 1, t + h) - c.derivative(k - 1, t - h)) / (2 * h);
            EXPECT_LE((fd - c.derivative(k, t)).norm(), 1e-6 * (1 + c.derivative(k, t).norm())) << name << " k=" << k;
        }
    }
}

TEST(Curves, DefaultsAreUnitSpeed) {
    for (const std::string& name : builtin_curve_names()) {
        const BuiltinCurve<double> b = make_builtin_curve<double>(name);
        if (!b.params) continue;
        EXPECT_NEAR(b.params->speed_squared(), 1, 1e-14) << name;
        EXPECT_NEAR(b.curve.derivative(1, 0.4).norm(), 1, 1e-14) << name;
    }
}

TEST(Curves, RegistryErrors) {
    EXPECT_EQ(code_of([] { make_builtin_curve<double>("lemniscate"); }), ErrorCode::UnknownCurve);
    EXPECT_EQ(code_of([] { make_builtin_curve<double>("helix", {{"radius", 1.0}}); }), ErrorCode::InvalidParams);
    EXPECT_EQ(code_of([] { make_builtin_curve<double>("circle", {{"a", -1.0}}); }), ErrorCode::InvalidParams);
    EXPECT_EQ(code_of([] { make_builtin_curve<double>("toroidal4", {{"beta", 0.0}}); }), ErrorCode::InvalidParams);
}

TEST(Apparatus, TwistedCubicAtThree) {
    const FrenetApparatus<double> f = frenet_apparatus(twisted_cubic<double>(), 3.0);
    EXPECT_NEAR(f.curvatures[0], 0.0026865644, 1e-9);
    EXPECT_NEAR(f.curvatures[1], 0.0036991368, 1e-9);
    EXPECT_LE(max_orthonormality_error(f.frame), 1e-10);
}

TEST(Apparatus, TwistedCubicClosedForms) {
    for (double t : {0.0, 1.0, 3.0, -1.3}) {
        const FrenetApparatus<double> f = frenet_apparatus(twisted_cubic<double>(), t);
        EXPECT_NEAR(f.curvatures[0], cubic_kappa1(t), 1e-8 * cubic_kappa1(t)) << t;
        EXPECT_NEAR(f.curvatures[1], cubic_kappa2(t), 1e-8 * cubic_kappa2(t)) << t;
        const Vector<double> exact = curvatures_from_derivatives(twisted_cubic<double>().derivative_matrix(t, 3));
        EXPECT_NEAR(exact[0], cubic_kappa1(t), 1e-13) << t;
        EXPECT_NEAR(exact[1], cubic_kappa2(t), 1e-13) << t;
    }
}

TEST(Apparatus, CircleAndHelix) {
    for (double t : {0.0, 0.4, 5.0}) {
        EXPECT_NEAR(frenet_apparatus(make_builtin_curve<double>("circle").curve, t).curvatures[0], 1, 1e-10);
        const FrenetApparatus<double> h = frenet_apparatus(make_builtin_curve<double>("helix").curve, t);
        EXPECT_NEAR(h.curvatures[0], 0.5, 1e-9);
        EXPECT_NEAR(h.curvatures[1], 0.5, 1e-9);
    }
}

TEST(Apparatus, ReparameterizationInvariance) {
    for (const std::string& name : builtin_curve_names()) {
        const Curve<double> c = make_builtin_curve<double>(name).curve;
        const Curve<double> fast = reparameterize(c, 2.0);
        const Vector<double> base = frenet_apparatus(c, 0.8).curvatures;
        const Vector<double> moved = frenet_apparatus(fast, 0.4).curvatures;
        for (Eigen::Index i = 0; i < base.size(); ++i) EXPECT_NEAR(moved[i], base[i], 1e-8 * base[i]) << name << " i=" << i;
    }
}

TEST(Apparatus, DomainExit) {
    Curve<double> c = twisted_cubic<double>();
    c.lo = 0;
    c.hi = 1;
    EXPECT_EQ(code_of([&] { frenet_apparatus(c, 0.0); }), ErrorCode::DomainError);
    EXPECT_NO_THROW(frenet_apparatus(c, 0.5));
}

TEST(Apparatus, FiniteDifferenceMatchesResidualRoute) {
    for (const std::string& name : {"toroidal4", "screw5", "torus6"}) {
        const Curve<double> c = make_builtin_curve<double>(name).curve;
        const Vector<double> fd = frenet_apparatus(c, 0.3).curvatures;
        const Vector<double> exact = curvatures_from_derivatives(c.derivative_matrix(0.3, c.dim));
        for (Eigen::Index i = 0; i < fd.size(); ++i) EXPECT_NEAR(fd[i], exact[i], 1e-7 * exact[i]) << name << " i=" << i;
    }
}

TEST(ParamsToCurvatures, Helix) {
    const Vector<double> k = params_to_curvatures(3, *make_builtin_curve<double>("helix").params);
    EXPECT_NEAR(k[0], 0.5, 1e-15);
    EXPECT_NEAR(k[1], 0.5, 1e-15);
}

TEST(ParamsToCurvatures, PlanarLimitIsDegenerate) {
    CanonicalCurveParams<double> p{{1.0 / 1.5}, {1.5}, 0.0};
    EXPECT_EQ(code_of([&] { params_to_curvatures(3, p); }), ErrorCode::DegenerateCurve);
    p.drift = 1e-3;
    p.amplitudes[0] = std::sqrt(1 - 1e-6) / 1.5;
    const Vector<double> k = params_to_curvatures(3, p);
    EXPECT_NEAR(k[0], 1.5, 1e-6);
    EXPECT_NEAR(k[1], 1.5e-3, 1e-9);
}

TEST(ParamsToCurvatures, EqualFrequenciesAreDegenerate) {
    const double h = std::sqrt(2.0) / 2;
    const CanonicalCurveParams<double> p{{h, h}, {1.0, 1.0}, std::nullopt};
    EXPECT_EQ(code_of([&] { params_to_curvatures(4, p); }), ErrorCode::DegenerateCurve);
}

TEST(ParamsToCurvatures, NotUnitSpeed) {
    const CanonicalCurveParams<double> p{{1.0}, {2.0}, 1.0};
    EXPECT_EQ(code_of([&] { params_to_curvatures(3, p); }), ErrorCode::NotUnitSpeed);
    EXPECT_EQ(code_of([&] { params_to_curvatures(4, p); }), ErrorCode::InvalidParams);
}

TEST(ParamsToCurvatures, LowOrderRowsMatchExplicitRelations) {
    // R^4: k1^2 = G4, k1^2 k2^2 = G6 - k1^4, k1^2 k2^2 k3^2 = G4 G8 - G6^2 (Gram
    // determinant form) for the toroidal curve.
    const CanonicalCurveParams<double> p = *make_builtin_curve<double>("toroidal4").params;
    const Vector<double> k = params_to_curvatures(4, p);
    const double g4 = p.moment(4), g6 = p.moment(6), g8 = p.moment(8);
    EXPECT_NEAR(k[0] * k[0], g4, 1e-14);
    EXPECT_NEAR(k[0] * k[0] * k[1] * k[1], g6 - g4 * g4, 1e-14);
    EXPECT_NEAR(k[0] * k[0] * k[1] * k[1] * k[2] * k[2], (g4 * g8 - g6 * g6) / (k[0] * k[0]), 1e-13);
}

TEST(ParamsToCurvatures, AgreesWithFrameGeometryInAllDimensions) {
    for (const std::string& name : {"circle", "helix", "toroidal4", "screw5", "torus6"}) {
        const BuiltinCurve<double> b = make_builtin_curve<double>(name);
        const Vector<double> from_params = params_to_curvatures(b.curve.dim, *b.params);
        const Vector<double> from_frame = curvatures_from_derivatives(b.curve.derivative_matrix(1.1, b.curve.dim));
        for (Eigen::Index i = 0; i < from_params.size(); ++i)
            EXPECT_NEAR(from_params[i], from_frame[i], 1e-10 * from_frame[i]) << name << " i=" << i;
    }
}

TEST(ParamsToCurvatures, KnownValuesInFiveAndSixDimensions) {
    const Vector<double> t6 = params_to_curvatures(6, *make_builtin_curve<double>("torus6").params);
    const double expected6[] = {2.1602468994692865, 1.5275252316519472, 1.8182745801939781, 1.1664236870396136, 1.5275252316518955};
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(t6[i], expected6[i], 1e-9) << i;
    const Vector<double> s5 = params_to_curvatures(5, *make_builtin_curve<double>("screw5").params);
    const double expected5[] = {1.2909944487358, 1.3165611772088, 0.9114654303753, 0.877058019307};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(s5[i], expected5[i], 1e-9) << i;
}

TEST(CurvaturesToParams, RoundTrips) {
    const CanonicalCurveParams<double> circle = curvatures_to_params_r3(1.0, 0.0);
    EXPECT_NEAR(circle.amplitudes[0], 1, 1e-15);
    EXPECT_NEAR(circle.frequencies[0], 1, 1e-15);
    EXPECT_NEAR(*circle.drift, 0, 1e-15);

    const CanonicalCurveParams<double> p = curvatures_to_params_r3(2.0, 1.0);
    EXPECT_NEAR(p.frequencies[0], std::sqrt(5.0), 1e-15);
    EXPECT_NEAR(p.amplitudes[0], 0.4, 1e-15);
    EXPECT_NEAR(*p.drift, 1 / std::sqrt(5.0), 1e-15);
    EXPECT_NEAR(p.speed_squared(), 1, 1e-12);

    for (const auto& [k1, k2] : std::vector<std::pair<double, double>>{{0.5, 0.5}, {2, 1}, {0.1, 3}, {7, 0.02}}) {
        const Vector<double> back = params_to_curvatures(3, curvatures_to_params_r3(k1, k2));
        EXPECT_NEAR(back[0], k1, 1e-12 * k1);
        EXPECT_NEAR(back[1], k2, 1e-12 * std::max(k1, k2));
    }
    EXPECT_EQ(code_of([] { curvatures_to_params_r3(0.0, 1.0); }), ErrorCode::InvalidCurvature);
    EXPECT_EQ(code_of([] { curvatures_to_params_r3(1.0, -1.0); }), ErrorCode::InvalidCurvature);
}

TEST(FrenetOde, CircleCloses) {
    const Matrix<double> frame0 = columns({{0, 1}, {-1, 0}});
    const FrenetTrajectory traj = integrate_frenet_system(2, constant_curvatures({1.0}), (Vector<double>(2) << 1, 0).finished(),
                                                          frame0, 0, 2 * std::numbers::pi, 1e-3);
    EXPECT_LE((traj.curve.points.back() - traj.curve.points.front()).norm(), 1e-8);
    for (const Vector<double>& p : traj.curve.points) EXPECT_NEAR(p.norm(), 1, 1e-10);
}

TEST(FrenetOde, HelixMatchesCanonicalCurve) {
    const Curve<double> helix = make_builtin_curve<double>("helix").curve;
    const Matrix<double> frame0 = gram_schmidt_frame(helix.derivative_matrix(0, 3));
    const double period = 2 * std::numbers::pi * std::sqrt(2.0);
    const FrenetTrajectory traj =
        integrate_frenet_system(3, constant_curvatures({0.5, 0.5}), helix.value(0), frame0, 0, period, 1e-3);
    double worst = 0;
    for (std::size_t k = 0; k < traj.curve.size(); ++k)
        worst = std::max(worst, (traj.curve.points[k] - helix.value(traj.curve.t[k])).cwiseAbs().maxCoeff());
    EXPECT_LE(worst, 1e-7);
}

TEST(FrenetOde, FramesStayOrthonormalAndUnitSpeed) {
    for (int dim = 2; dim <= 6; ++dim) {
        std::vector<CurvatureFunction> kappa;
        for (int i = 0; i < dim - 1; ++i) kappa.push_back([i](double t) { return 0.4 + 0.1 * i + 0.05 * std::sin(t); });
        const FrenetTrajectory traj = integrate_frenet_system(dim, kappa, Vector<double>::Zero(dim),
                                                              Matrix<double>::Identity(dim, dim), 0, 10, 1e-3);
        for (const Matrix<double>& e : traj.frames) ASSERT_LE(max_orthonormality_error(e), 1e-8) << dim;
        for (std::size_t k = 1; k < traj.curve.size(); ++k) {
            const double speed = (traj.curve.points[k] - traj.curve.points[k - 1]).norm() / (traj.curve.t[k] - traj.curve.t[k - 1]);
            ASSERT_NEAR(speed, 1, 1e-6) << dim;
        }
        EXPECT_DOUBLE_EQ(traj.curve.t.back(), 10.0);
    }
}

TEST(FrenetOde, Errors) {
    const Matrix<double> id = Matrix<double>::Identity(3, 3);
    const Vector<double> zero = Vector<double>::Zero(3);
    EXPECT_EQ(code_of([&] { integrate_frenet_system(3, constant_curvatures({0.5, 0.0}), zero, id, 0, 1, 1e-2); }),
              ErrorCode::NonPositiveCurvature);
    EXPECT_EQ(code_of([&] { integrate_frenet_system(3, constant_curvatures({0.5, 0.5}), zero, Matrix<double>(2 * id), 0, 1, 1e-2); }),
              ErrorCode::InvalidFrame);
    EXPECT_EQ(code_of([&] { integrate_frenet_system(3, constant_curvatures({0.5, 0.5}), zero, id, 0, 1, -1); }),
              ErrorCode::InvalidParams);
    EXPECT_EQ(code_of([&] { integrate_frenet_system(3, constant_curvatures({0.5}), zero, id, 0, 1, 1e-2); }),
              ErrorCode::InvalidParams);
}

TEST(Csv, RoundTripIsExact) {
    const FrenetTrajectory traj = integrate_frenet_system(3, constant_curvatures({0.5, 0.3}), Vector<double>::Zero(3),
                                                          Matrix<double>::Identity(3, 3), 0, 1, 0.01);
    std::ostringstream out;
    write_csv(out, traj.curve);
    const SampledCurve back = read_csv_string(out.str());
    ASSERT_EQ(back.size(), traj.curve.size());
    EXPECT_EQ(back.dim, 3);
    for (std::size_t k = 0; k < back.size(); ++k) {
        EXPECT_EQ(back.t[k], traj.curve.t[k]);
        EXPECT_EQ(back.points[k], traj.curve.points[k]);
    }
    EXPECT_EQ(out.str().substr(0, 9), "t,x1,x2,x");
}

TEST(Csv, Formatting) {
    EXPECT_EQ(format_number(0.1, 17), "0.10000000000000001");
    EXPECT_EQ(format_number(1.0, 17), "1");
    EXPECT_EQ(format_number(0.0026865644789283074, 15), "0.00268656447892831");
}

TEST(Csv, ParseErrorsNameTheLine) {
    auto message = [](const std::string& text) {
        try {
            read_csv_string(text);
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::ParseError);
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_NE(message("time,x,y\n0,1,2\n").find("t,x1,...,xn"), std::string::npos);
    EXPECT_NE(message("t,x1,x2\n0,1,2\n1,1\n").find("line 3"), std::string::npos);
    EXPECT_NE(message("t,x1,x2\n0,1,2\n1,abc,2\n").find("line 3"), std::string::npos);
    EXPECT_NE(message("t,x1,x2\n0,1,2\n0,1,2\n").find("line 3"), std::string::npos);
    EXPECT_NE(message("").find("line 1"), std::string::npos);
    const SampledCurve ok = read_csv_string("t,x1,x2\r\n0,1,2\r\n\r\n0.5, 1.5e-3 ,-2\r\n");
    EXPECT_EQ(ok.size(), 2u);
    EXPECT_EQ(ok.points[1][0], 1.5e-3);
}
