#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "frenet_svd/errors.hpp"

namespace frenet_svd {

template <typename Scalar>
struct GaussLegendreRule {
    std::vector<Scalar> nodes;    ///< on [-1, 1], ascending
    std::vector<Scalar> weights;
};

namespace detail {

/// P_order(x) and P_order'(x) by the three-term recurrence.
template <typename Scalar>
std::pair<Scalar, Scalar> legendre_with_derivative(int order, const Scalar& x) {
    Scalar previous = 1, current = x;
    for (int k = 2; k <= order; ++k) {
        const Scalar next = ((2 * k - 1) * x * current - (k - 1) * previous) / k;
        previous = current;
        current = next;
    }
    return {current, order * (x * current - previous) / (x * x - 1)};
}

template <typename Scalar>
GaussLegendreRule<Scalar> compute_gauss_legendre(int order) {
    using std::abs;
    using std::cos;
    GaussLegendreRule<Scalar> rule{std::vector<Scalar>(order), std::vector<Scalar>(order)};
    const Scalar tolerance = 4 * std::numeric_limits<Scalar>::epsilon();
    for (int i = 0; i < (order + 1) / 2; ++i) {
        // Tricomi starting guess, then Newton on P_order.
        Scalar x = cos(Scalar(std::numbers::pi) * (i + Scalar(0.75)) / (order + Scalar(0.5)));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p, dp] = legendre_with_derivative(order, x);
            const Scalar dx = p / dp;
            x -= dx;
            if (abs(dx) <= tolerance) break;
        }
        const Scalar dp = legendre_with_derivative(order, x).second;
        const Scalar w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0;
    return rule;
}

}  // namespace detail

/// Cached Gauss-Legendre rule of the given order, exact for polynomials of
/// degree <= 2 order - 1.
template <typename Scalar>
const GaussLegendreRule<Scalar>& gauss_legendre(int order) {
    if (order < 1) throw Error(ErrorCode::InvalidParams, "quadrature order must be >= 1");
    static std::mutex guard;
    static std::map<int, GaussLegendreRule<Scalar>> cache;
    std::lock_guard<std::mutex> lock(guard);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, detail::compute_gauss_legendre<Scalar>(order)).first;
    return it->second;
}

}  // namespace frenet_svd
