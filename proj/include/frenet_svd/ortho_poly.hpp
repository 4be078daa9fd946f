#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "frenet_svd/errors.hpp"
#include "frenet_svd/rational.hpp"

namespace frenet_svd::hankel {

/// Coefficients in ascending powers; coeffs[k] multiplies x^k.
struct Polynomial {
    std::vector<Rational> coeffs;

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    const Rational& leading() const { return coeffs.back(); }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Polynomial times_x() const {
        Polynomial out;
        out.coeffs.reserve(coeffs.size() + 1);
        out.coeffs.push_back(0);
        out.coeffs.insert(out.coeffs.end(), coeffs.begin(), coeffs.end());
        return out;
    }

    /// this += factor * other
    void add_scaled(const Polynomial& other, const Rational& factor) {
        if (coeffs.size() < other.coeffs.size()) coeffs.resize(other.coeffs.size(), Rational(0));
        for (std::size_t k = 0; k < other.coeffs.size(); ++k) coeffs[k] += factor * other.coeffs[k];
    }

    static Polynomial monomial(std::size_t n) {
        Polynomial p;
        p.coeffs.assign(n + 1, Rational(0));
        p.coeffs[n] = 1;
        return p;
    }
};

/// <p, q> = sum_ij p_i q_j mu_{i+j}.
inline Rational moment_inner_product(const Polynomial& p, const Polynomial& q, const std::vector<Rational>& moments) {
    if (p.coeffs.size() + q.coeffs.size() > moments.size() + 1)
        throw Error(ErrorCode::InvalidParams, "not enough moments for the requested inner product");
    Rational acc = 0;
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
        if (p.coeffs[i] == 0) continue;
        for (std::size_t j = 0; j < q.coeffs.size(); ++j) acc += p.coeffs[i] * q.coeffs[j] * moments[i + j];
    }
    return acc;
}

/// Monic orthogonal polynomials P_0..P_count for the moment functional with
/// their three-term recurrence coefficients.
///
/// alphas[n] = <x P_n, P_n> / <P_n, P_n> for n < count.
/// betas[n]  = <P_n, P_n> / <P_{n-1}, P_{n-1}> for 1 <= n <= count; betas[0] = mu_0.
struct OrthoPolySequence {
    std::vector<Rational> measure_moments;
    std::vector<Polynomial> polys;
    std::vector<Rational> alphas;
    std::vector<Rational> betas;
    std::vector<Rational> norms;  ///< <P_n, P_n>
};

/// Gram-Schmidt of 1, x, x^2, ... against the moment functional. Needs
/// moments mu_0..mu_{2 count}.
inline OrthoPolySequence ortho_poly_generate(const std::vector<Rational>& moments, std::size_t count) {
    if (moments.size() < 2 * count + 1)
        throw Error(ErrorCode::InvalidParams, "ortho_poly_generate needs 2*count+1 moments");

    OrthoPolySequence out;
    out.measure_moments = moments;
    out.polys.push_back(Polynomial::monomial(0));
    out.norms.push_back(moments[0]);
    out.betas.push_back(moments[0]);

    for (std::size_t n = 1; n <= count; ++n) {
        if (out.norms[n - 1] == 0)
            throw Error(ErrorCode::DegenerateMoments, "<P_" + std::to_string(n - 1) + ", P_" +
                                                          std::to_string(n - 1) + "> = 0");
        const Polynomial xn = Polynomial::monomial(n);
        Polynomial p = xn;
        for (std::size_t k = 0; k < n; ++k)
            p.add_scaled(out.polys[k], -moment_inner_product(xn, out.polys[k], moments) / out.norms[k]);
        out.norms.push_back(moment_inner_product(p, p, moments));
        out.betas.push_back(out.norms[n] / out.norms[n - 1]);
        out.polys.push_back(std::move(p));
    }
    for (std::size_t n = 0; n < count; ++n)
        out.alphas.push_back(moment_inner_product(out.polys[n].times_x(), out.polys[n], moments) / out.norms[n]);
    return out;
}

}  // namespace frenet_svd::hankel
