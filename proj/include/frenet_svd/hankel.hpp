#pragma once

// Exact Hankel determinants of inverse-arithmetic moment sequences and the
// curvature coefficients a_j derived from them.
//
// Notation: F_n(alpha, beta) is the n x n Hankel determinant of
// {1/(alpha k + beta)}_k, and B_n is the determinant of the interleaved
// sequence {1/(alpha k + beta), 0}_k. The empty determinant is 1 (F_0 = B_0 = 1).

#include <cstddef>
#include <utility>
#include <vector>

#include "frenet_svd/errors.hpp"
#include "frenet_svd/rational.hpp"

namespace frenet_svd::hankel {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// {1/(alpha k + beta)}_k, or {1/(alpha k + beta), 0}_k when interleave_zeros.
class MomentSequence {
public:
    MomentSequence(Rational alpha, Rational beta, bool interleave_zeros)
        : alpha_(std::move(alpha)), beta_(std::move(beta)), interleave_zeros_(interleave_zeros) {
        if (alpha_ <= 0 || beta_ <= 0)
            throw Error(ErrorCode::InvalidParams, "moment sequence needs alpha > 0 and beta > 0");
    }

    const Rational& alpha() const { return alpha_; }
    const Rational& beta() const { return beta_; }
    bool interleave_zeros() const { return interleave_zeros_; }

    Rational element(std::size_t k) const {
        if (interleave_zeros_) {
            if (k % 2 == 1) return Rational(0);
            k /= 2;
        }
        return Rational(1) / (alpha_ * k + beta_);
    }

    /// mu_0 .. mu_{count-1}
    std::vector<Rational> elements(std::size_t count) const {
        std::vector<Rational> out;
        out.reserve(count);
        for (std::size_t k = 0; k < count; ++k) out.push_back(element(k));
        return out;
    }

private:
    Rational alpha_;
    Rational beta_;
    bool interleave_zeros_;
};

inline Rational moment(const MomentSequence& seq, std::size_t k) { return seq.element(k); }

/// The displayed sequence {1/3, 0, 1/5, 0, 1/7, ...} behind the a_j.
inline MomentSequence curvature_moments() { return MomentSequence(Rational(2), Rational(3), true); }

/// H[i][j] = mu_{i+j} with 0-based storage (the (1,1) entry is mu_0).
inline RationalMatrix hankel_matrix(const std::vector<Rational>& moments, std::size_t n) {
    if (moments.size() + 1 < 2 * n)
        throw Error(ErrorCode::InvalidParams, "need 2n-1 moments for an n x n Hankel matrix");
    RationalMatrix h(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h[i][j] = moments[i + j];
    return h;
}

inline RationalMatrix hankel_matrix(const MomentSequence& seq, std::size_t n) {
    return hankel_matrix(seq.elements(n == 0 ? 0 : 2 * n - 1), n);
}

/// Fraction-free (Bareiss) determinant. Rows are first scaled to integers by
/// the lcm of their denominators, eliminated in exact integer arithmetic, and
/// the scaling is divided out at the end.
inline Rational bareiss_determinant(const RationalMatrix& a) {
    const std::size_t n = a.size();
    if (n == 0) return Rational(1);
    std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
    BigInt scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw Error(ErrorCode::InvalidParams, "determinant of a non-square matrix");
        BigInt row_lcm = 1;
        for (const Rational& x : a[i]) row_lcm = boost::multiprecision::lcm(row_lcm, denominator_of(x));
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = numerator_of(a[i][j]) * (row_lcm / denominator_of(a[i][j]));
        scale *= row_lcm;
    }

    int sign = 1;
    BigInt previous = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return Rational(0);
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / previous;
            }
            m[i][k] = 0;
        }
        previous = m[k][k];
    }
    return Rational(sign * m[n - 1][n - 1], scale);
}

/// Brute-force determinant oracle for the n x n Hankel matrix of seq.
inline Rational hankel_det_exact(const MomentSequence& seq, std::size_t n) {
    return bareiss_determinant(hankel_matrix(seq, n));
}

/// Telescoped closed form
///   F_n = alpha^{-n} prod_{k<n} (k!)^2 prod_{j<n} alpha / (alpha (k+j) + beta).
inline Rational selberg_f(std::size_t n, const Rational& alpha, const Rational& beta) {
    if (alpha <= 0 || beta <= 0) throw Error(ErrorCode::InvalidParams, "selberg_f needs alpha, beta > 0");
    Rational value = 1;
    BigInt factorial = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) factorial *= k;
        value *= Rational(factorial * factorial);
        for (std::size_t j = 0; j < n; ++j) value *= alpha / (alpha * (k + j) + beta);
        value /= alpha;
    }
    return value;
}

/// F_n F_{n-2} / F_{n-1}^2 from the closed recursion, n >= 2.
inline Rational f_recursion_ratio(std::size_t n, const Rational& alpha, const Rational& beta) {
    if (n < 2) throw Error(ErrorCode::InvalidParams, "f_recursion_ratio needs n >= 2");
    const Rational a = alpha;
    const Rational num = a * a * (a * (n - 2) + beta) * (a * (n - 2) + beta) * Rational((n - 1) * (n - 1));
    const Rational mid = a * (2 * n - 3) + beta;
    const Rational den = (a * (2 * n - 2) + beta) * mid * mid * (a * (2 * n - 4) + beta);
    return num / den;
}

struct BlockSizes {
    std::size_t f_size;  ///< block built on (alpha, beta)
    std::size_t e_size;  ///< block built on (alpha, beta + alpha)

    bool operator==(const BlockSizes&) const = default;
};

/// n = 2m -> (m, m); n = 2m - 1 -> (m, m - 1).
inline BlockSizes block_decompose(std::size_t n) {
    if (n == 0) throw Error(ErrorCode::InvalidParams, "block_decompose needs n >= 1");
    const std::size_t m = (n + 1) / 2;
    return n % 2 == 0 ? BlockSizes{m, m} : BlockSizes{m, m - 1};
}

/// Hankel determinant of the interleaved sequence via the block decomposition.
inline Rational hankel_b(std::size_t n, const Rational& alpha, const Rational& beta) {
    if (n == 0) return Rational(1);
    const BlockSizes blocks = block_decompose(n);
    return selberg_f(blocks.f_size, alpha, beta) * selberg_f(blocks.e_size, alpha, beta + alpha);
}

/// B_n B_{n-2} / B_{n-1}^2 from the even/odd closed forms, n >= 2.
inline Rational interleaved_recursion_ratio(std::size_t n, const Rational& alpha, const Rational& beta) {
    if (n < 2) throw Error(ErrorCode::InvalidParams, "interleaved_recursion_ratio needs n >= 2");
    const Rational& a = alpha;
    if (n % 2 == 0) {
        const std::size_t m = n / 2;
        const Rational top = a * (m - 1) + beta;
        return top * top / ((a * (2 * m - 1) + beta) * (a * (2 * m - 2) + beta));
    }
    const std::size_t m = (n + 1) / 2;
    return a * a * Rational((m - 1) * (m - 1)) / ((a * (2 * m - 2) + beta) * (a * (2 * m - 3) + beta));
}

/// (n + (-1)^n)^2 / (4 n^2 - 1): the alpha = 2, beta = 3 case, n >= 2.
inline Rational b_recursion_ratio(std::size_t n) {
    if (n < 2) throw Error(ErrorCode::InvalidParams, "b_recursion_ratio needs n >= 2");
    const long long shifted = n % 2 == 0 ? static_cast<long long>(n) + 1 : static_cast<long long>(n) - 1;
    const long long nn = static_cast<long long>(n);
    return Rational(shifted * shifted, 4 * nn * nn - 1);
}

/// k-th elimination pivot B_k / B_{k-1} of the curvature moment matrix.
inline Rational pivot(std::size_t k) {
    if (k == 0) throw Error(ErrorCode::InvalidParams, "pivot index starts at 1");
    return hankel_b(k, 2, 3) / hankel_b(k - 1, 2, 3);
}

/// a_j in kappa_j = sqrt(a_j) sigma_{j+1} / (sigma_1 sigma_j); with i = j + 1,
/// a_j = (i / (i + (-1)^i))^2 (4 i^2 - 1) / 3.
inline Rational curvature_coefficient(std::size_t j) {
    if (j == 0) throw Error(ErrorCode::InvalidParams, "curvature coefficients start at j = 1");
    const long long i = static_cast<long long>(j) + 1;
    const long long shifted = i % 2 == 0 ? i + 1 : i - 1;
    return Rational(i * i, shifted * shifted) * Rational(4 * i * i - 1, 3);
}

/// Same coefficient rebuilt from the pivots: a_j = (j+1)^2 B_1 B_j^2 / (B_{j+1} B_{j-1}).
inline Rational curvature_coefficient_from_hankel(std::size_t j) {
    if (j == 0) throw Error(ErrorCode::InvalidParams, "curvature coefficients start at j = 1");
    const Rational bj = hankel_b(j, 2, 3);
    const Rational jp1 = Rational(static_cast<long long>(j) + 1);
    return jp1 * jp1 * hankel_b(1, 2, 3) * bj * bj / (hankel_b(j + 1, 2, 3) * hankel_b(j - 1, 2, 3));
}

/// Determinants dets[0..n] (dets[0] = 1) and pivots[1..n] (pivots[0] unused, = 1).
struct HankelFamily {
    MomentSequence moments;
    std::vector<Rational> dets;
    std::vector<Rational> pivots;
};

inline HankelFamily build_hankel_family(const MomentSequence& seq, std::size_t n) {
    HankelFamily family{seq, {Rational(1)}, {Rational(1)}};
    for (std::size_t k = 1; k <= n; ++k) {
        if (family.dets.back() == 0)
            throw Error(ErrorCode::DegenerateMoments, "Hankel determinant of size " + std::to_string(k - 1) + " is zero");
        family.dets.push_back(hankel_det_exact(seq, k));
        family.pivots.push_back(family.dets[k] / family.dets[k - 1]);
    }
    return family;
}

}  // namespace frenet_svd::hankel
