#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frenet_svd/errors.hpp"
#include "frenet_svd/precision.hpp"

namespace frenet_svd {

/// Parametric curve gamma: [lo, hi] -> R^dim with optional closed-form
/// derivative oracle derivative(k, t) = gamma^(k)(t).
template <typename Scalar>
struct Curve {
    int dim = 0;
    std::function<Vector<Scalar>(const Scalar&)> value;
    std::function<Vector<Scalar>(int, const Scalar&)> derivative;
    Scalar lo = -std::numeric_limits<Scalar>::infinity();
    Scalar hi = std::numeric_limits<Scalar>::infinity();
    std::string name;

    bool has_derivatives() const { return static_cast<bool>(derivative); }

    bool contains(const Scalar& a, const Scalar& b) const { return a >= lo && b <= hi; }

    /// Columns gamma^(1)(t) .. gamma^(count)(t).
    Matrix<Scalar> derivative_matrix(const Scalar& t, int count) const {
        if (!has_derivatives()) throw Error(ErrorCode::InvalidParams, "curve '" + name + "' has no derivative oracle");
        Matrix<Scalar> out(dim, count);
        for (int k = 1; k <= count; ++k) out.col(k - 1) = derivative(k, t);
        return out;
    }
};

/// Discrete trace: strictly increasing parameters with one point each.
struct SampledCurve {
    int dim = 0;
    std::vector<double> t;
    std::vector<Vector<double>> points;

    std::size_t size() const { return t.size(); }

    void validate() const {
        if (t.size() != points.size()) throw Error(ErrorCode::InvalidParams, "parameter and point counts differ");
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (points[i].size() != dim) throw Error(ErrorCode::InvalidParams, "sample " + std::to_string(i) + " has wrong dimension");
            if (i > 0 && !(t[i] > t[i - 1]))
                throw Error(ErrorCode::InvalidParams, "parameters must be strictly increasing (sample " + std::to_string(i) + ")");
        }
    }
};

/// Amplitudes a_i and frequencies alpha_i of the rotating planes
/// (a_i cos(alpha_i t), a_i sin(alpha_i t)), plus an optional linear drift b t
/// in the last coordinate for odd dimensions.
template <typename Scalar>
struct CanonicalCurveParams {
    std::vector<Scalar> amplitudes;
    std::vector<Scalar> frequencies;
    std::optional<Scalar> drift;

    int dim() const { return static_cast<int>(2 * amplitudes.size() + (drift ? 1 : 0)); }

    /// G_k = sum a_i^2 alpha_i^k, with b^2 added for k = 2.
    Scalar moment(int k) const {
        using std::pow;
        Scalar g = 0;
        for (std::size_t i = 0; i < amplitudes.size(); ++i) {
            Scalar term = amplitudes[i] * amplitudes[i];
            for (int p = 0; p < k; ++p) term *= frequencies[i];
            g += term;
        }
        if (k == 2 && drift) g += *drift * *drift;
        return g;
    }

    Scalar speed_squared() const { return moment(2); }
};

template <typename Scalar>
Curve<Scalar> canonical_curve(const CanonicalCurveParams<Scalar>& params, std::string name) {
    if (params.amplitudes.size() != params.frequencies.size() || params.amplitudes.empty())
        throw Error(ErrorCode::InvalidParams, "canonical curve needs matching amplitude/frequency lists");
    for (std::size_t i = 0; i < params.amplitudes.size(); ++i)
        if (!(params.amplitudes[i] > 0) || !(params.frequencies[i] > 0))
            throw Error(ErrorCode::InvalidParams, "amplitudes and frequencies must be positive");
    if (params.drift && *params.drift < 0) throw Error(ErrorCode::InvalidParams, "drift must be non-negative");

    Curve<Scalar> c;
    c.dim = params.dim();
    c.name = std::move(name);
    c.value = [params](const Scalar& t) {
        using std::cos;
        using std::sin;
        Vector<Scalar> out(params.dim());
        for (std::size_t i = 0; i < params.amplitudes.size(); ++i) {
            const Scalar phase = params.frequencies[i] * t;
            out[2 * i] = params.amplitudes[i] * cos(phase);
            out[2 * i + 1] = params.amplitudes[i] * sin(phase);
        }
        if (params.drift) out[out.size() - 1] = *params.drift * t;
        return out;
    };
    c.derivative = [params](int k, const Scalar& t) {
        using std::cos;
        using std::sin;
        Vector<Scalar> out(params.dim());
        for (std::size_t i = 0; i < params.amplitudes.size(); ++i) {
            const Scalar phase = params.frequencies[i] * t;
            const Scalar cs = cos(phase), sn = sin(phase);
            Scalar scale = params.amplitudes[i];
            for (int p = 0; p < k; ++p) scale *= params.frequencies[i];
            // d^k/dt^k of (cos, sin) rotates the phase by k * pi / 2.
            switch (k % 4) {
                case 0: out[2 * i] = scale * cs; out[2 * i + 1] = scale * sn; break;
                case 1: out[2 * i] = -scale * sn; out[2 * i + 1] = scale * cs; break;
                case 2: out[2 * i] = -scale * cs; out[2 * i + 1] = -scale * sn; break;
                default: out[2 * i] = scale * sn; out[2 * i + 1] = -scale * cs; break;
            }
        }
        if (params.drift) out[out.size() - 1] = k == 0 ? Scalar(*params.drift * t) : (k == 1 ? *params.drift : Scalar(0));
        return out;
    };
    return c;
}

template <typename Scalar>
Curve<Scalar> twisted_cubic() {
    Curve<Scalar> c;
    c.dim = 3;
    c.name = "twisted-cubic";
    c.value = [](const Scalar& t) {
        Vector<Scalar> out(3);
        out << t, t * t, t * t * t;
        return out;
    };
    c.derivative = [](int k, const Scalar& t) {
        Vector<Scalar> out = Vector<Scalar>::Zero(3);
        switch (k) {
            case 0: out << t, t * t, t * t * t; break;
            case 1: out << Scalar(1), 2 * t, 3 * t * t; break;
            case 2: out << Scalar(0), Scalar(2), 6 * t; break;
            case 3: out << Scalar(0), Scalar(0), Scalar(6); break;
            default: break;
        }
        return out;
    };
    return c;
}

/// t -> gamma(scale * t); derivatives pick up scale^k.
template <typename Scalar>
Curve<Scalar> reparameterize(const Curve<Scalar>& base, const Scalar& scale) {
    if (!(scale > 0)) throw Error(ErrorCode::InvalidParams, "reparameterization scale must be positive");
    Curve<Scalar> c = base;
    c.name = base.name + "(reparameterized)";
    c.lo = base.lo / scale;
    c.hi = base.hi / scale;
    c.value = [base, scale](const Scalar& t) { return base.value(scale * t); };
    if (base.has_derivatives()) {
        c.derivative = [base, scale](int k, const Scalar& t) {
            Scalar factor = 1;
            for (int p = 0; p < k; ++p) factor *= scale;
            return Vector<Scalar>(base.derivative(k, scale * t) * factor);
        };
    }
    return c;
}

template <typename Scalar>
struct BuiltinCurve {
    Curve<Scalar> curve;
    std::optional<CanonicalCurveParams<Scalar>> params;  ///< set for the constant-curvature families
};

namespace detail {

template <typename Scalar>
Scalar take_param(std::map<std::string, Scalar>& given, const std::string& key, const Scalar& fallback) {
    auto it = given.find(key);
    if (it == given.end()) return fallback;
    Scalar v = it->second;
    given.erase(it);
    return v;
}

}  // namespace detail

inline const std::vector<std::string>& builtin_curve_names() {
    static const std::vector<std::string> names{"circle", "helix", "toroidal4", "screw5", "torus6", "twisted-cubic"};
    return names;
}

/// Builtin registry. Defaults are unit-speed:
///   circle       a=1, alpha=1/a
///   helix        a=1, alpha=1/sqrt2, b=1/sqrt2           (kappa_1 = kappa_2 = 1/2)
///   toroidal4    a=1/sqrt2, alpha=1, b=1/(2 sqrt2), beta=2
///   screw5       a=1/sqrt3, alpha=1, b=1/(2 sqrt3), beta=2, c=1/sqrt3
///   torus6       a=1/sqrt3, alpha=1, b=1/(2 sqrt3), beta=2, c=1/(3 sqrt3), delta=3
///   twisted-cubic (t, t^2, t^3)
template <typename Scalar>
BuiltinCurve<Scalar> make_builtin_curve(const std::string& name, std::map<std::string, Scalar> given = {}) {
    using std::sqrt;
    const Scalar one = 1;
    const Scalar r2 = sqrt(Scalar(2));
    const Scalar r3 = sqrt(Scalar(3));
    BuiltinCurve<Scalar> out;
    CanonicalCurveParams<Scalar> p;

    if (name == "circle") {
        const Scalar a = detail::take_param(given, "a", one);
        if (!(a > 0)) throw Error(ErrorCode::InvalidParams, "circle radius must be positive");
        p.amplitudes = {a};
        p.frequencies = {detail::take_param(given, "alpha", Scalar(one / a))};
    } else if (name == "helix") {
        p.amplitudes = {detail::take_param(given, "a", one)};
        p.frequencies = {detail::take_param(given, "alpha", Scalar(one / r2))};
        p.drift = detail::take_param(given, "b", Scalar(one / r2));
    } else if (name == "toroidal4") {
        p.amplitudes = {detail::take_param(given, "a", Scalar(one / r2)), Scalar(0)};
        p.frequencies = {detail::take_param(given, "alpha", one), Scalar(0)};
        p.amplitudes[1] = detail::take_param(given, "b", Scalar(one / (2 * r2)));
        p.frequencies[1] = detail::take_param(given, "beta", Scalar(2));
    } else if (name == "screw5") {
        p.amplitudes = {detail::take_param(given, "a", Scalar(one / r3)), Scalar(0)};
        p.frequencies = {detail::take_param(given, "alpha", one), Scalar(0)};
        p.amplitudes[1] = detail::take_param(given, "b", Scalar(one / (2 * r3)));
        p.frequencies[1] = detail::take_param(given, "beta", Scalar(2));
        p.drift = detail::take_param(given, "c", Scalar(one / r3));
    } else if (name == "torus6") {
        p.amplitudes = {detail::take_param(given, "a", Scalar(one / r3)), Scalar(0), Scalar(0)};
        p.frequencies = {detail::take_param(given, "alpha", one), Scalar(0), Scalar(0)};
        p.amplitudes[1] = detail::take_param(given, "b", Scalar(one / (2 * r3)));
        p.frequencies[1] = detail::take_param(given, "beta", Scalar(2));
        p.amplitudes[2] = detail::take_param(given, "c", Scalar(one / (3 * r3)));
        p.frequencies[2] = detail::take_param(given, "delta", Scalar(3));
    } else if (name == "twisted-cubic") {
        out.curve = twisted_cubic<Scalar>();
    } else {
        throw Error(ErrorCode::UnknownCurve, "no builtin curve named '" + name + "'");
    }

    if (!given.empty()) throw Error(ErrorCode::InvalidParams, "unknown parameter '" + given.begin()->first + "' for " + name);
    if (name != "twisted-cubic") {
        out.curve = canonical_curve(p, name);
        out.params = p;
    }
    return out;
}

}  // namespace frenet_svd
