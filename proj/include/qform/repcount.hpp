#pragma once

#include <string>
#include <vector>

#include "qform/eta.hpp"
#include "qform/qseries.hpp"
#include "qform/rational.hpp"

namespace qform {

/// The quadratic form x_1^2+...+x_k^2 + m (x_{k+1}^2+...+x_{2k}^2) in 2k
/// variables: k unit squares plus k squares with coefficient m in {1, 2, 4}.
struct FormSpec {
    int k = 1;
    int m = 1;

    FormSpec(int k_, int m_) : k(k_), m(m_) {
        if (k < 1) throw std::invalid_argument("FormSpec: k must be >= 1");
        if (m != 1 && m != 2 && m != 4)
            throw std::invalid_argument("FormSpec: m must be 1, 2 or 4 (got " + std::to_string(m) +
                                        ")");
    }
};

/// Exact lattice count of integer solutions of the form = n, by layered
/// convolution over one variable at a time: r_{j+1}(s) = sum_{w t^2 <= s}
/// (2 - [t=0]) r_j(s - w t^2). Independent of all series machinery.
inline Int brute_count(const FormSpec& spec, long long n) {
    if (n < 0) throw std::invalid_argument("brute_count: n must be >= 0");
    std::vector<Int> cur(static_cast<std::size_t>(n) + 1);
    cur[0] = 1;
    for (int v = 0; v < 2 * spec.k; ++v) {
        long long w = v < spec.k ? 1 : spec.m;
        std::vector<Int> nxt(static_cast<std::size_t>(n) + 1);
        for (long long tot = 0; tot <= n; ++tot) {
            const Int& c = cur[static_cast<std::size_t>(tot)];
            if (c.is_zero()) continue;
            nxt[static_cast<std::size_t>(tot)] += c;
            for (long long t = 1; tot + w * t * t <= n; ++t)
                nxt[static_cast<std::size_t>(tot + w * t * t)] += 2 * c;
        }
        cur = std::move(nxt);
    }
    return cur[static_cast<std::size_t>(n)];
}

/// theta(tau) = sum_{t in Z} q^{t^2} = 1 + 2 sum_{t >= 1} q^{t^2}.
inline QSeries theta_series(long long order) {
    if (order < 1) throw std::invalid_argument("theta_series: order must be >= 1");
    std::vector<Rational> coeffs(static_cast<std::size_t>(24 * (order - 1) + 1));
    coeffs[0] = Rational(1);
    for (long long t = 1; t * t < order; ++t)
        coeffs[static_cast<std::size_t>(24 * t * t)] = Rational(2);
    return QSeries::from_coeffs(0, std::move(coeffs), 24 * order);
}

/// theta as an eta quotient, eta_2^5 / (eta_1 eta_4)^2 (Jacobi). The level-N
/// variants below are the bases the correction series are built on.
inline EtaQuotient theta_quotient() { return EtaQuotient(4, {{2, 5}, {1, -2}, {4, -2}}); }

/// theta(tau) theta(m tau) as an eta quotient at level 4m.
inline EtaQuotient gen_quotient(int m) {
    switch (m) {
        case 1:
            return EtaQuotient(4, {{2, 10}, {1, -4}, {4, -4}});
        case 2:
            return EtaQuotient(8, {{2, 3}, {4, 3}, {1, -2}, {8, -2}});
        case 4:
            return EtaQuotient(16, {{2, 5}, {8, 5}, {1, -2}, {4, -4}, {16, -2}});
        default:
            throw std::invalid_argument("gen_quotient: m must be 1, 2 or 4");
    }
}

/// The Hauptmodul reciprocal x_m = q + O(q^2) as an eta quotient:
///   x_1 = (eta_1 eta_4)^24 / eta_2^48,
///   x_2 = ((eta_1 eta_8)/(eta_2 eta_4))^8,
///   x_4 = (eta_1 eta_4 eta_16)^4 / (eta_2 eta_8)^6.
inline EtaQuotient x_quotient(int m) {
    switch (m) {
        case 1:
            return EtaQuotient(4, {{1, 24}, {4, 24}, {2, -48}});
        case 2:
            return EtaQuotient(8, {{1, 8}, {8, 8}, {2, -8}, {4, -8}});
        case 4:
            return EtaQuotient(16, {{1, 4}, {4, 4}, {16, 4}, {2, -6}, {8, -6}});
        default:
            throw std::invalid_argument("x_quotient: m must be 1, 2 or 4");
    }
}

/// Generating series of the representation numbers:
/// sum r(1^k m^k; n) q^n = (theta(tau) theta(m tau))^k. Coefficients are
/// counts, so the expansion is checked to be nonnegative integers.
inline QSeries gen_series(const FormSpec& spec, long long order) {
    if (order < 1) throw std::invalid_argument("gen_series: order must be >= 1");
    QSeries th = theta_series(order);
    QSeries thm = spec.m == 1 ? th : theta_series(order / spec.m + 2).dilate(spec.m);
    QSeries g = (th * thm).pow(spec.k).truncated(24 * order);
    for (const auto& [e24, c] : g.to_pairs())
        if (!c.is_integer() || c.sign() < 0)
            throw std::logic_error("gen_series: coefficient of q^(" + std::to_string(e24) +
                                   "/24) is not a nonnegative integer: " + c.str());
    return g;
}

inline QSeries x_series(int m, long long order) {
    if (order < 2) throw std::invalid_argument("x_series: order must be >= 2");
    return x_quotient(m).expand(order);
}

/// Correction series a_{j,k,m}: (theta(tau) theta(m tau))^k x_m^j,
/// with leading term q^j. Its coefficients carry the lower-order part of the
/// representation formula.
inline QSeries correction_series(int j, const FormSpec& spec, long long order) {
    if (j < 1) throw std::invalid_argument("correction_series: j must be >= 1");
    return (gen_series(spec, order) * x_series(spec.m, order).pow(j)).truncated(24 * order);
}

}  // namespace qform
