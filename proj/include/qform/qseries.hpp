#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qform/errors.hpp"
#include "qform/rational.hpp"

namespace qform {

/// Truncated formal power series in q^{1/24} with exact rational coefficients.
///
/// Exponents are kept as 24ths: the coefficient of q^{e/24} lives at index
/// e - offset24 of the coefficient array. Coefficients are known for all
/// exponents strictly below order24/24; entries past the stored array but
/// below order24 are zero. order24 == kOrderInf marks an exact series
/// (a polynomial known at every order).
///
/// Truncation bookkeeping follows the minimum rule: every binary operation
/// propagates the tightest order implied by its inputs, so coefficients past
/// a truncation can never leak into a result.
class QSeries {
public:
    static constexpr long long kOrderInf = (1LL << 62);

    /// Default relative order (in 24ths) used when inverting an exact,
    /// non-monomial series, for which no truncation is implied by the input.
    static constexpr long long kDefaultOrder24 = 300 * 24;

    QSeries() : offset24_(kOrderInf), order24_(kOrderInf) {}  // exact zero

    static QSeries zero(long long order24 = kOrderInf) {
        QSeries s;
        s.offset24_ = order24;
        s.order24_ = order24;
        return s;
    }

    static QSeries one() { return constant(Rational(1)); }

    static QSeries constant(Rational c) { return monomial(std::move(c), 0); }

    static QSeries monomial(Rational c, long long e24, long long order24 = kOrderInf) {
        QSeries s;
        s.offset24_ = e24;
        s.order24_ = order24;
        s.coeffs_.push_back(std::move(c));
        s.normalize();
        return s;
    }

    static QSeries from_coeffs(long long offset24, std::vector<Rational> coeffs,
                               long long order24 = kOrderInf) {
        QSeries s;
        s.offset24_ = offset24;
        s.order24_ = order24;
        s.coeffs_ = std::move(coeffs);
        s.normalize();
        return s;
    }

    /// Polynomial with integer exponents: coeffs[i] is the coefficient of q^i.
    static QSeries poly(std::vector<Rational> coeffs) {
        QSeries s;
        s.offset24_ = 0;
        s.order24_ = kOrderInf;
        s.coeffs_.reserve(coeffs.size() * 24);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            s.coeffs_.resize(i * 24 + 1);
            s.coeffs_[i * 24] = std::move(coeffs[i]);
        }
        s.normalize();
        return s;
    }

    long long offset24() const { return offset24_; }
    long long order24() const { return order24_; }
    bool is_exact() const { return order24_ == kOrderInf; }

    /// True when the series is zero everywhere it is known.
    bool is_zero_series() const { return coeffs_.empty(); }

    /// Coefficient of q^{e24/24}. Throws BeyondTruncation for e24 >= order24.
    const Rational& coeff24(long long e24) const {
        if (e24 >= order24_)
            throw BeyondTruncation("coefficient q^(" + std::to_string(e24) +
                                   "/24) requested beyond truncation order " +
                                   std::to_string(order24_) + "/24");
        if (e24 < offset24_) return kZero;
        auto idx = static_cast<unsigned long long>(e24 - offset24_);
        if (idx >= coeffs_.size()) return kZero;
        return coeffs_[idx];
    }

    /// Coefficient of q^n for integer n.
    const Rational& coefficient(long long n) const { return coeff24(24 * n); }

    /// Exponent (in 24ths) of the first stored nonzero term.
    long long leading_exponent24() const {
        require_nonzero("leading exponent of zero series");
        return offset24_;
    }

    const Rational& leading_coefficient() const {
        require_nonzero("leading coefficient of zero series");
        return coeffs_.front();
    }

    /// All nonzero support lies on integer exponents (multiples of 24).
    bool is_integral() const {
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero() && mod24(offset24_ + static_cast<long long>(i)) != 0)
                return false;
        return true;
    }

    /// Nonzero (exponent24, coefficient) pairs in ascending exponent order.
    std::vector<std::pair<long long, Rational>> to_pairs() const {
        std::vector<std::pair<long long, Rational>> out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero())
                out.emplace_back(offset24_ + static_cast<long long>(i), coeffs_[i]);
        return out;
    }

    QSeries truncated(long long order24) const {
        QSeries r = *this;
        if (order24 < r.order24_) {
            r.order24_ = order24;
            r.normalize();
        }
        return r;
    }

    QSeries operator-() const {
        QSeries r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend QSeries operator+(const QSeries& a, const QSeries& b) { return add_scaled(a, b, kOne); }
    friend QSeries operator-(const QSeries& a, const QSeries& b) {
        return add_scaled(a, b, kMinusOne);
    }

    friend QSeries operator*(const QSeries& a, const QSeries& b) {
        long long off = sat_add(a.offset24_, b.offset24_);
        long long ord = std::min(sat_add(a.order24_, b.offset24_),
                                 sat_add(b.order24_, a.offset24_));
        if (a.coeffs_.empty() || b.coeffs_.empty()) return zero(ord);
        QSeries c;
        c.offset24_ = off;
        c.order24_ = ord;
        long long span = static_cast<long long>(a.coeffs_.size() + b.coeffs_.size()) - 1;
        if (ord != kOrderInf) span = std::min(span, ord - off);
        c.coeffs_.assign(static_cast<std::size_t>(std::max<long long>(span, 0)), Rational());
        auto na = a.nonzero_indices();
        auto nb = b.nonzero_indices();
        for (auto i : na) {
            const Rational& ai = a.coeffs_[i];
            for (auto j : nb) {
                long long k = static_cast<long long>(i) + static_cast<long long>(j);
                if (k >= span) break;
                c.coeffs_[static_cast<std::size_t>(k)] += ai * b.coeffs_[j];
            }
        }
        c.normalize();
        return c;
    }

    friend QSeries operator*(const Rational& s, const QSeries& a) {
        if (s.is_zero()) return zero(a.order24_);
        QSeries r = a;
        for (auto& c : r.coeffs_) c *= s;
        return r;
    }
    friend QSeries operator*(const QSeries& a, const Rational& s) { return s * a; }

    /// Multiplicative inverse: b with a*b = 1 up to the order implied by a.
    QSeries inverse() const {
        if (coeffs_.empty())
            throw ZeroLeadingCoefficient("inverse of a series with zero leading coefficient");
        if (is_exact() && coeffs_.size() == 1)
            return monomial(Rational(1) / coeffs_.front(), -offset24_);
        long long rel = is_exact() ? kDefaultOrder24 : order24_ - offset24_;
        QSeries b;
        b.offset24_ = -offset24_;
        b.order24_ = -offset24_ + rel;  // equals order24 - 2*offset24 when truncated
        b.coeffs_.assign(static_cast<std::size_t>(rel), Rational());
        const Rational& a0 = coeffs_.front();
        b.coeffs_[0] = Rational(1) / a0;
        auto nz = nonzero_indices();  // ascending; nz[0] == 0
        for (long long n = 1; n < rel; ++n) {
            Rational acc;
            for (std::size_t t = 1; t < nz.size(); ++t) {
                long long j = static_cast<long long>(nz[t]);
                if (j > n) break;
                const Rational& bn = b.coeffs_[static_cast<std::size_t>(n - j)];
                if (!bn.is_zero()) acc += coeffs_[nz[t]] * bn;
            }
            if (!acc.is_zero()) b.coeffs_[static_cast<std::size_t>(n)] = -(acc / a0);
        }
        b.normalize();
        return b;
    }

    /// Integer power; negative exponents go through inverse().
    QSeries pow(long long e) const {
        if (e == 0) return one();
        if (e < 0) return inverse().pow(-e);
        QSeries acc = one();
        QSeries base = *this;
        for (long long n = e;; n >>= 1) {
            if (n & 1) acc = acc * base;
            if (n <= 1) break;
            base = base * base;
        }
        return acc;
    }

    /// q -> q^t: every exponent is multiplied by t.
    QSeries dilate(long long t) const {
        if (t < 1) throw std::invalid_argument("dilate: scale must be a positive integer");
        if (t == 1) return *this;
        QSeries r;
        r.offset24_ = sat_mul(offset24_, t);
        r.order24_ = sat_mul(order24_, t);
        if (!coeffs_.empty()) {
            r.coeffs_.assign(static_cast<std::size_t>((coeffs_.size() - 1) * t + 1), Rational());
            for (std::size_t i = 0; i < coeffs_.size(); ++i)
                if (!coeffs_[i].is_zero()) r.coeffs_[i * static_cast<std::size_t>(t)] = coeffs_[i];
        } else {
            r.offset24_ = r.order24_;
        }
        return r;
    }

    /// tau -> tau + 1/2, i.e. q^n -> (-1)^n q^n. Defined on integral series only.
    QSeries half_shift() const {
        QSeries r = *this;
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
            if (r.coeffs_[i].is_zero()) continue;
            long long e24 = r.offset24_ + static_cast<long long>(i);
            if (mod24(e24) != 0)
                throw NonIntegralSeries("half_shift on series with fractional exponent " +
                                        std::to_string(e24) + "/24");
            if ((e24 / 24) % 2 != 0) r.coeffs_[i] = -r.coeffs_[i];
        }
        return r;
    }

private:
    static inline const Rational kZero{};
    static inline const Rational kOne{1};
    static inline const Rational kMinusOne{-1};

    static long long sat_add(long long a, long long b) {
        if (a >= kOrderInf || b >= kOrderInf) return kOrderInf;
        return a + b;
    }
    static long long sat_mul(long long a, long long t) {
        if (a >= kOrderInf || a <= -kOrderInf) return a;
        return a * t;
    }
    static long long mod24(long long e) { return ((e % 24) + 24) % 24; }

    std::vector<std::size_t> nonzero_indices() const {
        std::vector<std::size_t> idx;
        idx.reserve(coeffs_.size() / 16 + 4);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero()) idx.push_back(i);
        return idx;
    }

    void require_nonzero(const char* what) const {
        if (coeffs_.empty()) throw ZeroLeadingCoefficient(what);
    }

    static QSeries add_scaled(const QSeries& a, const QSeries& b, const Rational& s) {
        long long ord = std::min(a.order24_, b.order24_);
        if (a.coeffs_.empty() && b.coeffs_.empty()) return zero(ord);
        long long off = std::min(a.coeffs_.empty() ? b.offset24_ : a.offset24_,
                                 b.coeffs_.empty() ? a.offset24_ : b.offset24_);
        long long end_a =
            a.coeffs_.empty() ? off : a.offset24_ + static_cast<long long>(a.coeffs_.size());
        long long end_b =
            b.coeffs_.empty() ? off : b.offset24_ + static_cast<long long>(b.coeffs_.size());
        long long end = std::min(std::max(end_a, end_b), ord);
        QSeries c;
        c.offset24_ = off;
        c.order24_ = ord;
        c.coeffs_.assign(static_cast<std::size_t>(std::max<long long>(end - off, 0)), Rational());
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            long long k = a.offset24_ + static_cast<long long>(i) - off;
            if (k >= 0 && k < end - off) c.coeffs_[static_cast<std::size_t>(k)] = a.coeffs_[i];
        }
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
            long long k = b.offset24_ + static_cast<long long>(i) - off;
            if (k >= 0 && k < end - off)
                c.coeffs_[static_cast<std::size_t>(k)] += s * b.coeffs_[i];
        }
        c.normalize();
        return c;
    }

    // Trim leading/trailing zeros so offset24 points at an actual nonzero term.
    void normalize() {
        if (order24_ != kOrderInf) {
            long long keep = order24_ - offset24_;
            if (keep < 0) keep = 0;
            if (static_cast<long long>(coeffs_.size()) > keep)
                coeffs_.resize(static_cast<std::size_t>(keep));
        }
        std::size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
        if (lead == coeffs_.size()) {
            coeffs_.clear();
            offset24_ = order24_;
            return;
        }
        if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long long>(lead));
            offset24_ += static_cast<long long>(lead);
        }
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    long long offset24_;
    long long order24_;
    std::vector<Rational> coeffs_;
};

/// First exponent (in 24ths) below order24 where a and b differ, if any.
/// Both series must be known below order24.
inline std::optional<long long> first_mismatch24(const QSeries& a, const QSeries& b,
                                                 long long order24) {
    long long lo = std::min(a.offset24(), b.offset24());
    lo = std::min(lo, order24);
    for (long long e = lo; e < order24; ++e)
        if (a.coeff24(e) != b.coeff24(e)) return e;
    return std::nullopt;
}

inline bool series_agree(const QSeries& a, const QSeries& b, long long order24) {
    return !first_mismatch24(a, b, order24).has_value();
}

}  // namespace qform
