#pragma once

#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qform/arith.hpp"
#include "qform/errors.hpp"
#include "qform/qseries.hpp"

namespace qform {

/// Dedekind eta: q^{1/24} prod_{j=1}^{order-1} (1 - q^j), truncated so that
/// all exponents below order + 1/24 are exact. The support is the pentagonal
/// numbers (sparse), but the expansion is computed from the product directly.
inline QSeries eta_expand(long long order) {
    if (order < 1) throw std::invalid_argument("eta_expand: order must be >= 1");
    std::vector<Rational> a(static_cast<std::size_t>(order));
    a[0] = Rational(1);
    for (long long j = 1; j < order; ++j) {
        // multiply by (1 - q^j) in place; descending i keeps reads unclobbered
        for (long long i = order - 1; i >= j; --i) {
            const Rational& lower = a[static_cast<std::size_t>(i - j)];
            if (!lower.is_zero()) a[static_cast<std::size_t>(i)] -= lower;
        }
    }
    std::vector<Rational> stretched(static_cast<std::size_t>(24 * (order - 1) + 1));
    for (long long i = 0; i < order; ++i)
        if (!a[static_cast<std::size_t>(i)].is_zero())
            stretched[static_cast<std::size_t>(24 * i)] = std::move(a[static_cast<std::size_t>(i)]);
    return QSeries::from_coeffs(1, std::move(stretched), 24 * order + 1);
}

/// Width of the cusp a/c on Gamma_0(N): N / gcd(c^2, N).
inline long long cusp_width(long long c, long long N) {
    if (c < 1 || N < 1 || N % c != 0)
        throw std::invalid_argument("cusp_width: need 1 <= c and c | N");
    long long g = std::gcd(c, N);
    long long gcd_c2_N = g * std::gcd(c, N / g);  // gcd(c^2, N) without squaring c
    return N / gcd_c2_N;
}

/// A cusp a/c of Gamma_0(N), with gcd(a, c) = 1 and c | N.
struct CuspLabel {
    long long a;
    long long c;
    long long N;

    CuspLabel(long long a_, long long c_, long long N_) : a(a_), c(c_), N(N_) {
        if (c < 1 || N < 1 || N % c != 0)
            throw std::invalid_argument("CuspLabel: need 1 <= c and c | N");
        if (std::gcd(a, c) != 1) throw std::invalid_argument("CuspLabel: need gcd(a, c) = 1");
    }

    long long width() const { return cusp_width(c, N); }

    static CuspLabel parse(std::string_view text, long long level) {
        auto slash = text.find('/');
        if (slash == std::string_view::npos || slash == 0 || slash + 1 == text.size())
            throw ParseError("bad cusp \"" + std::string(text) + "\" (expected a/c)");
        long long a = 0, c = 0;
        try {
            a = std::stoll(std::string(text.substr(0, slash)));
            c = std::stoll(std::string(text.substr(slash + 1)));
        } catch (const std::exception&) {
            throw ParseError("bad cusp \"" + std::string(text) + "\"");
        }
        if (c < 1 || level % c != 0)
            throw ParseError("cusp denominator " + std::to_string(c) + " does not divide level " +
                             std::to_string(level));
        if (std::gcd(a, c) != 1)
            throw ParseError("cusp \"" + std::string(text) + "\" is not in lowest terms");
        return CuspLabel(a, c, level);
    }

    std::string str() const { return std::to_string(a) + "/" + std::to_string(c); }
};

/// Result of the Gordon-Hughes-Newman modularity check on Gamma_0(N):
/// both weighted exponent sums must vanish mod 24. character_s is the
/// squarefree kernel of (-1)^k prod d^{r_d} (the Jacobi-symbol character is
/// (character_s / .)); it is 0 when the weight is not an integer.
struct Gamma0Report {
    long long sum_d_rd_mod24 = 0;
    long long sum_Nd_rd_mod24 = 0;
    bool passes = false;
    long long character_s = 0;
};

/// A finite product prod_{d | N} eta(d tau)^{r_d} at level N.
class EtaQuotient {
public:
    EtaQuotient(long long level, std::map<long long, int> exponents)
        : level_(level), exps_(std::move(exponents)) {
        if (level_ < 1) throw std::invalid_argument("EtaQuotient: level must be positive");
        for (auto it = exps_.begin(); it != exps_.end();) {
            if (it->second == 0) {
                it = exps_.erase(it);
                continue;
            }
            if (it->first < 1 || level_ % it->first != 0)
                throw std::invalid_argument("EtaQuotient: index " + std::to_string(it->first) +
                                            " does not divide level " + std::to_string(level_));
            ++it;
        }
    }

    long long level() const { return level_; }
    const std::map<long long, int>& exponents() const { return exps_; }

    /// Twice the weight, sum of all exponents.
    long long weight2() const {
        long long s = 0;
        for (const auto& [d, r] : exps_) s += r;
        return s;
    }

    Rational weight() const { return Rational(weight2(), 2); }

    /// Leading exponent numerator over 24: sum of d * r_d.
    long long prefactor24() const {
        long long s = 0;
        for (const auto& [d, r] : exps_) s += d * r;
        return s;
    }

    /// Merge exponent maps (multiplication of quotients); level is the lcm.
    EtaQuotient times(const EtaQuotient& other) const {
        long long lv = std::lcm(level_, other.level_);
        std::map<long long, int> merged = exps_;
        for (const auto& [d, r] : other.exps_) merged[d] += r;
        return EtaQuotient(lv, std::move(merged));
    }

    EtaQuotient power(int e) const {
        std::map<long long, int> scaled = exps_;
        for (auto& [d, r] : scaled) r *= e;
        return EtaQuotient(level_, std::move(scaled));
    }

    /// q-expansion with all integer exponents below `order` exact.
    /// Negative exponents go through one series inversion of the denominator.
    QSeries expand(long long order) const {
        if (order < 1) throw std::invalid_argument("EtaQuotient::expand: order must be >= 1");
        // a negative leading exponent eats into the relative order; pad for it
        long long pad = prefactor24() < 0 ? (-prefactor24() + 23) / 24 : 0;
        QSeries num = QSeries::one();
        QSeries den = QSeries::one();
        for (const auto& [d, r] : exps_) {
            QSeries factor = eta_expand((order + pad) / d + 2).dilate(d);
            if (r > 0)
                num = num * factor.pow(r);
            else
                den = den * factor.pow(-r);
        }
        QSeries result = num * den.inverse();
        if (result.order24() < 24 * order)
            throw std::logic_error("EtaQuotient::expand: truncation bookkeeping fell short");
        return result.truncated(24 * order);
    }

    /// Gamma_0(level) modularity congruences and the quotient's character.
    Gamma0Report gamma0_conditions() const {
        Gamma0Report rep;
        long long sd = 0, snd = 0;
        for (const auto& [d, r] : exps_) {
            sd += d * r;
            snd += (level_ / d) * r;
        }
        rep.sum_d_rd_mod24 = ((sd % 24) + 24) % 24;
        rep.sum_Nd_rd_mod24 = ((snd % 24) + 24) % 24;
        rep.passes = rep.sum_d_rd_mod24 == 0 && rep.sum_Nd_rd_mod24 == 0;
        rep.character_s = weight2() % 2 == 0 ? character_kernel() : 0;
        return rep;
    }

    /// Exact order of vanishing at the cusp a/c (Ligozat):
    ///   (N/24) sum_d gcd(c,d)^2 r_d / (gcd(c, N/c) c d).
    /// Requires the gamma0 conditions to hold; refuses otherwise.
    Rational order_at_cusp(const CuspLabel& cusp) const {
        if (cusp.N != level_)
            throw std::invalid_argument("order_at_cusp: cusp level " + std::to_string(cusp.N) +
                                        " != quotient level " + std::to_string(level_));
        Gamma0Report rep = gamma0_conditions();
        if (!rep.passes)
            throw ConditionsNotMet("eta quotient fails the Gamma_0 congruences (sum d r_d mod 24 = " +
                                   std::to_string(rep.sum_d_rd_mod24) + ", sum (N/d) r_d mod 24 = " +
                                   std::to_string(rep.sum_Nd_rd_mod24) + ")");
        Rational total;
        long long denom_common = std::gcd(cusp.c, level_ / cusp.c) * cusp.c;
        for (const auto& [d, r] : exps_) {
            long long g = std::gcd(cusp.c, d);
            total += Rational(Int(g) * g * r, Int(denom_common) * d);
        }
        return Rational(level_, 24) * total;
    }

    static EtaQuotient parse(std::string_view text, long long level);
    std::string str() const;

private:
    // Squarefree kernel of (-1)^weight * prod d^{r_d} as a signed integer.
    long long character_kernel() const {
        std::map<long long, long long> prime_exp;
        for (const auto& [d, r] : exps_) {
            long long rem = d;
            for (long long p = 2; p * p <= rem; ++p)
                while (rem % p == 0) {
                    prime_exp[p] += r;
                    rem /= p;
                }
            if (rem > 1) prime_exp[rem] += r;
        }
        long long kernel = 1;
        for (const auto& [p, e] : prime_exp)
            if (((e % 2) + 2) % 2 == 1) kernel *= p;
        if ((weight2() / 2) % 2 != 0) kernel = -kernel;
        return kernel;
    }

    long long level_;
    std::map<long long, int> exps_;
};

inline EtaQuotient EtaQuotient::parse(std::string_view text, long long level) {
    std::map<long long, int> exps;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto comma = text.find(',', pos);
        std::string_view item =
            text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        auto colon = item.find(':');
        if (colon == std::string_view::npos || colon == 0 || colon + 1 == item.size())
            throw ParseError("bad eta-quotient item \"" + std::string(item) +
                             "\" (expected d:r_d)");
        long long d = 0;
        int r = 0;
        try {
            d = std::stoll(std::string(item.substr(0, colon)));
            r = std::stoi(std::string(item.substr(colon + 1)));
        } catch (const std::exception&) {
            throw ParseError("bad eta-quotient item \"" + std::string(item) + "\"");
        }
        if (d < 1 || level % d != 0)
            throw ParseError("eta index " + std::to_string(d) + " does not divide level " +
                             std::to_string(level));
        if (exps.count(d)) throw ParseError("duplicate eta index " + std::to_string(d));
        exps[d] = r;
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (exps.empty()) throw ParseError("empty eta-quotient spec");
    return EtaQuotient(level, std::move(exps));
}

inline std::string EtaQuotient::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, r] : exps_) {
        if (!first) os << ',';
        os << d << ':' << r;
        first = false;
    }
    return os.str();
}

}  // namespace qform
