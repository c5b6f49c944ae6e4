#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qform/arith.hpp"
#include "qform/errors.hpp"
#include "qform/qseries.hpp"

namespace qform {

enum class EisFamily { level_one, twisted_inf, twisted_0 };

/// One Eisenstein series E_k(t tau), E^inf_{k,chi}(t tau) or E^0_{k,chi}(t tau).
///
/// Twisted families need an odd weight and one of the two supported odd
/// characters; the level-one family needs an even weight >= 2. E_2 is allowed
/// even though it is only quasi-modular: this module's contract is the
/// q-expansion, and the combinations built from E_2 below are modular.
struct EisensteinSpec {
    EisFamily family = EisFamily::level_one;
    int weight = 2;
    std::optional<CharacterId> character;
    long long dilation = 1;

    static EisensteinSpec level_one(int k, long long t = 1) {
        return {EisFamily::level_one, k, std::nullopt, t};
    }
    static EisensteinSpec twisted_inf(int k, CharacterId chi, long long t = 1) {
        return {EisFamily::twisted_inf, k, chi, t};
    }
    static EisensteinSpec twisted_0(int k, CharacterId chi, long long t = 1) {
        return {EisFamily::twisted_0, k, chi, t};
    }

    void validate() const {
        if (dilation < 1) throw std::invalid_argument("EisensteinSpec: dilation must be >= 1");
        if (family == EisFamily::level_one) {
            if (character) throw std::invalid_argument("EisensteinSpec: level-one takes no character");
            if (weight % 2 != 0)
                throw ParityMismatch("E_k needs even weight, got k = " + std::to_string(weight));
            if (weight < 2)
                throw WeightTooSmall("E_k needs weight >= 2, got k = " + std::to_string(weight));
        } else {
            if (!character)
                throw std::invalid_argument("EisensteinSpec: twisted family needs a character");
            if (weight < 1 || weight % 2 != 1)
                throw ParityMismatch("twisted Eisenstein series need odd weight >= 1, got k = " +
                                     std::to_string(weight));
        }
    }
};

/// q-expansion of the specified Eisenstein series, exact below `order`:
///   E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n,
///   E^inf_{k,chi} = 1 - (2k/B_{k,f}) sum sigma^inf_{k-1,chi}(n) q^n,
///   E^0_{k,chi} = delta_{k,1} - (2k/B_{k,f}) sum sigma^0_{k-1,chi}(n) q^n,
/// each with q -> q^t for the requested dilation t.
inline QSeries eisenstein_series(const EisensteinSpec& spec, long long order) {
    spec.validate();
    if (order < 1) throw std::invalid_argument("eisenstein_series: order must be >= 1");
    long long base_order = order / spec.dilation + 2;

    Rational b = spec.family == EisFamily::level_one ? bernoulli(spec.weight)
                                                     : gen_bernoulli(spec.weight, *spec.character);
    Rational factor = Rational(-2 * spec.weight) / b;
    DivisorSumKind kind =
        spec.family == EisFamily::level_one
            ? DivisorSumKind::plain(spec.weight - 1)
            : (spec.family == EisFamily::twisted_inf
                   ? DivisorSumKind::twisted_inf(spec.weight - 1, *spec.character)
                   : DivisorSumKind::twisted_0(spec.weight - 1, *spec.character));

    std::vector<Rational> coeffs(static_cast<std::size_t>(24 * (base_order - 1) + 1));
    bool constant_one = spec.family != EisFamily::twisted_0 || spec.weight == 1;
    if (constant_one) coeffs[0] = Rational(1);
    for (long long n = 1; n < base_order; ++n)
        coeffs[static_cast<std::size_t>(24 * n)] = factor * Rational(divisor_sum(kind, Rational(n)));
    QSeries base = QSeries::from_coeffs(0, std::move(coeffs), 24 * base_order);
    return base.dilate(spec.dilation).truncated(24 * order);
}

/// The combination F_{k,m}: a rational-normalized linear combination of
/// Eisenstein series whose q-expansion has constant term exactly 1. It
/// expands to the full divisor-sum part of the representation formula for
/// x_1^2+...+x_k^2 + m(x_{k+1}^2+...+x_{2k}^2).
struct FCombination {
    int m = 1;
    int k = 1;
    std::vector<std::pair<Rational, EisensteinSpec>> terms;
    Rational normalization{1};

    QSeries expand(long long order) const {
        QSeries total = QSeries::zero(24 * order);
        for (const auto& [coeff, spec] : terms) {
            if (coeff.is_zero()) continue;
            total = total + coeff * eisenstein_series(spec, order);
        }
        return normalization * total;
    }
};

/// Build F_{k,m} and its expansion. Aborts with ConstantTermNotOne if the
/// assembled combination does not start with 1 (which would poison the
/// correction solve downstream).
inline std::pair<FCombination, QSeries> build_F(int m, int k, long long order) {
    if (k < 1) throw std::invalid_argument("build_F: k must be >= 1");
    if (m != 1 && m != 2 && m != 4) throw std::invalid_argument("build_F: m must be 1, 2 or 4");
    FCombination f;
    f.m = m;
    f.k = k;
    const CharacterId chi4 = CharacterId::chi_minus4();
    const CharacterId chi2 = CharacterId::chi_minus2();
    const Rational two_k = rational_pow(Rational(2), k);

    if (m == 2) {
        if (k % 2 == 1) {
            f.terms.emplace_back(Rational(1), EisensteinSpec::twisted_inf(k, chi2));
            f.terms.emplace_back(rational_pow(Rational(-8), (k - 1) / 2),
                                 EisensteinSpec::twisted_0(k, chi2));
            f.normalization = Rational(1, k == 1 ? 2 : 1);
        } else {
            Rational sign((k / 2) % 2 == 0 ? 1 : -1);
            Rational half_pow = rational_pow(Rational(2), k / 2);
            f.terms.emplace_back(sign, EisensteinSpec::level_one(k, 1));
            f.terms.emplace_back(-sign, EisensteinSpec::level_one(k, 2));
            f.terms.emplace_back(-half_pow, EisensteinSpec::level_one(k, 4));
            f.terms.emplace_back(rational_pow(Rational(8), k / 2), EisensteinSpec::level_one(k, 8));
            f.normalization = Rational(1) / (half_pow * (two_k - 1));
        }
    } else if (m == 4) {
        if (k == 1) {
            f.terms.emplace_back(Rational(1), EisensteinSpec::twisted_inf(1, chi4, 1));
            f.terms.emplace_back(Rational(-1), EisensteinSpec::twisted_inf(1, chi4, 2));
            f.terms.emplace_back(Rational(2), EisensteinSpec::twisted_inf(1, chi4, 4));
            f.normalization = Rational(1, 2);
        } else if (k % 2 == 1) {
            Rational sign(((k + 1) / 2) % 2 == 0 ? 1 : -1);
            f.terms.emplace_back(sign, EisensteinSpec::twisted_inf(k, chi4, 1));
            f.terms.emplace_back(-sign, EisensteinSpec::twisted_inf(k, chi4, 2));
            f.terms.emplace_back(Rational(2), EisensteinSpec::twisted_inf(k, chi4, 4));
            f.terms.emplace_back(-sign, EisensteinSpec::twisted_0(k, chi4, 1));
            f.terms.emplace_back(rational_pow(Rational(2), k - 1),
                                 EisensteinSpec::twisted_0(k, chi4, 2));
            f.terms.emplace_back(-rational_pow(Rational(2), 2 * k - 1),
                                 EisensteinSpec::twisted_0(k, chi4, 4));
            f.normalization = Rational(1, 2);
        } else {
            Rational sign((k / 2) % 2 == 0 ? 1 : -1);
            f.terms.emplace_back(sign, EisensteinSpec::level_one(k, 1));
            f.terms.emplace_back(-sign, EisensteinSpec::level_one(k, 2));
            f.terms.emplace_back(-two_k, EisensteinSpec::level_one(k, 8));
            f.terms.emplace_back(two_k * two_k, EisensteinSpec::level_one(k, 16));
            f.normalization = Rational(1) / (two_k * (two_k - 1));
        }
    } else {  // m == 1
        if (k % 2 == 1) {
            Rational sign(((k - 1) / 2) % 2 == 0 ? 1 : -1);
            f.terms.emplace_back(Rational(1), EisensteinSpec::twisted_inf(k, chi4, 1));
            // E^0 enters undilated: a q -> q^4 dilation here would contradict
            // the classical 2- and 6-square formulas, which pin this combination
            f.terms.emplace_back(sign * rational_pow(Rational(2), k - 1),
                                 EisensteinSpec::twisted_0(k, chi4, 1));
            f.normalization = Rational(1, k == 1 ? 2 : 1);
        } else {
            Rational sign((k / 2) % 2 == 0 ? 1 : -1);
            f.terms.emplace_back(sign, EisensteinSpec::level_one(k, 1));
            f.terms.emplace_back(-(Rational(1) + sign), EisensteinSpec::level_one(k, 2));
            f.terms.emplace_back(two_k, EisensteinSpec::level_one(k, 4));
            f.normalization = Rational(1) / (two_k - 1);
        }
    }

    QSeries expansion = f.expand(order);
    if (expansion.coefficient(0) != Rational(1))
        throw ConstantTermNotOne("F_{" + std::to_string(k) + "," + std::to_string(m) +
                                 "} has constant term " + expansion.coefficient(0).str());
    return {std::move(f), std::move(expansion)};
}

/// Check the tau -> tau + 1/2 transformation law for one Eisenstein family as
/// an exact q -> -q series identity:
///   E_k(tau+1/2)        = -E_k(tau) + (2^k+2) E_k(2 tau) - 2^k E_k(4 tau)
///   E^inf_{k}(tau+1/2)  = -E^inf_{k}(tau) + 2 E^inf_{k}(2 tau)
///   E^0_{k}(tau+1/2)    = -E^0_{k}(tau) + 2^k E^0_{k}(2 tau)
/// Both sides are built independently from divisor sums and compared
/// coefficient by coefficient below `order`.
inline bool check_half_period(const EisensteinSpec& spec, long long order) {
    if (order < 8) throw std::invalid_argument("check_half_period: order must be >= 8");
    EisensteinSpec base = spec;
    base.dilation = 1;
    QSeries series = eisenstein_series(base, order);
    QSeries lhs = series.half_shift();
    Rational two_k = rational_pow(Rational(2), spec.weight);
    QSeries rhs;
    switch (spec.family) {
        case EisFamily::level_one:
            rhs = -series + (two_k + Rational(2)) * series.dilate(2) - two_k * series.dilate(4);
            break;
        case EisFamily::twisted_inf:
            rhs = -series + Rational(2) * series.dilate(2);
            break;
        case EisFamily::twisted_0:
            rhs = -series + two_k * series.dilate(2);
            break;
    }
    return series_agree(lhs, rhs.truncated(24 * order), 24 * order);
}

}  // namespace qform
