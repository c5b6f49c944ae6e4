#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <utility>

#include "qform/errors.hpp"
#include "qform/qseries.hpp"
#include "qform/rational.hpp"

namespace qform {

/// Kronecker symbol (a/n), defined for all integers n.
inline int kronecker(long long a, long long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;  // (a/-1) = sign(a)
    }
    while (n % 2 == 0) {
        if (a % 2 == 0) return 0;
        n /= 2;
        long long r = ((a % 8) + 8) % 8;  // (a/2) = (-1)^((a^2-1)/8)
        if (r == 3 || r == 5) result = -result;
    }
    if (n == 1) return result;
    a = ((a % n) + n) % n;  // Jacobi symbol depends only on a mod n for odd n
    // Jacobi symbol (a/n), n odd positive, 0 <= a < n
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long long r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

/// One of the two Kronecker characters the formulas use: (-4/.) of modulus 4
/// or (-2/.) of modulus 8. Both are odd (chi(-1) = -1).
class CharacterId {
public:
    static CharacterId chi_minus4() { return CharacterId(-4, 4); }
    static CharacterId chi_minus2() { return CharacterId(-2, 8); }

    static CharacterId from_discriminant(int d) {
        if (d == -4) return chi_minus4();
        if (d == -2) return chi_minus2();
        throw UnsupportedCharacter("unsupported character discriminant " + std::to_string(d) +
                                   " (supported: -2, -4)");
    }

    int discriminant() const { return discriminant_; }
    int modulus() const { return modulus_; }

    int operator()(long long n) const { return kronecker(discriminant_, n); }

    friend bool operator==(const CharacterId& a, const CharacterId& b) {
        return a.discriminant_ == b.discriminant_;
    }

private:
    CharacterId(int d, int f) : discriminant_(d), modulus_(f) {}
    int discriminant_;
    int modulus_;
};

/// Which divisor sum: sigma_w(n), sigma^inf_{w,chi}(n) = sum chi(d) d^w, or
/// sigma^0_{w,chi}(n) = sum chi(n/d) d^w.
struct DivisorSumKind {
    enum class Variant { plain, twisted_inf, twisted_0 };

    Variant variant = Variant::plain;
    int weight = 0;
    std::optional<CharacterId> character;  // present iff twisted

    static DivisorSumKind plain(int weight) { return {Variant::plain, weight, std::nullopt}; }
    static DivisorSumKind twisted_inf(int weight, CharacterId chi) {
        return {Variant::twisted_inf, weight, chi};
    }
    static DivisorSumKind twisted_0(int weight, CharacterId chi) {
        return {Variant::twisted_0, weight, chi};
    }
};

/// Divisor sum over a rational argument, with the convention that the value
/// is 0 whenever the argument is not a positive integer (this is what a term
/// like sigma(n/8) evaluates to when 8 does not divide n).
inline Int divisor_sum(const DivisorSumKind& kind, const Rational& n) {
    if (!n.is_integer() || n.sign() <= 0) return Int(0);
    long long N = n.numerator().convert_to<long long>();
    Int total(0);
    auto add_divisor = [&](long long d) {
        Int pw = int_pow(Int(d), static_cast<unsigned long long>(kind.weight));
        switch (kind.variant) {
            case DivisorSumKind::Variant::plain:
                total += pw;
                break;
            case DivisorSumKind::Variant::twisted_inf:
                total += (*kind.character)(d)*pw;
                break;
            case DivisorSumKind::Variant::twisted_0:
                total += (*kind.character)(N / d) * pw;
                break;
        }
    };
    for (long long d = 1; d * d <= N; ++d) {
        if (N % d != 0) continue;
        add_divisor(d);
        if (d != N / d) add_divisor(N / d);
    }
    return total;
}

namespace detail {

inline Int factorial(int n) {
    Int f(1);
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace detail

/// Ordinary Bernoulli number B_k, extracted from t/(e^t - 1) by exact series
/// division (so B_1 = -1/2, B_2 = 1/6, B_4 = -1/30).
inline Rational bernoulli(int k) {
    if (k < 0) throw std::invalid_argument("bernoulli: negative index");
    long long ord = 24LL * (k + 1);
    std::vector<Rational> den(static_cast<std::size_t>(k) + 1);
    for (int n = 0; n <= k; ++n) den[static_cast<std::size_t>(n)] = Rational(Int(1), detail::factorial(n + 1));
    QSeries egf = QSeries::poly(std::move(den)).truncated(ord).inverse();
    return egf.coefficient(k) * Rational(detail::factorial(k));
}

/// Generalized Bernoulli number B_{k,f} for chi of modulus f, extracted from
/// the generating function t/(e^{ft} - 1) * sum_{j=1}^{f} chi(j) e^{jt}.
inline Rational gen_bernoulli(int k, const CharacterId& chi) {
    if (k < 0) throw std::invalid_argument("gen_bernoulli: negative index");
    int f = chi.modulus();
    long long ord = 24LL * (k + 1);
    std::vector<Rational> num(static_cast<std::size_t>(k) + 1);
    std::vector<Rational> den(static_cast<std::size_t>(k) + 1);
    for (int n = 0; n <= k; ++n) {
        Rational& cn = num[static_cast<std::size_t>(n)];
        for (int j = 1; j <= f; ++j) {
            int c = chi(j);
            if (c != 0) cn += Rational(c * int_pow(Int(j), static_cast<unsigned long long>(n)), detail::factorial(n));
        }
        den[static_cast<std::size_t>(n)] =
            Rational(int_pow(Int(f), static_cast<unsigned long long>(n) + 1), detail::factorial(n + 1));
    }
    QSeries series = QSeries::poly(std::move(num)).truncated(ord) *
                     QSeries::poly(std::move(den)).truncated(ord).inverse();
    return series.coefficient(k) * Rational(detail::factorial(k));
}

}  // namespace qform
