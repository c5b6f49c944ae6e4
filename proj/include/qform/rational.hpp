#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "qform/errors.hpp"

namespace qform {

using Int = boost::multiprecision::cpp_int;

/// Exact rational number over arbitrary-precision integers.
///
/// Invariants: always fully reduced (gcd(|num|, den) = 1), denominator > 0,
/// zero stored as 0/1. Renders as "p/q", or "p" alone when q = 1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int v) : num_(v), den_(1) {}            // NOLINT: implicit by design
    Rational(long long v) : num_(v), den_(1) {}      // NOLINT
    Rational(Int v) : num_(std::move(v)), den_(1) {} // NOLINT
    Rational(Int num, Int den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
    Rational(long long num, long long den) : num_(num), den_(den) { normalize(); }

    static Rational parse(std::string_view text);

    const Int& numerator() const { return num_; }
    const Int& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == 1; }
    bool is_one() const { return den_ == 1 && num_ == 1; }
    int sign() const { return num_.sign(); }

    /// Numerator as Int; throws NonIntegerResult unless denominator is 1.
    const Int& to_int() const {
        if (den_ != 1) throw NonIntegerResult("not an integer: " + str());
        return num_;
    }

    std::string str() const {
        if (den_ == 1) return num_.str();
        return num_.str() + "/" + den_.str();
    }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    Rational& operator+=(const Rational& o) {
        if (den_ == 1 && o.den_ == 1) {
            num_ += o.num_;
            return *this;
        }
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        reduce();
        return *this;
    }

    Rational& operator-=(const Rational& o) {
        if (den_ == 1 && o.den_ == 1) {
            num_ -= o.num_;
            return *this;
        }
        num_ = num_ * o.den_ - o.num_ * den_;
        den_ *= o.den_;
        reduce();
        return *this;
    }

    Rational& operator*=(const Rational& o) {
        if (den_ == 1 && o.den_ == 1) {
            num_ *= o.num_;
            return *this;
        }
        // cross-reduce before multiplying; result is then already canonical
        Int g1 = boost::multiprecision::gcd(num_, o.den_);
        Int g2 = boost::multiprecision::gcd(o.num_, den_);
        num_ = (num_ / g1) * (o.num_ / g2);
        den_ = (den_ / g2) * (o.den_ / g1);
        return *this;
    }

    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        Rational inv;
        if (o.num_.sign() < 0) {
            inv.num_ = -o.den_;
            inv.den_ = -o.num_;
        } else {
            inv.num_ = o.den_;
            inv.den_ = o.num_;
        }
        return *this *= inv;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void normalize() {
        if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        reduce();
    }

    void reduce() {
        if (num_.is_zero()) {
            den_ = 1;
            return;
        }
        if (den_ == 1) return;
        Int g = boost::multiprecision::gcd(num_, den_);
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    Int num_;
    Int den_;  // > 0
};

inline Rational Rational::parse(std::string_view text) {
    if (text.empty()) throw ParseError("empty rational");
    auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) return Rational(Int(std::string(text)));
        Int num{std::string(text.substr(0, slash))};
        Int den{std::string(text.substr(slash + 1))};
        if (den.is_zero()) throw ParseError("zero denominator in rational: " + std::string(text));
        return Rational(std::move(num), std::move(den));
    } catch (const std::runtime_error& e) {
        throw ParseError("bad rational \"" + std::string(text) + "\": " + e.what());
    }
}

/// Exact integer power with negative exponents allowed (base must be nonzero).
inline Rational rational_pow(const Rational& base, long long e) {
    if (e == 0) return Rational(1);
    if (e < 0) return Rational(1) / rational_pow(base, -e);
    Rational acc(1), b = base;
    for (long long n = e; n > 0; n >>= 1) {
        if (n & 1) acc *= b;
        if (n > 1) b *= b;
    }
    return acc;
}

inline Int int_pow(Int base, unsigned long long e) {
    Int acc(1);
    for (; e > 0; e >>= 1) {
        if (e & 1) acc *= base;
        if (e > 1) base *= base;
    }
    return acc;
}

}  // namespace qform
