#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qform/qseries.hpp"

using qform::QSeries;
using qform::Rational;

namespace {

QSeries p(std::vector<long long> coeffs) {
    std::vector<Rational> r(coeffs.begin(), coeffs.end());
    return QSeries::poly(std::move(r));
}

// random series with unit constant term, integer exponents, small coefficients
QSeries random_unit_series(std::mt19937& rng, int terms, long long order24) {
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::vector<Rational> c(static_cast<std::size_t>(terms));
    c[0] = Rational(1);
    for (int i = 1; i < terms; ++i) c[static_cast<std::size_t>(i)] = Rational(coeff(rng));
    return QSeries::poly(std::move(c)).truncated(order24);
}

QSeries random_series(std::mt19937& rng, int terms, long long order24) {
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    std::vector<Rational> c(static_cast<std::size_t>(terms));
    for (int i = 0; i < terms; ++i) c[static_cast<std::size_t>(i)] = Rational(coeff(rng), den(rng));
    return QSeries::poly(std::move(c)).truncated(order24);
}

}  // namespace

TEST_CASE("addition aligns offsets and cancels", "[qseries]") {
    CHECK((p({1, 1}) + p({1, -1})).coefficient(0) == Rational(2));
    CHECK((p({1, 1}) + p({1, -1})).coefficient(1) == Rational(0));

    QSeries s = p({3, 0, 5});
    QSeries sum = s + QSeries::zero();
    CHECK(sum.coefficient(0) == Rational(3));
    CHECK(sum.coefficient(2) == Rational(5));

    QSeries frac = QSeries::monomial(Rational(1), 1);  // q^{1/24}
    QSeries two = frac + frac;
    CHECK(two.coeff24(1) == Rational(2));
    CHECK(two.offset24() == 1);
}

TEST_CASE("multiplication is a truncated Cauchy product with adding offsets", "[qseries]") {
    QSeries prod = p({1, 1}) * p({1, -1});
    CHECK(prod.coefficient(0) == Rational(1));
    CHECK(prod.coefficient(1) == Rational(0));
    CHECK(prod.coefficient(2) == Rational(-1));

    QSeries sq = p({1, 2}) * p({1, 2});
    CHECK(sq.coefficient(0) == Rational(1));
    CHECK(sq.coefficient(1) == Rational(4));
    CHECK(sq.coefficient(2) == Rational(4));

    QSeries q = QSeries::monomial(Rational(1), 1) * QSeries::monomial(Rational(1), 23);
    CHECK(q.coeff24(24) == Rational(1));
    CHECK(q.offset24() == 24);
}

TEST_CASE("inverse produces the geometric series", "[qseries]") {
    QSeries inv = p({1, -1}).truncated(24 * 10).inverse();
    for (long long n = 0; n < 10; ++n) CHECK(inv.coefficient(n) == Rational(1));

    CHECK(QSeries::one().inverse().coefficient(0) == Rational(1));
    CHECK(QSeries::constant(Rational(2)).inverse().coefficient(0) == Rational(1, 2));
    CHECK_THROWS_AS(QSeries::zero(240).inverse(), qform::ZeroLeadingCoefficient);

    // exact non-monomial input falls back to the default truncation
    QSeries geo = p({1, -1}).inverse();
    CHECK(geo.order24() == QSeries::kDefaultOrder24);
}

TEST_CASE("pow: binary exponentiation, zero and negative exponents", "[qseries]") {
    QSeries sq = p({1, 1}).pow(2);
    CHECK(sq.coefficient(0) == Rational(1));
    CHECK(sq.coefficient(1) == Rational(2));
    CHECK(sq.coefficient(2) == Rational(1));

    CHECK(p({5, 3, 2}).pow(0).coefficient(0) == Rational(1));

    QSeries geo = p({1, -1}).truncated(24 * 8).pow(-1);
    for (long long n = 0; n < 8; ++n) CHECK(geo.coefficient(n) == Rational(1));
    CHECK_THROWS_AS(QSeries::zero(240).pow(-2), qform::ZeroLeadingCoefficient);
}

TEST_CASE("dilate scales exponents and truncation", "[qseries]") {
    QSeries d = p({1, 1}).dilate(2);
    CHECK(d.coefficient(0) == Rational(1));
    CHECK(d.coefficient(1) == Rational(0));
    CHECK(d.coefficient(2) == Rational(1));

    QSeries s = p({0, 1, 0, 1});  // q + q^3
    QSeries d4 = s.dilate(4);
    CHECK(d4.coefficient(4) == Rational(1));
    CHECK(d4.coefficient(12) == Rational(1));
    CHECK(d4.coefficient(8) == Rational(0));

    QSeries t = s.truncated(24 * 4);
    CHECK(t.dilate(1).order24() == t.order24());
    CHECK(t.dilate(3).order24() == 3 * t.order24());
    CHECK_THROWS_AS(s.dilate(0), std::invalid_argument);

    // dilate(a, s*t) == dilate(dilate(a, s), t)
    std::mt19937 rng(7);
    for (int i = 0; i < 20; ++i) {
        QSeries a = random_series(rng, 6, 24 * 12);
        CHECK(a.dilate(6).order24() == a.dilate(2).dilate(3).order24());
        CHECK(qform::series_agree(a.dilate(6), a.dilate(2).dilate(3), a.dilate(6).order24()));
    }
}

TEST_CASE("half_shift flips odd coefficients and is an involution", "[qseries]") {
    QSeries s = p({1, 1, 1});
    QSeries h = s.half_shift();
    CHECK(h.coefficient(0) == Rational(1));
    CHECK(h.coefficient(1) == Rational(-1));
    CHECK(h.coefficient(2) == Rational(1));

    QSeries even = p({1, 0, 1});
    CHECK(qform::series_agree(even.half_shift(), even, 24 * 3));

    CHECK_THROWS_AS(QSeries::monomial(Rational(1), 1).half_shift(), qform::NonIntegralSeries);

    std::mt19937 rng(11);
    for (int i = 0; i < 25; ++i) {
        QSeries a = random_series(rng, 8, 24 * 16);
        QSeries b = random_series(rng, 8, 24 * 16);
        CHECK(qform::series_agree(a.half_shift().half_shift(), a, a.order24()));
        // ring homomorphism on integral series
        QSeries lhs = (a * b).half_shift();
        QSeries rhs = a.half_shift() * b.half_shift();
        CHECK(qform::series_agree(lhs, rhs, std::min(lhs.order24(), rhs.order24())));
    }
}

TEST_CASE("coefficient access and truncation guard", "[qseries]") {
    QSeries s = p({1, 0, 3});
    CHECK(s.coefficient(2) == Rational(3));
    CHECK(s.coefficient(1) == Rational(0));
    CHECK(QSeries::monomial(Rational(1), 1).coefficient(0) == Rational(0));

    QSeries t = s.truncated(24 * 2);
    CHECK(t.coefficient(1) == Rational(0));
    CHECK_THROWS_AS(t.coefficient(2), qform::BeyondTruncation);
    CHECK_THROWS_AS(QSeries::zero(24).coefficient(5), qform::BeyondTruncation);
}

TEST_CASE("ring axioms on random series", "[qseries]") {
    std::mt19937 rng(42);
    for (int i = 0; i < 40; ++i) {
        QSeries a = random_series(rng, 7, 24 * 14);
        QSeries b = random_series(rng, 7, 24 * 14);
        QSeries c = random_series(rng, 7, 24 * 14);
        QSeries lhs = (a + b) * c;
        QSeries rhs = a * c + b * c;
        CHECK(qform::series_agree(lhs, rhs, std::min(lhs.order24(), rhs.order24())));
        QSeries ab = a * b;
        QSeries ba = b * a;
        CHECK(qform::series_agree(ab, ba, std::min(ab.order24(), ba.order24())));
    }
}

TEST_CASE("inverse is a two-sided inverse up to truncation", "[qseries]") {
    std::mt19937 rng(99);
    for (int i = 0; i < 100; ++i) {
        QSeries a = random_unit_series(rng, 7, 24 * 12);
        QSeries left = a.inverse() * a;
        QSeries right = a * a.inverse();
        CHECK(qform::series_agree(left, QSeries::one(), left.order24()));
        CHECK(qform::series_agree(right, QSeries::one(), right.order24()));
    }
}

TEST_CASE("truncation bookkeeping takes the minimum implied order", "[qseries]") {
    QSeries a = p({1, 1}).truncated(24 * 5);   // known below q^5
    QSeries b = p({1, 2}).truncated(24 * 9);   // known below q^9
    CHECK((a + b).order24() == 24 * 5);
    CHECK((a * b).order24() == 24 * 5);  // both offsets 0

    // offsets shift the product's valid range
    QSeries c = QSeries::monomial(Rational(1), 48, 24 * 7);  // q^2 + O(q^7)
    CHECK((a * c).order24() == 24 * 5 + 48);

    // exact inputs never tighten the other operand
    CHECK((a * QSeries::one()).order24() == 24 * 5);
    CHECK((a + QSeries::constant(Rational(3))).order24() == 24 * 5);

    // inverse: order24 - 2*offset24
    QSeries d = QSeries::from_coeffs(24, {Rational(1), Rational(0), Rational(0)}, 24 * 6);
    CHECK(d.inverse().order24() == 24 * 6 - 48);
    CHECK(d.inverse().offset24() == -24);
}

TEST_CASE("serialization pairs are ascending and sparse", "[qseries]") {
    QSeries s = QSeries::from_coeffs(-24, {Rational(1, 2), Rational(0), Rational(0), Rational(0),
                                           Rational(0), Rational(0), Rational(0), Rational(0),
                                           Rational(0), Rational(0), Rational(0), Rational(0),
                                           Rational(0), Rational(0), Rational(0), Rational(0),
                                           Rational(0), Rational(0), Rational(0), Rational(0),
                                           Rational(0), Rational(0), Rational(0), Rational(0),
                                           Rational(-3)},
                                     240);
    auto pairs = s.to_pairs();
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0].first == -24);
    CHECK(pairs[0].second == Rational(1, 2));
    CHECK(pairs[1].first == 0);
    CHECK(pairs[1].second == Rational(-3));
}
