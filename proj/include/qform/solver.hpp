#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qform/arith.hpp"
#include "qform/eisenstein.hpp"
#include "qform/errors.hpp"
#include "qform/qseries.hpp"
#include "qform/repcount.hpp"

namespace qform {

/// Number of correction terms ell_m for given k:
///   m = 2: (k-1)/2 odd k, (k-2)/2 even k;
///   m = 4: k-2 odd k (clamped to 0 at k = 1), k-1 even k;
///   m = 1: floor((k-1)/4).
inline int ell(int m, int k) {
    if (k < 1) throw std::invalid_argument("ell: k must be >= 1");
    switch (m) {
        case 2:
            return k % 2 == 1 ? (k - 1) / 2 : (k - 2) / 2;
        case 4:
            return k % 2 == 1 ? std::max(0, k - 2) : k - 1;
        case 1:
            return (k - 1) / 4;
        default:
            throw std::invalid_argument("ell: m must be 1, 2 or 4");
    }
}

struct EisTerm {
    Rational coeff;
    DivisorSumKind kind;
    long long scale = 1;  // the term reads coeff * sigma_kind(n / scale)
};

struct Correction {
    int j = 1;
    Rational c;
};

struct VerifyReport {
    bool ok = false;
    std::optional<long long> first_mismatch;  // integer exponent of first bad coefficient
    std::vector<Rational> c;                  // the solved correction coefficients
};

namespace detail {

struct SolveContext {
    QSeries gen;                       // (theta(tau) theta(m tau))^k
    QSeries f_series;                  // the Eisenstein combination F_{k,m}
    FCombination f_comb;
    QSeries x;                         // x_m, when ell > 0
    std::vector<QSeries> corrections;  // a_j = gen * x^j, j = 1..ell
    std::vector<Rational> c;
};

inline SolveContext build_solve_context(const FormSpec& spec, long long order) {
    int l = ell(spec.m, spec.k);
    if (order <= l + 10)
        throw std::invalid_argument("solve order " + std::to_string(order) +
                                    " leaves no residual slack (need > ell + 10 = " +
                                    std::to_string(l + 10) + ")");
    SolveContext ctx;
    ctx.gen = gen_series(spec, order);
    auto [fc, fs] = build_F(spec.m, spec.k, order);
    ctx.f_comb = std::move(fc);
    ctx.f_series = std::move(fs);
    if (l > 0) {
        ctx.x = x_series(spec.m, order);
        QSeries xp = QSeries::one();
        for (int j = 1; j <= l; ++j) {
            xp = xp * ctx.x;
            ctx.corrections.push_back((ctx.gen * xp).truncated(24 * order));
        }
        // the system is unit lower triangular: a_j = q^j + O(q^{j+1})
        for (int j = 1; j <= l; ++j) {
            const QSeries& a = ctx.corrections[static_cast<std::size_t>(j - 1)];
            if (a.leading_exponent24() != 24 * j || !a.leading_coefficient().is_one())
                throw std::logic_error("correction series a_" + std::to_string(j) +
                                       " is not q^j + O(q^{j+1})");
        }
    }
    QSeries diff = ctx.gen - ctx.f_series;
    for (int j = 1; j <= l; ++j) {
        Rational cj = diff.coefficient(j);
        for (int i = 1; i < j; ++i)
            cj -= ctx.c[static_cast<std::size_t>(i - 1)] *
                  ctx.corrections[static_cast<std::size_t>(i - 1)].coefficient(j);
        ctx.c.push_back(std::move(cj));
    }
    return ctx;
}

// First integer exponent where gen != F + gen * sum c_j x^j, both sides
// expanded independently below `order`.
inline std::optional<long long> identity_mismatch(const SolveContext& ctx,
                                                  const std::vector<Rational>& c,
                                                  long long order) {
    QSeries rhs = ctx.f_series;
    if (!c.empty()) {
        QSeries poly = QSeries::zero(ctx.x.order24());
        QSeries xp = QSeries::one();
        for (std::size_t j = 0; j < c.size(); ++j) {
            xp = xp * ctx.x;
            if (!c[j].is_zero()) poly = poly + c[j] * xp;
        }
        rhs = rhs + (ctx.gen * poly).truncated(24 * order);
    }
    auto bad = first_mismatch24(ctx.gen.truncated(24 * order), rhs.truncated(24 * order),
                                24 * order);
    if (!bad) return std::nullopt;
    return *bad / 24;
}

}  // namespace detail

/// Derive the unique rational correction coefficients c_{j,k,m}, j = 1..ell,
/// by unit-triangular elimination against gen - F, then verify that the
/// residual vanishes identically below `order`. A nonzero residual means the
/// requested combination cannot close and raises ResidualNonzero.
inline std::vector<Rational> solve_c(const FormSpec& spec, long long order) {
    detail::SolveContext ctx = detail::build_solve_context(spec, order);
    if (auto bad = detail::identity_mismatch(ctx, ctx.c, order))
        throw ResidualNonzero("identity residual for k=" + std::to_string(spec.k) +
                              ", m=" + std::to_string(spec.m) + " is nonzero at n = " +
                              std::to_string(*bad));
    return ctx.c;
}

/// Expand both sides of the identity
///   (theta(tau) theta(m tau))^k = F_{k,m} + (theta theta_m)^k sum c_j x_m^j
/// independently and compare every coefficient below `order`. Failures are
/// reported, not thrown.
inline VerifyReport verify_identity(const FormSpec& spec, long long order) {
    detail::SolveContext ctx = detail::build_solve_context(spec, order);
    VerifyReport rep;
    rep.c = ctx.c;
    rep.first_mismatch = detail::identity_mismatch(ctx, ctx.c, order);
    rep.ok = !rep.first_mismatch.has_value();
    return rep;
}

/// Same comparison with caller-supplied coefficients (uniqueness probing).
inline VerifyReport verify_with_coefficients(const FormSpec& spec, std::vector<Rational> c,
                                             long long order) {
    detail::SolveContext ctx = detail::build_solve_context(spec, order);
    if (c.size() != ctx.c.size())
        throw std::invalid_argument("verify_with_coefficients: expected " +
                                    std::to_string(ctx.c.size()) + " coefficients");
    VerifyReport rep;
    rep.c = std::move(c);
    rep.first_mismatch = detail::identity_mismatch(ctx, rep.c, order);
    rep.ok = !rep.first_mismatch.has_value();
    return rep;
}

/// The closed-form answer: divisor-sum terms with explicit rational
/// coefficients plus the solved corrections. Evaluating at n = 0 gives 1.
struct RepFormula {
    int k = 1;
    int m = 1;
    int ell = 0;
    std::vector<EisTerm> eisenstein_terms;
    std::vector<Correction> corrections;  // exactly ell entries, zeros retained

    /// Evaluate at n; correction values a_{j,k,m}(n) come from the provider.
    template <typename Provider>
    Int evaluate(long long n, Provider&& correction_value) const {
        if (n < 0) throw std::invalid_argument("RepFormula::evaluate: n must be >= 0");
        Rational total(n == 0 ? 1 : 0);
        for (const auto& term : eisenstein_terms)
            total += term.coeff * Rational(divisor_sum(term.kind, Rational(n, term.scale)));
        for (const auto& corr : corrections)
            if (!corr.c.is_zero()) total += corr.c * correction_value(corr.j);
        if (!total.is_integer())
            throw NonIntegerResult("formula value at n = " + std::to_string(n) +
                                   " is not an integer: " + total.str());
        return total.numerator();
    }

    /// Evaluate at n, expanding the correction series on demand.
    Int evaluate(long long n) const {
        FormSpec spec(k, m);
        long long order = std::max<long long>(n + 1, 2);
        return evaluate(n, [&](int j) {
            return correction_series(j, spec, order).coefficient(n);
        });
    }

    std::string text() const;
    nlohmann::ordered_json json() const;
    static RepFormula from_json(const nlohmann::ordered_json& j);
};

/// Assemble the RepFormula for a spec: Eisenstein terms with the -2k/B
/// prefactors folded into explicit rational coefficients, plus solved
/// corrections. Weight-0 twisted sums are canonicalized to sigma^inf (the two
/// variants coincide there) and like terms are merged.
inline RepFormula emit_formula(const FormSpec& spec, long long order) {
    detail::SolveContext ctx = detail::build_solve_context(spec, order);
    if (auto bad = detail::identity_mismatch(ctx, ctx.c, order))
        throw ResidualNonzero("identity residual for k=" + std::to_string(spec.k) +
                              ", m=" + std::to_string(spec.m) + " is nonzero at n = " +
                              std::to_string(*bad));
    RepFormula out;
    out.k = spec.k;
    out.m = spec.m;
    out.ell = ell(spec.m, spec.k);

    for (const auto& [coeff, es] : ctx.f_comb.terms) {
        if (coeff.is_zero()) continue;
        Rational b = es.family == EisFamily::level_one ? bernoulli(es.weight)
                                                       : gen_bernoulli(es.weight, *es.character);
        Rational scaled = ctx.f_comb.normalization * coeff * (Rational(-2 * es.weight) / b);
        DivisorSumKind kind =
            es.family == EisFamily::level_one
                ? DivisorSumKind::plain(es.weight - 1)
                : (es.family == EisFamily::twisted_inf
                       ? DivisorSumKind::twisted_inf(es.weight - 1, *es.character)
                       : DivisorSumKind::twisted_0(es.weight - 1, *es.character));
        if (kind.variant == DivisorSumKind::Variant::twisted_0 && kind.weight == 0)
            kind.variant = DivisorSumKind::Variant::twisted_inf;

        auto same = [&](const EisTerm& t) {
            if (t.kind.variant != kind.variant || t.kind.weight != kind.weight ||
                t.scale != es.dilation)
                return false;
            if (t.kind.character.has_value() != kind.character.has_value()) return false;
            return !t.kind.character || *t.kind.character == *kind.character;
        };
        bool merged = false;
        for (auto& t : out.eisenstein_terms)
            if (same(t)) {
                t.coeff += scaled;
                merged = true;
                break;
            }
        if (!merged) out.eisenstein_terms.push_back({scaled, kind, es.dilation});
    }
    std::erase_if(out.eisenstein_terms, [](const EisTerm& t) { return t.coeff.is_zero(); });

    for (std::size_t j = 0; j < ctx.c.size(); ++j)
        out.corrections.push_back({static_cast<int>(j + 1), ctx.c[j]});
    return out;
}

/// Evaluate an emitted formula at n with correction values supplied by the
/// caller (typically rows of repcount::correction_series).
template <typename Provider>
Int evaluate_formula(const RepFormula& f, long long n, Provider&& correction_value) {
    return f.evaluate(n, std::forward<Provider>(correction_value));
}

inline Int evaluate_formula(const RepFormula& f, long long n) { return f.evaluate(n); }

// ---- rendering ------------------------------------------------------------

inline std::string RepFormula::text() const {
    auto term_name = [](const DivisorSumKind& kind) {
        std::string base;
        switch (kind.variant) {
            case DivisorSumKind::Variant::plain:
                base = "sigma_" + std::to_string(kind.weight);
                break;
            case DivisorSumKind::Variant::twisted_inf:
                base = "sigma_inf_" + std::to_string(kind.weight);
                break;
            case DivisorSumKind::Variant::twisted_0:
                base = "sigma_0_" + std::to_string(kind.weight);
                break;
        }
        if (kind.character)
            base += "[chi=" + std::to_string(kind.character->discriminant()) + "]";
        return base;
    };
    std::string out;
    auto append = [&out](const Rational& coeff, const std::string& body) {
        Rational mag = coeff.sign() < 0 ? -coeff : coeff;
        if (out.empty())
            out += (coeff.sign() < 0 ? "-" : "") + mag.str() + "*" + body;
        else
            out += (coeff.sign() < 0 ? " - " : " + ") + mag.str() + "*" + body;
    };
    for (const auto& term : eisenstein_terms) {
        std::string arg = term.scale == 1 ? "(n)" : "(n/" + std::to_string(term.scale) + ")";
        append(term.coeff, term_name(term.kind) + arg);
    }
    for (const auto& corr : corrections)
        if (!corr.c.is_zero()) append(corr.c, "a(" + std::to_string(corr.j) + ")");
    return out;
}

inline nlohmann::ordered_json RepFormula::json() const {
    nlohmann::ordered_json j;
    j["k"] = k;
    j["m"] = m;
    j["ell"] = ell;
    j["eisenstein_terms"] = nlohmann::ordered_json::array();
    for (const auto& term : eisenstein_terms) {
        nlohmann::ordered_json t;
        t["coeff"] = term.coeff.str();
        switch (term.kind.variant) {
            case DivisorSumKind::Variant::plain:
                t["kind"] = "sigma";
                break;
            case DivisorSumKind::Variant::twisted_inf:
                t["kind"] = "sigma_inf";
                break;
            case DivisorSumKind::Variant::twisted_0:
                t["kind"] = "sigma_0";
                break;
        }
        t["weight"] = term.kind.weight;
        if (term.kind.character)
            t["character"] = term.kind.character->discriminant();
        else
            t["character"] = nullptr;
        t["scale"] = term.scale;
        j["eisenstein_terms"].push_back(std::move(t));
    }
    j["corrections"] = nlohmann::ordered_json::array();
    for (const auto& corr : corrections) {
        nlohmann::ordered_json t;
        t["j"] = corr.j;
        t["c"] = corr.c.str();
        j["corrections"].push_back(std::move(t));
    }
    return j;
}

inline RepFormula RepFormula::from_json(const nlohmann::ordered_json& j) {
    RepFormula f;
    f.k = j.at("k").get<int>();
    f.m = j.at("m").get<int>();
    f.ell = j.at("ell").get<int>();
    for (const auto& t : j.at("eisenstein_terms")) {
        EisTerm term;
        term.coeff = Rational::parse(t.at("coeff").get<std::string>());
        std::string kind = t.at("kind").get<std::string>();
        int weight = t.at("weight").get<int>();
        if (kind == "sigma") {
            term.kind = DivisorSumKind::plain(weight);
        } else {
            if (t.at("character").is_null())
                throw ParseError("twisted divisor sum without character");
            CharacterId chi = CharacterId::from_discriminant(t.at("character").get<int>());
            term.kind = kind == "sigma_inf" ? DivisorSumKind::twisted_inf(weight, chi)
                                            : DivisorSumKind::twisted_0(weight, chi);
            if (kind != "sigma_inf" && kind != "sigma_0")
                throw ParseError("unknown divisor-sum kind \"" + kind + "\"");
        }
        term.scale = t.at("scale").get<long long>();
        f.eisenstein_terms.push_back(std::move(term));
    }
    for (const auto& t : j.at("corrections"))
        f.corrections.push_back(
            {t.at("j").get<int>(), Rational::parse(t.at("c").get<std::string>())});
    return f;
}

}  // namespace qform
