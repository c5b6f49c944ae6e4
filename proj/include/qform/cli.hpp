#pragma once

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qform/qform.hpp"

namespace qform::cli {

// exit codes: 0 success, 1 verification failure, 2 usage/input error,
// 3 modularity-conditions failure (eta order withheld)
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitConditions = 3;

inline constexpr long long kDefaultOrder = 300;

namespace detail {

inline long long default_order(std::string& env_error) {
    const char* env = std::getenv("QFORM_ORDER");
    if (env == nullptr || *env == '\0') return kDefaultOrder;
    std::string text(env);
    try {
        std::size_t used = 0;
        long long v = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        env_error = "QFORM_ORDER=\"" + text + "\" is not an integer";
        return kDefaultOrder;
    }
}

inline void require_order(long long order) {
    if (order < 8)
        throw std::invalid_argument("truncation order must be >= 8 (got " +
                                    std::to_string(order) + ")");
}

// "3" or "1..8"
inline std::pair<int, int> parse_k_range(const std::string& text) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            int k = std::stoi(text);
            return {k, k};
        }
        int lo = std::stoi(text.substr(0, dots));
        int hi = std::stoi(text.substr(dots + 2));
        if (lo < 1 || hi < lo) throw std::invalid_argument(text);
        return {lo, hi};
    } catch (const std::exception&) {
        throw ParseError("bad k range \"" + text + "\" (expected K or LO..HI)");
    }
}

inline std::vector<int> parse_m_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ParseError("bad m list \"" + text + "\"");
        }
    }
    if (out.empty()) throw ParseError("empty m list");
    return out;
}

inline std::string coeff_list(const std::vector<Rational>& c) {
    std::string out = "[";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i > 0) out += ", ";
        out += c[i].str();
    }
    return out + "]";
}

inline void print_series(const QSeries& s, const std::string& format, std::ostream& out) {
    if (format == "json") {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& [e24, coeff] : s.to_pairs())
            j.push_back(nlohmann::ordered_json::array({e24, coeff.str()}));
        out << j.dump() << "\n";
        return;
    }
    for (const auto& [e24, coeff] : s.to_pairs()) out << e24 << " " << coeff.str() << "\n";
}

}  // namespace detail

/// Full CLI surface; returns the process exit code. All output is written to
/// the supplied streams so the commands are testable in-process.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    std::string env_error;
    const long long env_order = detail::default_order(env_error);

    CLI::App app{"exact Ramanujan-Mordell-type formulas for x_1^2+...+x_k^2 + "
                 "m(x_{k+1}^2+...+x_{2k}^2), m in {1, 2, 4}",
                 "qform"};
    app.require_subcommand(1);

    // formula
    auto* formula = app.add_subcommand("formula", "derive and print the closed-form formula");
    int f_k = 1, f_m = 1;
    long long f_order = env_order;
    std::string f_format = "text";
    formula->add_option("-k,--k", f_k, "number of unit squares (= number of m-squares)")
        ->required();
    formula->add_option("-m,--m", f_m, "coefficient m of the second block")->required();
    formula->add_option("--order", f_order, "truncation order for the solve");
    formula->add_option("--format", f_format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    // count
    auto* count = app.add_subcommand("count", "representation number r(1^k m^k; n)");
    int c_k = 1, c_m = 1;
    long long c_n = 0, c_order = env_order;
    std::string c_method = "formula";
    bool c_check_all = false;
    count->add_option("-k,--k", c_k, "number of unit squares")->required();
    count->add_option("-m,--m", c_m, "coefficient m")->required();
    count->add_option("-n,--n", c_n, "target integer")->required();
    count->add_option("--method", c_method, "computation path")
        ->check(CLI::IsMember({"formula", "series", "enumerate"}));
    count->add_flag("--check-all", c_check_all, "run all three methods and compare");
    count->add_option("--order", c_order, "truncation order for the formula solve");

    // verify
    auto* verify = app.add_subcommand("verify", "verify the identities at truncation order");
    std::string v_k = "1..8", v_m = "1,2,4";
    long long v_order = env_order;
    verify->add_option("-k,--k", v_k, "k or range LO..HI");
    verify->add_option("-m,--m", v_m, "comma-separated m values");
    verify->add_option("--order", v_order, "truncation order");

    // eta
    auto* eta = app.add_subcommand("eta", "eta-quotient modularity conditions and cusp order");
    std::string e_spec, e_cusp;
    long long e_level = 0;
    eta->add_option("--spec", e_spec, "quotient as d:r_d pairs, e.g. 1:-2,2:3,4:3,8:-2")
        ->required();
    eta->add_option("--level", e_level, "level N")->required();
    eta->add_option("--cusp", e_cusp, "cusp a/c")->required();

    // bernoulli
    auto* bern = app.add_subcommand("bernoulli", "ordinary or generalized Bernoulli number");
    int b_k = 0;
    int b_char = 0;
    bool b_has_char = false;
    bern->add_option("-k,--k", b_k, "index")->required();
    bern->add_option("--character", b_char, "character discriminant (-2 or -4)");

    // series
    auto* series = app.add_subcommand("series", "print a q-expansion as (24*exponent, coeff) pairs");
    std::string s_kind = "theta", s_spec, s_format = "text";
    int s_k = 1, s_m = 2, s_j = 1;
    long long s_level = 0, s_order = env_order;
    series->add_option("--kind", s_kind, "which series")
        ->check(CLI::IsMember({"theta", "gen", "x", "correction", "eta"}));
    series->add_option("-k,--k", s_k, "k (gen, correction)");
    series->add_option("-m,--m", s_m, "m (gen, x, correction)");
    series->add_option("-j,--j", s_j, "correction index j");
    series->add_option("--spec", s_spec, "eta-quotient spec (kind=eta)");
    series->add_option("--level", s_level, "eta-quotient level (kind=eta)");
    series->add_option("--order", s_order, "truncation order");
    series->add_option("--format", s_format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("qform");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (!env_error.empty() &&
            (formula->count("--order") + count->count("--order") + verify->count("--order") +
             series->count("--order")) == 0) {
            err << "error: " << env_error << "\n";
            return kExitUsage;
        }

        if (*formula) {
            detail::require_order(f_order);
            RepFormula f = emit_formula(FormSpec(f_k, f_m), f_order);
            if (f_format == "json")
                out << f.json().dump() << "\n";
            else
                out << f.text() << "\n";
            return kExitOk;
        }

        if (*count) {
            detail::require_order(c_order);
            if (c_n < 0) throw std::invalid_argument("n must be >= 0");
            FormSpec spec(c_k, c_m);
            auto by_formula = [&]() {
                return emit_formula(spec, c_order).evaluate(c_n);
            };
            auto by_series = [&]() {
                return gen_series(spec, c_n + 1).coefficient(c_n).to_int();
            };
            auto by_enum = [&]() { return brute_count(spec, c_n); };
            if (c_check_all) {
                Int vf = by_formula(), vs = by_series(), ve = by_enum();
                if (vf != vs || vs != ve) {
                    err << "method mismatch: formula=" << vf.str() << " series=" << vs.str()
                        << " enumerate=" << ve.str() << "\n";
                    return kExitUsage;
                }
                out << vf.str() << "\n";
                return kExitOk;
            }
            Int v = c_method == "series" ? by_series()
                                         : (c_method == "enumerate" ? by_enum() : by_formula());
            out << v.str() << "\n";
            return kExitOk;
        }

        if (*verify) {
            detail::require_order(v_order);
            auto [k_lo, k_hi] = detail::parse_k_range(v_k);
            std::vector<int> ms = detail::parse_m_list(v_m);
            bool all_ok = true;
            for (int m : ms) {
                for (int k = k_lo; k <= k_hi; ++k) {
                    VerifyReport rep = verify_identity(FormSpec(k, m), v_order);
                    out << "k=" << k << " m=" << m;
                    if (rep.ok)
                        out << " ok ell=" << rep.c.size() << " c=" << detail::coeff_list(rep.c);
                    else
                        out << " FAIL first_mismatch=" << *rep.first_mismatch;
                    out << "\n";
                    all_ok = all_ok && rep.ok;
                }
            }
            return all_ok ? kExitOk : kExitVerifyFailed;
        }

        if (*eta) {
            EtaQuotient q = EtaQuotient::parse(e_spec, e_level);
            CuspLabel cusp = CuspLabel::parse(e_cusp, e_level);
            Gamma0Report rep = q.gamma0_conditions();
            out << "quotient: " << q.str() << "\n";
            out << "level: " << q.level() << "\n";
            out << "weight: " << q.weight().str() << "\n";
            out << "sum_d_rd_mod24: " << rep.sum_d_rd_mod24 << "\n";
            out << "sum_Nd_rd_mod24: " << rep.sum_Nd_rd_mod24 << "\n";
            out << "conditions: " << (rep.passes ? "pass" : "fail") << "\n";
            out << "character_s: " << rep.character_s << "\n";
            out << "cusp: " << cusp.str() << "\n";
            out << "width: " << cusp.width() << "\n";
            if (!rep.passes) return kExitConditions;
            out << "order: " << q.order_at_cusp(cusp).str() << "\n";
            return kExitOk;
        }

        if (*bern) {
            b_has_char = bern->count("--character") > 0;
            if (!b_has_char) {
                out << bernoulli(b_k).str() << "\n";
                return kExitOk;
            }
            CharacterId chi = CharacterId::from_discriminant(b_char);
            if (b_k % 2 != 1)
                throw ParityMismatch("generalized Bernoulli request needs odd k for chi_" +
                                     std::to_string(b_char) + " (got k = " + std::to_string(b_k) +
                                     ")");
            out << gen_bernoulli(b_k, chi).str() << "\n";
            return kExitOk;
        }

        if (*series) {
            detail::require_order(s_order);
            QSeries s;
            if (s_kind == "theta") {
                s = theta_series(s_order);
            } else if (s_kind == "gen") {
                s = gen_series(FormSpec(s_k, s_m), s_order);
            } else if (s_kind == "x") {
                s = x_series(s_m, s_order);
            } else if (s_kind == "correction") {
                s = correction_series(s_j, FormSpec(s_k, s_m), s_order);
            } else {
                if (s_spec.empty() || s_level < 1)
                    throw std::invalid_argument("kind=eta needs --spec and --level");
                s = EtaQuotient::parse(s_spec, s_level).expand(s_order);
            }
            detail::print_series(s, s_format, out);
            return kExitOk;
        }
    } catch (const ConditionsNotMet& e) {
        err << "error: " << e.what() << "\n";
        return kExitConditions;
    } catch (const ParityMismatch& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace qform::cli
