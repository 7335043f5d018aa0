#pragma once

#include <gmpxx.h>

#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "polynomial.hpp"
#include "valuation.hpp"

namespace annpoly {

/**
 * Triangular table of Stirling numbers of the second kind, built once by the
 * recurrence S(n,k) = S(n-1,k-1) + k S(n-1,k).  Immutable after construction.
 */
class StirlingTable {
public:
    explicit StirlingTable(unsigned long max_n) : max_n_(max_n), rows_(max_n + 1) {
        rows_[0] = {mpz_class(1)};
        for (unsigned long n = 1; n <= max_n; ++n) {
            rows_[n].resize(n + 1);
            rows_[n][0] = 0;
            for (unsigned long k = 1; k <= n; ++k)
                rows_[n][k] = at(n - 1, k - 1) + mpz_class(k) * at(n - 1, k);
        }
    }

    unsigned long max_n() const { return max_n_; }

    /// S(n,k); zero outside the triangle.
    const mpz_class& at(unsigned long n, unsigned long k) const {
        static const mpz_class zero = 0;
        if (n > max_n_) throw std::out_of_range("StirlingTable: n exceeds max_n");
        if (k > n) return zero;
        return rows_[n][k];
    }

private:
    unsigned long max_n_;
    std::vector<std::vector<mpz_class>> rows_;
};

namespace detail {

inline const StirlingTable& shared_stirling_table(unsigned long need_n) {
    static std::mutex mu;
    static StirlingTable* table = nullptr;
    std::lock_guard<std::mutex> lock(mu);
    if (!table || table->max_n() < need_n) {
        unsigned long cap = need_n < 64 ? 64 : need_n;
        // superseded tables are kept alive: concurrent readers may still hold them
        table = new StirlingTable(cap);
    }
    return *table;
}

}  // namespace detail

/// S(n,k) via the memoized recurrence table.
inline mpz_class stirling2(unsigned long n, unsigned long k) {
    return detail::shared_stirling_table(n).at(n, k);
}

/// S(n,k) = (1/k!) sum_{i=0}^{k} (-1)^i C(k,k-i) (k-i)^n.  Division is checked-exact.
inline mpz_class stirling2_alt_sum(unsigned long n, unsigned long k) {
    mpz_class sum = 0;
    for (unsigned long i = 0; i <= k; ++i) {
        mpz_class binom, pw;
        mpz_bin_uiui(binom.get_mpz_t(), k, k - i);
        if (k - i == 0 && n == 0)
            pw = 1;  // 0^0
        else
            mpz_ui_pow_ui(pw.get_mpz_t(), k - i, n);
        mpz_class term = binom * pw;
        sum += (i % 2 == 0) ? term : -term;
    }
    mpz_class kfact;
    mpz_fac_ui(kfact.get_mpz_t(), k);
    if (!mpz_divisible_p(sum.get_mpz_t(), kfact.get_mpz_t()))
        throw std::logic_error("stirling2_alt_sum: alternating sum not divisible by k!");
    mpz_class out;
    mpz_divexact(out.get_mpz_t(), sum.get_mpz_t(), kfact.get_mpz_t());
    return out;
}

/// S(n,k) = (1/k!) sum over compositions of n into k positive parts of the
/// multinomial coefficient.  Exponential enumeration; capped at n <= 25.
inline mpz_class stirling2_compositions(unsigned long n, unsigned long k) {
    if (n > 25) throw std::length_error("stirling2_compositions: n > 25");
    if (k < 1 || k > n) throw std::domain_error("stirling2_compositions: need 1 <= k <= n");

    mpz_class sum = 0;
    // parts chosen left to right; multinomial built as a product of binomials
    std::vector<unsigned long> part(k);
    auto recurse = [&](auto&& self, unsigned long idx, unsigned long rest,
                       const mpz_class& mult) -> void {
        if (idx == k - 1) {
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), rest, rest);
            sum += mult * binom;
            return;
        }
        unsigned long slots_left = k - idx - 1;
        for (unsigned long p = 1; p + slots_left <= rest; ++p) {
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), rest, p);
            self(self, idx + 1, rest - p, mult * binom);
        }
    };
    recurse(recurse, 0, n, mpz_class(1));

    mpz_class kfact;
    mpz_fac_ui(kfact.get_mpz_t(), k);
    if (!mpz_divisible_p(sum.get_mpz_t(), kfact.get_mpz_t()))
        throw std::logic_error("stirling2_compositions: sum not divisible by k!");
    mpz_class out;
    mpz_divexact(out.get_mpz_t(), sum.get_mpz_t(), kfact.get_mpz_t());
    return out;
}

/// Checks x^n = sum_k S(n,k) (x)_k as an exact identity in Z[x].
inline bool falling_factorial_identity_check(unsigned long n) {
    IntPoly sum;
    IntPoly falling = IntPoly::constant(1);  // (x)_0
    sum = sum + falling * stirling2(n, 0);
    for (unsigned long k = 1; k <= n; ++k) {
        falling = falling * IntPoly({-mpz_class(k - 1), 1});  // * (x - (k-1))
        sum = sum + falling * stirling2(n, k);
    }
    return sum == IntPoly::monomial(1, n);
}

/// nu2(S(n,k)) - (d(k) - d(n)); the lower bound asserts this is >= 0.
inline long bound_margin(unsigned long n, unsigned long k) {
    if (k == 0 || k > n) throw std::domain_error("bound_margin: need 0 < k <= n");
    long nu = static_cast<long>(nu2(stirling2(n, k)));
    long lower = static_cast<long>(digit_sum(k)) - static_cast<long>(digit_sum(n));
    return nu - lower;
}

struct BoundRow {
    unsigned long n;
    unsigned long k;
    unsigned long nu;
    long lower;
    long margin;

    bool operator==(const BoundRow&) const = default;
};

struct BoundReport {
    unsigned long max_n = 0;
    std::vector<BoundRow> rows;   // lexicographic in (n, k)
    std::size_t tight_count = 0;  // rows with margin == 0
    bool all_nonnegative = true;

    bool operator==(const BoundReport&) const = default;
};

/// Margin for every 0 < k <= n <= max_n.
inline BoundReport scan_bound(unsigned long max_n) {
    if (max_n < 1) throw std::domain_error("scan_bound: max_n must be >= 1");
    const StirlingTable& table = detail::shared_stirling_table(max_n);
    BoundReport rep;
    rep.max_n = max_n;
    for (unsigned long n = 1; n <= max_n; ++n) {
        for (unsigned long k = 1; k <= n; ++k) {
            unsigned long nu = nu2(table.at(n, k));
            long lower = static_cast<long>(digit_sum(k)) - static_cast<long>(digit_sum(n));
            long margin = static_cast<long>(nu) - lower;
            rep.rows.push_back({n, k, nu, lower, margin});
            if (margin == 0) ++rep.tight_count;
            if (margin < 0) rep.all_nonnegative = false;
        }
    }
    return rep;
}

inline std::string bound_report_to_csv(const BoundReport& rep) {
    std::ostringstream out;
    out << "n,k,nu2,lower,margin\n";
    for (const BoundRow& r : rep.rows)
        out << r.n << ',' << r.k << ',' << r.nu << ',' << r.lower << ',' << r.margin << '\n';
    return out.str();
}

inline nlohmann::json bound_report_to_json(const BoundReport& rep) {
    nlohmann::json rows = nlohmann::json::array();
    for (const BoundRow& r : rep.rows)
        rows.push_back({{"n", r.n}, {"k", r.k}, {"nu2", r.nu}, {"lower", r.lower},
                        {"margin", r.margin}});
    return {{"max_n", rep.max_n},
            {"tight_count", rep.tight_count},
            {"all_nonnegative", rep.all_nonnegative},
            {"rows", rows}};
}

inline BoundReport bound_report_from_json(const nlohmann::json& j) {
    BoundReport rep;
    rep.max_n = j.at("max_n").get<unsigned long>();
    rep.tight_count = j.at("tight_count").get<std::size_t>();
    rep.all_nonnegative = j.at("all_nonnegative").get<bool>();
    for (const auto& row : j.at("rows"))
        rep.rows.push_back({row.at("n").get<unsigned long>(), row.at("k").get<unsigned long>(),
                            row.at("nu2").get<unsigned long>(), row.at("lower").get<long>(),
                            row.at("margin").get<long>()});
    return rep;
}

}  // namespace annpoly
