#pragma once

#include <gmpxx.h>

#include <bit>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "polynomial.hpp"
#include "stirling.hpp"

namespace annpoly {

/**
 * Element of B = Z[X_1,...,X_n]/(X_i^2 - 2X_i), written on the basis
 * Y_J = prod_{j in J} X_j.  Subsets J of {1..n} are encoded as bitmasks;
 * Y_emptyset (mask 0) is the identity.  Multiplication uses
 * Y_J * Y_K = 2^{|J cap K|} Y_{J cup K}.
 */
class AlgebraElement {
public:
    static constexpr unsigned kMaxRank = 16;

    explicit AlgebraElement(unsigned rank) : rank_(rank) {
        if (rank > kMaxRank) throw std::length_error("AlgebraElement: rank exceeds 16");
    }

    static AlgebraElement unit(unsigned rank) {
        AlgebraElement e(rank);
        e.coeffs_[0] = 1;
        return e;
    }

    /// Y_{i} for a single generator, 1-based i.
    static AlgebraElement generator(unsigned rank, unsigned i) {
        if (i < 1 || i > rank) throw std::out_of_range("AlgebraElement: generator index");
        AlgebraElement e(rank);
        e.coeffs_[std::uint32_t{1} << (i - 1)] = 1;
        return e;
    }

    /// Y_1 + Y_2 + ... + Y_rank.
    static AlgebraElement generator_sum(unsigned rank) {
        AlgebraElement e(rank);
        for (unsigned i = 0; i < rank; ++i) e.coeffs_[std::uint32_t{1} << i] = 1;
        return e;
    }

    unsigned rank() const { return rank_; }
    bool is_zero() const { return coeffs_.empty(); }

    const mpz_class& coeff(std::uint32_t mask) const {
        static const mpz_class zero = 0;
        auto it = coeffs_.find(mask);
        return it == coeffs_.end() ? zero : it->second;
    }

    /// Sparse map in ascending subset-mask order; zero coefficients absent.
    const std::map<std::uint32_t, mpz_class>& coeffs() const { return coeffs_; }

    void set_coeff(std::uint32_t mask, mpz_class v) {
        if (mask >= (std::uint32_t{1} << rank_))
            throw std::out_of_range("AlgebraElement: mask outside rank");
        if (v == 0)
            coeffs_.erase(mask);
        else
            coeffs_[mask] = std::move(v);
    }

    void add_coeff(std::uint32_t mask, const mpz_class& v) { set_coeff(mask, coeff(mask) + v); }

    bool operator==(const AlgebraElement&) const = default;

    AlgebraElement operator+(const AlgebraElement& o) const {
        check_rank(o);
        AlgebraElement out = *this;
        for (const auto& [m, c] : o.coeffs_) out.add_coeff(m, c);
        return out;
    }

    AlgebraElement operator-(const AlgebraElement& o) const {
        check_rank(o);
        AlgebraElement out = *this;
        for (const auto& [m, c] : o.coeffs_) out.add_coeff(m, -c);
        return out;
    }

    AlgebraElement operator*(const mpz_class& s) const {
        AlgebraElement out(rank_);
        if (s == 0) return out;
        for (const auto& [m, c] : coeffs_) out.coeffs_[m] = c * s;
        return out;
    }

    AlgebraElement operator*(const AlgebraElement& o) const {
        check_rank(o);
        std::vector<mpz_class> dense(std::size_t{1} << rank_);
        mpz_class term;
        for (const auto& [m1, c1] : coeffs_) {
            for (const auto& [m2, c2] : o.coeffs_) {
                term = c1 * c2;
                term <<= std::popcount(m1 & m2);
                dense[m1 | m2] += term;
            }
        }
        AlgebraElement out(rank_);
        for (std::uint32_t m = 0; m < dense.size(); ++m)
            if (dense[m] != 0) out.coeffs_[m] = std::move(dense[m]);
        return out;
    }

    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [m, c] : coeffs_) {
            mpz_class a = abs(c);
            if (first) {
                if (c < 0) out << "-";
            } else {
                out << (c < 0 ? " - " : " + ");
            }
            first = false;
            if (a != 1 || m == 0) out << a.get_str();
            if (m != 0) {
                out << "Y{";
                bool inner = true;
                for (unsigned i = 0; i < rank_; ++i)
                    if (m & (std::uint32_t{1} << i)) {
                        if (!inner) out << ",";
                        inner = false;
                        out << (i + 1);
                    }
                out << "}";
            }
        }
        return out.str();
    }

private:
    void check_rank(const AlgebraElement& o) const {
        if (rank_ != o.rank_) throw std::invalid_argument("AlgebraElement: rank mismatch");
    }

    unsigned rank_;
    std::map<std::uint32_t, mpz_class> coeffs_;
};

inline AlgebraElement algebra_mul(const AlgebraElement& a, const AlgebraElement& b) {
    return a * b;
}

/// Horner evaluation of f at an arbitrary element of B.
inline AlgebraElement eval_at(const IntPoly& f, const AlgebraElement& x) {
    AlgebraElement acc(x.rank());
    for (int q = f.degree(); q >= 0; --q) {
        acc = acc * x;
        acc.add_coeff(0, f.coeff(static_cast<std::size_t>(q)));
    }
    return acc;
}

/// f(Y_1 + ... + Y_n), by direct multiplication in B.
inline AlgebraElement eval_at_generator_sum(const IntPoly& f, unsigned n) {
    return eval_at(f, AlgebraElement::generator_sum(n));
}

/**
 * The coefficients A_p with
 *   f(Y_1+...+Y_n) = sum_p A_p * (sum_{|J|=p} Y_J),
 * which exist because the evaluation is symmetric in the generators.
 */
struct ExpansionCoefficients {
    unsigned n = 0;
    std::vector<mpz_class> A;  // size n+1

    bool operator==(const ExpansionCoefficients&) const = default;
};

/// Closed form A_p = sum_{q>=p} 2^{q-p} p! S(q,p) c_q (A_0 = c_0); no algebra products.
inline ExpansionCoefficients expansion_coefficients(const IntPoly& f, unsigned n) {
    if (n > AlgebraElement::kMaxRank)
        throw std::length_error("expansion_coefficients: rank exceeds 16");
    ExpansionCoefficients out;
    out.n = n;
    out.A.resize(n + 1);
    out.A[0] = f.coeff(0);
    int d = f.degree();
    for (unsigned p = 1; p <= n; ++p) {
        mpz_class pfact;
        mpz_fac_ui(pfact.get_mpz_t(), p);
        mpz_class sum = 0;
        for (int q = static_cast<int>(p); q <= d; ++q) {
            mpz_class term = stirling2(q, p) * pfact * f.coeff(static_cast<std::size_t>(q));
            term <<= static_cast<unsigned>(q) - p;
            sum += term;
        }
        out.A[p] = sum;
    }
    return out;
}

/// A_p of f evaluated at (Y_1+...+Y_n) - n*Y_emptyset; A_0 = f(-n).
inline ExpansionCoefficients shifted_expansion_coefficients(const IntPoly& f, unsigned n) {
    return expansion_coefficients(taylor_shift(f, -mpz_class(n)), n);
}

/// Reassembles sum_p A_p (sum_{|J|=p} Y_J) as an explicit element.
inline AlgebraElement from_expansion(const ExpansionCoefficients& e) {
    AlgebraElement out(e.n);
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << e.n); ++m) {
        unsigned p = static_cast<unsigned>(std::popcount(m));
        out.add_coeff(m, e.A[p]);
    }
    return out;
}

/// Every coefficient reduced into [0, 2^r); zero iff all coefficients are 0 mod 2^r.
inline AlgebraElement reduce_mod_2r(const AlgebraElement& u, unsigned long r) {
    if (r < 1) throw std::domain_error("reduce_mod_2r: r must be >= 1");
    AlgebraElement out(u.rank());
    mpz_class red;
    for (const auto& [m, c] : u.coeffs()) {
        mpz_fdiv_r_2exp(red.get_mpz_t(), c.get_mpz_t(), r);
        if (red != 0) out.set_coeff(m, red);
    }
    return out;
}

inline nlohmann::json expansion_to_json(const ExpansionCoefficients& e) {
    nlohmann::json arr = nlohmann::json::array();
    for (const mpz_class& a : e.A) arr.push_back(a.get_str());
    return {{"n", e.n}, {"A", arr}};
}

inline ExpansionCoefficients expansion_from_json(const nlohmann::json& j) {
    ExpansionCoefficients e;
    e.n = j.at("n").get<unsigned>();
    for (const auto& a : j.at("A")) e.A.emplace_back(a.get<std::string>());
    return e;
}

}  // namespace annpoly
