#pragma once

#include <gmpxx.h>

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pfister_algebra.hpp"
#include "polynomial.hpp"
#include "stirling.hpp"
#include "valuation.hpp"

namespace annpoly {

enum class IdealKind { JprimeE, JE, JO, Jfull };

inline std::string ideal_kind_name(IdealKind k) {
    switch (k) {
        case IdealKind::JprimeE: return "jprime-e";
        case IdealKind::JE: return "j-e";
        case IdealKind::JO: return "j-o";
        case IdealKind::Jfull: return "j-full";
    }
    throw std::invalid_argument("ideal_kind_name: bad kind");
}

inline IdealKind ideal_kind_from_name(const std::string& s) {
    if (s == "jprime-e") return IdealKind::JprimeE;
    if (s == "j-e") return IdealKind::JE;
    if (s == "j-o") return IdealKind::JO;
    if (s == "j-full") return IdealKind::Jfull;
    throw std::invalid_argument("unknown ideal kind: " + s);
}

/// The unique k >= 1 with nu2((2k-2)!) < r <= nu2((2k)!).
inline unsigned long k_of_r(unsigned long r) {
    if (r < 1) throw std::domain_error("k_of_r: r must be >= 1");
    for (unsigned long k = 1;; ++k)
        if (nu2_factorial(2 * k - 2) < r && r <= nu2_factorial(2 * k)) return k;
}

/**
 * One scaled generator 2^a (X-s)^e with s in {0,1}.  For Jfull the entry
 * means 2^a X^e (X-1)^e (both shifts multiplied, s unused).
 */
struct ScaledGen {
    unsigned long a;  // 2-exponent
    unsigned long e;  // degree (per factor, for Jfull)
    unsigned long s;  // shift, 0 or 1

    bool operator==(const ScaledGen&) const = default;
};

struct IdealSpec {
    IdealKind kind;
    unsigned long r;
    unsigned long k;  // = k_of_r(r)
    std::vector<ScaledGen> gens;

    std::vector<IntPoly> polynomials() const {
        std::vector<IntPoly> out;
        for (const ScaledGen& g : gens) {
            mpz_class scale = mpz_class(1) << g.a;
            IntPoly p = IntPoly::constant(scale);
            IntPoly factor({-mpz_class(g.s), 1});  // X - s
            for (unsigned long i = 0; i < g.e; ++i) p = p * factor;
            if (kind == IdealKind::Jfull) {
                IntPoly other({mpz_class(-1), 1});  // X - 1
                for (unsigned long i = 0; i < g.e; ++i) p = p * other;
            }
            out.push_back(p);
        }
        return out;
    }
};

/// Fully expanded generator list in ascending degree, matching the displays
/// J'_{e,r}, J_{e,r}, J_{o,r} and J_r.
inline IdealSpec generators(IdealKind kind, unsigned long r) {
    if (r < 1) throw std::domain_error("generators: r must be >= 1");
    unsigned long k = k_of_r(r);
    IdealSpec spec{kind, r, k, {}};
    switch (kind) {
        case IdealKind::JprimeE:
            spec.gens.push_back({r, 1, 0});
            for (unsigned long i = 1; i < k; ++i)
                spec.gens.push_back({r - nu2_factorial(2 * i), 2 * i, 0});
            spec.gens.push_back({0, 2 * k, 0});
            break;
        case IdealKind::JE:
        case IdealKind::JO: {
            unsigned long s = kind == IdealKind::JO ? 1 : 0;
            spec.gens.push_back({r, 0, s});
            for (unsigned long i = 1; i < k; ++i)
                spec.gens.push_back({r - nu2_factorial(2 * i), 2 * i, s});
            spec.gens.push_back({0, 2 * k, s});
            break;
        }
        case IdealKind::Jfull:
            spec.gens.push_back({r, 0, 0});
            for (unsigned long i = 1; i < k; ++i)
                spec.gens.push_back({r - nu2_factorial(2 * i), 2 * i, 0});
            spec.gens.push_back({0, 2 * k, 0});
            break;
    }
    return spec;
}

/**
 * Membership normal form for the scaled-monomial ideals: the minimal
 * 2-exponent over all generators 2^a X^e with e <= j.  nullopt means the
 * degree-j coefficient must be exactly zero (only j = 0 for J'_{e,r}).
 */
inline std::optional<unsigned long> required_exponent(unsigned long j, IdealKind kind,
                                                      unsigned long r) {
    if (kind != IdealKind::JprimeE && kind != IdealKind::JE)
        throw std::invalid_argument("required_exponent: only J'_{e,r} and J_{e,r}");
    std::optional<unsigned long> best;
    for (const ScaledGen& g : generators(kind, r).gens)
        if (g.e <= j && (!best || g.a < *best)) best = g.a;
    return best;
}

/// Decides f in the ideal.  J'_{e,r}/J_{e,r}: coefficient-wise divisibility;
/// J_{o,r}: via the automorphism X -> X+1; J_r: conjunction (the ideals are
/// comaximal, so intersection = product).
inline bool is_member(const IntPoly& f, IdealKind kind, unsigned long r) {
    if (r < 1) throw std::domain_error("is_member: r must be >= 1");
    switch (kind) {
        case IdealKind::JprimeE:
        case IdealKind::JE:
            for (unsigned long j = 0; j <= static_cast<unsigned long>(std::max(f.degree(), 0));
                 ++j) {
                const mpz_class& c = f.coeff(j);
                auto a = required_exponent(j, kind, r);
                if (!a) {
                    if (c != 0) return false;
                } else if (c != 0 && nu2(c) < *a) {
                    return false;
                }
            }
            return true;
        case IdealKind::JO:
            return is_member(taylor_shift(f, 1), IdealKind::JE, r);
        case IdealKind::Jfull:
            return is_member(f, IdealKind::JE, r) && is_member(f, IdealKind::JO, r);
    }
    throw std::invalid_argument("is_member: bad kind");
}

/**
 * Integer Bezout pair (u, v) with u*X^{2k} + v*(X-1)^{2k} = 1, from the
 * binomial expansion of (X + (1-X))^{4k-1}.  Self-checked by exact expansion.
 */
inline std::pair<IntPoly, IntPoly> comaximality_witness(unsigned long k) {
    if (k < 1) throw std::domain_error("comaximality_witness: k must be >= 1");
    IntPoly u, v;
    IntPoly one_minus_x({1, -1});
    unsigned long m = 4 * k - 1;
    for (unsigned long i = 0; i <= m; ++i) {
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), m, i);
        if (i >= 2 * k) {
            IntPoly term = IntPoly::monomial(binom, i - 2 * k);
            for (unsigned long t = 0; t < m - i; ++t) term = term * one_minus_x;
            u = u + term;
        } else {
            IntPoly term = IntPoly::monomial(binom, i);
            for (unsigned long t = 0; t < 2 * k - 1 - i; ++t) term = term * one_minus_x;
            v = v + term;
        }
    }
    IntPoly xe = IntPoly::monomial(1, 2 * k);
    IntPoly ye = IntPoly::constant(1);
    IntPoly x_minus_1({-1, 1});
    for (unsigned long t = 0; t < 2 * k; ++t) ye = ye * x_minus_1;
    if (u * xe + v * ye != IntPoly::constant(1))
        throw std::logic_error("comaximality_witness: identity does not expand to 1");
    return {u, v};
}

/// True iff f(Y_1+...+Y_n) = 0 in B/2^rB for every 1 <= n <= n_max.
inline bool generic_annihilation_test(const IntPoly& f, unsigned long r, unsigned n_max) {
    if (f.coeff(0) != 0)
        throw std::invalid_argument("generic_annihilation_test: constant term must be zero");
    if (n_max > AlgebraElement::kMaxRank)
        throw std::length_error("generic_annihilation_test: n_max exceeds 16");
    if (r < 1) throw std::domain_error("generic_annihilation_test: r must be >= 1");
    for (unsigned n = 1; n <= n_max; ++n)
        if (!reduce_mod_2r(eval_at_generator_sum(f, n), r).is_zero()) return false;
    return true;
}

struct Counterexample {
    std::string poly;
    unsigned long n = 0;
    unsigned long r = 0;
    std::string note;
};

struct CheckReport {
    std::string name;
    nlohmann::json params;
    bool pass = false;
    std::optional<Counterexample> counterexample;
};

inline nlohmann::json check_report_to_json(const CheckReport& rep) {
    nlohmann::json j{{"check", rep.name}, {"params", rep.params}, {"pass", rep.pass}};
    if (rep.counterexample) {
        j["counterexample"] = {{"poly", rep.counterexample->poly},
                               {"n", rep.counterexample->n},
                               {"r", rep.counterexample->r},
                               {"note", rep.counterexample->note}};
    } else {
        j["counterexample"] = nullptr;
    }
    return j;
}

namespace detail {

/// Shifted annihilation of each generator over all even n <= n_max, mod 2^r.
inline std::optional<Counterexample> shifted_generators_annihilate(
        const std::vector<IntPoly>& gens, unsigned long r, unsigned n_max) {
    for (const IntPoly& g : gens) {
        for (unsigned n = 2; n <= n_max; n += 2) {
            ExpansionCoefficients e = shifted_expansion_coefficients(g, n);
            for (const mpz_class& a : e.A) {
                if (a != 0 && nu2(a) < r)
                    return Counterexample{format_polynomial(g), n, r,
                                          "shifted evaluation nonzero mod 2^r"};
            }
        }
    }
    return std::nullopt;
}

}  // namespace detail

/**
 * Symbolic check that every generator of J'_{e,r} annihilates
 * (Y_1+...+Y_n) - n in B/2^rB for all even n <= n_max, plus the termwise
 * valuation bound nu2(2^{q-j} j! S(q,j) C(e,q) n^{e-q} 2^a) >= r behind it.
 */
inline CheckReport lemma_32_check(unsigned long r, unsigned n_max) {
    if (n_max > AlgebraElement::kMaxRank) throw std::length_error("lemma_32_check: n_max > 16");
    CheckReport rep;
    rep.name = "lemma-3.2";
    rep.params = {{"r", r}, {"max_n", n_max}};
    rep.pass = true;

    IdealSpec spec = generators(IdealKind::JprimeE, r);
    if (auto cex = detail::shifted_generators_annihilate(spec.polynomials(), r, n_max)) {
        rep.pass = false;
        rep.counterexample = *cex;
        return rep;
    }

    // termwise bound, for the generators 2^a X^e with e = 2i (2 <= 2i <= 2k)
    for (const ScaledGen& g : spec.gens) {
        if (g.e < 2) continue;  // 2^r X annihilates termwise trivially
        for (unsigned long n = 2; n <= n_max; n += 2) {
            for (unsigned long j = 1; j <= std::min<unsigned long>(n, g.e); ++j) {
                for (unsigned long q = j; q <= g.e; ++q) {
                    mpz_class jfact, binom, pw;
                    mpz_fac_ui(jfact.get_mpz_t(), j);
                    mpz_bin_uiui(binom.get_mpz_t(), g.e, q);
                    mpz_ui_pow_ui(pw.get_mpz_t(), n, g.e - q);
                    mpz_class term = stirling2(q, j) * jfact * binom * pw;
                    term <<= (q - j) + g.a;
                    if (term != 0 && nu2(term) < r) {
                        rep.pass = false;
                        rep.counterexample =
                                Counterexample{format_polynomial(IntPoly::monomial(
                                                       mpz_class(1) << g.a, g.e)),
                                               n, r, "termwise valuation below r"};
                        return rep;
                    }
                }
            }
        }
    }
    return rep;
}

/// Variant used by the sensitivity tests: same annihilation check on an
/// explicit generator list (e.g. with one factor of 2 removed).
inline bool generators_annihilate_shifted(const std::vector<IntPoly>& gens, unsigned long r,
                                          unsigned n_max) {
    return !detail::shifted_generators_annihilate(gens, r, n_max).has_value();
}

namespace detail {

/// Deterministic, platform-independent uniform draw from [-bound, bound].
inline mpz_class draw_coefficient(std::mt19937_64& rng, unsigned long bound_log2) {
    mpz_class bound = mpz_class(1) << bound_log2;
    mpz_class span = 2 * bound + 1;
    // 128 bits of raw output, reduced; bias is negligible and reproducible
    mpz_class raw = mpz_class(rng()) << 64;
    raw += mpz_class(rng());
    return raw % span - bound;
}

}  // namespace detail

/**
 * Desk model of the main theorem: for random f with zero constant term and
 * degree <= 2k-1, annihilation of every generator sum in B/2^rB is equivalent
 * to nu2(c_n) >= r - nu2(n!) for all n, i.e. membership in J'_{e,r} below
 * degree 2k.  Also checks the paired normal form
 * f = sum_j 2^{r - nu2((2j)!)} X^{2j} (b_{2j+1} X + b_{2j}).
 */
inline CheckReport theorem_equivalence_check(unsigned long r, unsigned long trials,
                                             std::uint64_t seed) {
    unsigned long k = k_of_r(r);
    unsigned long deg_max = 2 * k - 1;
    if (deg_max > AlgebraElement::kMaxRank)
        throw std::length_error("theorem_equivalence_check: 2k-1 exceeds 16");
    CheckReport rep;
    rep.name = "theorem-equivalence";
    rep.params = {{"r", r}, {"k", k}, {"trials", trials}, {"seed", seed}};
    rep.pass = true;

    auto right_side = [&](const IntPoly& f) {
        for (unsigned long n = 1; n <= deg_max; ++n) {
            const mpz_class& c = f.coeff(n);
            if (c != 0 && nu2(c) + nu2_factorial(n) < r) return false;
        }
        return true;
    };

    auto check_one = [&](const IntPoly& f) -> bool {
        bool left = generic_annihilation_test(f, r, static_cast<unsigned>(deg_max));
        bool right = right_side(f);
        if (left != right) return false;
        // the coefficient-wise condition is exactly restricted membership
        if (right != is_member(f, IdealKind::JprimeE, r)) return false;
        if (right) {
            // reassemble from the paired normal form and compare exactly
            IntPoly g;
            for (unsigned long j = 0; 2 * j <= deg_max; ++j) {
                unsigned long a = r - nu2_factorial(2 * j);
                IntPoly pair;
                const mpz_class& even_c = f.coeff(2 * j);
                if (2 * j >= 1) pair = pair + IntPoly::constant(even_c >> a);
                if (2 * j + 1 <= deg_max)
                    pair = pair + IntPoly::monomial(f.coeff(2 * j + 1) >> a, 1);
                g = g + IntPoly::monomial(mpz_class(1) << a, 2 * j) * pair;
            }
            if (g != f) return false;
        }
        return true;
    };

    // directed cases: generators of degree < 2k annihilate
    for (const IntPoly& g : generators(IdealKind::JprimeE, r).polynomials()) {
        if (g.degree() < static_cast<int>(2 * k) &&
            !generic_annihilation_test(g, r, static_cast<unsigned>(deg_max))) {
            rep.pass = false;
            rep.counterexample = Counterexample{format_polynomial(g), 0, r,
                                                "generator fails annihilation"};
            return rep;
        }
    }

    for (unsigned long t = 0; t < trials; ++t) {
        std::mt19937_64 rng(seed + t);
        std::vector<mpz_class> coeffs(deg_max + 1);
        for (unsigned long n = 1; n <= deg_max; ++n)
            coeffs[n] = detail::draw_coefficient(rng, r + 2);
        IntPoly f(std::move(coeffs));
        if (!check_one(f)) {
            rep.pass = false;
            rep.counterexample = Counterexample{format_polynomial(f), t, r,
                                                "biconditional violated at trial"};
            return rep;
        }
    }
    return rep;
}

/**
 * Sufficient coefficient-wise criterion for q_l(phi) in 2^{nu2(l!)} I^l:
 * for every even n <= n_max the shifted A_p satisfy
 * nu2(A_p) >= nu2(l!) + max(0, l-p).
 */
inline CheckReport ql_sufficient_check(unsigned long l, unsigned n_max) {
    if (l < 1 || l > 6) throw std::domain_error("ql_sufficient_check: need 1 <= l <= 6");
    if (n_max > AlgebraElement::kMaxRank) throw std::length_error("ql_sufficient_check: n_max > 16");
    CheckReport rep;
    rep.name = "ql-sufficient";
    rep.params = {{"l", l}, {"max_n", n_max}};
    rep.pass = true;
    IntPoly ql = q_polynomial(l);
    unsigned long base = nu2_factorial(l);
    for (unsigned long n = 2; n <= n_max; n += 2) {
        ExpansionCoefficients e = shifted_expansion_coefficients(ql, static_cast<unsigned>(n));
        for (unsigned long p = 0; p <= n; ++p) {
            unsigned long need = base + (l > p ? l - p : 0);
            if (e.A[p] != 0 && nu2(e.A[p]) < need) {
                rep.pass = false;
                rep.counterexample = Counterexample{format_polynomial(ql), n, 0,
                                                    "A_" + std::to_string(p) +
                                                            " below required valuation"};
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace annpoly
