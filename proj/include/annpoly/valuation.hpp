#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace annpoly {

/// Largest p with 2^p dividing |n|.  nu2(0) is undefined and throws.
inline unsigned long nu2(const mpz_class& n) {
    if (n == 0) throw std::domain_error("nu2: argument must be nonzero");
    mpz_class a = abs(n);
    return mpz_scan1(a.get_mpz_t(), 0);
}

/// Number of ones in the binary expansion of n >= 0.
inline unsigned long digit_sum(const mpz_class& n) {
    if (n < 0) throw std::domain_error("digit_sum: argument must be nonnegative");
    return mpz_popcount(n.get_mpz_t());
}

inline unsigned long digit_sum(unsigned long n) { return digit_sum(mpz_class(n)); }

/// nu2(n!) by Legendre: n - d(n).
inline unsigned long nu2_factorial(unsigned long n) {
    return n - digit_sum(mpz_class(n));
}

/// nu2(C(n,k)) by Kummer: d(k) + d(n-k) - d(n).
inline unsigned long nu2_binomial(unsigned long n, unsigned long k) {
    if (k > n) throw std::domain_error("nu2_binomial: k > n");
    return digit_sum(mpz_class(k)) + digit_sum(mpz_class(n - k)) - digit_sum(mpz_class(n));
}

/// nu2 of the bare multinomial n!/(n_1! ... n_p!).
inline unsigned long nu2_multinomial(unsigned long n, const std::vector<unsigned long>& parts) {
    unsigned long sum = 0;
    for (unsigned long p : parts) sum += p;
    if (sum != n) throw std::domain_error("nu2_multinomial: parts do not sum to n");
    unsigned long v = nu2_factorial(n);
    for (unsigned long p : parts) v -= nu2_factorial(p);
    return v;
}

}  // namespace annpoly
