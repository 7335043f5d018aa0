#pragma once

#include <gmpxx.h>

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace annpoly {

/**
 * Dense univariate polynomial over Z with arbitrary-precision coefficients.
 * Canonical form: no trailing zeros; the zero polynomial has an empty
 * coefficient vector and degree() == -1.
 */
class IntPoly {
public:
    IntPoly() = default;

    explicit IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static IntPoly constant(mpz_class c) { return IntPoly({std::move(c)}); }

    static IntPoly monomial(mpz_class c, std::size_t e) {
        std::vector<mpz_class> v(e + 1);
        v[e] = std::move(c);
        return IntPoly(std::move(v));
    }

    /// X itself.
    static IntPoly x() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    const mpz_class& coeff(std::size_t q) const {
        static const mpz_class zero = 0;
        return q < c_.size() ? c_[q] : zero;
    }

    const std::vector<mpz_class>& coeffs() const { return c_; }

    bool operator==(const IntPoly&) const = default;

    IntPoly operator+(const IntPoly& o) const {
        std::vector<mpz_class> v(std::max(c_.size(), o.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
        return IntPoly(std::move(v));
    }

    IntPoly operator-(const IntPoly& o) const {
        std::vector<mpz_class> v(std::max(c_.size(), o.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) - o.coeff(i);
        return IntPoly(std::move(v));
    }

    IntPoly operator*(const IntPoly& o) const {
        if (is_zero() || o.is_zero()) return IntPoly();
        std::vector<mpz_class> v(c_.size() + o.c_.size() - 1);
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
        return IntPoly(std::move(v));
    }

    IntPoly operator*(const mpz_class& s) const {
        std::vector<mpz_class> v = c_;
        for (auto& x : v) x *= s;
        return IntPoly(std::move(v));
    }

    IntPoly operator-() const { return *this * mpz_class(-1); }

    /// Exact evaluation at an integer point.
    mpz_class operator()(const mpz_class& x) const {
        mpz_class acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<mpz_class> c_;
};

/// g with g(X) = f(X + a), computed exactly by Horner in Z[X].
inline IntPoly taylor_shift(const IntPoly& f, const mpz_class& a) {
    IntPoly shift({a, 1});  // X + a
    IntPoly g;
    for (int q = f.degree(); q >= 0; --q) g = g * shift + IntPoly::constant(f.coeff(q));
    return g;
}

/// Lewis polynomial p_n: monic with roots n, n-2, ..., -(n-2), -n.
inline IntPoly lewis_polynomial(unsigned long n) {
    if (n == 0) throw std::domain_error("lewis_polynomial: n must be >= 1");
    IntPoly p = IntPoly::constant(1);
    for (unsigned long j = 0; j <= n; ++j) {
        mpz_class root = mpz_class(n) - 2 * mpz_class(j);
        p = p * IntPoly({-root, 1});
    }
    return p;
}

/// q_l(X) = X(X-2)(X-4)...(X-2(l-1)).
inline IntPoly q_polynomial(unsigned long l) {
    if (l == 0) throw std::domain_error("q_polynomial: l must be >= 1");
    IntPoly p = IntPoly::constant(1);
    for (unsigned long j = 0; j < l; ++j) p = p * IntPoly({-2 * mpz_class(j), 1});
    return p;
}

/**
 * Text form: terms printed in descending exponent order, "c", "cX" or
 * "cX^e", unit coefficients elided on X terms.  Round-trips with
 * parse_polynomial.
 */
inline std::string format_polynomial(const IntPoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (int q = f.degree(); q >= 0; --q) {
        const mpz_class& c = f.coeff(q);
        if (c == 0) continue;
        mpz_class a = abs(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (a != 1 || q == 0) out += a.get_str();
        if (q >= 1) out += "X";
        if (q >= 2) out += "^" + std::to_string(q);
    }
    return out;
}

/// Parses the term grammar above.  Rejects duplicate exponents.
inline IntPoly parse_polynomial(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("parse_polynomial: empty input");

    std::map<std::size_t, mpz_class> terms;
    std::size_t i = 0;
    bool first = true;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw std::invalid_argument("parse_polynomial: missing sign between terms");
        }
        first = false;

        std::string digits;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];

        mpz_class coeff = digits.empty() ? mpz_class(1) : mpz_class(digits);
        std::size_t expo = 0;
        if (i < s.size() && (s[i] == 'X' || s[i] == 'x')) {
            ++i;
            expo = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string ed;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ed += s[i++];
                if (ed.empty()) throw std::invalid_argument("parse_polynomial: missing exponent");
                expo = std::stoul(ed);
            }
        } else if (digits.empty()) {
            throw std::invalid_argument("parse_polynomial: expected term at position " +
                                        std::to_string(i));
        }
        if (terms.count(expo))
            throw std::invalid_argument("parse_polynomial: duplicate exponent " +
                                        std::to_string(expo));
        terms[expo] = sign * coeff;
    }

    std::vector<mpz_class> v(terms.empty() ? 0 : terms.rbegin()->first + 1);
    for (auto& [e, c] : terms) v[e] = c;
    return IntPoly(std::move(v));
}

/// JSON coefficient array [c0, c1, ...] with exact decimal strings.
inline nlohmann::json polynomial_to_json(const IntPoly& f) {
    nlohmann::json arr = nlohmann::json::array();
    for (int q = 0; q <= f.degree(); ++q) arr.push_back(f.coeff(q).get_str());
    return arr;
}

inline IntPoly polynomial_from_json(const nlohmann::json& arr) {
    if (!arr.is_array()) throw std::invalid_argument("polynomial_from_json: expected array");
    std::vector<mpz_class> v;
    for (const auto& e : arr) {
        if (e.is_number_integer())
            v.emplace_back(static_cast<long>(e.get<long long>()));
        else
            v.emplace_back(e.get<std::string>());
    }
    return IntPoly(std::move(v));
}

}  // namespace annpoly
