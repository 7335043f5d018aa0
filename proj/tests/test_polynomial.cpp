#include <catch_amalgamated.hpp>

#include <random>

#include <annpoly/polynomial.hpp>

using namespace annpoly;

namespace {

IntPoly random_poly(std::mt19937_64& rng, int max_deg, long coeff_bound) {
    std::vector<mpz_class> c(rng() % (max_deg + 1) + 1);
    for (auto& x : c) x = static_cast<long>(rng() % (2 * coeff_bound + 1)) - coeff_bound;
    return IntPoly(std::move(c));
}

}  // namespace

TEST_CASE("ring arithmetic basics") {
    IntPoly x = IntPoly::x();
    CHECK((x + IntPoly::constant(1)) * (x - IntPoly::constant(1)) ==
          IntPoly({-1, 0, 1}));  // X^2 - 1
    IntPoly f = parse_polynomial("3X^2 - 2X + 7");
    CHECK(f + IntPoly() == f);
    CHECK(IntPoly::monomial(1, 2) * IntPoly::monomial(1, 3) == IntPoly::monomial(1, 5));
    CHECK((f - f).is_zero());
    CHECK((f - f).degree() == -1);
}

TEST_CASE("canonical form strips trailing zeros") {
    CHECK(IntPoly({1, 2, 0, 0}) == IntPoly({1, 2}));
    CHECK(IntPoly({0, 0}).is_zero());
    CHECK(IntPoly({5, 0, 3}).degree() == 2);
}

TEST_CASE("taylor_shift") {
    CHECK(taylor_shift(IntPoly::monomial(1, 2), 1) == IntPoly({1, 2, 1}));
    IntPoly f = parse_polynomial("7X^5 - 3X^2 + 11");
    CHECK(taylor_shift(f, 0) == f);

    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        IntPoly g = random_poly(rng, 12, 1000);
        mpz_class a = static_cast<long>(rng() % 21) - 10;
        CHECK(taylor_shift(taylor_shift(g, a), -a) == g);
    }
}

TEST_CASE("taylor_shift is a ring homomorphism") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        IntPoly f = random_poly(rng, 8, 50);
        IntPoly g = random_poly(rng, 8, 50);
        mpz_class a = static_cast<long>(rng() % 15) - 7;
        CHECK(taylor_shift(f * g, a) == taylor_shift(f, a) * taylor_shift(g, a));
        CHECK(taylor_shift(f + g, a) == taylor_shift(f, a) + taylor_shift(g, a));
    }
}

TEST_CASE("lewis polynomials") {
    CHECK(lewis_polynomial(1) == IntPoly({-1, 0, 1}));            // X^2 - 1
    CHECK(lewis_polynomial(2) == IntPoly({0, -4, 0, 1}));         // X^3 - 4X
    CHECK(lewis_polynomial(3) == IntPoly({9, 0, -10, 0, 1}));     // X^4 - 10X^2 + 9
    CHECK_THROWS_AS(lewis_polynomial(0), std::domain_error);

    for (unsigned long n = 1; n <= 8; ++n) {
        IntPoly p = lewis_polynomial(n);
        CHECK(p.degree() == static_cast<int>(n) + 1);
        // p_n(-X) = (-1)^{n+1} p_n(X)
        for (int q = 0; q <= p.degree(); ++q) {
            mpz_class flipped = (q % 2 == 0) ? p.coeff(q) : -p.coeff(q);
            mpz_class expected = ((n + 1) % 2 == 0) ? p.coeff(q) : -p.coeff(q);
            CHECK(flipped == expected);
        }
        // vanishes at every designated root
        for (unsigned long j = 0; j <= n; ++j)
            CHECK(p(mpz_class(n) - 2 * mpz_class(j)) == 0);
    }
}

TEST_CASE("q_l polynomials") {
    CHECK(q_polynomial(1) == IntPoly::x());
    CHECK(q_polynomial(2) == IntPoly({0, -2, 1}));
    CHECK(q_polynomial(3) == IntPoly({0, 8, -6, 1}));
    CHECK_THROWS_AS(q_polynomial(0), std::domain_error);
    for (unsigned long l = 1; l <= 9; ++l) {
        IntPoly q = q_polynomial(l);
        CHECK(q.coeff(0) == 0);
        CHECK(q.degree() == static_cast<int>(l));
        CHECK(q.coeff(l) == 1);
    }
}

TEST_CASE("text grammar") {
    CHECK(parse_polynomial("2X^4 - 3X^2 + 8X") == IntPoly({0, 8, -3, 0, 2}));
    CHECK(parse_polynomial("x") == IntPoly::x());
    CHECK(parse_polynomial("-X") == IntPoly({0, -1}));
    CHECK(parse_polynomial(" 12 ") == IntPoly::constant(12));
    CHECK(parse_polynomial("X^2+1") == IntPoly({1, 0, 1}));
    CHECK_THROWS_AS(parse_polynomial("X + X"), std::invalid_argument);  // duplicate exponent
    CHECK_THROWS_AS(parse_polynomial("2X 3"), std::invalid_argument);   // missing sign
    CHECK_THROWS_AS(parse_polynomial(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_polynomial("X^"), std::invalid_argument);
}

TEST_CASE("format and parse round-trip") {
    CHECK(format_polynomial(IntPoly()) == "0");
    CHECK(format_polynomial(IntPoly({0, 8, -3, 0, 2})) == "2X^4 - 3X^2 + 8X");
    CHECK(format_polynomial(IntPoly({-1, 0, 1})) == "X^2 - 1");

    std::mt19937_64 rng(4321);
    for (int trial = 0; trial < 200; ++trial) {
        IntPoly f = random_poly(rng, 10, 99999);
        CHECK(parse_polynomial(format_polynomial(f)) == f);
        CHECK(polynomial_from_json(polynomial_to_json(f)) == f);
    }
}
