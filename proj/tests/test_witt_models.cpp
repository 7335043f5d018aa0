#include <catch_amalgamated.hpp>

#include <map>
#include <set>

#include <annpoly/polynomial.hpp>
#include <annpoly/witt_models.hpp>

using namespace annpoly;

namespace {

const FieldKind kFiniteKinds[] = {FieldKind::F3, FieldKind::F5, FieldKind::F7, FieldKind::F9};

// discriminant (-1)^{d(d-1)/2} det, as a square-class code
unsigned discriminant(const FieldModel& F, const std::vector<unsigned>& entries) {
    unsigned det = 1;
    for (unsigned a : entries) det = F.mul(det, a);
    std::size_t d = entries.size();
    if ((d * (d - 1) / 2) % 2 == 1) det = F.mul(det, F.neg(1));
    return F.square_class(det == 0 ? 1 : det);
}

}  // namespace

TEST_CASE("field tables satisfy the field axioms") {
    for (FieldKind kind : kFiniteKinds) {
        FieldModel F(kind);
        unsigned q = F.q();
        for (unsigned a = 0; a < q; ++a) {
            CHECK(F.add(a, 0) == a);
            CHECK(F.mul(a, 1) == a);
            if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
            for (unsigned b = 0; b < q; ++b) {
                CHECK(F.add(a, b) == F.add(b, a));
                CHECK(F.mul(a, b) == F.mul(b, a));
                for (unsigned c = 0; c < q; ++c) {
                    CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
                    CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
                    CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
                }
            }
        }
        // exactly (q-1)/2 nonzero squares
        unsigned squares = 0;
        for (unsigned a = 1; a < q; ++a)
            if (F.is_square(a)) ++squares;
        CHECK(squares == (q - 1) / 2);
    }
}

TEST_CASE("levels by brute-force search") {
    CHECK(FieldModel(FieldKind::F3).level() == 2);
    CHECK(FieldModel(FieldKind::F5).level() == 1);
    CHECK(FieldModel(FieldKind::F7).level() == 2);
    CHECK(FieldModel(FieldKind::F9).level() == 1);
    CHECK(FieldModel(FieldKind::ComplexLike).level() == 1);
    CHECK(FieldModel(FieldKind::RealLike).level() == 0);  // infinite
}

TEST_CASE("witt_reduce basics") {
    FieldModel f5(FieldKind::F5);
    CHECK(witt_reduce(f5, {{1, f5.neg(1)}}).is_zero());

    FieldModel f3(FieldKind::F3);
    WittClass two_ones = witt_reduce(f3, {{1, 1}});
    CHECK_FALSE(two_ones.is_zero());
    CHECK(two_ones.rep == std::vector<unsigned>{1, 1});

    CHECK(witt_reduce(f3, {{1, 1, 1, 1}}).is_zero());
    CHECK_THROWS_AS(witt_reduce(f3, {{1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(witt_reduce(FieldModel(FieldKind::RealLike), {{1}}), std::domain_error);
}

TEST_CASE("class arithmetic matches the known Witt rings") {
    FieldModel f3(FieldKind::F3);
    WittClass one = unit_class(f3);
    // <1> has additive order 4 in W(F_3)
    WittClass acc = zero_class(f3);
    for (int i = 0; i < 3; ++i) {
        acc = class_add(f3, acc, one);
        CHECK_FALSE(acc.is_zero());
    }
    acc = class_add(f3, acc, one);
    CHECK(acc.is_zero());

    FieldModel f5(FieldKind::F5);
    WittClass x = witt_reduce(f5, {{1, 2}});
    CHECK(class_mul(f5, x, x).is_zero());
    CHECK(class_add(f5, x, zero_class(f5)) == x);

    CHECK_THROWS_AS(class_add(f3, one, unit_class(f5)), std::invalid_argument);
}

TEST_CASE("enumerate_classes") {
    FieldModel f3(FieldKind::F3);
    auto all3 = enumerate_classes(4, f3, Family::All);
    CHECK(all3.size() == 4);  // W(F_3) = Z/4

    FieldModel f5(FieldKind::F5);
    auto all5 = enumerate_classes(4, f5, Family::All);
    CHECK(all5.size() == 4);
    std::set<std::string> names;
    for (const WittClass& c : all5) names.insert(c.to_string());
    CHECK(names == std::set<std::string>{"0", "<1>", "<2>", "<1,2>"});

    auto even3 = enumerate_classes(4, f3, Family::Even);
    for (const WittClass& c : even3) CHECK(c.rep.size() % 2 == 0);
    CHECK(even3.size() == 2);  // 0 and <1,1>

    FieldModel real(FieldKind::RealLike);
    auto torsion = enumerate_classes(4, real, Family::Torsion);
    REQUIRE(torsion.size() == 1);
    CHECK(torsion[0].is_zero());
    auto sigs = enumerate_classes(3, real, Family::All);
    CHECK(sigs.size() == 7);  // signatures -3..3

    FieldModel cx(FieldKind::ComplexLike);
    CHECK(enumerate_classes(4, cx, Family::All).size() == 2);
}

TEST_CASE("ring axioms on the full class set") {
    for (FieldKind kind : kFiniteKinds) {
        FieldModel F(kind);
        auto classes = enumerate_classes(4, F, Family::All);
        WittClass one = unit_class(F);
        for (const WittClass& a : classes) {
            CHECK(class_add(F, a, zero_class(F)) == a);
            CHECK(class_mul(F, a, one) == a);
            CHECK(class_add(F, a, class_neg(F, a)).is_zero());
            for (const WittClass& b : classes) {
                CHECK(class_add(F, a, b) == class_add(F, b, a));
                CHECK(class_mul(F, a, b) == class_mul(F, b, a));
                for (const WittClass& c : classes) {
                    CHECK(class_add(F, class_add(F, a, b), c) ==
                          class_add(F, a, class_add(F, b, c)));
                    CHECK(class_mul(F, class_mul(F, a, b), c) ==
                          class_mul(F, a, class_mul(F, b, c)));
                    CHECK(class_mul(F, a, class_add(F, b, c)) ==
                          class_add(F, class_mul(F, a, b), class_mul(F, a, c)));
                }
            }
        }
    }
}

TEST_CASE("classification against the reduction oracle") {
    // over F_q: equal class iff dimension parity and discriminant agree
    for (FieldKind kind : kFiniteKinds) {
        FieldModel F(kind);
        unsigned max_dim = F.q() == 9 ? 3 : 4;
        std::vector<std::vector<unsigned>> forms = {{}};
        std::vector<std::vector<unsigned>> frontier = {{}};
        for (unsigned d = 1; d <= max_dim; ++d) {
            std::vector<std::vector<unsigned>> next;
            for (const auto& f : frontier)
                for (unsigned a = 1; a < F.q(); ++a) {
                    auto g = f;
                    g.push_back(a);
                    next.push_back(g);
                }
            forms.insert(forms.end(), next.begin(), next.end());
            frontier = std::move(next);
        }
        // each invariant pair names exactly one class, and distinct pairs
        // name distinct classes
        std::map<std::pair<unsigned, unsigned>, WittClass> by_invariants;
        std::set<WittClass> seen;
        for (const auto& f : forms) {
            std::pair<unsigned, unsigned> key{f.size() % 2, discriminant(F, f)};
            WittClass c = witt_reduce(F, {f});
            auto [it, inserted] = by_invariants.emplace(key, c);
            if (inserted) {
                REQUIRE(seen.insert(c).second);
            } else {
                REQUIRE(it->second == c);
            }
        }
        REQUIRE(by_invariants.size() == 4);
    }
}

TEST_CASE("height kills every class") {
    for (FieldKind kind : kFiniteKinds) {
        FieldModel F(kind);
        unsigned h = 2 * F.level();
        for (const WittClass& c : enumerate_classes(4, F, Family::All))
            CHECK(scalar_mul(F, mpz_class(h), c).is_zero());
    }
}

TEST_CASE("unary Pfister relation in every model") {
    // <<a>>^p = 2^{p-1} <<a>>
    for (FieldKind kind : kFiniteKinds) {
        FieldModel F(kind);
        for (unsigned a : {1u, F.nonresidue()}) {
            WittClass pf = witt_reduce(F, {{1, a}});
            WittClass pw = unit_class(F);
            for (unsigned p = 1; p <= 4; ++p) {
                pw = class_mul(F, pw, pf);
                CHECK(pw == scalar_mul(F, mpz_class(1) << (p - 1), pf));
            }
        }
    }
    FieldModel real(FieldKind::RealLike);
    for (long a : {1l, -1l}) {
        WittClass pf{FieldKind::RealLike, {}, 1 + a};
        WittClass pw = unit_class(real);
        for (unsigned p = 1; p <= 4; ++p) {
            pw = class_mul(real, pw, pf);
            CHECK(pw == scalar_mul(real, mpz_class(1) << (p - 1), pf));
        }
    }
}

TEST_CASE("polynomial evaluation on classes") {
    FieldModel f3(FieldKind::F3);
    IntPoly sq_minus_one({-1, 0, 1});  // X^2 - 1
    for (unsigned a : {1u, 2u}) {
        WittClass x = witt_reduce(f3, {{a}});
        CHECK(eval_poly_on_class(f3, sq_minus_one, x).is_zero());
    }

    // X^4 kills every even class of W(F_3) (2^4 = 0 mod 4)
    for (const WittClass& x : enumerate_classes(4, f3, Family::Even))
        CHECK(eval_poly_on_class(f3, IntPoly::monomial(1, 4), x).is_zero());

    FieldModel cx(FieldKind::ComplexLike);
    for (const WittClass& x : enumerate_classes(4, cx, Family::All))
        CHECK(eval_poly_on_class(cx, IntPoly::constant(2), x).is_zero());
}

TEST_CASE("Lewis annihilation on small dimensions") {
    for (FieldKind kind : {FieldKind::F3, FieldKind::F5, FieldKind::F7}) {
        FieldModel F(kind);
        for (unsigned n = 1; n <= 4; ++n) {
            AnnihilationReport rep =
                    verify_annihilation(lewis_polynomial(n), F, Family::ExactDim, 4, n);
            CHECK(rep.pass);
            CHECK(rep.classes_checked >= 1);
        }
    }
}

TEST_CASE("annihilation reports serialize") {
    FieldModel f5(FieldKind::F5);
    AnnihilationReport rep = verify_annihilation(IntPoly::constant(2), f5, Family::All, 4);
    nlohmann::json j = annihilation_report_to_json(rep);
    CHECK(j.at("pass") == true);
    CHECK(j.at("model") == "f5");
    CHECK(j.at("counterexample").is_null());

    std::string csv = annihilation_report_to_csv(rep);
    CHECK(csv.rfind("model,family,polynomial,classes_checked,pass,counterexample\n", 0) == 0);

    // a failing report carries the violating class
    AnnihilationReport bad = verify_annihilation(IntPoly::constant(1), f5, Family::All, 2);
    CHECK_FALSE(bad.pass);
    CHECK(bad.counterexample.has_value());
}
