#include "doctest.h"

#include <random>

#include "lrtriple/field.hpp"

using namespace lrt;

namespace {

std::vector<Field> contexts() {
    const Field q = Field::rationals();
    const Field gf = Field::prime(101);
    return {q, gf, Field::rational_functions(q, "q"), Field::rational_functions(gf, "t")};
}

Element random_element(const Field& f, std::mt19937& rng) {
    std::uniform_int_distribution<int> small(-9, 9);
    auto scalar = [&] {
        const Field b = f.base();
        int den = small(rng);
        if (den == 0) den = 1;
        return b.from_int(small(rng)) / b.from_int(den);
    };
    if (!f.is_function_field()) return scalar();
    Polynomial num, den;
    for (int k = 0; k < 3; ++k) num.coeffs.push_back(scalar());
    for (int k = 0; k < 2; ++k) den.coeffs.push_back(scalar());
    den.coeffs.push_back(f.base().one());
    return make_rational_function(f, num, den);
}

}  // namespace

TEST_CASE("rational arithmetic") {
    const Field q;
    CHECK(q.parse("2/3") + q.parse("1/6") == q.parse("5/6"));
    CHECK((q.parse("2/3") + q.parse("1/6")).str() == "5/6");
    CHECK(q.parse("-3/4").rational() == mpq_class(-3, 4));
    CHECK(q.parse("6/-4").str() == "-3/2");
    CHECK_THROWS_AS(q.zero().inv(), DivisionByZero);
    CHECK_THROWS_AS(q.parse("1/0"), ParseError);
}

TEST_CASE("prime field arithmetic") {
    const Field f = Field::prime(5);
    CHECK(f.from_int(3).inv() == f.from_int(2));
    CHECK(Field::prime(7).parse("10").residue() == 3);
    CHECK(f.from_int(-1).residue() == 4);
    CHECK(Field::prime(7).characteristic() == 7);
    CHECK_THROWS_AS(Field::prime(9), InvalidContext);
    CHECK(Field::prime(101) == Field::prime(101));
    const Field big = Field::prime(18446744073709551557ULL);
    const Element x = big.from_int(-2);
    CHECK((x * x.inv()).is_one());
}

TEST_CASE("rational function canonical form") {
    const Field fq = Field::rational_functions(Field::rationals(), "q");
    const Element q = fq.variable();
    const Element r = (1 - q * q) / (1 - q);
    CHECK(r == 1 + q);
    CHECK(r.str() == "q + 1");
    const Field ft = Field::rational_functions(Field::rationals(), "t");
    CHECK(ft.parse("(1-t^2)/(1-t)") == ft.parse("1+t"));
    CHECK(ft.parse("2t").str() == "2*t");
    CHECK(ft.parse("1/(2t)").str() == "(1/2)/t");
    CHECK(ft.parse("t^-2") == ft.parse("1/t^2"));
    CHECK_THROWS_AS(ft.parse("q"), ParseError);
    CHECK_THROWS_AS(Element(q) + ft.variable(), ContextMismatch);
    CHECK_THROWS_AS(fq.from_int(1) == ft.from_int(1), ContextMismatch);
    const Element w = q / (2 * q * q + 2);
    const auto& rf = w.rational_function();
    CHECK(rf.den.coeffs.back().is_one());
}

TEST_CASE("parse errors report a position") {
    const Field q;
    try {
        q.parse("1 + * 2");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
    CHECK_THROWS_AS(q.parse(""), ParseError);
    CHECK_THROWS_AS(q.parse("(1"), ParseError);
    CHECK_THROWS_AS(q.parse("x"), ParseError);
}

TEST_CASE("format and parse round trip") {
    std::mt19937 rng(7);
    for (const Field& f : contexts()) {
        for (int n = 0; n < 50; ++n) {
            const Element x = random_element(f, rng);
            CHECK(f.parse(x.str()) == x);
        }
    }
}

TEST_CASE("field axioms on random triples") {
    std::mt19937 rng(11);
    for (const Field& f : contexts()) {
        CAPTURE(f.name());
        for (int n = 0; n < 40; ++n) {
            const Element x = random_element(f, rng), y = random_element(f, rng), z = random_element(f, rng);
            CHECK((x + y) + z == x + (y + z));
            CHECK((x * y) * z == x * (y * z));
            CHECK(x * (y + z) == x * y + x * z);
            CHECK(x + y == y + x);
            CHECK(x * y == y * x);
            CHECK((x - x).is_zero());
            if (!x.is_zero()) {
                CHECK((x * x.inv()).is_one());
                CHECK((y / x) * x == y);
            }
            // re-canonicalizing is the identity
            if (f.is_function_field()) {
                const auto& rf = x.rational_function();
                const Element again = make_rational_function(f, rf.num, rf.den);
                CHECK(again.str() == x.str());
                CHECK(again.hash() == x.hash());
            }
        }
    }
}

TEST_CASE("q-Pochhammer") {
    const Field q;
    CHECK(q_pochhammer(q.from_int(2), q.from_int(2), 2) == q.from_int(3));
    CHECK(q_pochhammer(q.from_int(5), q.from_int(3), 0).is_one());
    CHECK(q_pochhammer(q.zero(), q.from_int(7), 9).is_one());
    std::mt19937 rng(3);
    for (const Field& f : contexts()) {
        const Element a = random_element(f, rng), b = random_element(f, rng);
        for (unsigned n = 0; n <= 12; ++n) {
            CHECK(q_pochhammer(a, b, n + 1) == q_pochhammer(a, b, n) * (1 - a * b.pow(n)));
        }
    }
}

TEST_CASE("factorial and characteristic") {
    CHECK(factorial(Field(), 5) == Field().from_int(120));
    CHECK(factorial(Field::prime(5), 5).is_zero());
    CHECK(Field::rational_functions(Field::prime(3), "x").characteristic() == 3);
    CHECK(is_prime(2));
    CHECK(!is_prime(1));
    CHECK(is_prime(1000000007));
    CHECK(!is_prime(3215031751ULL));
}
