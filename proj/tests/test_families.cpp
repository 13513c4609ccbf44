#include "doctest.h"

#include "lrtriple/families.hpp"

using namespace lrt;

namespace {

const Field Q = Field::rationals();

bool has(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST_CASE("closed-form phi") {
    const FamilySpec nbg1 = parse_spec("nbg1:d=2", Q);
    CHECK(closed_form_phi(nbg1, 0, 1) == Q.from_int(-2));
    CHECK(closed_form_phi(nbg1, 0, 2) == Q.from_int(-2));
    const FamilySpec bdt = parse_spec("bdt:d=4,t=2,r0=1,r1=1,r2=-1/2", Q);
    CHECK(closed_form_phi(bdt, 0, 2) == Q.one());
    CHECK(closed_form_phi(bdt, 0, 4) == Q.from_int(3));
    CHECK(closed_form_phi(bdt, 0, 1) == Q.parse("-3/2"));
    CHECK(closed_form_phi(bdt, 0, 3) == Q.from_int(-1));
    const FamilySpec b2 = parse_spec("b2:r0=1,r1=1,r2=-1", Q);
    CHECK(closed_form_phi(b2, 0, 1) == Q.from_int(-1));
    CHECK(closed_form_phi(b2, 0, 2) == Q.one());
    CHECK_THROWS_AS(closed_form_phi(b2, 0, 3), InvalidSpec);
}

TEST_CASE("closed-form alpha and beta") {
    const FamilySpec nbg1 = parse_spec("nbg1:d=4", Q);
    for (unsigned i = 0; i <= 4; ++i) CHECK(closed_form_alpha(nbg1, 0, i) == factorial(Q, i).inv());
    const FamilySpec nbng = parse_spec("nbng:d=4,t=2", Q);
    CHECK(closed_form_alpha(nbng, 0, 4) == Q.parse("1/3"));
    const FamilySpec bd1 = parse_spec("bd1:d=6", Q);
    CHECK(closed_form_beta(bd1, 0, 4) == Q.parse("1/2"));
    CHECK(closed_form_beta(bd1, 0, 2) == Q.from_int(-1));
    CHECK(closed_form_beta(bd1, 0, 3).is_zero());
    CHECK_THROWS_AS(closed_form_beta(nbg1, 0, 1), NoClosedForm);
    CHECK_THROWS_AS(closed_form_beta(parse_spec("b2:", Q), 0, 1), NoClosedForm);
}

TEST_CASE("constraint violations") {
    CHECK(has(validate_spec(parse_spec("nbg:d=3,q=1", Q)), "q^i != 1 (1 <= i <= d)"));
    CHECK(has(validate_spec(parse_spec("nbg:d=3,q=-1", Q)), "q^i != 1 (1 <= i <= d)"));
    CHECK(has(validate_spec(parse_spec("nbg:d=2,q=-1", Q)), "q^{d+1} != -1"));
    CHECK(has(validate_spec(parse_spec("nbg1:d=5", Field::prime(3))), "Char(F) is 0 or greater than d"));
    CHECK(has(validate_spec(parse_spec("bdt:d=4,t=2,r0=1,r1=1,r2=1", Q)), "rho_0 rho'_0 rho''_0 = -t^{1-d/2}"));
    CHECK(has(validate_spec(parse_spec("nbng:d=5,t=2", Q)), "d is even"));
    CHECK(has(validate_spec(parse_spec("nbng:d=4,t=-1", Q)), "t^i != 1 (1 <= i <= d/2)"));
    CHECK(has(validate_spec(parse_spec("bd1:d=4", Field::prime(2))), "Char(F) is 0 or greater than d/2"));
    CHECK(validate_spec(parse_spec("nbg:d=3,q=2", Q)).empty());
    CHECK(validate_spec(parse_spec("bd1:d=4", Field::prime(3))).empty());
    CHECK_THROWS_AS(construct(parse_spec("nbg:d=3,q=1", Q)), InvalidSpec);
}

TEST_CASE("spec strings and fields") {
    const FamilySpec s = parse_spec("bdt:d=4,t=2,r0=1,r1=1", Q);
    CHECK(*s.rho[2] == Q.parse("-1/2"));
    CHECK(s.str() == "bdt:d=4,t=2,r0=1,r1=1,r2=-1/2");
    CHECK(parse_spec(s.str(), Q).str() == s.str());
    CHECK(parse_spec("bd1:d=4", Q).str() == "bd1:d=4,r0=1,r1=1,r2=-1");
    CHECK(parse_spec("nbg:d=3,q=2", Q).display_name() == "NBG_3(Q;2)");
    CHECK_THROWS_AS(parse_spec("xyz:d=3", Q), InvalidSpec);
    CHECK_THROWS_AS(parse_spec("nbg:d=3", Q), InvalidSpec);
    CHECK_THROWS_AS(parse_spec("nbg1:d=3,q=2", Q), InvalidSpec);
    CHECK_THROWS_AS(parse_spec("bdt:d=4,t=2,r0=1", Q), InvalidSpec);
    CHECK(parse_field("q") == Q);
    CHECK(parse_field("gf:101") == Field::prime(101));
    CHECK(parse_field("ratfunc:t").name() == "Q(t)");
    CHECK(parse_field("ratfunc:q/gf:7").name() == "GF(7)(q)");
    CHECK(field_descriptor(parse_field("ratfunc:q/gf:7")) == "ratfunc:q/gf:7");
    CHECK_THROWS_AS(parse_field("gf:10"), InvalidSpec);
    CHECK_THROWS_AS(parse_field("reals"), InvalidSpec);
}

TEST_CASE("construction round trip") {
    const Field fq = Field::rational_functions(Q, "q");
    const Field ft = Field::rational_functions(Q, "t");
    const std::vector<std::pair<std::string, Field>> cases{
        {"nbg:d=3,q=2", Q},         {"nbg:d=4,q=q", fq},        {"nbg1:d=5", Q},
        {"nbng:d=4,t=t", ft},       {"nbng:d=6,t=2", Field::prime(101)},
        {"bdt:d=4,t=t", ft},        {"bdt:d=6,t=3,r0=2,r1=-1", Q},
        {"bd1:d=4,r0=3,r1=1/2", Q}, {"b2:r0=2,r1=3", Field::prime(101)}};
    for (const auto& [text, f] : cases) {
        CAPTURE(text);
        const FamilySpec s = parse_spec(text, f);
        const LRTripleData t = construct(s);
        CHECK(t.bipartite == s.bipartite());
        for (int w = 0; w < 3; ++w) {
            for (std::size_t i = 1; i <= s.d; ++i) CHECK(t.phi(w, static_cast<long>(i)) == closed_form_phi(s, w, i));
            for (std::size_t i = 0; i <= s.d; ++i) {
                CHECK(t.alpha[w][i] == closed_form_alpha(s, w, i));
                CHECK(t.alpha[w][i] == t.alpha[0][i]);
                if (has_closed_form_beta(s)) CHECK(t.beta[w][i] == closed_form_beta(s, w, i));
                if (s.bipartite()) CHECK(t.beta[w][i] == t.beta[0][i]);
            }
        }
        if (!s.bipartite()) {
            for (int w = 0; w < 3; ++w) {
                for (long i = 1; i <= static_cast<long>(s.d); ++i) CHECK(t.phi(w, i) == t.phi(0, i));
            }
        }
        CHECK(is_normalized(t));
        if (s.bipartite()) {
            for (std::size_t i = 0; i <= s.d; ++i) CHECK(t.C()(i, i).is_zero());
        }
    }
}

TEST_CASE("non-degeneracy conditions") {
    for (const char* text : {"nbg:d=5,q=3", "nbg1:d=6", "nbng:d=6,t=2"}) {
        CAPTURE(text);
        const LRTripleData t = construct(parse_spec(text, Q));
        for (long i = 1; i + 1 <= static_cast<long>(t.d); ++i) {
            CHECK(!t.alpha_at(0, i).is_zero());
            CHECK(t.alpha_at(0, i) * t.alpha_at(0, i) * t.phi(0, i) !=
                  t.alpha_at(0, i - 1) * t.alpha_at(0, i + 1) * t.phi(0, i + 1));
        }
    }
    for (const char* text : {"bdt:d=6,t=2", "bd1:d=6"}) {
        CAPTURE(text);
        const LRTripleData t = construct(parse_spec(text, Q));
        for (long i = 1; 2 * i + 2 <= static_cast<long>(t.d); ++i) {
            CHECK(t.alpha_at(0, 2 * i) * t.alpha_at(0, 2 * i) != t.alpha_at(0, 2 * i - 2) * t.alpha_at(0, 2 * i + 2));
            CHECK(t.beta_at(0, 2 * i) * t.beta_at(0, 2 * i) != t.beta_at(0, 2 * i - 2) * t.beta_at(0, 2 * i + 2));
        }
    }
}
