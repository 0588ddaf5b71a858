#include <doctest.h>

#include "elemf/builder.hpp"
#include "elemf/stdterms.hpp"
#include "support.hpp"

using namespace elemf;
using namespace elemf::testing;

namespace {
const Term omega = T("(\\x. x x) (\\x. x x)");
}

TEST_SUITE("reduction") {

TEST_CASE("single steps") {
    auto s = step(T("(\\x. x) y"));
    REQUIRE(s);
    CHECK(alpha_eq(*s, var("y")));
    CHECK_FALSE(step(numeral(3)));

    auto d = step(fst(pair(var("a"), omega)));
    REQUIRE(d);
    CHECK(alpha_eq(*d, var("a")));
    CHECK(alpha_eq(*step(T("snd <a, b>")), var("b")));

    Term t = T("#2 #2");
    int n = 0;
    while (auto nx = step(t)) {
        t = *nx;
        REQUIRE(++n < 1000);
    }
    CHECK(decode_numeral(t) == 4);
}

TEST_CASE("normalize") {
    auto a = normalize(numeral(3), 5);
    CHECK(a.normal);
    CHECK(a.steps == 0);
    CHECK(alpha_eq(a.term, numeral(3)));

    auto b = normalize(T("(#2 #2) #2"), 1'000'000);
    CHECK(b.normal);
    CHECK(decode_numeral(b.term) == 16);

    auto c = normalize(omega, 100);
    CHECK_FALSE(c.normal);
    CHECK(c.steps == 100);
}

TEST_CASE("normal order agrees with step") {
    Term t = T("(\\f. f (fst <#1, #2>)) (\\n. n #2)");
    Term u = t;
    std::uint64_t n = 0;
    while (auto nx = step(u)) {
        u = *nx;
        ++n;
    }
    auto r = normalize(t);
    CHECK(alpha_eq(r.term, u));
    CHECK(r.steps == n);
}

TEST_CASE("strict evaluator") {
    auto r = normalize_strict(T("((#2 #2) #2) #2"));
    CHECK(r.normal);
    CHECK(decode_numeral(r.term) == 65536);
    auto s = normalize_strict(omega, 1000);
    CHECK_FALSE(s.normal);
    CHECK(alpha_eq(normalize_strict(T("\\x. (\\y. y) x")).term, T("\\x. x")));
}

TEST_CASE("equality") {
    CHECK(beta_eta_eq(T("\\x. x"), numeral(1)));
    CHECK_FALSE(beta_eq(T("\\x. x"), numeral(1)));
    CHECK(beta_eq(T("#2 #2"), numeral(4)));
    CHECK_THROWS_AS(beta_eq(omega, var("x"), 100), Error);
    try {
        beta_eq(omega, var("x"), 100);
    } catch (const Error& e) {
        CHECK(e.code() == "undecided");
    }
}

TEST_CASE("eta contraction") {
    CHECK(alpha_eq(eta_contract(T("\\x. f x")), var("f")));
    CHECK(alpha_eq(eta_contract(T("\\x. x x")), T("\\x. x x")));
    CHECK(alpha_eq(eta_contract(numeral(1)), T("\\f. f")));
}

TEST_CASE("numeral codec") {
    CHECK(alpha_eq(encode_numeral(0), T("\\f. \\x. x")));
    CHECK(decode_numeral(T("\\g. \\y. g (g y)")) == 2);
    CHECK(decode_numeral(T("\\x. x")) == 1);
    CHECK_FALSE(decode_numeral(T("\\f. \\x. x f")));
    CHECK_FALSE(decode_numeral(T("\\f. \\x. f (f y)")));
    CHECK(decode_numeral(T("\\x. \\x. x")) == 0);
    CHECK_FALSE(decode_numeral(T("\\x. \\x. x x")));
    for (std::uint64_t n : {0, 1, 7, 100}) CHECK(decode_numeral(encode_numeral(n)) == n);
}

TEST_CASE("exponentiation") {
    for (std::uint64_t n = 0; n <= 3; ++n)
        for (std::uint64_t m = 0; m <= 3; ++m) {
            std::uint64_t p = 1;
            for (std::uint64_t i = 0; i < m; ++i) p *= n;
            CHECK(value_of(app(numeral(m), numeral(n))) == p);
        }
}

TEST_CASE("reduction with derivation") {
    Type a = tvar("a", 0);
    SUBCASE("identity applied") {
        Derivation d = build(b_app(b_lam("x", numeral_type(a), b_ax("x")), b_numeral(2, a)));
        REQUIRE(check_derivation(d).ok);
        auto r = reduce_with_derivation(d);
        CHECK(r.normal);
        CHECK(check_derivation(r.derivation).ok);
        CHECK(alpha_eq(r.derivation.term(), numeral(2)));
        CHECK(type_eq(r.derivation.type(), numeral_type(a)));
    }
    SUBCASE("projection") {
        Derivation d = build(b_fst(b_pair(b_numeral(1, a), b_numeral(2, a))));
        auto r = reduce_with_derivation(d);
        CHECK(alpha_eq(r.derivation.term(), numeral(1)));
        CHECK(check_derivation(r.derivation).ok);
    }
    SUBCASE("cd #3") {
        auto cd = cast_down(a);
        Derivation d = build(b_app(b_closed(cd.derivation), b_numeral(3, numeral_type(a))));
        REQUIRE(check_derivation(d).ok);
        auto r = reduce_with_derivation(d);
        CHECK(r.normal);
        CHECK(check_derivation(r.derivation).ok);
        CHECK(alpha_eq(r.derivation.term(), numeral(3)));
        CHECK(type_eq(r.derivation.type(), numeral_type(a)));
    }
    SUBCASE("fuel") {
        auto cd = cast_down(a);
        Derivation d = build(b_app(b_closed(cd.derivation), b_numeral(3, numeral_type(a))));
        auto r = reduce_with_derivation(d, 2);
        CHECK_FALSE(r.normal);
        CHECK(r.steps == 2);
        CHECK(check_derivation(r.derivation).ok);
    }
}

}
