#include <doctest.h>

#include "support.hpp"

using namespace elemf;
using namespace elemf::testing;

TEST_SUITE("syntax") {

TEST_CASE("free variables") {
    CHECK(free_vars(T("\\x. x")).empty());
    CHECK(free_vars(T("\\f. \\x. f (g x)")) == std::set<std::string>{"g"});
    CHECK(free_vars(T("<x, fst x>")) == std::set<std::string>{"x"});
}

TEST_CASE("substitution") {
    CHECK(alpha_eq(substitute(T("f y"), "y", numeral(0)), T("f (\\s. \\z. z)")));

    // capture: the binder has to move out of the way
    Term r = substitute(T("\\y. x"), "x", var("y"));
    REQUIRE(r->kind == TermKind::Lam);
    CHECK(r->name != "y");
    CHECK(r->left->kind == TermKind::Var);
    CHECK(r->left->name == "y");
    CHECK(alpha_eq(r, T("\\w. y")));

    CHECK(alpha_eq(substitute(var("x"), "x", T("<a,b>")), T("<a,b>")));
    CHECK(alpha_eq(substitute(T("\\x. x"), "x", var("z")), T("\\x. x")));
}

TEST_CASE("type substitution") {
    TyVar a0{"a", 0}, a1{"a", 1}, b0{"b", 0};
    Type pr = prod(tvar(a0), tvar(a0));
    CHECK(type_eq(type_substitute(numeral_type(tvar(a0)), a0, pr), numeral_type(pr)));
    CHECK(type_eq(type_substitute(arrow(tvar(a1), tvar(a1)), a1, nat0()), arrow(nat0(), nat0())));
    CHECK(type_eq(type_substitute(tvar(a0), b0, pr), tvar(a0)));
    // quantified occurrences are left alone
    CHECK(type_eq(type_substitute(nat0(), TyVar{"a", 0}, pr), nat0()));
}

TEST_CASE("levels and flat types") {
    CHECK(is_level(nat0(), 1));
    CHECK(is_level(nat0(), 2));
    CHECK_FALSE(is_level(nat0(), 0));
    CHECK(is_level(nat1(), 2));
    CHECK_FALSE(is_level(nat1(), 1));
    CHECK_FALSE(is_level(Ty("a1_x"), 2));
    CHECK(is_level(Ty("a1_x"), 1));
    CHECK(is_flat(Ty("a0_a * (a0_a * a0_a)")));
    CHECK_FALSE(is_flat(Ty("a0_a -> a0_a")));
    CHECK_FALSE(is_flat(Ty("a1_a * a1_a")));
    // ∀ may only mention its own variable
    CHECK_FALSE(is_level(Ty("forall a0_a. a0_a -> a0_b"), 1));
}

TEST_CASE("alpha equivalence") {
    CHECK(alpha_eq(T("\\x. x"), T("\\y. y")));
    CHECK_FALSE(alpha_eq(T("\\x. \\y. x"), T("\\y. \\x. x")));
    CHECK(alpha_eq(numeral(3), T("\\g. \\w. g (g (g w))")));
    CHECK_FALSE(alpha_eq(T("\\x. y"), T("\\x. z")));
}

TEST_CASE("concrete syntax") {
    CHECK(alpha_eq(T("#2"), numeral(2)));
    CHECK(alpha_eq(T("a b c"), app(app(var("a"), var("b")), var("c"))));
    CHECK(alpha_eq(T("\\x y. x"), lam("x", lam("y", var("x")))));
    CHECK(alpha_eq(T("fst <a, b>"), fst(pair(var("a"), var("b")))));
    CHECK(type_eq(Ty("N(a0_a)"), numeral_type(tvar("a", 0))));
    CHECK(type_eq(Ty("a0_a * a0_a -> a0_a"), arrow(prod(tvar("a", 0), tvar("a", 0)), tvar("a", 0))));
    CHECK(type_eq(Ty("Nat0"), nat0()));
    CHECK(alpha_eq(parse_term(to_string(T("\\f x. f <x, snd y>"))), T("\\f x. f <x, snd y>")));
    CHECK(type_eq(parse_type(to_string(tower(nat0(), 3))), tower(nat0(), 3)));
    CHECK_THROWS_AS(T("\\x"), Error);
    CHECK_THROWS_AS(Ty("a0_a ->"), Error);
}

TEST_CASE("sizes") {
    CHECK(size(var("x")) == 1);
    CHECK(size(numeral(2)) == 7);
    CHECK(is_lambda_free(T("fst <a, b c>")));
    CHECK_FALSE(is_lambda_free(numeral(0)));
}

}
