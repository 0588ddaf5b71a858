#include <doctest.h>

#include "elemf/builder.hpp"
#include "elemf/derivation_io.hpp"
#include "elemf/stdterms.hpp"
#include "support.hpp"

using namespace elemf;
using namespace elemf::testing;

namespace {

DNode raw(Rule r, Term t, Type ty, Type inst, std::vector<DNode> kids) {
    return std::make_shared<const DerivNode>(DerivNode{r, std::move(t), std::move(ty), std::move(inst), std::move(kids)});
}

// x : Nat1 ⊢ x : N(σ) via ∀E-closed, σ not checked here
Derivation inst_nat1(const Type& sigma) {
    Context ctx{{"x", nat1()}};
    DNode ax = make_ax("x", nat1());
    DNode e = raw(Rule::AllEClosed, ax->term, numeral_type(sigma), sigma, {ax});
    return Derivation{ctx, e};
}

}  // namespace

TEST_SUITE("typing") {

TEST_CASE("predecessor derivation checks") {
    auto p = predecessor();
    auto r = check_derivation(p.derivation);
    CHECK_MESSAGE(r.ok, r.code << " " << r.message << " at " << r.path);
    CHECK(type_eq(p.derivation.type(), arrow(nat0(), nat0())));
    CHECK(alpha_eq(p.derivation.term(), T("\\n s z. snd (n (\\p. <s (fst p), fst p>) <z, z>)")));
}

TEST_CASE("axiom miss") {
    Derivation d{Context{}, make_ax("x", tvar("a", 0))};
    auto r = check_derivation(d);
    CHECK_FALSE(r.ok);
    CHECK(r.code == "axiom-miss");
    CHECK(r.path == "root");
}

TEST_CASE("closed instantiation with an open type") {
    auto r = check_derivation(inst_nat1(tvar("b", 0)));
    CHECK_FALSE(r.ok);
    CHECK(r.code == "not-closed");
    CHECK(check_derivation(inst_nat1(nat0())).ok);
    CHECK(check_derivation(inst_nat1(arrow(nat0(), nat0()))).ok);
}

TEST_CASE("flat instantiation") {
    Context ctx{{"x", nat0()}};
    DNode ax = make_ax("x", nat0());
    DNode good = make_all_e(ax, prod(tvar("a", 0), tvar("a", 0)));
    CHECK(good->rule == Rule::AllEFlat);
    CHECK(check_derivation(Derivation{ctx, good}).ok);
    Type bad = arrow(tvar("a", 0), tvar("a", 0));
    auto r = check_derivation(Derivation{ctx, raw(Rule::AllEFlat, ax->term, numeral_type(bad), bad, {ax})});
    CHECK(r.code == "not-flat");
    // Nat0 is closed, but there is no closed type of level 0
    auto r2 = check_derivation(Derivation{ctx, raw(Rule::AllEClosed, ax->term, numeral_type(nat0()), nat0(), {ax})});
    CHECK_FALSE(r2.ok);
}

TEST_CASE("eigenvariable condition") {
    Context ctx{{"y", tvar("a", 0)}};
    DNode lam_ = make_imp_i("x", tvar("a", 0), make_ax("x", tvar("a", 0)));
    DNode gen = make_all_i(lam_, TyVar{"a", 0});
    auto r = check_derivation(Derivation{ctx, gen});
    CHECK_FALSE(r.ok);
    CHECK(r.code == "eigenvariable");
    CHECK(check_derivation(Derivation{Context{}, gen}).ok);
}

TEST_CASE("rank") {
    CHECK(rank(Ty("a0_a * a0_a")) == 0);
    CHECK(rank(Ty("a0_a -> a0_a")) == 1);
    CHECK(rank(nat0()) == 2);
    CHECK(rank(numeral_type(tvar("a", 1))) == 2);
    CHECK(rank(arrow(nat0(), nat0())) == 3);
    CHECK(rank(tower(nat0(), 1)) == 4);
    CHECK(rank(Context{}) == 0);
    CHECK_THROWS_AS(rank(nat1()), Error);
}

TEST_CASE("weakening") {
    Derivation two = build(b_numeral(2, tvar("a", 0)));
    REQUIRE(check_derivation(two).ok);
    CHECK(height(two.root) == 4);

    Context wider{{"y", tvar("a", 0)}};
    Derivation w = weaken(two, wider);
    CHECK(check_derivation(w).ok);
    CHECK(w.ctx == wider);
    CHECK(alpha_eq(w.term(), two.term()));

    Derivation same = weaken(two, two.ctx);
    CHECK(same.root == two.root);

    // Nat0 numeral: its ∀I generalizes a variable that the wider context mentions
    Derivation n0 = build(b_numeral_nat0(3));
    REQUIRE(check_derivation(n0).ok);
    std::set<std::string> names;
    collect_type_var_names(n0.root, names);
    REQUIRE_FALSE(names.empty());
    Context clash;
    for (const auto& nm : names) clash["y_" + nm] = tvar(nm, 0);
    Derivation wc = weaken(n0, clash);
    auto r = check_derivation(wc);
    CHECK_MESSAGE(r.ok, r.code << " " << r.message);
    CHECK(type_eq(wc.type(), nat0()));
}

TEST_CASE("derivation documents round-trip") {
    for (const auto& d : {predecessor().derivation, subtraction().derivation, build(b_numeral_nat0(2))}) {
        std::string text = print_derivation(d);
        Derivation back = parse_derivation(text);
        CHECK(check_derivation(back).ok);
        CHECK(print_derivation(back) == text);
    }
    CHECK_THROWS_AS(parse_derivation("{\"rule\": \"Ax\"}"), Error);
}

TEST_CASE("rule names") {
    for (Rule r : {Rule::Ax, Rule::ImpI, Rule::ImpE, Rule::ProdI, Rule::ProdEL, Rule::ProdER, Rule::AllI,
                   Rule::AllEClosed, Rule::AllEFlat})
        CHECK(rule_from_name(rule_name(r)) == r);
    CHECK_FALSE(rule_from_name("Cut").has_value());
}

}
