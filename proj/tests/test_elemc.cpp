#include <doctest.h>

#include <functional>

#include "elemf/elemc.hpp"
#include "elemf/stdterms.hpp"
#include "support.hpp"

using namespace elemf;
using namespace elemf::testing;

namespace {

void scan_instances(const DNode& d, const std::function<void(const DNode&)>& f) {
    if (d->rule == Rule::AllEClosed || d->rule == Rule::AllEFlat) f(d);
    for (const auto& k : d->kids) scan_instances(k, f);
}

}  // namespace

TEST_SUITE("elemc") {

TEST_CASE("oracle") {
    CHECK(eval_oracle(e_sub(), {3, 5}) == 0);
    CHECK(eval_oracle(e_sub(), {5, 3}) == 2);
    CHECK(eval_oracle(e_bsum(e_proj(0, 2)), {7, 4}) == 6);
    CHECK(eval_oracle(e_bprod(e_comp(e_succ(), {e_proj(0, 1)})), {3}) == 6);
    CHECK(eval_oracle(e_bprod(e_comp(e_succ(), {e_proj(0, 1)})), {0}) == 1);
    CHECK(eval_oracle(e_zero(), {}) == 0);
    CHECK_THROWS_AS(eval_oracle(e_add(), {1}), Error);
    CHECK_THROWS_AS(eval_oracle(e_bprod(e_comp(e_mul(), {e_proj(1, 2), e_proj(1, 2)})), {2, 40}), Error);
}

TEST_CASE("arity and parsing") {
    CHECK(arity(e_comp(e_mul(), {e_proj(0, 2), e_proj(1, 2)})) == 2);
    CHECK_THROWS_AS(arity(e_comp(e_mul(), {e_proj(0, 2)})), Error);
    CHECK_THROWS_AS(arity(e_comp(e_add(), {e_proj(0, 2), e_proj(0, 1)})), Error);
    auto e = parse_elem("(comp mul (proj 0 2) (proj 1 2)) ; product");
    CHECK(to_string(parse_elem(to_string(e))) == to_string(e));
    CHECK(eval_oracle(e, {3, 4}) == 12);
    CHECK(to_string(parse_elem("(bsum (proj 0 2))")) == "(bsum (proj 0 2))");
    CHECK_THROWS_AS(parse_elem("(proj 3 2)"), Error);
    CHECK_THROWS_AS(parse_elem("(bsum"), Error);
}

TEST_CASE("towers") {
    CHECK(two_tower(0, 3) == 3);
    CHECK(two_tower(2, 1) == 4);
    CHECK(two_tower(3, 1) == 16);
    CHECK(two_tower(4, 1) == 65536);
    CHECK_THROWS_AS(two_tower(6, 1), Error);
}

TEST_CASE("lemma base cases") {
    auto s1 = compile_lemma(e_sub(), 1);
    CHECK(alpha_eq(s1.term, subt(1).term));
    CHECK(s1.l == 0);
    CHECK(s1.r == 0);
    REQUIRE(s1.etas.size() == 1);
    CHECK(type_eq(s1.etas[0], tower0(2)));

    auto a0 = compile_lemma(e_add(), 0);
    CHECK(a0.l == 0);
    CHECK(a0.r == 0);
    CHECK(a0.etas.empty());

    auto s0 = compile_lemma(e_sub(), 0);
    CHECK(s0.l == 1);
    CHECK(s0.r == 0);
}

TEST_CASE("lemma derivations and eta shapes") {
    for (auto e : {e_succ(), e_add(), e_sub(), e_mul(), e_proj(1, 2), e_bsum(e_proj(0, 2)),
                   e_comp(e_mul(), {e_proj(0, 2), e_proj(1, 2)}), e_bprod(e_comp(e_succ(), {e_proj(0, 1)}))}) {
        for (unsigned k = 0; k <= 1; ++k) {
            CAPTURE(to_string(e));
            CAPTURE(k);
            auto c = compile_lemma(e, k);
            auto r = check_derivation(c.derivation);
            CHECK_MESSAGE(r.ok, r.code << ": " << r.message);
            for (const auto& eta : c.etas) CHECK(eta_shape_ok(eta, c.k));
            Type expect = tower0(c.k);
            for (std::size_t i = 0; i < c.arity; ++i) expect = arrow(tower0(c.k + c.l), expect);
            for (auto it = c.etas.rbegin(); it != c.etas.rend(); ++it) expect = arrow(*it, expect);
            CHECK(type_eq(c.derivation.type(), expect));
        }
    }
    CHECK(eta_shape_ok(tower0(1), 1));
    CHECK(eta_shape_ok(numeral_type(prod(tower0(1), tower0(1))), 1));
    CHECK_FALSE(eta_shape_ok(arrow(tower0(1), tower0(1)), 1));
}

TEST_CASE("lemma semantics at a large parameter") {
    auto c = compile_lemma(e_bsum(e_proj(0, 2)), 1);
    CHECK(run_lemma(c, 32, {0, 4}) == 6);
    auto m = compile_lemma(e_comp(e_mul(), {e_proj(0, 2), e_proj(1, 2)}), 1);
    CHECK(run_lemma(m, 64, {3, 4}) == 12);
}

TEST_CASE("parameter sufficiency is monotone") {
    auto c = compile_lemma(e_sub(), 1);
    for (std::uint64_t n = 0; n <= 4; ++n)
        for (std::uint64_t k = 0; k <= 4; ++k) {
            bool prev = false;
            for (std::uint64_t L = 0; L <= 8; ++L) {
                bool ok = run_lemma(c, L, {n, k}) == (n > k ? n - k : 0);
                if (prev) CHECK(ok);
                prev = ok;
            }
            CHECK(prev);
        }
}

TEST_CASE("top level") {
    auto sub = compile_top(e_sub());
    CHECK(run_compiled(sub, {5, 3}) == 2);
    CHECK(run_compiled(sub, {3, 5}) == 0);
    CHECK(run_compiled(compile_top(e_bsum(e_proj(0, 2))), {0, 4}) == 6);
    CHECK(run_compiled(compile_top(e_proj(0, 1)), {9}) == 9);
    CHECK(run_compiled(compile_top(e_comp(e_mul(), {e_proj(0, 2), e_proj(1, 2)})), {3, 4}) == 12);
    CHECK(run_compiled(compile_top(e_comp(e_sub(), {e_proj(0, 1), e_proj(0, 1)})), {6}) == 0);
    CHECK(run_compiled(compile_top(e_zero()), {}) == 0);
    // normal-order reduction reaches the same numeral
    CHECK(value_of(apply_nums(sub.term, {4, 1})) == 3);
}

TEST_CASE("top-level derivation audit") {
    for (auto e : {e_sub(), e_bsum(e_proj(0, 2)), e_comp(e_add(), {e_proj(0, 1), e_proj(0, 1)})}) {
        for (bool even : {false, true}) {
            CAPTURE(to_string(e));
            auto t = compile_top(e, TopOptions{even});
            CHECK(is_closed(t.term));
            CHECK(t.derivation.ctx.empty());
            CHECK(check_derivation(t.derivation).ok);
            Type expect = nat0();
            for (std::size_t i = 0; i < t.arity; ++i) expect = arrow(nat1(), expect);
            CHECK(type_eq(t.derivation.type(), expect));
            if (even) CHECK((t.r >= 2 && t.r % 2 == 0));
            scan_instances(t.derivation.root, [](const DNode& d) {
                if (d->rule == Rule::AllEClosed) {
                    CHECK(is_closed(d->inst));
                    CHECK(is_level(d->inst, 1));
                } else {
                    CHECK(is_flat(d->inst));
                }
            });
            // the η-expanded shape \n.. s z. T n.. s z
            Term b = t.term;
            for (std::size_t i = 0; i < t.arity + 2; ++i) {
                REQUIRE(b->kind == TermKind::Lam);
                b = b->left;
            }
            CHECK(b->kind == TermKind::App);
        }
    }
}

TEST_CASE("parameter type") {
    Type eta = tower0(1);
    CHECK(type_eq(parameter_type(eta, 0), eta));
    CHECK(type_eq(parameter_type(eta, 1), numeral_type(arrow(nat0(), nat0()))));
}

}
