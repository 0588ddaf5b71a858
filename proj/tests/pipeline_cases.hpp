#pragma once

#include <string>
#include <utility>
#include <vector>

#include "elemf/builder.hpp"
#include "elemf/cutelim.hpp"
#include "elemf/elemc.hpp"
#include "elemf/stdterms.hpp"

namespace elemf::testing {

// x : Nat1 ⊢ f x extra.. : Nat0, reduced to normal form with its derivation.
inline Derivation apply_x(const Derivation& f, const std::vector<Build>& extra = {}) {
    Build b = b_app(b_closed(f), b_ax("x"));
    for (const auto& e : extra) b = b_app(b, e);
    auto r = reduce_with_derivation(build(b, Context{{"x", nat1()}}));
    if (!r.normal) throw Error("fuel-exhausted", "pipeline case did not normalize");
    return r.derivation;
}

// ⊢ #c : Nat1
inline Build nat1_numeral(std::uint64_t c) {
    return b_gen(1, "a", [c](const TyVar& a) { return b_numeral(c, tvar(a)); });
}

// x : Nat1 ⊢ cd x : Nat0, with x instantiated at Nat0.
inline Derivation cd_of_x() {
    Build b = b_app(b_closed(cast_down_nat0().derivation), b_inst(b_ax("x"), nat0()));
    auto r = reduce_with_derivation(build(b, Context{{"x", nat1()}}));
    return r.derivation;
}

struct PipelineCase {
    std::string name;
    Derivation d;
    std::uint64_t offset = 0;  // value at n is scale·n + offset
    std::uint64_t scale = 1;
    std::uint64_t expect(std::uint64_t n) const { return scale * n + offset; }
};

// identity, cd x, add x x, add x #c for c ≤ 8, add #c x for c ≤ 7.
inline std::vector<PipelineCase> pipeline_cases() {
    std::vector<PipelineCase> v;
    v.push_back({"id", apply_x(compile_top(e_proj(0, 1)).derivation)});
    v.push_back({"cd x", cd_of_x()});
    v.push_back({"add x x", apply_x(compile_top(e_comp(e_add(), {e_proj(0, 1), e_proj(0, 1)})).derivation), 0, 2});
    const Derivation add = compile_top(e_add()).derivation;
    for (std::uint64_t c = 0; c <= 8; ++c)
        v.push_back({"add x " + std::to_string(c), apply_x(add, {nat1_numeral(c)}), c});
    const Derivation rev = compile_top(e_comp(e_add(), {e_proj(1, 2), e_proj(0, 2)})).derivation;
    for (std::uint64_t c = 0; c <= 7; ++c)
        v.push_back({"add " + std::to_string(c) + " x", apply_x(rev, {nat1_numeral(c)}), c});
    return v;
}

}  // namespace elemf::testing
