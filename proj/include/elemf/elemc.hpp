#pragma once

// Elementary recursive function definitions, their reference interpreter,
// and the compiler to typed terms.
//
// DSL (s-expressions; ';' starts a comment):
//   zero | succ | add | sub | mul | (proj i n) | (comp g h1 ... hm) | (bsum g) | (bprod g)
//
// (bsum g) has the arity of g; its last argument is the bound x, and g
// receives the summation index as its FIRST argument:
//   (bsum g)(y1..yk, x) = sum_{i<x} g(i, y1..yk)

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "elemf/reduction.hpp"
#include "elemf/typing.hpp"

namespace elemf {

using BigNat = boost::multiprecision::cpp_int;

enum class ElemKind { Zero, Succ, Add, Sub, Mul, Proj, Comp, BSum, BProd };

struct ElemNode;
using ElemExpr = std::shared_ptr<const ElemNode>;

struct ElemNode {
    ElemKind kind;
    std::size_t index = 0;  // Proj
    std::size_t width = 0;  // Proj: arity
    ElemExpr g;             // Comp, BSum, BProd
    std::vector<ElemExpr> hs;
};

ElemExpr e_zero();
ElemExpr e_succ();
ElemExpr e_add();
ElemExpr e_sub();
ElemExpr e_mul();
ElemExpr e_proj(std::size_t i, std::size_t n);
ElemExpr e_comp(ElemExpr g, std::vector<ElemExpr> hs);
ElemExpr e_bsum(ElemExpr g);
ElemExpr e_bprod(ElemExpr g);

/// Throws Error("arity") on inconsistent arities.
std::size_t arity(const ElemExpr& e);
std::size_t depth(const ElemExpr& e);

ElemExpr parse_elem(std::string_view text);
std::string to_string(const ElemExpr& e);

/// Throws Error("arity") on a wrong argument count, Error("overflow") when a
/// value leaves 64 bits.
std::uint64_t eval_oracle(const ElemExpr& e, const std::vector<std::uint64_t>& args);

/// 2_k(n). Throws Error("budget") once the value needs more than max_bits bits.
BigNat two_tower(unsigned k, const BigNat& n, std::size_t max_bits = 1 << 20);

/// An s with f(x) <= 2_s(sum x) for all x, from a fixed increment per constructor.
unsigned growth_bound(const ElemExpr& e);

struct CompiledFn {
    Term term;
    Derivation derivation;
    unsigned k = 0;
    unsigned l = 0;
    unsigned r = 0;
    std::vector<Type> etas;
    std::size_t arity = 0;
};

/// ⊢ t : etas → (Nat0^(k+l))^n → Nat0^(k), with t #L.. #n.. =βη #f(n..)
/// whenever L >= 2_r(sum n).
CompiledFn compile_lemma(const ElemExpr& e, unsigned k);

/// η ::= Nat0^(k) | N(η) | N(η × η)
bool eta_shape_ok(const Type& eta, unsigned k);

struct TopOptions {
    /// Move r up to an even value >= 2 and instantiate the inputs at η^(r/2).
    bool even_r = false;
};

struct TopCompiled {
    Term term;
    Derivation derivation;
    CompiledFn lemma;
    /// Number of #2 applications forming each parameter.
    unsigned r = 0;
    std::size_t arity = 0;
};

/// ⊢ \n.. s z. T n.. s z : Nat1^n → Nat0
TopCompiled compile_top(const ElemExpr& e, const TopOptions& opts = {});

/// The parameter type the inputs are instantiated at so that r applications
/// of #2 to their sum land in η. ρ_0 = η, ρ_(i+1) = N(Y → Y) for ρ_i = N(Y).
Type parameter_type(const Type& eta, unsigned r);

/// Applies the numerals, normalizes with the strict evaluator and decodes.
/// Throws Error("fuel-exhausted"), Error("budget-exceeded") or
/// Error("not-numeral").
std::uint64_t run_compiled(const TopCompiled& c, const std::vector<std::uint64_t>& args,
                           std::uint64_t fuel = kDefaultFuel);
/// Runs a lemma-level term with every parameter set to #L; decodes up to η.
std::uint64_t run_lemma(const CompiledFn& c, std::uint64_t L, const std::vector<std::uint64_t>& args,
                        std::uint64_t fuel = kDefaultFuel);

}  // namespace elemf
