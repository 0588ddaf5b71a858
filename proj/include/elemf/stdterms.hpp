#pragma once

// The arithmetic terms of the completeness construction, each with a typing
// derivation at a requested instance. Tower types: Nat0^(0) = Nat0,
// Nat0^(j+1) = N(Nat0^(j)).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "elemf/builder.hpp"
#include "elemf/typing.hpp"

namespace elemf {

using Args = std::vector<std::uint64_t>;

struct NamedTerm {
    std::string name;
    Term term;
    Derivation derivation;
    std::string property;
    /// Number of numeral arguments the operational property talks about.
    std::size_t arity = 0;
    /// The large-parameter condition under which `semantics` is guaranteed.
    std::function<bool(const Args&)> precondition;
    std::function<std::uint64_t(const Args&)> semantics;
};

Type tower0(unsigned j);

/// suc/add/mul at N(τ) → ... → N(τ).
NamedTerm basic(const std::string& name, const Type& tau);
/// suc/add/mul at Nat0 → ... → Nat0.
NamedTerm basic_nat0(const std::string& name);
/// suc/add/mul at Nat0^(j); j = 0 is the Nat0 instance.
NamedTerm basic_at(const std::string& name, unsigned j);

/// cd : N(N(τ)) → N(τ)
NamedTerm cast_down(const Type& tau);
/// cd : N(Nat0) → Nat0
NamedTerm cast_down_nat0();
/// cd : Nat0^(j+1) → Nat0^(j)
NamedTerm cast_down_at(unsigned j);

NamedTerm predecessor();
/// sub : Nat0 → N(Nat0) → Nat0
NamedTerm subtraction();
/// χ0 : N(τ) → τ → τ → τ
NamedTerm chi_zero(const Type& tau);
/// T0 := \n x s z s' z'. χ0 n (x s z s' z') (s (x s z) s' z')
///    : Nat0^(k) → Nat0^(k+1) → Nat0^(k+1)
/// with T0 #0 #m = #m and T0 #(n+1) #m = #(m+1).
NamedTerm t_zero(unsigned k);

/// cu_k : Nat0^(k+2) → Nat0^(k) → Nat0^(k+1); cu_0 is the base typecast cu.
NamedTerm cast_up(unsigned k);
/// subt_k : Nat0^(k+1) → Nat0^(k) → Nat0^(k) → Nat0^(k) for k ≥ 1 (subt_1 is
/// the base subt). subt_0 := \m n c. sub (cd n) c : Nat0^(1) → Nat0^(1) →
/// Nat0^(1) → Nat0 ignores its parameter.
NamedTerm subt(unsigned k);
/// cu^l_k : Nat0^(k+l+1) → Nat0^(k) → Nat0^(k+l)
NamedTerm cast_up_iter(unsigned l, unsigned k);
/// χ̃0 : (Nat0^(j))^3 → Nat0^(j), j ≥ 1
NamedTerm chi_zero_lifted(unsigned j);

enum class SumMode { Sum, Prod };

/// The step function of a bounded sum or product, at level j = k+l+1:
///   T := \x y. χ̃0 (subt v m y) x (op x (cu^l v g(y)))
///   P := \p. <T (fst p) (snd p), suc (snd p)>
/// The surrounding context must bind `v` : Nat0^(j+1) and `m` : Nat0^(j);
/// g_of(y) builds g(..., y) : Nat0^(k+1) from a build of y : Nat0^(j).
Build sum_step_body(SumMode mode, unsigned k, unsigned l, const std::function<Build(Build)>& g_of,
                    const std::string& v = "v", const std::string& m = "m");

/// Closed packaging \v m. P for a unary index function g : Nat0^(k+1+l) → Nat0^(k+1),
/// with type Nat0^(j+1) → Nat0^(j) → (Nat0^(j) × Nat0^(j) → Nat0^(j) × Nat0^(j)).
NamedTerm sum_step(SumMode mode, unsigned k, unsigned l, const Derivation& g);

/// Builds cd^i applied to `arg` : Nat0^(j+i), giving Nat0^(j).
Build cd_power(unsigned i, unsigned j, Build arg);
/// #n at Nat0^(j).
Build numeral_at(std::uint64_t n, unsigned j);

/// Names accepted by `std --name`.
std::vector<std::string> std_names();
/// Dispatch used by the CLI. `k` is the tower index where the term has one.
NamedTerm std_term(const std::string& name, unsigned k, unsigned l = 0);

}  // namespace elemf
