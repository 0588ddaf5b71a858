#pragma once

// Height/cut-rank annotated derivations Γ ⊢ᵐₖ t : τ over types of level at
// most 1, and the passes that bring a derivation of a numeral down to cut
// rank 1, then to a quasinormal term, then to its normal form.
//
// Heights follow the rules: an axiom has height 0, a unary rule adds one to
// its premise, a binary rule adds one to the higher premise. A derivation
// has cut rank k when every →E node's argument type has rank below k.
//
// Every pass computes on trees; the node budget bounds the size of any tree
// materialized along the way and is reported as Error("budget").

#include <cstdint>
#include <string>
#include <vector>

#include "elemf/reduction.hpp"
#include "elemf/typing.hpp"

namespace elemf {

inline constexpr std::size_t kDefaultNodeBudget = 1'000'000;

struct RankedDerivation {
    Derivation d;
    std::uint64_t m = 0;  // height bound
    unsigned k = 0;       // cut-rank bound
};

/// |t|: the number of symbols of t written out, i.e. variable occurrences,
/// binders and projections. Application and pairing are juxtaposition and
/// brackets and do not count. With this measure |t| ≤ 2^m holds for every
/// Γ ⊢ᵐₖ t : τ; the constructor count size(t) only satisfies size(t) < 2^(m+1).
std::size_t length(const Term& t);

/// h ≤ 2_k(m), without materializing the tower.
bool within_tower(std::uint64_t h, unsigned k, std::uint64_t m);

/// Tree node count, stopping once it exceeds `cap`. Shared subtrees count
/// once per occurrence.
std::size_t tree_size(const DNode& d, std::size_t cap = SIZE_MAX);

//------------------------------------------------------------------------------
// Bound audits. Every RankedDerivation returned by the passes below is
// checked for height ≤ m and |t| ≤ 2^m; the rank-reduction passes also check
// their output height against the lemma bounds. Violations are counted, not
// thrown, so a test run can report them all.

struct AuditStats {
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    std::string last_violation;
};

AuditStats audit_stats();
void reset_audit_stats();

//------------------------------------------------------------------------------

/// Minimal m (the tree height) and minimal k (1 + the largest rank of an →E
/// argument type, 0 without →E). Throws Error("level") if some type in the
/// derivation or its context is not of level ≤ 1.
RankedDerivation annotate(const Derivation& d);

/// Validity of the underlying derivation plus the ranked side conditions.
/// Codes: the checker's codes, "level", "cut-too-big", "height", "size".
CheckResult check_ranked(const RankedDerivation& rd);

/// Throws Error("weaken") unless wider ⊇ Γ, m ≥ rd.m and k ≥ rd.k.
RankedDerivation weaken_ranked(const RankedDerivation& rd, const Context& wider, std::uint64_t m, unsigned k);

/// Γ[α₀:=σ] ⊢ᵐₖ t : τ[α₀:=σ]. Throws Error("not-flat") unless σ is flat and
/// α is a level-0 variable.
RankedDerivation subst_flat_ranked(const RankedDerivation& rd, const TyVar& alpha, const Type& sigma);

/// Replaces every ∀E directly above a ∀I by the premise of the ∀I with the
/// instance substituted. m is the new height, which is not larger.
RankedDerivation remove_alli_alles(const RankedDerivation& rd);

/// remove_alli_alles, and contraction of every fst⟨r,s⟩ / snd⟨r,s⟩ in which
/// r or s is not λ-free. Idempotent.
RankedDerivation preprocess(const RankedDerivation& rd);
bool is_preprocessed(const DNode& d);

/// body: Γ,x:ρ ⊢ᵐₖ s : σ and arg: Γ ⊢^m'ₖ r : ρ give Γ ⊢^(m+m')ₖ s[x:=r] : σ.
/// Throws Error("mismatch") if the contexts or ρ do not line up.
RankedDerivation cut(const RankedDerivation& body, const std::string& x, const RankedDerivation& arg);

struct Inversion {
    std::string x;
    RankedDerivation rd;  // Γ,x:ρ ⊢ᵐₖ t' : σ with λx.t' =β t
};

/// Γ ⊢ᵐₖ t : ρ→σ with rk Γ ≤ k and rk ρ ≥ k. Preprocesses as it descends.
/// Throws Error("precondition") on a violated rank condition or a variable
/// head, Error("impossible") on a head shape the typing rules exclude.
Inversion invert(const RankedDerivation& rd);

/// Γ ⊢ᵐₖ₊₁ t : ρ with rk Γ ≤ k, rk ρ ≤ k+1 gives Γ ⊢^(2^m)ₖ t' : ρ, t' =β t.
/// The result's m is its actual height.
RankedDerivation reduce_rank(const RankedDerivation& rd, std::size_t node_budget = kDefaultNodeBudget);

struct PassReport {
    std::string pass;
    std::uint64_t m = 0;
    unsigned k = 0;
    std::size_t term_size = 0;
    std::size_t nodes = 0;
};

/// ⊢ᵐₖ₊₁ t : τ with rk τ ≤ 2 (N(α), Nat0) down to cut rank 1, height ≤ 2_k(m).
/// Appends one record per pass, the input included, to `report` if given.
RankedDerivation cut_elim_to_rank1(const RankedDerivation& rd, std::size_t node_budget = kDefaultNodeBudget,
                                   std::vector<PassReport>* report = nullptr);

/// Every redex is fst⟨r,s⟩ or snd⟨r,s⟩ with λ-free r and s.
bool is_quasinormal(const Term& t);

/// Γ ⊢ᵐ₁ t : τ gives Γ ⊢^(2^m)₁ t' : τ with t' quasinormal and t' =β t.
/// Throws Error("precondition") if k > 1 or the result is not quasinormal.
RankedDerivation quasinormalize(const RankedDerivation& rd, std::size_t node_budget = kDefaultNodeBudget);

struct FinishResult {
    Term term;
    std::uint64_t steps = 0;
    std::size_t peak = 0;  // largest intermediate term, in constructor nodes
};

/// Contracts the projections of a quasinormal term. Every contraction
/// shrinks the term; peak ≤ size(t) is checked. Throws
/// Error("precondition") on a term that is not quasinormal.
FinishResult finish_quasinormal(const Term& t);

struct SoundEval {
    std::uint64_t value = 0;
    std::uint64_t direct = 0;       // decode(normalize(t'[x:=n]))
    std::size_t occurrences = 0;    // k in the height bound
    unsigned c = 0;                 // max rank of the instances ξ
    unsigned cut_rank = 0;          // annotated cut rank after substitution
    std::uint64_t height = 0;       // annotated height after substitution
    std::uint64_t height_bound = 0; // occurrences·(n+2) + 2·size(t')
    std::uint64_t final_height = 0;
    std::size_t peak = 0;
    std::vector<PassReport> passes;
};

/// x:Nat1 ⊢ t' : Nat0 with t' normal. Substitutes ⊢ n : N(ξ) for every
/// ∀E-instance x : N(ξ), eliminates cuts down to rank 1, quasinormalizes
/// and reads off the numeral. Throws Error("precondition") on an input of
/// the wrong shape, Error("audit") when the height bound after substitution
/// fails, Error("not-numeral") if the result is not a numeral,
/// Error("mismatch") if it disagrees with direct normalization.
SoundEval evaluate_via_cutelim(const Derivation& d, std::uint64_t n, std::size_t node_budget = kDefaultNodeBudget,
                               std::uint64_t fuel = kDefaultFuel);

}  // namespace elemf
