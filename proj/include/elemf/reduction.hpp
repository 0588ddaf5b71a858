#pragma once

// Conversions (λx.r)s ▷ r[x:=s], fst⟨r,s⟩ ▷ r, snd⟨r,s⟩ ▷ s, normal-order
// normalization under an explicit step budget, βη-equality by comparing
// normal forms, the numeral codec, and reduction of typed terms that carries
// the typing derivation along.

#include <cstdint>
#include <optional>

#include "elemf/error.hpp"
#include "elemf/syntax.hpp"
#include "elemf/typing.hpp"

namespace elemf {

inline constexpr std::uint64_t kDefaultFuel = 10'000'000;
/// Cap on machine objects (values, environment cells, spine cells) alive at
/// once in normalize_strict.
inline constexpr std::uint64_t kStrictNodeBudget = 6'000'000;

struct NormalizeResult {
    Term term;            // the normal form, or the reduct reached when fuel ran out
    bool normal = false;  // false: fuel exhausted
    std::uint64_t steps = 0;
    bool budget_exceeded = false;  // normalize_strict: allocation budget hit before fuel
};

/// Contracts the leftmost-outermost redex; nullopt if t is normal.
std::optional<Term> step(const Term& t);

/// No β or projection redex anywhere in t.
bool is_normal(const Term& t);

/// Normal-order reduction. Performs the same contractions as iterating step,
/// in the same order, without re-traversing from the root after each one.
NormalizeResult normalize(const Term& t, std::uint64_t fuel = kDefaultFuel);

/// Strong call-by-value normalization by evaluation: arguments are brought
/// to normal form before they are substituted, so a numeral computed once is
/// not recomputed at each use. Reaches the same normal form as normalize on
/// strongly normalizing terms. `steps` counts contractions of this strategy,
/// nodes read back and eliminations applied to neutral terms; it is not
/// comparable with normalize's count. On fuel or budget exhaustion the
/// returned term is the input.
NormalizeResult normalize_strict(const Term& t, std::uint64_t fuel = kDefaultFuel,
                                 std::uint64_t node_budget = kStrictNodeBudget);

enum class Strategy { NormalOrder, Strict };

/// Exhaustive η-contraction λx.t x ▷ t (x not free in t), bottom-up.
Term eta_contract(const Term& t);

/// Throw Error("undecided") when a side does not normalize within fuel.
bool beta_eq(const Term& a, const Term& b, std::uint64_t fuel = kDefaultFuel, Strategy s = Strategy::NormalOrder);
bool beta_eta_eq(const Term& a, const Term& b, std::uint64_t fuel = kDefaultFuel, Strategy s = Strategy::NormalOrder);

Term encode_numeral(std::uint64_t n);
/// Accepts \f x. f^n x up to α, and \x. x as 1.
std::optional<std::uint64_t> decode_numeral(const Term& t);

struct DerivReduceResult {
    Derivation derivation;
    bool normal = false;
    std::uint64_t steps = 0;
};

/// Leftmost-outermost reduction of the subject, transporting the derivation:
/// β through substitution into the body's derivation, projections by picking
/// the matching premise of the pair's ProdI.
DerivReduceResult reduce_with_derivation(const Derivation& d, std::uint64_t fuel = kDefaultFuel);

/// Fuel from ELEMF_FUEL if set and valid, otherwise kDefaultFuel.
std::uint64_t default_fuel();

}  // namespace elemf
