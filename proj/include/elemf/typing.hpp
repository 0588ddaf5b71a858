#pragma once

// Typing derivations: rule-tagged trees certifying Γ ⊢ r : τ, their checker,
// the rank of a type, and the structural surgery the reduction and
// cut-elimination passes build on (weakening, substitution of types and of
// derivations).
//
// A derivation stores its context once at the root. Contexts of inner nodes
// are implied: every ImpI node extends the context of its premise by the
// abstracted variable. Nodes store their subject term and conclusion type;
// the subject of a composite node shares its premises' term pointers.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "elemf/error.hpp"
#include "elemf/syntax.hpp"

namespace elemf {

enum class Rule : std::uint8_t { Ax, ImpI, ImpE, ProdI, ProdEL, ProdER, AllI, AllEClosed, AllEFlat };

std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view s);

using Context = std::map<std::string, Type, std::less<>>;

struct DerivNode;
using DNode = std::shared_ptr<const DerivNode>;

struct DerivNode {
    Rule rule;
    Term term;
    Type type;
    Type inst;  // AllEClosed/AllEFlat: the instantiating type
    std::vector<DNode> kids;
};

struct Derivation {
    Context ctx;
    DNode root;

    const Term& term() const { return root->term; }
    const Type& type() const { return root->type; }
};

//------------------------------------------------------------------------------
// Node constructors. They compute the conclusion from the premises; they do
// not validate side conditions (check_derivation does).

DNode make_ax(const std::string& x, Type t);
DNode make_imp_i(const std::string& x, Type domain, DNode body);
DNode make_imp_e(DNode fun, DNode arg);
DNode make_prod_i(DNode left, DNode right);
DNode make_prod_el(DNode p);
DNode make_prod_er(DNode p);
DNode make_all_i(DNode body, const TyVar& alpha);
/// Picks AllEClosed for a closed instance and AllEFlat otherwise.
DNode make_all_e(DNode d, Type instance);

//------------------------------------------------------------------------------
// Checking

struct CheckResult {
    bool ok = true;
    std::string code;     // e.g. "axiom-miss", "not-closed", "not-flat", "eigenvariable"
    std::string message;
    std::string path;     // "root/1/0": child indices from the root

    explicit operator bool() const { return ok; }
};

CheckResult check_derivation(const Derivation& d);

/// Some n ≤ 2 with is_level(t, n).
bool well_leveled(const Type& t);

//------------------------------------------------------------------------------
// Rank

/// rk(α)=0, rk(ρ×σ)=max, rk(ρ→σ)=max(rk ρ+1, rk σ), rk(∀α.ρ)=rk ρ.
/// Throws Error("level") unless t is of level 0 or 1.
unsigned rank(const Type& t);
unsigned rank(const Context& ctx);
bool level_at_most_one(const Type& t);

//------------------------------------------------------------------------------
// Structural operations

std::size_t node_count(const DNode& d);
std::size_t height(const DNode& d);

/// Rebuilds the node with new premises, recomputing the subject term.
DNode with_kids(const DNode& d, std::vector<DNode> kids);

std::set<std::string> type_var_names(const Context& ctx);
void collect_type_var_names(const DNode& d, std::set<std::string>& out);

/// Renames the free type variable `from` to `to` throughout the subtree.
DNode rename_type_var(const DNode& d, const TyVar& from, const TyVar& to);

/// Substitutes σ for α in every type of the subtree; ∀I nodes generalizing α
/// are left alone and eigenvariables captured by σ are renamed first.
DNode subst_type(const DNode& d, const TyVar& alpha, const Type& sigma);
Derivation subst_type(const Derivation& d, const TyVar& alpha, const Type& sigma);

/// Renames the free term variable y to the fresh name y2 in the subtree.
DNode rename_term_var(const DNode& d, const std::string& y, const std::string& y2);

/// Weakening: the same derivation over `wider` ⊇ ctx. ∀I eigenvariables that
/// occur free in `wider` are renamed.
Derivation weaken(const Derivation& d, const Context& wider);
/// Node-level weakening into `target`, for a subtree valid in a smaller context.
DNode weaken_into(const DNode& d, const Context& target);

/// Given body: ctx, x:ρ ⊢ s : σ and arg: ctx ⊢ r : ρ, returns ctx ⊢ s[x:=r] : σ.
/// `ctx` is the context of the result; it may itself bind an outer x.
/// Leaves x:ρ ⊢ x are replaced by `arg` weakened into the leaf's context;
/// binders capturing free variables of r are renamed.
DNode subst_derivation(const DNode& body, const Context& ctx, const std::string& x, const DNode& arg);

/// Walks past ∀E(∀I(·)) pairs on top of `d` by substituting the instance into
/// the generalized premise. Returns d unchanged if there is nothing to remove.
DNode expose(const DNode& d);

}  // namespace elemf
