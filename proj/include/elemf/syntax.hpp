#pragma once

// Terms of the untyped lambda calculus with pairs, and leveled types.
//
// Both are immutable trees behind shared pointers; every operation here is a
// pure function and safe to call concurrently.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace elemf {

//------------------------------------------------------------------------------
// Terms

enum class TermKind : std::uint8_t { Var, App, Lam, Pair, Fst, Snd };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
    TermKind kind;
    std::string name;  // Var: the variable; Lam: the bound variable
    Term left;         // App: function; Lam: body; Pair: left; Fst/Snd: operand
    Term right;        // App: argument; Pair: right
};

Term var(std::string name);
Term app(Term fun, Term arg);
Term app(Term fun, std::initializer_list<Term> args);
Term lam(std::string bound, Term body);
Term lam(std::initializer_list<std::string> bound, Term body);
Term pair(Term left, Term right);
Term fst(Term t);
Term snd(Term t);

/// Church numeral \f x. f^n x.
Term numeral(std::uint64_t n);

/// Number of constructor nodes.
std::size_t size(const Term& t);
std::set<std::string> free_vars(const Term& t);
bool occurs_free(const Term& t, std::string_view x);
bool is_closed(const Term& t);
bool is_lambda_free(const Term& t);

/// Capture-avoiding t[x := s].
Term substitute(const Term& t, std::string_view x, const Term& s);

bool alpha_eq(const Term& a, const Term& b);

/// Returns `base` or a primed/numbered variant for which `taken` is false.
std::string fresh_name(std::string_view base, const std::function<bool(const std::string&)>& taken);

std::string to_string(const Term& t);

//------------------------------------------------------------------------------
// Types

enum class TypeKind : std::uint8_t { Var, Arrow, Prod, Forall };

struct TyVar {
    std::string name;
    unsigned level = 0;
    auto operator<=>(const TyVar&) const = default;
    bool operator==(const TyVar&) const = default;
};

struct TypeNode;
using Type = std::shared_ptr<const TypeNode>;

struct TypeNode {
    TypeKind kind;
    TyVar var;   // Var: the variable; Forall: the bound variable
    Type left;   // Arrow/Prod: left; Forall: body
    Type right;  // Arrow/Prod: right
};

Type tvar(std::string name, unsigned level);
Type tvar(const TyVar& v);
Type arrow(Type from, Type to);
Type arrows(std::initializer_list<Type> chain);  // right-nested
Type prod(Type left, Type right);
Type forall(const TyVar& bound, Type body);

/// N(t) = (t -> t) -> (t -> t)
Type numeral_type(const Type& t);
/// Nat0 = forall a0. N(a0), Nat1 = forall a1. N(a1)
Type nat0();
Type nat1();
/// t^(0) = t, t^(k+1) = N(t^(k))
Type tower(const Type& base, unsigned k);

std::set<TyVar> free_type_vars(const Type& t);
bool is_closed(const Type& t);
bool type_occurs_free(const Type& t, const TyVar& v);
void collect_type_var_names(const Type& t, std::set<std::string>& out);

Type type_substitute(const Type& t, const TyVar& v, const Type& s);

/// Membership in the grammar of level-n types.
bool is_level(const Type& t, unsigned n);
/// Flat types: level-0 variables combined with products.
bool is_flat(const Type& t);
/// Equality up to renaming of quantified variables.
bool type_eq(const Type& a, const Type& b);

/// If t is structurally (s -> s) -> (s -> s), returns s.
Type match_numeral_type(const Type& t);

std::string to_string(const Type& t);

}  // namespace elemf
