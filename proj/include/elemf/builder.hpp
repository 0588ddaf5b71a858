#pragma once

// Combinators for writing typing derivations the way they are written on
// paper. A Build receives the context it will be placed in and returns the
// derivation node; binders extend that context for their bodies.
//
//   b_lam("n", nat0(), b_app(b_ax("n"), b_ax("s")))
//
// Builders throw std::logic_error when the pieces do not fit together, since
// every caller constructs derivations of known shape.

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>

#include "elemf/typing.hpp"

namespace elemf {

using Build = std::function<DNode(const Context&)>;

Build b_ax(std::string x);
Build b_lam(std::string x, Type domain, Build body);
Build b_app(Build fun, Build arg);
Build b_apps(Build fun, std::initializer_list<Build> args);
Build b_pair(Build left, Build right);
Build b_fst(Build p);
Build b_snd(Build p);
/// ∀E with the given instance (closed or flat, chosen by make_all_e).
Build b_inst(Build d, Type instance);
/// ∀I over a type variable of the given level, fresh for the context.
Build b_gen(unsigned level, std::string hint, std::function<Build(const TyVar&)> body);
/// A derivation of an empty-context judgment, weakened into the surrounding context.
Build b_closed(Derivation d);
/// ⊢ \f x. f^n x : N(τ), of height n+2.
Build b_numeral(std::uint64_t n, Type tau);
/// ⊢ #n : Nat0
Build b_numeral_nat0(std::uint64_t n);

Derivation build(const Build& b, const Context& ctx = {});

}  // namespace elemf
