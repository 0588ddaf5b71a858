#pragma once

// Concrete syntax for terms and types.
//
//   term ::= ident | '\' ident+ '.' term | term term | '<' term ',' term '>'
//          | 'fst' term | 'snd' term | '#' nat | '(' term ')'
//   type ::= tyvar | type '->' type | type '*' type | 'forall' tyvar '.' type
//          | 'Nat0' | 'Nat1' | 'N' '(' type ')' | '(' type ')'
//
// Application is left-associative, '->' and '*' associate to the right, '*'
// binds tighter than '->'. Type variables are spelled a<level>_<name>.
// `fst`/`snd` take a single atomic operand. '#n' expands to \f x. f^n x.

#include <string_view>

#include "elemf/error.hpp"
#include "elemf/syntax.hpp"

namespace elemf {

Term parse_term(std::string_view text);
Type parse_type(std::string_view text);

}  // namespace elemf
