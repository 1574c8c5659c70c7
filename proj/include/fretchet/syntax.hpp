#pragma once

#include <string>
#include <string_view>

#include "fretchet/funterm.hpp"
#include "fretchet/linterm.hpp"

namespace fretchet {

// Text syntax. Every parser throws ParseError (1-based line and column) on
// malformed input and consumes the whole string.
//
// Linear terms, loosest first:   f + g    g . f (right-nested)    atoms
//   id[V]  zero[V -> W]  2 *.[V]  proj 1  inj[^2] 1  par(f, g)  pow 3 f
//   fanout(f, g)  red 3 -> 1 {(1,1),(2,1)}  contractL tensor{...}  contractR ...
//   bra ket ibra iket ttranspose assoc assoc_inv distrib distrib_inv zip unzip
//   dup  plus  sum 3  rep 3  scan 4
// Bracketed annotations are optional wherever the space can be worked out
// from the argument.
//
// Function terms, loosest first:   f + g, f - g    f * g    g . f    atoms
//   sin cos exp ln tanh  pow -1  pow 3 f  par(f, g)  fanout(f, g)
//   const (1, 2)  lin(f . g)  mul dot matvec tensor hadamard contract
//   and any linear atom.

Space parse_space(std::string_view src);
IndexSet parse_index_set(std::string_view src);
Vector parse_vec(std::string_view src);
LinTerm parse_lin(std::string_view src);
FunTerm parse_fun(std::string_view src);

std::string to_string(const LinTerm& f);
std::string to_string(const FunTerm& t);

}  // namespace fretchet
