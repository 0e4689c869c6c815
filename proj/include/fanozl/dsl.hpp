#pragma once

#include "fanozl/bundles.hpp"

#include <string>

namespace fanozl {

// ---------------------------------------------------------------------------
// Bundle DSL, the interchange format between commands:
//   factors  P(n), Gr(k,n)        ambient = factors joined by 'x'
//   atoms    U[i], Q[i], O(t1,...,tm)     (i is 1-based)
//   ops      dual(e), wedge^k(e), sym^k(e), S[l1,l2,...](e),
//            * (tensor), # (box tensor, synonym), +, ^m (multiplicity)
//   spec     "<ambient> :: <expr>"
// parse(print(e)) returns a structurally equal tree.
// ---------------------------------------------------------------------------

struct ParsedSpec {
    Ambient X;
    ExprPtr F;
};

Ambient parse_ambient(const std::string& s);
ExprPtr parse_expr(const std::string& s, const Ambient& X);
ParsedSpec parse_spec(const std::string& s);

std::string print_ambient(const Ambient& X);
std::string print_expr(const ExprPtr& e);
std::string print_spec(const Ambient& X, const ExprPtr& e);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// canonical printout of a normalized bundle (sorted irreducible summands);
// round-trips through parse + normalize
std::string print_decomp(const Ambient& X, const Decomp& d);

}  // namespace fanozl
