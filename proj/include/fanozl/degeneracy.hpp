#pragma once

#include "fanozl/zerolocus.hpp"

namespace fanozl {

// ---------------------------------------------------------------------------
// Degeneracy-locus toolkit: expected dimensions, Eagon-Northcott Euler
// characteristics, conic-bundle discriminants, and the generic-fiber
// dichotomy for factor projections.
// ---------------------------------------------------------------------------

// dim D_k(phi) = dim X - (e-k)(f-k) for generic phi with E (x) F gg
int expected_dim(int dimX, int e, int f, int k);

// chi(O_{D_{f-1}(phi)}) for phi: E -> F' with rk E > rk F' and the expected
// codimension e-f+1 attained (caller's responsibility; checked via
// expected_dim and reported, not enforced):
//   chi(O_D) = chi(O_base)
//            - sum_{j=0}^{e-f} (-1)^j chi(base, wedge^{f+j}E (x) Sym^j F'^dual
//                                              (x) det F'^dual)
Int en_chi(const ZeroLocusSpec& base, const ExprPtr& E, const ExprPtr& Fp);

struct ConicData {
    ChowClass delta;       // [Delta] = 2 c1 + 3 k
    ChowClass delta_sing;  // 4 (k^3 + 2k^2c1 + kc1^2 + kc2 + c1c2 - c3)
    Rat deg_delta;         // against h^(dim-1) * c_top(F_base)
    Rat deg_delta_sing;    // against h^(dim-3) * c_top(F_base)
};

// classes c1, c2, c3 of the rank-3 conic bundle datum (the globally
// generated side E^dual of the quadratic form K^dual -> Sym^2 E^dual),
// k = c1 of the value line bundle K
ConicData conic_discriminant(const ZeroLocusSpec& base, const ChowClass& c1,
                             const ChowClass& c2, const ChowClass& c3,
                             const ChowClass& k);
// convenience overload taking the bundle expressions; checks rk E = 3
ConicData conic_discriminant(const ZeroLocusSpec& base, const ExprPtr& E,
                             const ExprPtr& K);

struct ProjectionProfile {
    int to_factor = 0;         // 0-based factor the projection lands in
    ZeroLocusSpec base;        // target factor cut by the pure summands on it
    bool fiber_empty = false;
    ZeroLocusSpec fiber;       // generic fiber (valid when !fiber_empty)
    int e = 0, f = 0;          // phi: E_t^dual -> H^0(E_o) (x) O, ranks (e,f)
    // (rank bound l, expected dim of D_l(phi) inside the cut base)
    std::vector<std::pair<int, int>> strata;
    std::string caveat;
};

// spec on Gr_1 x Gr_2 whose cutting bundle contains exactly one box summand
// E_1 (x) E_2; projects to `to_factor` and applies the dichotomy
//   rk E_1 rk E_2 <= dim(other factor)  =>  generic fiber Z(E_other^{rk E_t})
// against the empty-fiber case.
ProjectionProfile projection_profile(const ZeroLocusSpec& spec, int to_factor);

}  // namespace fanozl
