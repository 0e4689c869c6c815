#pragma once

#include "fanozl/chow.hpp"

namespace fanozl {

// ---------------------------------------------------------------------------
// Invariants of M = Z(F) in X for a generic section of F: adjunction data,
// chi's through the Koszul complex, Gauss-Bonnet, and Hodge numbers through
// the conormal + Koszul double complex with a sound determinacy policy
// (exact values only when the spectral staircase forces them, intervals
// otherwise, tightened by chi / Euler constraints and the symmetries).
// ---------------------------------------------------------------------------

struct ZeroLocusSpec {
    Ambient X;
    ExprPtr F;  // cutting bundle; zero_expr() for M = X
};

struct Interval {
    Int lo = 0, hi = 0;
    bool exact() const { return lo == hi; }
};

struct HodgeResult {
    int dim = 0;
    std::vector<std::vector<Interval>> h;  // [p][q], 0..dim
    bool determinate = false;
    std::vector<std::string> assumptions;

    const Interval& at(int p, int q) const { return h[p][q]; }
};

struct InvariantReport {
    int dim = 0;
    std::vector<int> minus_K;
    bool fano = false;
    Int h0_minus_K = 0;  // chi(-K) when not Fano (flagged)
    bool h0_is_chi = false;
    Int volume = 0, chi_tangent = 0, euler = 0;
    HodgeResult hodge;
};

int zl_dim(const ZeroLocusSpec& spec);
std::vector<int> minus_K(const ZeroLocusSpec& spec);
bool is_fano(const ZeroLocusSpec& spec);

// chi(M, e|_M) = sum_r (-1)^r chi_hrr(X, wedge^r F^dual (x) e)
Int koszul_chi(const ZeroLocusSpec& spec, const ExprPtr& e);
Int koszul_chi(const ZeroLocusSpec& spec, const Decomp& e);

Int h0_minus_K(const ZeroLocusSpec& spec);  // requires is_fano
Int volume(const ZeroLocusSpec& spec);
Int chi_tangent(const ZeroLocusSpec& spec);
Int euler_top(const ZeroLocusSpec& spec);

// exact chi(Omega^p_M) through the conormal complex + koszul_chi (HRR route)
Int chi_omega(const ZeroLocusSpec& spec, int p);

HodgeResult hodge(const ZeroLocusSpec& spec);

InvariantReport invariants(const ZeroLocusSpec& spec, bool with_hodge = true);

}  // namespace fanozl
