#pragma once

#include "fanozl/basics.hpp"

#include <mutex>

namespace fanozl {

// ---------------------------------------------------------------------------
// Symmetric-function kernels over exact integers.  All functions are pure;
// the memo caches behind them are mutex-guarded so callers may run in
// parallel.
// ---------------------------------------------------------------------------

using LrTable = std::map<Weight, Coef>;  // nu -> c^nu_{lambda,mu}

// Littlewood-Richardson expansion s_lambda * s_mu = sum c^nu s_nu.
// lambda, mu partitions proper (trimmed).  Rank-free: returns every nu;
// callers filter by length.  Computed by Jacobi-Trudi + Pieri, memoized.
const LrTable& lr(const Weight& lam, const Weight& mu);

// Pieri rule: s_nu * h_r = sum over horizontal strips.
void pieri(const Weight& nu, int r, std::vector<Weight>& out);

// Dimension of the irreducible GL(r) representation with highest weight lam
// (length <= r, entries may be negative; twist-invariant).
Int schur_dim(const Weight& lam, int r);

// Weight multiset of Sigma_lam C^r as map weight-vector(length r) -> mult.
// lam may have negative entries (handled by twisting).
using WeightMultiset = std::map<std::vector<int>, Coef>;
const WeightMultiset& schur_weights(const Weight& lam, int r);

// Cauchy expansions of wedge^k(A (x) B) and Sym^k(A (x) B):
// pairs (lambda, lambda') resp. (lambda, lambda') with lambda = lambda.
std::vector<std::pair<Weight, Weight>> cauchy_wedge(int k);
std::vector<std::pair<Weight, Weight>> cauchy_sym(int k);

// k-th exterior / symmetric power of Sigma_lam C^r decomposed into Schur
// summands: map mu -> coefficient.  lam partition proper, k >= 0.
LrTable plethysm_wedge(const Weight& lam, int r, int k);
LrTable plethysm_sym(const Weight& lam, int r, int k);

// --- multiset machinery (shared with the bundle layer) ---------------------

// k-th exterior (sym) power of a multiset of integer vectors: the multiset of
// sums of k-element sub(multi)sets, with binomial multiplicities.
WeightMultiset multiset_wedge(const WeightMultiset& m, int k);
WeightMultiset multiset_sym(const WeightMultiset& m, int k);

// Decompose a multiset that is a genuine character of GL(r_1) x ... x GL(r_m)
// (weight vectors = concatenated blocks) into irreducibles by repeatedly
// extracting the lexicographically greatest weight.  Returns map from the
// per-block highest-weight tuple to its multiplicity.  Throws on failure
// (multiset not a character).
std::map<std::vector<Weight>, Coef> decompose_character(
    WeightMultiset m, const std::vector<int>& block_ranks);

// character multiset of a product of Schur blocks (tensor over blocks)
WeightMultiset block_character(const std::vector<Weight>& lams,
                               const std::vector<int>& block_ranks);

}  // namespace fanozl
