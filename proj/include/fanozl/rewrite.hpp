#pragma once

#include "fanozl/quiver.hpp"

namespace fanozl {

// ---------------------------------------------------------------------------
// The lemma catalogue as syntactic rewrite rules on presentations: the
// Grassmann-bundle exchange (a fiber that sits in an Euler-type sequence
// trades for a box cut on a bigger product), the Cayley trick, and the
// flag / blow-up identifications.  Rules fire only on exact matches of the
// stated hypotheses; identifications are annotations, not transformations.
// ---------------------------------------------------------------------------

// a Grassmann-bundle step over a product of Grassmannians, with cuts that may
// involve Schur powers of the relative dual tautological bundle
struct TowerPresentation {
    Ambient base;
    int h = 1;
    std::vector<TowerPart> fiber;
    struct Cut {
        ExprPtr base_part;  // bundle on the base
        Weight rel;         // Schur weight on U_R^dual (empty = none)
        Coef mult = 1;
    };
    std::vector<Cut> cuts;
};

struct RewriteStep {
    std::string rule;         // which lemma fired
    std::string description;  // the identification, in words
    std::vector<int> bound_factors;  // 0-based factors matched (if any)
    std::string residual;     // DSL of the remaining cuts, restricted
};

// forward: flatten the step through the Euler sequences; the fiber must be a
// sum of trivial and tautological carriers (a common line twist is absorbed
// first, reproducing the smaller presentations)
ZeroLocusSpec apply_seq(const TowerPresentation& t);

// backward: reassemble a Grassmann-bundle step from the box cuts on the given
// factor; throws when no exact pattern matches
TowerPresentation apply_seq_backward(const ZeroLocusSpec& s, int factor);

// pull out a common line-bundle twist of the fiber, adjusting relative cuts
// by the determinant rule
TowerPresentation twist_normalize(const TowerPresentation& t);

std::vector<RewriteStep> recognize(const ZeroLocusSpec& s);
std::vector<RewriteStep> recognize(const TowerPresentation& t);

}  // namespace fanozl
