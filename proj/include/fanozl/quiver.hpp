#pragma once

#include "fanozl/dsl.hpp"
#include "fanozl/zerolocus.hpp"

namespace fanozl {

// ---------------------------------------------------------------------------
// Quiver flag data (acyclic quiver, unique source, dimension vector) and the
// translation into a zero locus in a product of Grassmannians: build the
// Grassmann-bundle tower vertex by vertex, flatten each step through the
// Euler sequence, and translate the Schur-power bundle tuples.
// ---------------------------------------------------------------------------

struct QuiverDatum {
    std::vector<std::vector<int>> adjacency;  // A[i][j] = #arrows i -> j
    std::vector<int> dims;                    // r, dims[0] = 1 (source)

    struct Token {
        Weight lam;      // empty = trivial token
        bool dualized = true;  // true = white square (Schur of W^dual)
    };
    struct Tuple {
        std::vector<Token> tokens;  // one per non-source vertex, in order
        Coef mult = 1;
    };
    std::vector<Tuple> bundle;
};

void validate(const QuiverDatum& d);  // throws naming each violation
int quiver_dim(const QuiverDatum& d);

struct TowerStep {
    int vertex;                                // which vertex this step realizes
    int rank;                                  // r_vertex
    std::vector<std::pair<int, int>> fiber;    // (source vertex, multiplicity);
                                               // vertex 0 stands for O summands
};

struct TowerSpec {
    std::vector<TowerStep> steps;  // topologically sorted (smallest-first)
    int dim = 0;
};

TowerSpec build_tower(const QuiverDatum& d);

// one Grassmann-bundle step flattened onto a new ambient factor
struct TowerPart {
    int u_factor = -1;          // -1: trivial carrier O; else U of that factor
    std::vector<int> twist;     // line twist over the base ambient
    int mult = 1;
};

struct StepFlattening {
    Ambient ambient;                                  // base + one new factor
    std::vector<std::pair<ExprPtr, Coef>> structural; // (Q_i # U_new^d)^(m_i)
    std::vector<int> step_twist;  // twist of W_step = U_new (x) O(step_twist)
    bool absorbed = false;        // fiber was line (x) trivial
};

StepFlattening flatten_step(const Ambient& base, int h,
                            const std::vector<TowerPart>& parts);

struct TranslationResult {
    QuiverDatum datum;
    TowerSpec tower;
    Ambient ambient;                    // one factor per non-source vertex
    std::vector<int> vertex_factor;     // vertex -> factor index (-1 = source)
    ExprPtr structural;                 // G, from the flattening
    ExprPtr translated;                 // E', from the bundle tuples
    int reductions = 0;                 // hyperplane cuts absorbed into P-factors

    ExprPtr cutting() const;            // G (+) E'
    ZeroLocusSpec spec() const { return {ambient, cutting()}; }
    std::string dsl() const;            // canonical presentation string
};

TranslationResult flatten(const QuiverDatum& d);
ZeroLocusSpec to_zero_locus(const QuiverDatum& d);

// absorb cuts that are pure hyperplane sections of projective-space factors
// (Z(O(0,..,1,..,0)) in ... x P^m x ... = ... x P^{m-1} x ...)
void simplify(TranslationResult& t);

QuiverDatum quiver_from_json(const std::string& text);
QuiverDatum load_quiver(const std::string& path);

}  // namespace fanozl
