#pragma once

#include "fanozl/symfunc.hpp"

#include <memory>
#include <optional>

namespace fanozl {

// ---------------------------------------------------------------------------
// Ambient spaces: products of Grassmannians Gr(k,n), with P^m = Gr(1,m+1).
// Homogeneous bundles are direct sums of irreducibles
//     (x)_i  Sigma_{a_i} U_i^dual  (x)  Sigma_{b_i} Q_i
// with det Q ~ O(1).  Summands are kept in a canonical form where each a_i is
// a partition proper with last entry 0 (det-twists live on the Q side).
// ---------------------------------------------------------------------------

struct GrFactor {
    int k = 1, n = 2;
    int dim() const { return k * (n - k); }
    bool is_proj() const { return k == 1; }
    friend auto operator<=>(const GrFactor&, const GrFactor&) = default;
};

struct Ambient {
    std::vector<GrFactor> factors;
    int dim() const {
        int d = 0;
        for (const auto& f : factors) d += f.dim();
        return d;
    }
    size_t size() const { return factors.size(); }
    friend auto operator<=>(const Ambient&, const Ambient&) = default;
};

struct Summand {
    std::vector<Weight> a;  // a[i]: length k_i   (for Sigma U_i^dual)
    std::vector<Weight> b;  // b[i]: length n_i-k_i (for Sigma Q_i)
    friend auto operator<=>(const Summand&, const Summand&) = default;
};

using Decomp = std::map<Summand, Coef>;  // summand -> multiplicity

Summand trivial_summand(const Ambient& X);
Summand line_summand(const Ambient& X, const std::vector<int>& tw);
void canonicalize(Summand& s);
Summand dual_summand(const Summand& s);
Int summand_rank(const Summand& s);
bool is_line(const Summand& s);
// the twist vector if s is a line bundle
std::optional<std::vector<int>> line_twist(const Summand& s);

// --- expression trees -------------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class K { U, Q, O, Dual, Wedge, Sym, Schur, Tensor, Sum };
    K kind;
    int factor = 0;          // U, Q: 0-based factor index
    std::vector<int> tw;     // O
    int deg = 0;             // Wedge, Sym
    Weight lam;              // Schur
    std::vector<std::pair<ExprPtr, Coef>> kids;  // Sum has mults; else mult=1
};

ExprPtr atom_U(int factor);
ExprPtr atom_Q(int factor);
ExprPtr atom_O(std::vector<int> tw);
ExprPtr dual(ExprPtr e);
ExprPtr wedge(int k, ExprPtr e);
ExprPtr sym(int k, ExprPtr e);
ExprPtr schur(Weight lam, ExprPtr e);
ExprPtr tensor(std::vector<ExprPtr> es);   // '*' and '#' both land here
ExprPtr sum(std::vector<std::pair<ExprPtr, Coef>> es);
ExprPtr zero_expr();

// --- operations -------------------------------------------------------------

Decomp normalize(const Ambient& X, const ExprPtr& e);
Int expr_rank(const Ambient& X, const ExprPtr& e);

// rebuild one canonical irreducible as an expression (tensor of Schur atoms
// and a line twist); normalize(summand_expr(X,s)) == {{s,1}}
ExprPtr summand_expr(const Ambient& X, const Summand& s);

Decomp decomp_tensor(const Ambient& X, const Decomp& A, const Decomp& B);
Decomp decomp_dual(const Decomp& A);
void decomp_add(Decomp& A, const Decomp& B, Coef mult = 1);

// wedge^j / Sym^j tables of a normalized bundle, j = 0..kmax
std::vector<Decomp> wedge_table(const Ambient& X, const Decomp& A, int kmax);
std::vector<Decomp> sym_table(const Ambient& X, const Decomp& A, int kmax);

// exterior/symmetric powers of a single irreducible
Decomp summand_wedge(const Summand& s, int j);
Decomp summand_sym(const Summand& s, int j);

// cotangent bundle Omega^1_X and its exterior powers (cached per ambient)
const Decomp& omega1(const Ambient& X);
const Decomp& omega(const Ambient& X, int k);
Decomp tangent(const Ambient& X);

// --- cohomology -------------------------------------------------------------

using CohomologyTable = std::map<int, Int>;  // degree -> dimension

// Borel-Bott-Weil for one irreducible: at most one nonzero degree.
std::optional<std::pair<int, Int>> bbw(const Ambient& X, const Summand& s);

CohomologyTable cohomology(const Ambient& X, const Decomp& A);
CohomologyTable cohomology(const Ambient& X, const ExprPtr& e);
Int euler_char_bbw(const Ambient& X, const Decomp& A);

bool is_globally_generated(const Ambient& X, const ExprPtr& e);
std::vector<int> canonical_degrees(const Ambient& X);  // K_X = O(-n_1,...,-n_m)

}  // namespace fanozl
