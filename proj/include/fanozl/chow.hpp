#pragma once

#include "fanozl/bundles.hpp"

namespace fanozl {

// ---------------------------------------------------------------------------
// Chow ring of a product of Grassmannians in the Schubert basis.  A class is
// a rational combination of tuples of boxed partitions (one per factor,
// trimmed, inside the k_i x (n_i-k_i) rectangle).  Multiplication is
// factorwise Littlewood-Richardson with truncation outside the box.
// ---------------------------------------------------------------------------

struct ChowClass {
    Ambient X;
    std::map<std::vector<Weight>, Rat> c;

    bool is_zero() const { return c.empty(); }
    ChowClass graded(int d) const;   // degree-d part
    int top_degree() const;
};

ChowClass chow_zero(const Ambient& X);
ChowClass chow_one(const Ambient& X);
// sigma_lambda on factor i (lambda inside the box)
ChowClass chow_sigma(const Ambient& X, size_t i, const Weight& lam);
ChowClass chow_hyperplane(const Ambient& X, size_t i);
// c_1-type class from line degrees: sum t_i H_i
ChowClass chow_degree_class(const Ambient& X, const std::vector<int>& t);

ChowClass chow_add(const ChowClass& a, const ChowClass& b);
ChowClass chow_scale(const ChowClass& a, const Rat& r);
ChowClass chow_mul(const ChowClass& a, const ChowClass& b);
ChowClass chow_pow(const ChowClass& a, int m);
Rat integrate(const ChowClass& a);

// multiplicative inverse of 1 + (positive-degree part); truncated at dim X
ChowClass class_inverse(const ChowClass& a);
// exp of a positive-degree class, truncated
ChowClass class_exp(const ChowClass& a);

// Chern character of a normalized bundle, truncated at degree dmax
ChowClass chern_character(const Ambient& X, const Decomp& A, int dmax = -1);
ChowClass chern_character(const Ambient& X, const ExprPtr& e, int dmax = -1);
// total Chern class (integer coefficients; throws on integrality failure)
ChowClass chern_class(const Ambient& X, const Decomp& A);
ChowClass chern_class(const Ambient& X, const ExprPtr& e);

ChowClass tangent_chern(const Ambient& X);   // total c(T_X)
ChowClass todd_class(const Ambient& X);

// chi(X, E) by Hirzebruch-Riemann-Roch; asserts integrality
Int chi_hrr(const Ambient& X, const Decomp& A);
Int chi_hrr(const Ambient& X, const ExprPtr& e);

// Gauss-Bonnet Euler number of the ambient
Int euler_number(const Ambient& X);

}  // namespace fanozl
