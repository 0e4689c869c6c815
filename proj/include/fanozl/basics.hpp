#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace fanozl {

using Int = mpz_class;
using Rat = mpq_class;
using Coef = long;  // exact small multiplicities (LR coefficients etc.)

// A weight is a weakly decreasing integer vector.  A "partition proper" has
// all entries >= 0; stored trimmed (no trailing zeros) in symmetric-function
// contexts, padded to the block rank in bundle summands.
using Weight = std::vector<int>;

inline bool weakly_decreasing(const Weight& w) {
    for (size_t i = 1; i < w.size(); ++i)
        if (w[i - 1] < w[i]) return false;
    return true;
}

inline Weight trimmed(Weight w) {
    while (!w.empty() && w.back() == 0) w.pop_back();
    return w;
}

inline Weight padded(Weight w, size_t r) {
    assert(w.size() <= r);
    w.resize(r, 0);
    return w;
}

inline int weight_sum(const Weight& w) {
    return std::accumulate(w.begin(), w.end(), 0);
}

inline bool is_partition(const Weight& w) {
    return weakly_decreasing(w) && (w.empty() || w.back() >= 0);
}

// conjugate partition (partition proper, trimmed input)
inline Weight conjugate(const Weight& lam) {
    Weight c;
    if (lam.empty()) return c;
    c.resize(lam[0], 0);
    for (int part : lam)
        for (int j = 0; j < part; ++j) c[j]++;
    return c;
}

// dual of a Schur weight: Sigma_w(V)^dual = Sigma_{-reverse(w)}(V)
inline Weight negate_reverse(Weight w) {
    std::reverse(w.begin(), w.end());
    for (int& x : w) x = -x;
    return w;
}

inline Weight add_scalar(Weight w, int t) {
    for (int& x : w) x += t;
    return w;
}

inline Int binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return r;
}

inline long to_ll(const Int& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("mpz does not fit long");
    return z.get_si();
}

// all partitions of n (trimmed, weakly decreasing), optionally bounded
// in length and largest part
void partitions_of(int n, int max_len, int max_part,
                   std::vector<Weight>& out);

inline std::vector<Weight> partitions_of(int n, int max_len = -1,
                                         int max_part = -1) {
    std::vector<Weight> out;
    partitions_of(n, max_len < 0 ? n : max_len, max_part < 0 ? n : max_part,
                  out);
    return out;
}

std::string weight_str(const Weight& w);

}  // namespace fanozl
