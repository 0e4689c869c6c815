#pragma once

// Test-only oracles, kept independent of the implementation paths they check.

#include "fanozl/symfunc.hpp"

#include <random>

namespace fanozl::oracle {

// brute-force tensor product of characters at rank r, then greedy
// dominant-weight decomposition (does not touch lr())
inline std::map<Weight, Coef> lr_at_rank(const Weight& lam,
                                              const Weight& mu, int r) {
    const WeightMultiset& A = schur_weights(lam, r);
    const WeightMultiset& B = schur_weights(mu, r);
    WeightMultiset prod;
    for (const auto& [u, cu] : A)
        for (const auto& [v, cv] : B) {
            std::vector<int> w(u.size());
            for (size_t i = 0; i < u.size(); ++i) w[i] = u[i] + v[i];
            prod[w] += cu * cv;
        }
    std::map<Weight, Coef> out;
    for (const auto& [hw, c] : decompose_character(std::move(prod), {r}))
        out[trimmed(hw[0])] = c;
    return out;
}

struct Rng {
    std::mt19937_64 g;
    explicit Rng(uint64_t seed) : g(seed) {}
    int uniform(int lo, int hi) {  // inclusive
        return (int)(g() % (uint64_t)(hi - lo + 1)) + lo;
    }
    Weight partition(int max_weight, int max_len) {
        int n = uniform(0, max_weight);
        Weight w;
        int bound = n;
        while (n > 0 && (int)w.size() < max_len) {
            int p = uniform(1, bound);
            w.push_back(p);
            n -= p;
            bound = std::min(bound, p);
            if (bound > n) bound = n;
            if (bound == 0) break;
        }
        std::sort(w.rbegin(), w.rend());
        return w;
    }
};

}  // namespace fanozl::oracle
