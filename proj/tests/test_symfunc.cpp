#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fanozl/symfunc.hpp"
#include "oracle.hpp"

using namespace fanozl;

TEST_CASE("lr: Pieri anchors") {
    CHECK(lr({1}, {1}) == LrTable{{{2}, 1}, {{1, 1}, 1}});
    CHECK(lr({2, 1}, {1}) ==
          LrTable{{{3, 1}, 1}, {{2, 2}, 1}, {{2, 1, 1}, 1}});
}

TEST_CASE("lr: (2,1)x(2,1) against the multiset oracle") {
    // frozen from the rank-4 oracle run
    LrTable expect{{{4, 2}, 1},    {{4, 1, 1}, 1},    {{3, 3}, 1},
                   {{3, 2, 1}, 2}, {{3, 1, 1, 1}, 1}, {{2, 2, 2}, 1},
                   {{2, 2, 1, 1}, 1}};
    CHECK(lr({2, 1}, {2, 1}) == expect);

    auto orc = oracle::lr_at_rank({2, 1}, {2, 1}, 4);
    CHECK(LrTable(orc.begin(), orc.end()) == expect);

    // dimension mass at rank 3: 8 * 8 = 64
    Int mass = 0;
    for (const auto& [nu, c] : lr({2, 1}, {2, 1}))
        if ((int)nu.size() <= 3) mass += c * schur_dim(nu, 3);
    CHECK(mass == 64);
}

TEST_CASE("schur_dim anchors") {
    CHECK(schur_dim({1, 1}, 4) == 6);
    CHECK(schur_dim({2, 1}, 3) == 8);
    for (int t : {-3, 0, 1, 5}) CHECK(schur_dim({t}, 1) == 1);
    CHECK_THROWS(schur_dim({1, 1, 1}, 2));
    // twist invariance
    CHECK(schur_dim({3, 1, 0}, 3) == schur_dim({1, -1, -2}, 3));
}

TEST_CASE("schur_weights anchors") {
    CHECK(schur_weights({1}, 2) ==
          WeightMultiset{{{1, 0}, 1}, {{0, 1}, 1}});
    CHECK(schur_weights({1, 1}, 2) == WeightMultiset{{{1, 1}, 1}});
    const auto& w = schur_weights({2, 1}, 3);
    Coef mass = 0;
    for (const auto& [v, c] : w) mass += c;
    CHECK(mass == 8);
    CHECK(w.at({1, 1, 1}) == 2);
}

TEST_CASE("cauchy pairs") {
    CHECK(cauchy_wedge(0) ==
          std::vector<std::pair<Weight, Weight>>{{{}, {}}});
    auto w2 = cauchy_wedge(2);
    std::sort(w2.begin(), w2.end());
    CHECK(w2 == std::vector<std::pair<Weight, Weight>>{{{1, 1}, {2}},
                                                       {{2}, {1, 1}}});
    auto s3 = cauchy_sym(3);
    std::sort(s3.begin(), s3.end());
    CHECK(s3 == std::vector<std::pair<Weight, Weight>>{
                    {{1, 1, 1}, {1, 1, 1}}, {{2, 1}, {2, 1}}, {{3}, {3}}});
}

TEST_CASE("plethysm anchors") {
    CHECK(plethysm_wedge({3, 1}, 3, 1) == LrTable{{{3, 1}, 1}});
    CHECK(plethysm_wedge({2}, 2, 2) == LrTable{{{3, 1}, 1}});
    CHECK(plethysm_wedge({2}, 2, 3) == LrTable{{{3, 3}, 1}});
}

TEST_CASE("plethysm dimension identities") {
    oracle::Rng rng(7);
    for (int it = 0; it < 60; ++it) {
        int r = rng.uniform(2, 4);
        Weight lam = rng.partition(4, r);
        Int d = schur_dim(lam, r);
        int k = rng.uniform(0, std::min<Coef>(to_ll(d), 4));
        Int total = 0;
        for (const auto& [mu, c] : plethysm_wedge(lam, r, k))
            total += c * schur_dim(mu, r);
        CHECK(total == binomial(to_ll(d), k));
        Int stotal = 0;
        for (const auto& [mu, c] : plethysm_sym(lam, r, k))
            stotal += c * schur_dim(mu, r);
        CHECK(stotal == binomial(to_ll(d) + k - 1, k));
    }
}

TEST_CASE("lr commutativity, associativity, dimension compatibility") {
    oracle::Rng rng(11);
    int assoc_checked = 0;
    for (int it = 0; it < 200; ++it) {
        Weight a = rng.partition(4, 3), b = rng.partition(4, 3),
               c = rng.partition(4, 3);
        CHECK(lr(a, b) == lr(b, a));
        // (a*b)*c == a*(b*c)
        std::map<Weight, Coef> l, r2;
        for (const auto& [nu, m] : lr(a, b))
            for (const auto& [rho, m2] : lr(nu, c)) l[rho] += m * m2;
        for (const auto& [nu, m] : lr(b, c))
            for (const auto& [rho, m2] : lr(a, nu)) r2[rho] += m * m2;
        CHECK(l == r2);
        assoc_checked++;
        // dimension compatibility at a random rank
        int rk = rng.uniform(std::max(a.size(), b.size()), 5);
        Int lhs = 0;
        for (const auto& [nu, m] : lr(a, b))
            if ((int)nu.size() <= rk) lhs += m * schur_dim(nu, rk);
        CHECK(lhs == schur_dim(a, rk) * schur_dim(b, rk));
    }
    CHECK(assoc_checked == 200);
}

TEST_CASE("schur_weights mass and permutation symmetry, |lam|<=6, r<=4") {
    for (int r = 1; r <= 4; ++r)
        for (int n = 0; n <= 6; ++n)
            for (const auto& lam : partitions_of(n, r, n)) {
                const auto& w = schur_weights(lam, r);
                Coef mass = 0;
                for (const auto& [v, c] : w) {
                    mass += c;
                    // symmetric-group invariance: sorted representative has
                    // the same multiplicity
                    std::vector<int> s = v;
                    std::sort(s.rbegin(), s.rend());
                    CHECK(w.at(s) == c);
                }
                CHECK(Int(mass) == schur_dim(lam, r));
            }
}
