#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fanozl/zerolocus.hpp"
#include "oracle.hpp"

using namespace fanozl;

namespace {
const Ambient GR25{{GrFactor{2, 5}}};
const Ambient P3{{GrFactor{1, 4}}};
const Ambient P2xGR25{{GrFactor{1, 3}, GrFactor{2, 5}}};

ZeroLocusSpec k508() {
    return {P2xGR25, sum({{atom_O({1, 1}), 1}, {atom_O({0, 1}), 3}})};
}
ZeroLocusSpec x54() {  // Z(O(1)^2) in Gr(2,5)
    return {GR25, sum({{atom_O({1}), 2}})};
}
ZeroLocusSpec k742() {  // Z(O(1) + O(3)) in Gr(2,5)
    return {GR25, sum({{atom_O({1}), 1}, {atom_O({3}), 1}})};
}
}  // namespace

TEST_CASE("dimension, -K, Fano") {
    auto s = k742();
    CHECK(zl_dim(s) == 4);
    CHECK(minus_K(s) == std::vector<int>{1});
    CHECK(is_fano(s));

    ZeroLocusSpec ambient{GR25, zero_expr()};
    CHECK(zl_dim(ambient) == 6);
    CHECK(minus_K(ambient) == std::vector<int>{5});

    auto s508 = k508();
    CHECK(zl_dim(s508) == 4);
    CHECK(minus_K(s508) == (std::vector<int>{2, 1}));
    CHECK(is_fano(s508));
}

TEST_CASE("koszul_chi anchors") {
    // chi(O_M) = 1 for the K508 Fano fourfold
    auto s = k508();
    CHECK(koszul_chi(s, atom_O({0, 0})) == 1);
    // a point on P1: Z(O(1)) in P1
    ZeroLocusSpec pt{{{GrFactor{1, 2}}}, sum({{atom_O({1}), 1}})};
    CHECK(koszul_chi(pt, atom_O({0})) == 1);
    // additivity
    auto e1 = atom_O({1, 0}), e2 = tensor({atom_Q(1), atom_O({0, 1})});
    Int lhs = koszul_chi(s, sum({{e1, 1}, {e2, 1}}));
    CHECK(lhs == koszul_chi(s, e1) + koszul_chi(s, e2));
}

TEST_CASE("h0(-K), volume, chi(T), euler anchors") {
    CHECK(h0_minus_K(k508()) == 39);
    CHECK(volume(k508()) == 160);
    CHECK(chi_tangent(k508()) == -9);

    CHECK(h0_minus_K(x54()) == 85);
    CHECK(volume(x54()) == 405);
    CHECK(chi_tangent(x54()) == 8);

    CHECK(h0_minus_K(k742()) == 9);
    CHECK(volume(k742()) == 15);
    CHECK(chi_tangent(k742()) == -109);

    // P4 as Z(0) in P4
    ZeroLocusSpec p4{{{GrFactor{1, 5}}}, zero_expr()};
    CHECK(volume(p4) == 625);
    // rigid homogeneous space: chi(T) = dim PGL(5) = 24
    ZeroLocusSpec gr{GR25, zero_expr()};
    CHECK(chi_tangent(gr) == 24);

    // K3 quartic: e = 24; Gr(2,4) ambient: e = 6
    ZeroLocusSpec k3{P3, sum({{atom_O({4}), 1}})};
    CHECK(euler_top(k3) == 24);
    ZeroLocusSpec gr24{{{GrFactor{2, 4}}}, zero_expr()};
    CHECK(euler_top(gr24) == 6);
}

TEST_CASE("hodge: ambient diamond of Gr(2,5)") {
    ZeroLocusSpec gr{GR25, zero_expr()};
    HodgeResult h = hodge(gr);
    CHECK(h.determinate);
    // diagonal = number of Schubert classes per degree: 1,1,2,2,2,1,1
    std::vector<long> want{1, 1, 2, 2, 2, 1, 1};
    for (int p = 0; p <= 6; ++p)
        for (int q = 0; q <= 6; ++q) {
            CHECK(h.at(p, q).exact());
            CHECK(h.at(p, q).lo == (p == q ? Int(want[p]) : Int(0)));
        }
}

TEST_CASE("hodge: K508 = (39,160,-9 | 2,0,0,7)") {
    HodgeResult h = hodge(k508());
    CHECK(h.determinate);
    CHECK(h.at(0, 0).lo == 1);
    CHECK(h.at(1, 1).lo == 2);
    CHECK(h.at(2, 1).lo == 0);
    CHECK(h.at(3, 1).lo == 0);
    CHECK(h.at(2, 2).lo == 7);
}

TEST_CASE("hodge: X_5^4 = (85,405,8 | 1,0,0,2) and euler consistency") {
    HodgeResult h = hodge(x54());
    CHECK(h.determinate);
    CHECK(h.at(1, 1).lo == 1);
    CHECK(h.at(2, 1).lo == 0);
    CHECK(h.at(3, 1).lo == 0);
    CHECK(h.at(2, 2).lo == 2);
    // e = 2 + 2 h11 - 4 h21 + 2 h31 + h22
    CHECK(euler_top(x54()) == 2 + 2 * 1 - 0 + 0 + 2);
}

TEST_CASE("hodge: K742 big Hodge numbers (1,0,41,232)") {
    HodgeResult h = hodge(k742());
    CHECK(h.determinate);
    CHECK(h.at(1, 1).lo == 1);
    CHECK(h.at(2, 1).lo == 0);
    CHECK(h.at(3, 1).lo == 41);
    CHECK(h.at(2, 2).lo == 232);
}

TEST_CASE("consistency triangle via chi_omega on K508") {
    auto s = k508();
    HodgeResult h = hodge(s);
    Int h11 = h.at(1, 1).lo, h21 = h.at(2, 1).lo, h31 = h.at(3, 1).lo,
        h22 = h.at(2, 2).lo;
    CHECK(chi_omega(s, 1) == -h11 + h21 - h31);
    CHECK(chi_omega(s, 2) == -2 * h21 + h22);
    CHECK(euler_top(s) == 2 + 2 * h11 - 4 * h21 + 2 * h31 + h22);
}
