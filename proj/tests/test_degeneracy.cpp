#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fanozl/degeneracy.hpp"
#include "fanozl/dsl.hpp"
#include "oracle.hpp"

using namespace fanozl;

namespace {
ZeroLocusSpec x53() {  // Z(O(1)^3) in Gr(2,5)
    ParsedSpec p = parse_spec("Gr(2,5) :: O(1)^3");
    return {p.X, p.F};
}
}  // namespace

TEST_CASE("expected_dim") {
    CHECK(expected_dim(3, 1, 3, 0) == 0);   // five points on X_5^3
    CHECK(expected_dim(7, 2, 5, 2) == 7);   // k = min(e,f): no condition
    CHECK(expected_dim(8, 2, 3, 1) == 6);   // the sixfold D_1
    // symmetric in (e,f), increasing in k
    oracle::Rng rng(5);
    for (int it = 0; it < 100; ++it) {
        int e = rng.uniform(1, 6), f = rng.uniform(1, 6),
            d = rng.uniform(4, 16);
        CHECK(expected_dim(d, e, f, 0) == expected_dim(d, f, e, 0));
        for (int k = 1; k <= std::min(e, f); ++k)
            CHECK(expected_dim(d, e, f, k) > expected_dim(d, e, f, k - 1));
    }
}

TEST_CASE("en_chi: the five-points anchor on X_5^3") {
    ZeroLocusSpec base = x53();
    // independent pieces
    CHECK(koszul_chi(base, atom_O({0})) == 1);
    CHECK(koszul_chi(base, atom_O({-1})) == 0);
    CHECK(koszul_chi(base, atom_O({-2})) == -1);  // = (-1)^3 h^3, Serre
    // phi: O(-1) -> O^3, dualized to O^3 -> O(1); D_0 = five points
    Int chi = en_chi(base, sum({{atom_O({0}), 3}}), atom_O({1}));
    CHECK(chi == 5);
    // direct route: Z(O(1)^3) inside X_5^3 = Z(O(1)^6) in Gr(2,5)
    ParsedSpec pts = parse_spec("Gr(2,5) :: O(1)^6");
    CHECK(koszul_chi(ZeroLocusSpec{pts.X, pts.F}, atom_O({0})) == 5);
}

TEST_CASE("en_chi: e = f + 1 with trivial bundles on P1 gives chi = 0") {
    ParsedSpec p = parse_spec("P(1) ::");
    ZeroLocusSpec base{p.X, p.F};
    CHECK(en_chi(base, sum({{atom_O({0}), 2}}), atom_O({0})) == 0);
    CHECK_THROWS(en_chi(base, atom_O({0}), atom_O({0})));  // rank hypothesis
}

TEST_CASE("F.2.8 exceptional surface: chi(O_S) = 1, e(S) = 15") {
    ParsedSpec p = parse_spec(
        "Gr(2,4) x P(4) :: Q[1]*O(0,1)^2 + dual(U[1])*O(0,1)");
    ZeroLocusSpec S{p.X, p.F};
    CHECK(zl_dim(S) == 2);
    CHECK(koszul_chi(S, atom_O({0, 0})) == 1);
    CHECK(euler_top(S) == 15);
}

TEST_CASE("conic discriminant: K582 over X_5^3 (K3 + 8 points)") {
    ZeroLocusSpec base = x53();
    // conic datum: E^dual = U^dual + O on Gr(2,5), K = O
    ExprPtr E = sum({{dual(atom_U(0)), 1}, {atom_O({0}), 1}});
    ConicData cd = conic_discriminant(base, E, atom_O({0}));
    // [Delta] = 2 sigma_1: the degree-2 K3 section
    ChowClass want = chow_scale(chow_hyperplane(base.X, 0), 2);
    CHECK(cd.delta.c == want.c);
    CHECK(cd.deg_delta_sing == 8);
}

TEST_CASE("conic discriminant: K582 over Q3 (sextic; singular points from e)") {
    // base Q3 = Z(O(2)) in P4; E = ker(wedge^2 W -> O^3), W the rank-4
    // kernel of a generic V_5 (x) O -> O(1); c(E^dual) = c(wedge^2 Q_{P4}),
    // K = det W = O(-1)
    ParsedSpec p = parse_spec("P(4) :: O(2)");
    ZeroLocusSpec base{p.X, p.F};
    ChowClass cE = chern_class(base.X, wedge(2, atom_Q(0)));
    ChowClass k = chow_scale(chow_hyperplane(base.X, 0), -1);
    ConicData cd = conic_discriminant(base, cE.graded(1), cE.graded(2),
                                      cE.graded(3), k);
    CHECK(cd.deg_delta == 6);  // sextic surface
    // cross-check the singular-point count against the Euler number of the
    // total space: e(X) = 2 e(B) + e(Delta) - N with e(Delta) = e(smooth) - N
    ParsedSpec kx = parse_spec(
        "Gr(3,5) x P(4) :: Q[1]*O(0,1) + O(1,0)^3 + O(0,2)");
    Int eX = euler_top({kx.X, kx.F});
    Int eB = euler_top(base);
    ParsedSpec sm = parse_spec("P(4) :: O(2) + O(3)");
    Int eS = euler_top({sm.X, sm.F});  // smooth sextic in Q3
    Int N = (2 * eB + eS - eX) / 2;
    CHECK(N == 8);
    CHECK(cd.deg_delta_sing == N);
}

TEST_CASE("conic re-twist invariance of [Delta] and [Delta_sing]") {
    ZeroLocusSpec base = x53();
    const Ambient& X = base.X;
    ChowClass h = chow_hyperplane(X, 0);
    oracle::Rng rng(13);
    for (int it = 0; it < 50; ++it) {
        // random conic datum c1, c2, c3, k as multiples of sigma powers
        ChowClass c1 = chow_scale(h, rng.uniform(-3, 3));
        ChowClass c2 = chow_scale(chow_mul(h, h), rng.uniform(-3, 3));
        ChowClass c3 = chow_scale(chow_mul(h, chow_mul(h, h)),
                                  rng.uniform(-3, 3));
        ChowClass k = chow_scale(h, rng.uniform(-2, 2));
        ConicData a = conic_discriminant(base, c1, c2, c3, k);
        int m = rng.uniform(-2, 2);
        ChowClass mh = chow_scale(h, m);
        // twist E by O(m): c1 += 3mh, c2 += 2 c1 mh + 3 m^2 h^2, ...
        ChowClass c1t = chow_add(c1, chow_scale(mh, 3));
        ChowClass c2t = chow_add(
            c2, chow_add(chow_scale(chow_mul(c1, mh), 2),
                         chow_scale(chow_mul(mh, mh), 3)));
        ChowClass c3t = chow_add(
            c3, chow_add(chow_mul(c2, mh),
                         chow_add(chow_mul(c1, chow_mul(mh, mh)),
                                  chow_mul(mh, chow_mul(mh, mh)))));
        ChowClass kt = chow_add(k, chow_scale(mh, -2));
        ConicData b = conic_discriminant(base, c1t, c2t, c3t, kt);
        CHECK(a.delta.c == b.delta.c);
        CHECK(a.delta_sing.c == b.delta_sing.c);
    }
}

TEST_CASE("projection profile: Z(Q_{P2} # U^dual_{Gr(2,5)})") {
    ParsedSpec p = parse_spec("P(2) x Gr(2,5) :: Q[1]#dual(U[2])");
    ZeroLocusSpec s{p.X, p.F};
    // to the P2 factor: fibers live in Gr(2,5); 2*2 <= 6
    ProjectionProfile pr = projection_profile(s, 0);
    CHECK_FALSE(pr.fiber_empty);
    CHECK(pr.fiber.X == parse_ambient("Gr(2,5)"));
    Decomp want = normalize(pr.fiber.X,
                            parse_expr("dual(U[1])^2", pr.fiber.X));
    CHECK(normalize(pr.fiber.X, pr.fiber.F) == want);
    // to the Gr(2,5) factor: 2*2 > dim P2 = 2, generic fiber empty
    ProjectionProfile pr2 = projection_profile(s, 1);
    CHECK(pr2.fiber_empty);
}

TEST_CASE("projection profile: K508 jump locus over X_5^3") {
    ParsedSpec p = parse_spec("P(2) x Gr(2,5) :: O(1,1) + O(0,1)^3");
    ZeroLocusSpec s{p.X, p.F};
    ProjectionProfile pr = projection_profile(s, 1);
    CHECK_FALSE(pr.fiber_empty);
    // generic fiber: P2 cut by one O(1) = P1
    Decomp want =
        normalize(pr.fiber.X, parse_expr("O(1)", pr.fiber.X));
    CHECK(normalize(pr.fiber.X, pr.fiber.F) == want);
    // base: X_5^3; phi: O(-1) -> O^3; jump stratum of expected dimension 0
    CHECK(zl_dim(pr.base) == 3);
    CHECK(pr.e == 1);
    CHECK(pr.f == 3);
    REQUIRE(!pr.strata.empty());
    CHECK(pr.strata.back() == std::pair<int, int>{0, 0});
}
