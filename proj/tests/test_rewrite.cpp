#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fanozl/rewrite.hpp"
#include "oracle.hpp"

using namespace fanozl;

namespace {

bool spec_equal(const ZeroLocusSpec& a, const std::string& want) {
    ParsedSpec b = parse_spec(want);
    return a.X == b.X && normalize(a.X, a.F) == normalize(b.X, b.F);
}

bool spec_equal(const ZeroLocusSpec& a, const ZeroLocusSpec& b) {
    return a.X == b.X && normalize(a.X, a.F) == normalize(b.X, b.F);
}

bool fired(const std::vector<RewriteStep>& steps, const std::string& rule) {
    return std::any_of(steps.begin(), steps.end(), [&](const RewriteStep& s) {
        return s.rule.rfind(rule, 0) == 0;
    });
}

}  // namespace

TEST_CASE("apply_seq: Gr_{P2}(2, O(-1)+O^2) -> Z(Q # U^dual) in P2 x Gr(2,5)") {
    TowerPresentation t;
    t.base = parse_ambient("P(2)");
    t.h = 2;
    t.fiber = {{0, {0}, 1}, {-1, {0}, 2}};  // U_{P2} + O^2
    ZeroLocusSpec s = apply_seq(t);
    CHECK(spec_equal(s, "P(2) x Gr(2,5) :: Q[1]#dual(U[2])"));
}

TEST_CASE("apply_seq: P_{Gr(3,5)}(U) -> Z(Q(0,1)) in Gr(3,5) x P4") {
    TowerPresentation t;
    t.base = parse_ambient("Gr(3,5)");
    t.h = 1;
    t.fiber = {{0, {0}, 1}};
    ZeroLocusSpec s = apply_seq(t);
    CHECK(spec_equal(s, "Gr(3,5) x P(4) :: Q[1]*O(0,1)"));
}

TEST_CASE("apply_seq: trivial fiber gives a plain product") {
    TowerPresentation t;
    t.base = parse_ambient("Gr(2,4)");
    t.h = 2;
    t.fiber = {{-1, {0}, 6}};
    ZeroLocusSpec s = apply_seq(t);
    CHECK(spec_equal(s, "Gr(2,4) x Gr(2,6) :: 0"));
}

TEST_CASE("twist_normalize reproduces the K508 reduction") {
    // Gr_{P2}(2, O(-1)^5) with cuts O(-1) (x) O_R(1) + O(-2) (x) O_R(1)^3
    TowerPresentation t;
    t.base = parse_ambient("P(2)");
    t.h = 2;
    t.fiber = {{-1, {-1}, 5}};  // O(-1)^5
    t.cuts = {{parse_expr("O(-1)", t.base), {1, 1}, 1},
              {parse_expr("O(-2)", t.base), {1, 1}, 3}};
    TowerPresentation n = twist_normalize(t);
    ZeroLocusSpec s = apply_seq(n);
    CHECK(spec_equal(s, "P(2) x Gr(2,5) :: O(1,1) + O(0,1)^3"));
    // g = O: identity
    TowerPresentation id;
    id.base = parse_ambient("P(2)");
    id.h = 1;
    id.fiber = {{-1, {0}, 3}};
    id.cuts = {{parse_expr("O(1)", id.base), {2}, 1}};
    CHECK(spec_equal(apply_seq(twist_normalize(id)), apply_seq(id)));
}

TEST_CASE("apply_seq backward inverts forward on 50 random tower steps") {
    oracle::Rng rng(71);
    const std::vector<Ambient> BASES{parse_ambient("P(2)"),
                                     parse_ambient("Gr(2,4)"),
                                     parse_ambient("P(1) x Gr(2,5)")};
    int done = 0;
    while (done < 50) {
        TowerPresentation t;
        t.base = BASES[rng.uniform(0, (int)BASES.size() - 1)];
        t.h = rng.uniform(1, 2);
        int m0 = rng.uniform(0, 2);
        std::vector<int> zero(t.base.size(), 0);
        int fib_rank = m0;
        if (m0 > 0) t.fiber.push_back({-1, zero, m0});
        for (int i = 0; i < (int)t.base.size(); ++i)
            if (rng.uniform(0, 1)) {
                int m = rng.uniform(1, 2);
                t.fiber.push_back({i, zero, m});
                fib_rank += m * t.base.factors[i].k;
            }
        if (fib_rank <= t.h) continue;
        // a relative cut with a small Schur weight
        if (rng.uniform(0, 1)) {
            Weight rel = rng.partition(2, t.h);
            std::vector<int> tw(t.base.size());
            for (auto& x : tw) x = rng.uniform(0, 1);
            t.cuts.push_back({atom_O(tw), rel, 1});
        }
        ZeroLocusSpec fwd = apply_seq(t);
        TowerPresentation back =
            apply_seq_backward(fwd, (int)fwd.X.size() - 1);
        CHECK(spec_equal(apply_seq(back), fwd));
        done++;
    }
    CHECK(done == 50);
}

TEST_CASE("recognize: Cayley trick (F.2.22 pattern)") {
    ZeroLocusSpec s{parse_ambient("P(2) x P(4)"), nullptr};
    s.F = parse_expr("Q[1]*O(0,2)", s.X);
    auto steps = recognize(s);
    CHECK(fired(steps, "lm:blowPPtX"));
    bool found = false;
    for (const auto& st : steps)
        if (st.rule == "lm:blowPPtX" &&
            st.description.find("O(2)^3") != std::string::npos)
            found = true;
    CHECK(found);
}

TEST_CASE("recognize: blowFlagGr(2) on Q_{Gr(2,4)} # U^dual_{Gr(2,5)}") {
    ZeroLocusSpec s{parse_ambient("Gr(2,4) x Gr(2,5)"), nullptr};
    s.F = parse_expr("Q[1]#dual(U[2])", s.X);
    auto steps = recognize(s);
    CHECK(fired(steps, "lm:blowFlagGr(2)"));
    for (const auto& st : steps)
        if (st.rule == "lm:blowFlagGr(2)")
            CHECK(st.description.find("Bl_{Gr(1,4)}") != std::string::npos);
    // with residual cuts (F.2.28 = K101): rule still fires, residual kept
    s.F = parse_expr("Q[1]#dual(U[2]) + O(0,1) + O(1,0)", s.X);
    steps = recognize(s);
    CHECK(fired(steps, "lm:blowFlagGr(2)"));
    for (const auto& st : steps)
        if (st.rule == "lm:blowFlagGr(2)") CHECK(!st.residual.empty());
}

TEST_CASE("recognize: flag identification on equal n") {
    ZeroLocusSpec s{parse_ambient("Gr(2,5) x P(4)"), nullptr};
    // Q on the Gr(2,5) side, U^dual on the P4 = Gr(1,5) side
    s.F = parse_expr("Q[1]#dual(U[2])", s.X);
    auto steps = recognize(s);
    CHECK(fired(steps, "lm:blowFlagGr(1)"));
    for (const auto& st : steps)
        if (st.rule == "lm:blowFlagGr(1)")
            CHECK(st.description == "Fl(1,2,5)");
}

TEST_CASE("recognize: near-misses stay silent") {
    ZeroLocusSpec s{parse_ambient("Gr(2,4) x Gr(2,5)"), nullptr};
    // twisted box product violates the exact hypothesis
    s.F = parse_expr("Q[1]#dual(U[2])*O(1,0)", s.X);
    CHECK(recognize(s).empty());
}

TEST_CASE("recognize tower: Fl via lm:flag2.5") {
    TowerPresentation t;
    t.base = parse_ambient("Gr(3,5)");
    t.h = 1;
    t.fiber = {{0, {0}, 1}};
    auto steps = recognize(t);
    CHECK(fired(steps, "lm:flag2.5"));
    CHECK(steps[0].description == "Fl(1,3,5)");
}

TEST_CASE("rewrites preserve the invariants (K582's two forms)") {
    // tower form: Z(O_R(2) + O(1)_{Gr}^3) in P_{Gr(3,5)}(U)
    TowerPresentation t;
    t.base = parse_ambient("Gr(3,5)");
    t.h = 1;
    t.fiber = {{0, {0}, 1}};
    t.cuts = {{parse_expr("O(0)", t.base), {2}, 1},
              {parse_expr("O(1)", t.base), {}, 3}};
    ZeroLocusSpec flat = apply_seq(t);
    ParsedSpec direct = parse_spec(
        "Gr(3,5) x P(4) :: Q[1]*O(0,1) + O(0,2) + O(1,0)^3");
    CHECK(spec_equal(flat, ZeroLocusSpec{direct.X, direct.F}));
    ZeroLocusSpec zl{direct.X, direct.F};
    CHECK(h0_minus_K(zl) == 30);
    CHECK(volume(zl) == 116);
    CHECK(chi_tangent(zl) == -11);
}
