#include "fanozl/degeneracy.hpp"

namespace fanozl {

int expected_dim(int dimX, int e, int f, int k) {
    if (k < 0 || k > std::min(e, f))
        throw std::invalid_argument("expected_dim: need 0 <= k <= min(e,f)");
    return dimX - (e - k) * (f - k);
}

Int en_chi(const ZeroLocusSpec& base, const ExprPtr& E, const ExprPtr& Fp) {
    long e = to_ll(expr_rank(base.X, E));
    long f = to_ll(expr_rank(base.X, Fp));
    if (e <= f)
        throw std::invalid_argument("en_chi: requires rk E > rk F'");
    ExprPtr detFd = wedge((int)f, dual(Fp));
    Int chi = koszul_chi(base, atom_O(std::vector<int>(base.X.size(), 0)));
    for (int j = 0; j <= (int)(e - f); ++j) {
        ExprPtr term = tensor({wedge((int)f + j, E), sym(j, dual(Fp)), detFd});
        Int c = koszul_chi(base, term);
        chi -= Int(j % 2 ? -1 : 1) * c;
    }
    return chi;
}

namespace {

Rat degree_against(const ZeroLocusSpec& base, const ChowClass& cls, int codim) {
    const Ambient& X = base.X;
    int d = zl_dim(base);
    ChowClass h = chow_zero(X);
    for (size_t i = 0; i < X.size(); ++i)
        h = chow_add(h, chow_hyperplane(X, i));
    ChowClass ctop = chern_class(X, base.F).graded(X.dim() - d);
    return integrate(
        chow_mul(chow_mul(cls, chow_pow(h, d - codim)), ctop));
}

}  // namespace

ConicData conic_discriminant(const ZeroLocusSpec& base, const ChowClass& c1,
                             const ChowClass& c2, const ChowClass& c3,
                             const ChowClass& k) {
    if (zl_dim(base) != 3)
        throw std::invalid_argument("conic_discriminant: base must be a threefold");
    ConicData out;
    out.delta = chow_add(chow_scale(c1, 2), chow_scale(k, 3));
    ChowClass k2 = chow_mul(k, k);
    ChowClass s = chow_mul(k2, k);                             // k^3
    s = chow_add(s, chow_scale(chow_mul(k2, c1), 2));          // + 2k^2c1
    s = chow_add(s, chow_mul(k, chow_mul(c1, c1)));            // + kc1^2
    s = chow_add(s, chow_mul(k, c2));                          // + kc2
    s = chow_add(s, chow_mul(c1, c2));                         // + c1c2
    s = chow_add(s, chow_scale(c3, -1));                       // - c3
    out.delta_sing = chow_scale(s, 4);
    out.deg_delta = degree_against(base, out.delta, 1);
    out.deg_delta_sing = degree_against(base, out.delta_sing, 3);
    return out;
}

ConicData conic_discriminant(const ZeroLocusSpec& base, const ExprPtr& E,
                             const ExprPtr& K) {
    if (expr_rank(base.X, E) != 3)
        throw std::invalid_argument("conic_discriminant: rank(E) != 3");
    if (expr_rank(base.X, K) != 1)
        throw std::invalid_argument("conic_discriminant: K must be a line bundle");
    ChowClass c = chern_class(base.X, E);
    return conic_discriminant(base, c.graded(1), c.graded(2), c.graded(3),
                              chern_class(base.X, K).graded(1));
}

ProjectionProfile projection_profile(const ZeroLocusSpec& spec, int to_factor) {
    const Ambient& X = spec.X;
    if (X.size() != 2)
        throw std::invalid_argument("projection_profile: need two factors");
    if (to_factor != 0 && to_factor != 1)
        throw std::invalid_argument("projection_profile: factor must be 1 or 2");
    int other = 1 - to_factor;

    Decomp cuts = normalize(X, spec.F);
    Summand box;  // the unique genuine box summand
    Coef nbox = 0;
    Decomp pure_target, pure_other;
    auto trivial_on = [&](const Summand& s, int i) {
        return weight_sum(s.a[i]) == 0 && weight_sum(s.b[i]) == 0;
    };
    for (const auto& [s, c] : cuts) {
        bool t0 = trivial_on(s, to_factor), t1 = trivial_on(s, other);
        if (t0 && t1) continue;  // trivial summand: ignore
        if (t1) pure_target[s] += c;
        else if (t0) pure_other[s] += c;
        else {
            box = s;
            nbox += c;
        }
    }
    if (nbox != 1)
        throw std::invalid_argument(
            "projection_profile: need exactly one box summand (found " +
            std::to_string(nbox) + ")");
    // split the box summand into its two factor components
    auto component = [&](const Summand& s, int i) {
        Ambient Xi{{X.factors[i]}};
        Summand t = trivial_summand(Xi);
        t.a[0] = s.a[i];
        t.b[0] = s.b[i];
        return std::make_pair(Xi, t);
    };
    auto [Xt, Et] = component(box, to_factor);
    auto [Xo, Eo] = component(box, other);
    for (const auto& [s, pr] : {std::pair{Et, std::string("target")},
                                {Eo, std::string("fiber")}}) {
        for (const auto& w : s.a)
            if (!w.empty() && w.back() < 0)
                throw std::invalid_argument(
                    "projection_profile: box component on " + pr +
                    " side not globally generated");
        for (const auto& w : s.b)
            if (!w.empty() && w.back() < 0)
                throw std::invalid_argument(
                    "projection_profile: box component on " + pr +
                    " side not globally generated");
    }

    ProjectionProfile out;
    out.to_factor = to_factor;
    out.caveat =
        "dichotomy assumes E_i irreducible, globally generated and the "
        "degeneracy strata of expected dimension; non-emptiness can fail";

    // base: target Grassmannian cut by the summands pulled back from it
    {
        Ambient Xb{{X.factors[to_factor]}};
        std::vector<std::pair<ExprPtr, Coef>> kids;
        for (const auto& [s, c] : pure_target) {
            Summand t = trivial_summand(Xb);
            t.a[0] = s.a[to_factor];
            t.b[0] = s.b[to_factor];
            // rebuild as a Schur expression of atoms
            ExprPtr ea = schur(t.a[0], dual(atom_U(0)));
            ExprPtr eb = schur(t.b[0], atom_Q(0));
            kids.emplace_back(tensor({ea, eb}), c);
        }
        out.base = {Xb, kids.empty() ? zero_expr() : sum(std::move(kids))};
    }

    long rkEt = to_ll(summand_rank(Et));
    long rkEo = to_ll(summand_rank(Eo));
    out.e = (int)rkEt;
    Int h0 = 0;
    {
        Ambient Xoo{{X.factors[other]}};
        auto hb = bbw(Xoo, Eo);
        if (hb && hb->first == 0) h0 = hb->second;
    }
    out.f = (int)to_ll(h0);

    // dichotomy against the dimension of the fiber-side factor
    int dim_other = X.factors[other].dim();
    if (rkEt * rkEo <= dim_other) {
        out.fiber_empty = false;
        Ambient Xf{{X.factors[other]}};
        std::vector<std::pair<ExprPtr, Coef>> kids;
        kids.emplace_back(
            tensor({schur(Eo.a[0], dual(atom_U(0))), schur(Eo.b[0], atom_Q(0))}),
            (Coef)rkEt);
        for (const auto& [s, c] : pure_other) {
            ExprPtr ea = schur(s.a[other], dual(atom_U(0)));
            ExprPtr eb = schur(s.b[other], atom_Q(0));
            kids.emplace_back(tensor({ea, eb}), c);
        }
        out.fiber = {Xf, sum(std::move(kids))};
    } else {
        out.fiber_empty = true;
        out.fiber = {Ambient{{X.factors[other]}}, zero_expr()};
    }

    // rank stratification of phi: E_t^dual -> H^0(Gr_o, E_o) (x) O
    int base_dim = zl_dim(out.base);
    int top = std::min<long>(rkEt, to_ll(h0));
    for (int l = top - 1; l >= 0; --l) {
        int ed = expected_dim(base_dim, (int)rkEt, (int)to_ll(h0), l);
        out.strata.emplace_back(l, ed);
    }
    return out;
}

}  // namespace fanozl
