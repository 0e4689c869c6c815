#include "fanozl/rewrite.hpp"

#include <sstream>

namespace fanozl {

namespace {

ExprPtr lift_expr(const ExprPtr& e, size_t m) {
    Expr x = *e;
    if (x.kind == Expr::K::O)
        while (x.tw.size() < m) x.tw.push_back(0);
    for (auto& [kid, mult] : x.kids) kid = lift_expr(kid, m);
    return std::make_shared<const Expr>(std::move(x));
}

std::string decomp_dsl(const Ambient& X, const Decomp& d) {
    return print_decomp(X, d);
}

}  // namespace

ZeroLocusSpec apply_seq(const TowerPresentation& t) {
    StepFlattening sf = flatten_step(t.base, t.h, t.fiber);
    size_t newf = sf.ambient.size() - 1;
    std::vector<std::pair<ExprPtr, Coef>> kids = sf.structural;
    for (const auto& cut : t.cuts) {
        ExprPtr base_part = lift_expr(cut.base_part, sf.ambient.size());
        Weight rel = trimmed(cut.rel);
        if (rel.empty()) {
            kids.emplace_back(base_part, cut.mult);
            continue;
        }
        if ((int)rel.size() > t.h)
            throw std::invalid_argument("apply_seq: relative weight too long");
        std::vector<ExprPtr> parts{base_part,
                                   schur(rel, dual(atom_U((int)newf)))};
        int sz = weight_sum(rel);
        std::vector<int> comp(sf.ambient.size(), 0);
        bool twisted = false;
        for (size_t i = 0; i < sf.step_twist.size(); ++i)
            if (sf.step_twist[i] != 0) {
                comp[i] = -sz * sf.step_twist[i];
                twisted = true;
            }
        if (twisted) parts.push_back(atom_O(comp));
        kids.emplace_back(tensor(std::move(parts)), cut.mult);
    }
    return {sf.ambient, kids.empty() ? zero_expr() : sum(std::move(kids))};
}

TowerPresentation apply_seq_backward(const ZeroLocusSpec& s, int factor) {
    const Ambient& X = s.X;
    if (factor < 0 || factor >= (int)X.size())
        throw std::invalid_argument("apply_seq_backward: bad factor");
    Ambient base;
    std::vector<int> old_of_new;  // base factor -> original index
    for (int i = 0; i < (int)X.size(); ++i)
        if (i != factor) {
            base.factors.push_back(X.factors[i]);
            old_of_new.push_back(i);
        }
    auto to_base = [&](int orig) {
        for (size_t i = 0; i < old_of_new.size(); ++i)
            if (old_of_new[i] == orig) return (int)i;
        throw std::logic_error("apply_seq_backward: factor remap");
    };

    Decomp cuts = normalize(X, s.F);
    TowerPresentation t;
    t.base = base;
    t.h = X.factors[factor].k;
    int used = 0;
    // structural summands: Q_i (x) U_factor^dual, untwisted
    std::map<int, int> mi;
    for (auto it = cuts.begin(); it != cuts.end();) {
        const Summand& sm = it->first;
        bool structural = trimmed(sm.a[factor]) == Weight{1} &&
                          weight_sum(sm.b[factor]) == 0;
        int qf = -1;
        if (structural) {
            for (int i = 0; i < (int)X.size() && structural; ++i) {
                if (i == factor) continue;
                bool atriv = weight_sum(sm.a[i]) == 0;
                bool btriv = weight_sum(sm.b[i]) == 0;
                if (atriv && btriv) continue;
                if (atriv && trimmed(sm.b[i]) == Weight{1} && qf < 0)
                    qf = i;
                else
                    structural = false;
            }
            if (qf < 0) structural = false;
        }
        if (structural) {
            mi[to_base(qf)] += (int)it->second;
            used += (int)it->second * (X.factors[qf].n - X.factors[qf].k);
            it = cuts.erase(it);
        } else {
            ++it;
        }
    }
    int N = X.factors[factor].n;
    int consumed = 0;
    for (const auto& [bf, m] : mi) consumed += m * base.factors[bf].n;
    int m0 = N - consumed;
    if (m0 < 0)
        throw std::invalid_argument(
            "apply_seq_backward: box cuts exceed the factor size");
    for (const auto& [bf, m] : mi)
        t.fiber.push_back({bf, std::vector<int>(base.size(), 0), m});
    if (m0 > 0)
        t.fiber.push_back({-1, std::vector<int>(base.size(), 0), m0});
    // remaining cuts: base part (x) Schur of U_R^dual (det twists unfolded)
    for (const auto& [sm, c] : cuts) {
        const Weight& bj = sm.b[factor];
        if (!bj.empty() && !std::all_of(bj.begin(), bj.end(),
                                        [&](int x) { return x == bj[0]; }))
            throw std::invalid_argument(
                "apply_seq_backward: cut has a genuine Q-weight on the factor");
        int det = bj.empty() ? 0 : bj[0];
        if (det < 0)
            throw std::invalid_argument(
                "apply_seq_backward: negative relative determinant");
        Weight rel = padded(sm.a[factor], X.factors[factor].k);
        rel = add_scalar(rel, det);
        Summand rest;  // the summand seen from the base
        for (int i = 0; i < (int)X.size(); ++i) {
            if (i == factor) continue;
            rest.a.push_back(sm.a[i]);
            rest.b.push_back(sm.b[i]);
        }
        t.cuts.push_back({summand_expr(base, rest), trimmed(rel), c});
    }
    return t;
}

TowerPresentation twist_normalize(const TowerPresentation& t) {
    // common twist g: every carrier must be O(g)
    std::vector<int> g;
    for (const auto& p : t.fiber) {
        if (p.u_factor >= 0 && !t.base.factors[p.u_factor].is_proj())
            throw std::invalid_argument(
                "twist_normalize: fiber is not line (x) trivial");
        std::vector<int> tw = p.twist;
        tw.resize(t.base.size(), 0);
        if (p.u_factor >= 0) tw[p.u_factor] -= 1;  // U on P = O(-1)
        if (g.empty()) g = tw;
        else if (g != tw)
            throw std::invalid_argument("twist_normalize: no common twist");
    }
    if (g.empty()) g.assign(t.base.size(), 0);
    TowerPresentation out;
    out.base = t.base;
    out.h = t.h;
    int m = 0;
    for (const auto& p : t.fiber) m += p.mult;
    out.fiber.push_back({-1, std::vector<int>(t.base.size(), 0), m});
    for (const auto& cut : t.cuts) {
        // U_R(old) = U_R(new) (x) g, so Schur_rel gains g^{-|rel|} on the base
        int sz = weight_sum(trimmed(cut.rel));
        ExprPtr bp = cut.base_part;
        if (sz != 0 &&
            std::any_of(g.begin(), g.end(), [](int x) { return x != 0; })) {
            std::vector<int> comp(t.base.size(), 0);
            for (size_t i = 0; i < g.size(); ++i) comp[i] = -sz * g[i];
            bp = tensor({bp, atom_O(comp)});
        }
        out.cuts.push_back({bp, cut.rel, cut.mult});
    }
    return out;
}

// --- lemma recognition --------------------------------------------------------

namespace {

// possible readings of one factor block of a canonical summand; on rank-one
// blocks U^dual and Q coincide with O(1), so a block can carry several roles
enum class Role { Trivial, Qpure, Upure, Line };

struct RoleOpt {
    Role role;
    int t = 0;  // Line twist
};

std::vector<RoleOpt> roles_of(const GrFactor& f, const Weight& a,
                              const Weight& b) {
    std::vector<RoleOpt> out;
    bool atriv = weight_sum(a) == 0;
    bool bline = b.empty() || std::all_of(b.begin(), b.end(),
                                          [&](int x) { return x == b[0]; });
    if (atriv && bline) {
        int t = b.empty() ? 0 : b[0];
        if (t == 0) out.push_back({Role::Trivial, 0});
        else out.push_back({Role::Line, t});
        if (t == 1 && f.k == 1) out.push_back({Role::Upure, 0});
        if (t == 1 && f.n - f.k == 1) out.push_back({Role::Qpure, 0});
    }
    if (atriv && trimmed(b) == Weight{1} && f.n - f.k > 1)
        out.push_back({Role::Qpure, 0});
    if (trimmed(a) == Weight{1} && weight_sum(b) == 0 && f.k > 1)
        out.push_back({Role::Upure, 0});
    return out;
}

}  // namespace

std::vector<RewriteStep> recognize(const ZeroLocusSpec& s) {
    const Ambient& X = s.X;
    std::vector<RewriteStep> out;
    Decomp cuts = normalize(X, s.F);

    auto residual_of = [&](const Summand& sm) {
        Decomp rest = cuts;
        if (--rest[sm] == 0) rest.erase(sm);
        return decomp_dsl(X, rest);
    };
    auto seen = [&](const RewriteStep& st) {
        return std::any_of(out.begin(), out.end(), [&](const RewriteStep& o) {
            return o.rule == st.rule && o.description == st.description &&
                   o.bound_factors == st.bound_factors;
        });
    };

    for (const auto& [sm, c] : cuts) {
        // role options per factor; skip summands with a non-pattern block
        std::vector<std::vector<RoleOpt>> opts;
        bool clean = true;
        for (int i = 0; i < (int)X.size(); ++i) {
            opts.push_back(roles_of(X.factors[i], sm.a[i], sm.b[i]));
            if (opts.back().empty()) clean = false;
        }
        if (!clean) continue;
        // enumerate role assignments
        std::vector<size_t> idx(X.size(), 0);
        for (;;) {
        std::vector<int> qf, uf, twisted;
        for (int i = 0; i < (int)X.size(); ++i) {
            switch (opts[i][idx[i]].role) {
                case Role::Qpure: qf.push_back(i); break;
                case Role::Upure: uf.push_back(i); break;
                case Role::Line: twisted.push_back(i); break;
                case Role::Trivial: break;
            }
        }

        auto push = [&](const std::string& rule, const std::string& desc,
                        std::vector<int> bound) {
            RewriteStep st{rule, desc, std::move(bound), residual_of(sm)};
            if (!seen(st)) out.push_back(std::move(st));
        };

        // Cayley trick: Q_{P^n} (x) L with L a gg line bundle elsewhere
        if (qf.size() == 1 && uf.empty() && X.factors[qf[0]].is_proj() &&
            !twisted.empty()) {
            bool gg = true;
            for (int i : twisted)
                if (opts[i][idx[i]].t < 0) gg = false;
            if (gg) {
                int p = qf[0];
                std::ostringstream os, L;
                L << "O(";
                bool first = true;
                for (int i = 0; i < (int)X.size(); ++i) {
                    if (i == p) continue;
                    if (!first) L << ",";
                    first = false;
                    L << opts[i][idx[i]].t;
                }
                L << ")";
                os << "blow-up of Z(" << L.str() << "^" << X.factors[p].n
                   << ") inside the product without factor " << p + 1;
                push("lm:blowPPtX", os.str(), {p});
            }
        }

        // Q_{Gr_1} (x) U^dual_{Gr_2} patterns
        if (qf.size() == 1 && uf.size() == 1 && twisted.empty()) {
            const GrFactor& g1 = X.factors[qf[0]];
            const GrFactor& g2 = X.factors[uf[0]];
            int k1 = g1.k, n1 = g1.n, k2 = g2.k, n2 = g2.n;
            std::vector<int> bound{qf[0], uf[0]};
            std::ostringstream os;
            if (n2 == n1 && k2 < k1) {
                os << "Fl(" << k2 << "," << k1 << "," << n1 << ")";
                push("lm:blowFlagGr(1)", os.str(), bound);
            }
            if (k1 == k2 && n1 == n2 - 1) {
                os.str("");
                os << "Bl_{Gr(" << k1 - 1 << "," << n1 << ")} Gr(" << k2 << ","
                   << n2 << "), center Z(Q) in Gr(" << k2 << "," << n2 << ")";
                push("lm:blowFlagGr(2)", os.str(), bound);
            }
            if (k2 == k1 && n2 == n1 + 2) {
                os.str("");
                os << "outside a point: Bl_{Z(Q_{P^" << n1 - 1
                   << "} # U^dual)} Gr(" << k2 << "," << n2 << ")";
                push("lm:blowFlagGr(3) [partial]", os.str(), bound);
            }
            if (k2 < k1 && k1 < n1 && n2 == n1 - 1) {
                os.str("");
                os << "Z(U^dual_1) in Fl(" << k2 << "," << k1 << "," << n1
                   << ")";
                push("flagCor(1)", os.str(), bound);
            }
            if (k2 < k1 && k1 < n1 && n1 == n2 - 1) {
                os.str("");
                os << "Z(Q_2) in Fl(" << k2 << "," << k1 + 1 << "," << n2
                   << ")";
                push("flagCor(2)", os.str(), bound);
            }
            if (k2 >= k1 && n2 >= n1) {
                os.str("");
                os << "Gr-bundle Gr_{Gr(" << k1 << "," << n1 << ")}(" << k2
                   << ", U + O^" << n2 - n1 << ")";
                push("flagCor(3)", os.str(), bound);
            }
        }
        // advance the role odometer
        size_t adv = 0;
        for (; adv < X.size(); ++adv) {
            if (++idx[adv] < opts[adv].size()) break;
            idx[adv] = 0;
        }
        if (adv == X.size()) break;
        }
    }
    return out;
}

std::vector<RewriteStep> recognize(const TowerPresentation& t) {
    std::vector<RewriteStep> out;
    // two-step flag: Gr_{Gr(k2,n)}(h, U) = Fl(h, k2, n)
    if (t.base.size() == 1 && t.fiber.size() == 1 &&
        t.fiber[0].u_factor == 0 && t.fiber[0].mult == 1 &&
        std::all_of(t.fiber[0].twist.begin(), t.fiber[0].twist.end(),
                    [](int x) { return x == 0; }) &&
        t.h < t.base.factors[0].k) {
        std::ostringstream os;
        os << "Fl(" << t.h << "," << t.base.factors[0].k << ","
           << t.base.factors[0].n << ")";
        out.push_back({"lm:flag2.5", os.str(), {0}, ""});
    }
    return out;
}

}  // namespace fanozl
