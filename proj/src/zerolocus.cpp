#include "fanozl/zerolocus.hpp"
#include "fanozl/parallel.hpp"

#include <mutex>
#include <sstream>

namespace fanozl {

namespace {

struct Ctx {
    const ZeroLocusSpec& spec;
    Decomp Fd;  // F^dual, normalized
    int rkF = 0;
    std::vector<Decomp> wedgeF;
    std::vector<Decomp> symF;

    explicit Ctx(const ZeroLocusSpec& s) : spec(s) {
        Fd = normalize(s.X, dual(s.F));
        Int r = 0;
        for (const auto& [sm, c] : Fd) r += Int(c) * summand_rank(sm);
        rkF = (int)to_ll(r);
        if (rkF > s.X.dim())
            throw std::invalid_argument("zero locus: empty or excess (rk F > dim X)");
        wedgeF = wedge_table(s.X, Fd, rkF);
        symF.push_back({{trivial_summand(s.X), 1}});
    }

    const Decomp& sym_F(int s) {
        if (s >= (int)symF.size()) {
            auto t = sym_table(spec.X, Fd, s);
            symF = std::move(t);
        }
        return symF[s];
    }

    Int koszul(const Decomp& e) {
        Int chi = 0;
        for (int r = 0; r <= rkF; ++r) {
            Decomp t = decomp_tensor(spec.X, wedgeF[r], e);
            chi += Int(r % 2 ? -1 : 1) * chi_hrr(spec.X, t);
        }
        return chi;
    }
};

}  // namespace

int zl_dim(const ZeroLocusSpec& spec) {
    Int r = expr_rank(spec.X, spec.F);
    Int d = spec.X.dim() - r;
    if (d < 0)
        throw std::invalid_argument("zero locus: empty or excess (rk F > dim X)");
    return (int)to_ll(d);
}

std::vector<int> minus_K(const ZeroLocusSpec& spec) {
    // -K_M = (-K_X - c_1(F))|_M, with -K_X = O(n_1, ..., n_m)
    ChowClass c1 = chern_character(spec.X, spec.F, 1).graded(1);
    std::vector<int> deg;
    for (size_t i = 0; i < spec.X.size(); ++i) {
        std::vector<Weight> key(spec.X.size());
        key[i] = {1};
        Rat d = c1.c.count(key) ? c1.c.at(key) : Rat(0);
        if (d.get_den() != 1) throw std::logic_error("minus_K: c1 not integral");
        deg.push_back(spec.X.factors[i].n - (int)d.get_num().get_si());
    }
    return deg;
}

bool is_fano(const ZeroLocusSpec& spec) {
    for (int d : minus_K(spec))
        if (d <= 0) return false;
    return true;
}

Int koszul_chi(const ZeroLocusSpec& spec, const Decomp& e) {
    Ctx ctx(spec);
    return ctx.koszul(e);
}

Int koszul_chi(const ZeroLocusSpec& spec, const ExprPtr& e) {
    return koszul_chi(spec, normalize(spec.X, e));
}

Int h0_minus_K(const ZeroLocusSpec& spec) {
    std::vector<int> mk = minus_K(spec);
    return koszul_chi(spec, atom_O(mk));
}

Int volume(const ZeroLocusSpec& spec) {
    int d = zl_dim(spec);
    ChowClass k1 = chow_degree_class(spec.X, minus_K(spec));
    ChowClass ctop = chern_class(spec.X, spec.F).graded(
        spec.X.dim() - d);
    Rat v = integrate(chow_mul(chow_pow(k1, d), ctop));
    if (v.get_den() != 1) throw std::logic_error("volume: not an integer");
    return v.get_num();
}

Int chi_tangent(const ZeroLocusSpec& spec) {
    Ctx ctx(spec);
    // normal-bundle sequence: chi(T_M) = chi(T_X|_M) - chi(F|_M)
    return ctx.koszul(tangent(spec.X)) -
           ctx.koszul(normalize(spec.X, spec.F));
}

Int euler_top(const ZeroLocusSpec& spec) {
    int d = zl_dim(spec);
    ChowClass cT = tangent_chern(spec.X);
    ChowClass cF = chern_class(spec.X, spec.F);
    ChowClass quot = chow_mul(cT, class_inverse(cF));
    ChowClass ctop = cF.graded(spec.X.dim() - d);
    Rat e = integrate(chow_mul(quot.graded(d), ctop));
    if (e.get_den() != 1) throw std::logic_error("euler_top: not an integer");
    return e.get_num();
}

Int chi_omega(const ZeroLocusSpec& spec, int p) {
    Ctx ctx(spec);
    Int chi = 0;
    for (int k = 0; k <= p; ++k) {
        Decomp t = decomp_tensor(spec.X, ctx.sym_F(p - k), omega(spec.X, k));
        chi += Int((p - k) % 2 ? -1 : 1) * ctx.koszul(t);
    }
    return chi;
}

// ---------------------------------------------------------------------------
// Hodge numbers: hypercohomology of the Koszul-resolved conormal complex.
// E_1^{s,q} = (+)_{k-p-r=s} H^q(X, wedge^r F^d (x) Sym^{p-k} F^d (x) Omega^k)
// abutting to h^{p, s+q}.  Differentials connect adjacent antidiagonals only;
// the chain of kill-capacities bounds each h^{p,t} soundly.
// ---------------------------------------------------------------------------

namespace {

const Int INF = Int(1) << 80;

struct Pass {
    std::map<int, Interval> ht;  // t -> interval (0..dimM)
    Int chi = 0;                 // exact Euler characteristic of the column
};

Pass chain_solve(const std::map<std::pair<int, int>, Int>& ent, int dimM) {
    Pass out;
    std::map<int, Int> S;
    for (const auto& [sq, v] : ent) {
        S[sq.first + sq.second] += v;
        out.chi += Int((sq.first + sq.second) % 2 ? -1 : 1) * v;
    }
    if (S.empty()) {
        for (int t = 0; t <= dimM; ++t) out.ht[t] = {0, 0};
        return out;
    }
    int tmin = S.begin()->first, tmax = std::prev(S.end())->first;
    // Differentials (any page) move s by +i and q by 1-i, so within adjacent
    // totals u -> v is possible exactly when s_v > s_u.
    auto cap = [&](int t) -> Int {
        Int src = 0, dst = 0;
        for (const auto& [u, vu] : ent) {
            if (u.first + u.second == t) {
                for (const auto& [w, vw] : ent)
                    if (vw > 0 && w.first + w.second == t + 1 &&
                        w.first > u.first) {
                        src += vu;
                        break;
                    }
            } else if (u.first + u.second == t + 1) {
                for (const auto& [w, vw] : ent)
                    if (vw > 0 && w.first + w.second == t &&
                        w.first < u.first) {
                        dst += vu;
                        break;
                    }
            }
        }
        return std::min(src, dst);
    };
    std::map<int, std::pair<Int, Int>> K;  // t -> [lo,hi] for kills t -> t+1
    for (int t = tmin - 1; t <= tmax; ++t) K[t] = {0, cap(t)};
    auto Sat = [&](int t) { return S.count(t) ? S[t] : Int(0); };
    bool changed = true;
    int guard = 0;
    while (changed && guard++ < 200) {
        changed = false;
        for (int t = tmin; t <= tmax; ++t) {
            bool forced = (t < 0 || t > dimM);
            Int st = Sat(t);
            auto& kl = K[t - 1];
            auto& kr = K[t];
            // K_{t-1} + K_t <= S_t (with equality when forced)
            Int nh = st - kl.first;
            if (kr.second > nh) { kr.second = nh; changed = true; }
            nh = st - kr.first;
            if (kl.second > nh) { kl.second = nh; changed = true; }
            if (forced) {
                Int nl = st - kr.second;
                if (kl.first < nl) { kl.first = nl; changed = true; }
                nl = st - kl.second;
                if (kr.first < nl) { kr.first = nl; changed = true; }
            }
            if (kl.first > kl.second || kr.first > kr.second)
                throw std::logic_error("hodge: infeasible spectral chain");
        }
    }
    for (int t = 0; t <= dimM; ++t) {
        Int st = Sat(t);
        Int klh = K.count(t - 1) ? K[t - 1].second : Int(0);
        Int kll = K.count(t - 1) ? K[t - 1].first : Int(0);
        Int krh = K.count(t) ? K[t].second : Int(0);
        Int krl = K.count(t) ? K[t].first : Int(0);
        Int lo = st - klh - krh;
        if (lo < 0) lo = 0;
        Int hi = st - kll - krl;
        out.ht[t] = {lo, hi};
    }
    return out;
}

struct LinTerm { size_t var; long coef; };
struct Lin { std::vector<LinTerm> terms; Int rhs; };

bool tighten(std::vector<Interval>& v, const Lin& L) {
    Int totmin = 0, totmax = 0;
    for (const auto& t : L.terms) {
        if (t.coef > 0) {
            totmin += t.coef * v[t.var].lo;
            totmax += t.coef * v[t.var].hi;
        } else {
            totmin += t.coef * v[t.var].hi;
            totmax += t.coef * v[t.var].lo;
        }
    }
    bool changed = false;
    for (const auto& t : L.terms) {
        Int own_min, own_max;
        if (t.coef > 0) {
            own_min = t.coef * v[t.var].lo;
            own_max = t.coef * v[t.var].hi;
        } else {
            own_min = t.coef * v[t.var].hi;
            own_max = t.coef * v[t.var].lo;
        }
        Int rest_min = totmin - own_min, rest_max = totmax - own_max;
        // t.coef * x  in  [rhs - rest_max, rhs - rest_min]
        Int a = L.rhs - rest_max, b = L.rhs - rest_min;
        long c = t.coef;
        if (c < 0) { std::swap(a, b); a = -a; b = -b; c = -c; }
        Int lo, hi;
        mpz_cdiv_q_ui(lo.get_mpz_t(), a.get_mpz_t(), (unsigned long)c);
        mpz_fdiv_q_ui(hi.get_mpz_t(), b.get_mpz_t(), (unsigned long)c);
        if (lo < 0) lo = 0;
        Interval& iv = v[t.var];
        if (lo > iv.lo) { iv.lo = lo; changed = true; }
        if (hi < iv.hi) { iv.hi = hi; changed = true; }
        if (iv.lo > iv.hi)
            throw std::logic_error("hodge: constraint contradiction");
    }
    return changed;
}

}  // namespace

HodgeResult hodge(const ZeroLocusSpec& spec) {
    Ctx ctx(spec);
    const Ambient& X = spec.X;
    int d = zl_dim(spec);
    bool fano = is_fano(spec);

    HodgeResult res;
    res.dim = d;
    res.h.assign(d + 1, std::vector<Interval>(d + 1, Interval{0, INF}));
    res.assumptions.push_back("generic section of F");
    res.assumptions.push_back(
        "conormal complex exact for a generic section (globally generated F)");
    if (!is_globally_generated(X, spec.F))
        res.assumptions.push_back(
            "warning: global generation of F not verified by the criterion");

    int pmax = d / 2;
    std::vector<Int> chi_p(d + 1, 0);
    std::vector<bool> chi_known(d + 1, false);

    // spectral passes for p = 0..pmax
    for (int p = 0; p <= pmax; ++p) {
        // precompute the conormal tensor blocks
        std::vector<Decomp> tsk(p + 1);
        for (int k = 0; k <= p; ++k)
            tsk[k] = decomp_tensor(X, ctx.sym_F(p - k), omega(X, k));
        // evaluate all (r,k) terms (independent work items)
        struct Job { int r, k; };
        std::vector<Job> jobs;
        for (int k = 0; k <= p; ++k)
            for (int r = 0; r <= ctx.rkF; ++r) jobs.push_back({r, k});
        std::vector<CohomologyTable> tables(jobs.size());
        parallel_for(jobs.size(), [&](size_t j) {
            Decomp term = decomp_tensor(X, ctx.wedgeF[jobs[j].r], tsk[jobs[j].k]);
            tables[j] = cohomology(X, term);
        });
        std::map<std::pair<int, int>, Int> ent;
        for (size_t j = 0; j < jobs.size(); ++j) {
            int s = jobs[j].k - p - jobs[j].r;
            for (const auto& [q, h] : tables[j])
                if (h != 0) ent[{s, q}] += h;
        }
        Pass pass = chain_solve(ent, d);
        chi_p[p] = pass.chi;
        chi_known[p] = true;
        for (int q = 0; q <= d; ++q) {
            const Interval& iv = pass.ht.count(q) ? pass.ht[q] : Interval{0, 0};
            Interval& g = res.h[p][q];
            if (iv.lo > g.lo) g.lo = iv.lo;
            if (iv.hi < g.hi) g.hi = iv.hi;
            if (g.lo > g.hi)
                throw std::logic_error("hodge: pass contradiction");
        }
    }
    // Serre pairing for the remaining chi's
    for (int p = pmax + 1; p <= d; ++p) {
        chi_p[p] = (d % 2 ? -chi_p[d - p] : chi_p[d - p]);
        chi_known[p] = true;
    }

    if (fano) {
        res.h[0][0] = {1, 1};
        for (int p = 1; p <= d; ++p) {
            res.h[p][0] = {0, 0};
            res.h[0][p] = {0, 0};
        }
        res.assumptions.push_back(
            "Fano: h^{0,0}=1 imposed, h^{p,0}=h^{0,p}=0 by Kodaira vanishing");
    }

    // orbit variables under Hodge + Serre symmetry
    std::map<std::pair<int, int>, size_t> var;
    std::vector<Interval> vals;
    auto rep = [&](int p, int q) {
        std::pair<int, int> r{p, q};
        r = std::min(r, std::pair<int, int>{q, p});
        r = std::min(r, std::pair<int, int>{d - p, d - q});
        r = std::min(r, std::pair<int, int>{d - q, d - p});
        return r;
    };
    for (int p = 0; p <= d; ++p)
        for (int q = 0; q <= d; ++q) {
            auto r = rep(p, q);
            if (!var.count(r)) {
                var[r] = vals.size();
                vals.push_back(Interval{0, INF});
            }
            size_t i = var[r];
            const Interval& g = res.h[p][q];
            if (g.lo > vals[i].lo) vals[i].lo = g.lo;
            if (g.hi < vals[i].hi) vals[i].hi = g.hi;
            if (vals[i].lo > vals[i].hi)
                throw std::logic_error("hodge: symmetry contradiction");
        }

    // linear constraints: rows (chi of Omega^p) and the Euler number
    std::vector<Lin> cons;
    for (int p = 0; p <= d; ++p) {
        if (!chi_known[p]) continue;
        Lin L;
        std::map<size_t, long> acc;
        for (int q = 0; q <= d; ++q) acc[var[rep(p, q)]] += (q % 2 ? -1 : 1);
        for (const auto& [v, c] : acc)
            if (c != 0) L.terms.push_back({v, c});
        L.rhs = chi_p[p];
        cons.push_back(std::move(L));
    }
    {
        Lin L;
        std::map<size_t, long> acc;
        for (int p = 0; p <= d; ++p)
            for (int q = 0; q <= d; ++q)
                acc[var[rep(p, q)]] += ((p + q) % 2 ? -1 : 1);
        for (const auto& [v, c] : acc)
            if (c != 0) L.terms.push_back({v, c});
        L.rhs = euler_top(spec);
        cons.push_back(std::move(L));
    }
    bool changed = true;
    int guard = 0;
    while (changed && guard++ < 200) {
        changed = false;
        for (const auto& L : cons)
            if (tighten(vals, L)) changed = true;
    }

    res.determinate = true;
    for (int p = 0; p <= d; ++p)
        for (int q = 0; q <= d; ++q) {
            res.h[p][q] = vals[var[rep(p, q)]];
            if (!res.h[p][q].exact()) res.determinate = false;
        }
    return res;
}

InvariantReport invariants(const ZeroLocusSpec& spec, bool with_hodge) {
    InvariantReport rep;
    rep.dim = zl_dim(spec);
    rep.minus_K = minus_K(spec);
    rep.fano = is_fano(spec);
    rep.h0_minus_K = h0_minus_K(spec);
    rep.h0_is_chi = !rep.fano;
    rep.volume = volume(spec);
    rep.chi_tangent = chi_tangent(spec);
    rep.euler = euler_top(spec);
    if (with_hodge) rep.hodge = hodge(spec);
    return rep;
}

}  // namespace fanozl
