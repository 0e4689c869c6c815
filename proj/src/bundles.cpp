#include "fanozl/bundles.hpp"

#include <mutex>

namespace fanozl {

Summand trivial_summand(const Ambient& X) {
    Summand s;
    for (const auto& f : X.factors) {
        s.a.emplace_back(f.k, 0);
        s.b.emplace_back(f.n - f.k, 0);
    }
    return s;
}

Summand line_summand(const Ambient& X, const std::vector<int>& tw) {
    Summand s = trivial_summand(X);
    for (size_t i = 0; i < X.size(); ++i)
        s.b[i].assign(X.factors[i].n - X.factors[i].k, tw[i]);
    return s;
}

void canonicalize(Summand& s) {
    // det U^dual = det Q = O(1): move the a-side twist onto the b side
    for (size_t i = 0; i < s.a.size(); ++i) {
        int alpha = s.a[i].empty() ? 0 : s.a[i].back();
        if (alpha != 0) {
            for (int& x : s.a[i]) x -= alpha;
            for (int& x : s.b[i]) x += alpha;
        }
    }
}

Summand dual_summand(const Summand& s) {
    Summand d;
    for (size_t i = 0; i < s.a.size(); ++i) {
        d.a.push_back(negate_reverse(s.a[i]));
        d.b.push_back(negate_reverse(s.b[i]));
    }
    canonicalize(d);
    return d;
}

Int summand_rank(const Summand& s) {
    Int r = 1;
    for (size_t i = 0; i < s.a.size(); ++i) {
        r *= schur_dim(s.a[i], (int)s.a[i].size());
        r *= schur_dim(s.b[i], (int)s.b[i].size());
    }
    return r;
}

bool is_line(const Summand& s) { return summand_rank(s) == 1; }

std::optional<std::vector<int>> line_twist(const Summand& s) {
    std::vector<int> tw;
    for (size_t i = 0; i < s.a.size(); ++i) {
        bool a0 = std::all_of(s.a[i].begin(), s.a[i].end(),
                              [](int x) { return x == 0; });
        if (!a0) return std::nullopt;
        int t = s.b[i].empty() ? 0 : s.b[i][0];
        for (int x : s.b[i])
            if (x != t) return std::nullopt;
        tw.push_back(t);
    }
    return tw;
}

// --- expression constructors ------------------------------------------------

namespace {
ExprPtr mk(Expr e) { return std::make_shared<const Expr>(std::move(e)); }
}

ExprPtr atom_U(int f) { return mk({.kind = Expr::K::U, .factor = f}); }
ExprPtr atom_Q(int f) { return mk({.kind = Expr::K::Q, .factor = f}); }
ExprPtr atom_O(std::vector<int> tw) {
    return mk({.kind = Expr::K::O, .tw = std::move(tw)});
}
ExprPtr dual(ExprPtr e) {
    return mk({.kind = Expr::K::Dual, .kids = {{std::move(e), 1}}});
}
ExprPtr wedge(int k, ExprPtr e) {
    return mk({.kind = Expr::K::Wedge, .deg = k, .kids = {{std::move(e), 1}}});
}
ExprPtr sym(int k, ExprPtr e) {
    return mk({.kind = Expr::K::Sym, .deg = k, .kids = {{std::move(e), 1}}});
}
ExprPtr schur(Weight lam, ExprPtr e) {
    return mk({.kind = Expr::K::Schur, .lam = std::move(lam),
               .kids = {{std::move(e), 1}}});
}
ExprPtr tensor(std::vector<ExprPtr> es) {
    Expr e{.kind = Expr::K::Tensor};
    for (auto& x : es) e.kids.emplace_back(std::move(x), 1);
    return mk(std::move(e));
}
ExprPtr sum(std::vector<std::pair<ExprPtr, Coef>> es) {
    return mk({.kind = Expr::K::Sum, .kids = std::move(es)});
}
ExprPtr zero_expr() { return sum({}); }

// --- weight products (per block, with twist handling) ------------------------

namespace {

std::mutex wm_mtx;
std::map<std::tuple<Weight, Weight>, std::map<Weight, Coef>> wm_cache;

// Sigma_u (x) Sigma_v at rank r = u.size() = v.size(); full-length outputs
const std::map<Weight, Coef>& weight_mul(const Weight& u, const Weight& v) {
    auto key = std::make_tuple(u, v);
    {
        std::lock_guard lk(wm_mtx);
        auto it = wm_cache.find(key);
        if (it != wm_cache.end()) return it->second;
    }
    int r = (int)u.size();
    int su = u.empty() ? 0 : u.back(), sv = v.empty() ? 0 : v.back();
    Weight u0 = trimmed(add_scalar(u, -su)), v0 = trimmed(add_scalar(v, -sv));
    std::map<Weight, Coef> out;
    for (const auto& [nu, c] : lr(u0, v0)) {
        if ((int)nu.size() > r) continue;
        out[add_scalar(padded(nu, r), su + sv)] += c;
    }
    std::lock_guard lk(wm_mtx);
    return wm_cache.emplace(key, std::move(out)).first->second;
}

}  // namespace

Decomp decomp_tensor(const Ambient& X, const Decomp& A, const Decomp& B) {
    Decomp out;
    size_t m = X.size();
    for (const auto& [s, cs] : A)
        for (const auto& [t, ct] : B) {
            // per-factor, per-side products; expand the cross product
            std::vector<const std::map<Weight, Coef>*> parts;
            for (size_t i = 0; i < m; ++i) {
                parts.push_back(&weight_mul(s.a[i], t.a[i]));
                parts.push_back(&weight_mul(s.b[i], t.b[i]));
            }
            std::vector<std::map<Weight, Coef>::const_iterator> it;
            for (auto* p : parts) {
                if (p->empty()) { it.clear(); break; }
                it.push_back(p->begin());
            }
            if (parts.size() != it.size()) continue;
            while (true) {
                Summand s2;
                Coef c = cs * ct;
                for (size_t i = 0; i < m; ++i) {
                    s2.a.push_back(it[2 * i]->first);
                    s2.b.push_back(it[2 * i + 1]->first);
                    c *= it[2 * i]->second * it[2 * i + 1]->second;
                }
                canonicalize(s2);
                out[s2] += c;
                // advance odometer
                size_t p = 0;
                for (; p < parts.size(); ++p) {
                    if (++it[p] != parts[p]->end()) break;
                    it[p] = parts[p]->begin();
                }
                if (p == parts.size()) break;
            }
        }
    return out;
}

Decomp decomp_dual(const Decomp& A) {
    Decomp out;
    for (const auto& [s, c] : A) out[dual_summand(s)] += c;
    return out;
}

void decomp_add(Decomp& A, const Decomp& B, Coef mult) {
    for (const auto& [s, c] : B) {
        auto it = A.emplace(s, 0).first;
        it->second += c * mult;
        if (it->second == 0) A.erase(it);
    }
}

// --- exterior / symmetric powers of one irreducible --------------------------

namespace {

std::mutex pw_mtx;
std::map<std::tuple<Summand, int, bool>, Decomp> pw_cache;

Summand zero_like(const Summand& s) {
    Summand t;
    for (const auto& w : s.a) t.a.emplace_back(w.size(), 0);
    for (const auto& w : s.b) t.b.emplace_back(w.size(), 0);
    return t;
}

Decomp summand_power(const Summand& s, int j, bool is_wedge) {
    if (j == 0) {
        Summand t = s;
        for (auto& w : t.a) std::fill(w.begin(), w.end(), 0);
        for (auto& w : t.b) std::fill(w.begin(), w.end(), 0);
        return {{t, 1}};
    }
    if (j == 1) return {{s, 1}};
    auto key = std::make_tuple(s, j, is_wedge);
    {
        std::lock_guard lk(pw_mtx);
        auto it = pw_cache.find(key);
        if (it != pw_cache.end()) return it->second;
    }
    // peel the line-bundle twist: wedge^j(S0 (x) L) = wedge^j(S0) (x) L^j
    Summand s0 = s;
    std::vector<int> tw(s.a.size(), 0);
    for (size_t i = 0; i < s0.b.size(); ++i) {
        int beta = s0.b[i].empty() ? 0 : s0.b[i].back();
        tw[i] = beta;
        for (int& x : s0.b[i]) x -= beta;
    }
    // collect active blocks (a-side blocks are canonical, min 0)
    struct Block { bool a_side; size_t factor; int rank; };
    std::vector<Block> blocks;
    std::vector<Weight> lams;
    std::vector<int> ranks;
    for (size_t i = 0; i < s0.a.size(); ++i) {
        if (weight_sum(s0.a[i]) != 0) {
            blocks.push_back({true, i, (int)s0.a[i].size()});
            lams.push_back(s0.a[i]);
            ranks.push_back((int)s0.a[i].size());
        }
        if (weight_sum(s0.b[i]) != 0) {
            blocks.push_back({false, i, (int)s0.b[i].size()});
            lams.push_back(s0.b[i]);
            ranks.push_back((int)s0.b[i].size());
        }
    }
    Decomp out;
    if (blocks.empty()) {
        // line bundle: wedge^j = 0 for j > 1, Sym^j = L^j
        if (!is_wedge) {
            Summand t = s;
            for (size_t i = 0; i < t.b.size(); ++i)
                for (int& x : t.b[i]) x *= j;
            out[t] = 1;
        }
    } else {
        WeightMultiset ch = block_character(lams, ranks);
        WeightMultiset pw = is_wedge ? multiset_wedge(ch, j)
                                     : multiset_sym(ch, j);
        for (const auto& [hw, c] : decompose_character(std::move(pw), ranks)) {
            Summand t = zero_like(s);
            for (size_t bidx = 0; bidx < blocks.size(); ++bidx) {
                if (blocks[bidx].a_side) t.a[blocks[bidx].factor] = hw[bidx];
                else t.b[blocks[bidx].factor] = hw[bidx];
            }
            for (size_t i = 0; i < t.b.size(); ++i)
                if (tw[i] * j != 0)
                    for (int& x : t.b[i]) x += tw[i] * j;
            canonicalize(t);
            out[t] += c;
        }
    }
    std::lock_guard lk(pw_mtx);
    return pw_cache.emplace(key, std::move(out)).first->second;
}

}  // namespace

Decomp summand_wedge(const Summand& s, int j) { return summand_power(s, j, true); }
Decomp summand_sym(const Summand& s, int j) { return summand_power(s, j, false); }

namespace {

// fold one copy of an irreducible into a power table
// wedge: T'_m = sum_i wedge^i(s) (x) T_{m-i}
std::vector<Decomp> fold_power(const Ambient& X, std::vector<Decomp> table,
                               const Summand& s, bool is_wedge) {
    int kmax = (int)table.size() - 1;
    long rk = to_ll(summand_rank(s));
    int imax = is_wedge ? (int)std::min<long>(rk, kmax) : kmax;
    std::vector<Decomp> powers(imax + 1);
    for (int i = 0; i <= imax; ++i)
        powers[i] = is_wedge ? summand_wedge(s, i) : summand_sym(s, i);
    std::vector<Decomp> out(kmax + 1);
    for (int m = 0; m <= kmax; ++m)
        for (int i = 0; i <= std::min(imax, m); ++i) {
            if (table[m - i].empty() || powers[i].empty()) continue;
            decomp_add(out[m], decomp_tensor(X, powers[i], table[m - i]));
        }
    return out;
}

std::vector<Decomp> power_table(const Ambient& X, const Decomp& A, int kmax,
                                bool is_wedge) {
    std::vector<Decomp> table(kmax + 1);
    table[0] = {{trivial_summand(X), 1}};
    for (const auto& [s, c] : A)
        for (Coef copy = 0; copy < c; ++copy)
            table = fold_power(X, std::move(table), s, is_wedge);
    return table;
}

}  // namespace

std::vector<Decomp> wedge_table(const Ambient& X, const Decomp& A, int kmax) {
    return power_table(X, A, kmax, true);
}
std::vector<Decomp> sym_table(const Ambient& X, const Decomp& A, int kmax) {
    return power_table(X, A, kmax, false);
}

// --- Schur functor via Jacobi-Trudi ------------------------------------------

namespace {

Decomp schur_of(const Ambient& X, const Weight& lam, const Decomp& A) {
    Weight l = trimmed(lam);
    if (!is_partition(l)) throw std::invalid_argument("schur: bad partition");
    if (l.empty()) return {{trivial_summand(X), 1}};
    if (l.size() == 1) return sym_table(X, A, l[0])[l[0]];
    if (l[0] == 1) return wedge_table(X, A, (int)l.size())[(int)l.size()];
    // fast path: single irreducible with one "standard" active block
    if (A.size() == 1 && A.begin()->second == 1) {
        const Summand& s = A.begin()->first;
        Summand s0 = s;
        std::vector<int> tw(s.a.size(), 0);
        for (size_t i = 0; i < s0.b.size(); ++i) {
            int beta = s0.b[i].empty() ? 0 : s0.b[i].back();
            tw[i] = beta;
            for (int& x : s0.b[i]) x -= beta;
        }
        int active = -1;  // factor index, +m for b side
        bool a_side = true, std_like = false;
        int nact = 0;
        for (size_t i = 0; i < s0.a.size(); ++i) {
            if (weight_sum(s0.a[i]) != 0) { nact++; active = (int)i; a_side = true; }
            if (weight_sum(s0.b[i]) != 0) { nact++; active = (int)i; a_side = false; }
        }
        if (nact == 1) {
            const Weight& w = a_side ? s0.a[active] : s0.b[active];
            Weight t = trimmed(w);
            std_like = (t == Weight{1});
            if (std_like && (int)l.size() <= (int)w.size()) {
                Summand out = s0;
                (a_side ? out.a[active] : out.b[active]) =
                    padded(l, w.size());
                int n = weight_sum(l);
                for (size_t i = 0; i < out.b.size(); ++i)
                    if (tw[i] != 0)
                        for (int& x : out.b[i]) x += tw[i] * n;
                canonicalize(out);
                return {{out, 1}};
            }
        }
    }
    // Jacobi-Trudi: s_lam = det(h_{lam_i - i + j})
    size_t ln = l.size();
    int hmax = l[0] + (int)ln;
    auto syms = sym_table(X, A, hmax);
    std::vector<int> perm(ln);
    std::iota(perm.begin(), perm.end(), 0);
    std::map<Summand, Coef> acc;
    do {
        int inv = 0;
        for (size_t i = 0; i < ln; ++i)
            for (size_t j = i + 1; j < ln; ++j)
                if (perm[i] > perm[j]) inv++;
        Coef sign = (inv % 2) ? -1 : 1;
        bool dead = false;
        Decomp term = {{trivial_summand(X), 1}};
        for (size_t i = 0; i < ln && !dead; ++i) {
            int a = l[i] - (int)i + perm[i];
            if (a < 0) { dead = true; break; }
            if (a == 0) continue;
            term = decomp_tensor(X, term, syms[a]);
        }
        if (dead) continue;
        for (const auto& [s, c] : term) acc[s] += sign * c;
    } while (std::next_permutation(perm.begin(), perm.end()));
    Decomp out;
    for (const auto& [s, c] : acc) {
        if (c < 0) throw std::logic_error("schur functor: negative mult");
        if (c > 0) out[s] = c;
    }
    return out;
}

}  // namespace

// --- normalize / rank ---------------------------------------------------------

Decomp normalize(const Ambient& X, const ExprPtr& e) {
    switch (e->kind) {
        case Expr::K::U: {
            if (e->factor < 0 || e->factor >= (int)X.size())
                throw std::invalid_argument("U: bad factor index");
            Summand s = trivial_summand(X);
            s.a[e->factor].back() = -1;
            canonicalize(s);
            return {{s, 1}};
        }
        case Expr::K::Q: {
            if (e->factor < 0 || e->factor >= (int)X.size())
                throw std::invalid_argument("Q: bad factor index");
            Summand s = trivial_summand(X);
            s.b[e->factor].front() = 1;
            return {{s, 1}};
        }
        case Expr::K::O: {
            if (e->tw.size() != X.size())
                throw std::invalid_argument("O: twist arity mismatch");
            return {{line_summand(X, e->tw), 1}};
        }
        case Expr::K::Dual:
            return decomp_dual(normalize(X, e->kids[0].first));
        case Expr::K::Wedge: {
            if (e->deg < 0) throw std::invalid_argument("wedge: degree < 0");
            return wedge_table(X, normalize(X, e->kids[0].first), e->deg)[e->deg];
        }
        case Expr::K::Sym: {
            if (e->deg < 0) throw std::invalid_argument("sym: degree < 0");
            return sym_table(X, normalize(X, e->kids[0].first), e->deg)[e->deg];
        }
        case Expr::K::Schur:
            return schur_of(X, e->lam, normalize(X, e->kids[0].first));
        case Expr::K::Tensor: {
            Decomp acc = {{trivial_summand(X), 1}};
            for (const auto& [kid, m] : e->kids)
                acc = decomp_tensor(X, acc, normalize(X, kid));
            return acc;
        }
        case Expr::K::Sum: {
            Decomp acc;
            for (const auto& [kid, m] : e->kids)
                decomp_add(acc, normalize(X, kid), m);
            return acc;
        }
    }
    throw std::logic_error("normalize: unreachable");
}

Int expr_rank(const Ambient& X, const ExprPtr& e) {
    switch (e->kind) {
        case Expr::K::U: return X.factors.at(e->factor).k;
        case Expr::K::Q: return X.factors.at(e->factor).n -
                                X.factors.at(e->factor).k;
        case Expr::K::O: return 1;
        case Expr::K::Dual: return expr_rank(X, e->kids[0].first);
        case Expr::K::Wedge: {
            Int r = expr_rank(X, e->kids[0].first);
            return binomial(to_ll(r), e->deg);
        }
        case Expr::K::Sym: {
            Int r = expr_rank(X, e->kids[0].first);
            return binomial(to_ll(r) + e->deg - 1, e->deg);
        }
        case Expr::K::Schur: {
            Int r = expr_rank(X, e->kids[0].first);
            Weight l = trimmed(e->lam);
            if ((Int)(long)l.size() > r) return 0;  // Schur of too-small rank
            return schur_dim(l, (int)to_ll(r));
        }
        case Expr::K::Tensor: {
            Int r = 1;
            for (const auto& [kid, m] : e->kids) r *= expr_rank(X, kid);
            return r;
        }
        case Expr::K::Sum: {
            Int r = 0;
            for (const auto& [kid, m] : e->kids)
                r += Int(m) * expr_rank(X, kid);
            return r;
        }
    }
    throw std::logic_error("rank: unreachable");
}

ExprPtr summand_expr(const Ambient& X, const Summand& s) {
    std::vector<ExprPtr> pieces;
    std::vector<int> tw(X.size(), 0);
    for (size_t i = 0; i < X.size(); ++i) {
        Weight a = trimmed(s.a[i]);  // canonical: min 0
        Weight b = s.b[i];
        int beta = b.empty() ? 0 : b.back();
        tw[i] = beta;
        b = trimmed(add_scalar(b, -beta));
        auto piece = [&](const Weight& lam, ExprPtr atom) {
            return lam == Weight{1} ? atom : schur(lam, std::move(atom));
        };
        if (!a.empty()) pieces.push_back(piece(a, dual(atom_U((int)i))));
        if (!b.empty()) pieces.push_back(piece(b, atom_Q((int)i)));
    }
    if (std::any_of(tw.begin(), tw.end(), [](int t) { return t != 0; }) ||
        pieces.empty())
        pieces.push_back(atom_O(tw));
    return pieces.size() == 1 ? pieces[0] : tensor(std::move(pieces));
}

// --- cotangent / tangent ------------------------------------------------------

namespace {
std::mutex om_mtx;
std::map<std::pair<Ambient, int>, Decomp> om_cache;
}

const Decomp& omega1(const Ambient& X) { return omega(X, 1); }

const Decomp& omega(const Ambient& X, int k) {
    auto key = std::make_pair(X, k);
    {
        std::lock_guard lk(om_mtx);
        auto it = om_cache.find(key);
        if (it != om_cache.end()) return it->second;
    }
    Decomp res;
    if (k == 0) {
        res = {{trivial_summand(X), 1}};
    } else if (k == 1) {
        // Omega_X = (+)_i U_i (x) Q_i^dual
        for (size_t i = 0; i < X.size(); ++i) {
            Summand s = trivial_summand(X);
            s.a[i].back() = -1;
            s.b[i].back() = -1;
            canonicalize(s);
            res[s] = 1;
        }
    } else {
        res = wedge_table(X, omega1(X), k)[k];
    }
    std::lock_guard lk(om_mtx);
    return om_cache.emplace(key, std::move(res)).first->second;
}

Decomp tangent(const Ambient& X) { return decomp_dual(omega1(X)); }

// --- Borel-Bott-Weil ----------------------------------------------------------

namespace {

std::mutex bbw_mtx;
std::map<std::tuple<int, int, Weight, Weight>,
         std::optional<std::pair<int, Int>>> bbw_cache;

std::optional<std::pair<int, Int>> bbw_factor(int k, int n, const Weight& a,
                                              const Weight& b) {
    auto key = std::make_tuple(k, n, a, b);
    {
        std::lock_guard lk(bbw_mtx);
        auto it = bbw_cache.find(key);
        if (it != bbw_cache.end()) return it->second;
    }
    // dotted Weyl action on (b | -rev(a)) with rho = (n-1, ..., 1, 0)
    Weight lam = b;
    Weight ar = negate_reverse(a);
    lam.insert(lam.end(), ar.begin(), ar.end());
    Weight v(n);
    for (int i = 0; i < n; ++i) v[i] = lam[i] + (n - 1 - i);
    std::optional<std::pair<int, Int>> res;
    bool repeat = false;
    {
        Weight s = v;
        std::sort(s.begin(), s.end());
        repeat = std::adjacent_find(s.begin(), s.end()) != s.end();
    }
    if (!repeat) {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (v[i] < v[j]) inv++;
        Weight sorted = v;
        std::sort(sorted.rbegin(), sorted.rend());
        for (int i = 0; i < n; ++i) sorted[i] -= (n - 1 - i);
        res = std::make_pair(inv, schur_dim(sorted, n));
    }
    std::lock_guard lk(bbw_mtx);
    return bbw_cache.emplace(key, res).first->second;
}

}  // namespace

std::optional<std::pair<int, Int>> bbw(const Ambient& X, const Summand& s) {
    int deg = 0;
    Int dim = 1;
    for (size_t i = 0; i < X.size(); ++i) {
        auto f = bbw_factor(X.factors[i].k, X.factors[i].n, s.a[i], s.b[i]);
        if (!f) return std::nullopt;
        deg += f->first;
        dim *= f->second;
    }
    return std::make_pair(deg, dim);
}

CohomologyTable cohomology(const Ambient& X, const Decomp& A) {
    CohomologyTable t;
    for (const auto& [s, c] : A) {
        auto h = bbw(X, s);
        if (h) {
            auto it = t.emplace(h->first, 0).first;
            it->second += Int(c) * h->second;
        }
    }
    return t;
}

CohomologyTable cohomology(const Ambient& X, const ExprPtr& e) {
    return cohomology(X, normalize(X, e));
}

Int euler_char_bbw(const Ambient& X, const Decomp& A) {
    Int chi = 0;
    for (const auto& [q, h] : cohomology(X, A))
        chi += (q % 2 ? -1 : 1) * h;
    return chi;
}

bool is_globally_generated(const Ambient& X, const ExprPtr& e) {
    for (const auto& [s, c] : normalize(X, e))
        for (size_t i = 0; i < X.size(); ++i) {
            if (!s.a[i].empty() && s.a[i].back() < 0) return false;
            if (!s.b[i].empty() && s.b[i].back() < 0) return false;
        }
    return true;
}

std::vector<int> canonical_degrees(const Ambient& X) {
    std::vector<int> d;
    for (const auto& f : X.factors) d.push_back(-f.n);
    return d;
}

}  // namespace fanozl
