#include "fanozl/chow.hpp"

#include <mutex>

namespace fanozl {

namespace {

bool fits_box(const Weight& lam, const GrFactor& f) {
    return (int)lam.size() <= f.k && (lam.empty() || lam[0] <= f.n - f.k);
}

int key_degree(const std::vector<Weight>& key) {
    int d = 0;
    for (const auto& w : key) d += weight_sum(w);
    return d;
}

}  // namespace

ChowClass ChowClass::graded(int d) const {
    ChowClass out{X, {}};
    for (const auto& [k, v] : c)
        if (key_degree(k) == d) out.c.emplace(k, v);
    return out;
}

int ChowClass::top_degree() const {
    int d = -1;
    for (const auto& [k, v] : c) d = std::max(d, key_degree(k));
    return d;
}

ChowClass chow_zero(const Ambient& X) { return {X, {}}; }

ChowClass chow_one(const Ambient& X) {
    ChowClass r{X, {}};
    r.c[std::vector<Weight>(X.size())] = 1;
    return r;
}

ChowClass chow_sigma(const Ambient& X, size_t i, const Weight& lam) {
    Weight l = trimmed(lam);
    if (!fits_box(l, X.factors[i]))
        throw std::invalid_argument("chow_sigma: partition outside box");
    ChowClass r{X, {}};
    std::vector<Weight> key(X.size());
    key[i] = l;
    r.c[key] = 1;
    return r;
}

ChowClass chow_hyperplane(const Ambient& X, size_t i) {
    return chow_sigma(X, i, {1});
}

ChowClass chow_degree_class(const Ambient& X, const std::vector<int>& t) {
    ChowClass r = chow_zero(X);
    for (size_t i = 0; i < X.size(); ++i)
        if (t[i] != 0) r = chow_add(r, chow_scale(chow_hyperplane(X, i), t[i]));
    return r;
}

ChowClass chow_add(const ChowClass& a, const ChowClass& b) {
    if (a.X != b.X) throw std::invalid_argument("chow_add: ambient mismatch");
    ChowClass r = a;
    for (const auto& [k, v] : b.c) {
        Rat& slot = r.c[k];
        slot += v;
        if (slot == 0) r.c.erase(k);
    }
    return r;
}

ChowClass chow_scale(const ChowClass& a, const Rat& s) {
    ChowClass r{a.X, {}};
    if (s == 0) return r;
    for (const auto& [k, v] : a.c) r.c[k] = v * s;
    return r;
}

namespace {

std::mutex box_mtx;
std::map<std::tuple<int, int, Weight, Weight>, std::vector<std::pair<Weight, Coef>>>
    box_cache;

// sigma_u * sigma_v on Gr(k,n): LR with box truncation
const std::vector<std::pair<Weight, Coef>>& box_mul(const GrFactor& f,
                                                    const Weight& u,
                                                    const Weight& v) {
    auto key = std::make_tuple(f.k, f.n, u, v);
    {
        std::lock_guard lk(box_mtx);
        auto it = box_cache.find(key);
        if (it != box_cache.end()) return it->second;
    }
    std::vector<std::pair<Weight, Coef>> out;
    for (const auto& [nu, c] : lr(u, v))
        if (fits_box(nu, f)) out.emplace_back(nu, c);
    std::lock_guard lk(box_mtx);
    return box_cache.emplace(key, std::move(out)).first->second;
}

}  // namespace

ChowClass chow_mul(const ChowClass& a, const ChowClass& b) {
    if (a.X != b.X) throw std::invalid_argument("chow_mul: ambient mismatch");
    const Ambient& X = a.X;
    int dmax = X.dim();
    ChowClass r{X, {}};
    for (const auto& [ka, va] : a.c)
        for (const auto& [kb, vb] : b.c) {
            if (key_degree(ka) + key_degree(kb) > dmax) continue;
            // factorwise products, expanded by odometer
            std::vector<const std::vector<std::pair<Weight, Coef>>*> parts;
            bool dead = false;
            for (size_t i = 0; i < X.size() && !dead; ++i) {
                parts.push_back(&box_mul(X.factors[i], ka[i], kb[i]));
                if (parts.back()->empty()) dead = true;
            }
            if (dead) continue;
            std::vector<size_t> idx(X.size(), 0);
            while (true) {
                std::vector<Weight> key(X.size());
                Rat coef = va * vb;
                for (size_t i = 0; i < X.size(); ++i) {
                    key[i] = (*parts[i])[idx[i]].first;
                    coef *= (*parts[i])[idx[i]].second;
                }
                Rat& slot = r.c[key];
                slot += coef;
                if (slot == 0) r.c.erase(key);
                size_t p = 0;
                for (; p < X.size(); ++p) {
                    if (++idx[p] < parts[p]->size()) break;
                    idx[p] = 0;
                }
                if (p == X.size()) break;
            }
        }
    return r;
}

ChowClass chow_pow(const ChowClass& a, int m) {
    ChowClass r = chow_one(a.X);
    for (int i = 0; i < m; ++i) r = chow_mul(r, a);
    return r;
}

Rat integrate(const ChowClass& a) {
    std::vector<Weight> top;
    for (const auto& f : a.X.factors) {
        Weight full(f.k, f.n - f.k);
        top.push_back(trimmed(full));
    }
    auto it = a.c.find(top);
    return it == a.c.end() ? Rat(0) : it->second;
}

ChowClass class_inverse(const ChowClass& a) {
    const Ambient& X = a.X;
    ChowClass one = chow_one(X);
    ChowClass u = chow_add(a, chow_scale(one, -1));  // positive-degree part
    if (!u.graded(0).is_zero())
        throw std::invalid_argument("class_inverse: constant term != 1");
    ChowClass r = one, upow = one;
    for (int m = 1; m <= X.dim(); ++m) {
        upow = chow_mul(upow, u);
        if (upow.is_zero()) break;
        r = chow_add(r, chow_scale(upow, (m % 2) ? -1 : 1));
    }
    return r;
}

ChowClass class_exp(const ChowClass& a) {
    const Ambient& X = a.X;
    if (!a.graded(0).is_zero())
        throw std::invalid_argument("class_exp: nonzero constant term");
    ChowClass r = chow_one(X), apow = chow_one(X);
    Rat fact = 1;
    for (int m = 1; m <= X.dim(); ++m) {
        apow = chow_mul(apow, a);
        fact *= m;
        if (apow.is_zero()) break;
        r = chow_add(r, chow_scale(apow, Rat(1) / fact));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Chern character: per irreducible summand, per factor, per side.
// The U^dual-side symmetric polynomial sum_w (w.x)^j / j! is expanded in the
// Schur basis of the Chern roots x of U^dual, and s_lam(x) |-> sigma_lam.
// On the Q side s_mu(y) |-> sigma_{mu'}.
// ---------------------------------------------------------------------------

namespace {

Rat factorial(int n) {
    Rat r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// expand sum_w mult * prod_t w_t^{mu_t} / mu!  over the weight multiset
// of Sigma_a C^r, for each partition mu of j with <= r parts; then convert
// the monomial-basis symmetric polynomial to the Schur basis greedily.
std::map<Weight, Rat> side_schur_expansion(const Weight& a, int r, int j) {
    const WeightMultiset& ws = schur_weights(a, r);
    std::map<Weight, Rat> mono;  // sorted exponent vector -> coefficient
    for (const auto& mu : partitions_of(j, r, j)) {
        Weight mup = padded(mu, r);
        Rat coef = 0;
        for (const auto& [w, m] : ws) {
            Int p = m;
            for (int t = 0; t < r && p != 0; ++t)
                for (int e = 0; e < mup[t]; ++e) p *= w[t];
            coef += Rat(p);
        }
        if (coef == 0) continue;
        Rat mufact = 1;
        for (int t : mu) mufact *= factorial(t);
        mono[mu] = coef / mufact;
    }
    // greedy monomial -> Schur (lex order refines dominance)
    std::map<Weight, Rat> out;
    while (!mono.empty()) {
        auto it = std::prev(mono.end());
        Weight lam = it->first;
        Rat c = it->second;
        const WeightMultiset& kw = schur_weights(lam, r);
        // Kostka numbers: multiplicity of the sorted (dominant) representative
        std::map<Weight, Coef> kostka;
        for (const auto& [w, m] : kw) {
            Weight s = w;
            std::sort(s.rbegin(), s.rend());
            if (s == w) kostka[trimmed(s)] = m;  // sorted rep carries K
        }
        for (const auto& [mu, K] : kostka) {
            auto jt = mono.find(mu);
            Rat cur = (jt == mono.end()) ? Rat(0) : jt->second;
            cur -= c * K;
            if (cur == 0) {
                if (jt != mono.end()) mono.erase(jt);
            } else {
                mono[mu] = cur;
            }
        }
        out[lam] += c;
    }
    return out;
}

std::mutex ch_mtx;
std::map<Summand, ChowClass> ch_cache;

ChowClass chern_character_summand(const Ambient& X, const Summand& s) {
    {
        std::lock_guard lk(ch_mtx);
        auto it = ch_cache.find(s);
        if (it != ch_cache.end()) return it->second;
    }
    int dmax = X.dim();
    ChowClass acc = chow_one(X);
    for (size_t i = 0; i < X.size(); ++i) {
        const GrFactor& f = X.factors[i];
        // side class: sum over degrees of the side expansion
        for (int side = 0; side < 2; ++side) {
            const Weight& w = side == 0 ? s.a[i] : s.b[i];
            int r = side == 0 ? f.k : f.n - f.k;
            ChowClass sideclass = chow_zero(X);
            for (int j = 0; j <= dmax; ++j) {
                for (const auto& [lam, co] : side_schur_expansion(w, r, j)) {
                    // U side: s_lam(x) -> sigma_lam ; Q side: -> sigma_lam'
                    Weight key = side == 0 ? lam : conjugate(lam);
                    if (!fits_box(key, f)) continue;
                    ChowClass term = chow_sigma(X, i, key);
                    sideclass = chow_add(sideclass, chow_scale(term, co));
                }
            }
            acc = chow_mul(acc, sideclass);
        }
    }
    std::lock_guard lk(ch_mtx);
    return ch_cache.emplace(s, acc).first->second;
}

}  // namespace

ChowClass chern_character(const Ambient& X, const Decomp& A, int dmax) {
    if (dmax < 0) dmax = X.dim();
    ChowClass r = chow_zero(X);
    for (const auto& [s, c] : A)
        r = chow_add(r, chow_scale(chern_character_summand(X, s), c));
    // truncate
    ChowClass out{X, {}};
    for (const auto& [k, v] : r.c)
        if (key_degree(k) <= dmax) out.c.emplace(k, v);
    return out;
}

ChowClass chern_character(const Ambient& X, const ExprPtr& e, int dmax) {
    return chern_character(X, normalize(X, e), dmax);
}

namespace {

// Newton's identities: ch -> total Chern class
ChowClass ch_to_c(const ChowClass& ch) {
    const Ambient& X = ch.X;
    int d = X.dim();
    std::vector<ChowClass> p(d + 1, chow_zero(X));
    for (int j = 1; j <= d; ++j)
        p[j] = chow_scale(ch.graded(j), factorial(j));
    std::vector<ChowClass> e(d + 1, chow_zero(X));
    e[0] = chow_one(X);
    for (int i = 1; i <= d; ++i) {
        ChowClass acc = chow_zero(X);
        for (int t = 1; t <= i; ++t) {
            ChowClass term = chow_mul(e[i - t], p[t]);
            acc = chow_add(acc, chow_scale(term, (t % 2) ? 1 : -1));
        }
        e[i] = chow_scale(acc, Rat(1, i));
    }
    ChowClass total = chow_zero(X);
    for (int i = 0; i <= d; ++i) total = chow_add(total, e[i]);
    return total;
}

void assert_integral(const ChowClass& a, const char* what) {
    for (const auto& [k, v] : a.c)
        if (v.get_den() != 1)
            throw std::logic_error(std::string(what) +
                                   ": non-integer coefficient");
}

std::mutex td_mtx;
std::map<Ambient, ChowClass> td_cache;

// series coefficients of log(x / (1 - e^{-x})) up to degree n
std::vector<Rat> todd_log_series(int n) {
    // g(x) = (1 - e^{-x})/x = sum_{i>=0} (-1)^i x^i / (i+1)!
    std::vector<Rat> g(n + 1);
    for (int i = 0; i <= n; ++i)
        g[i] = Rat((i % 2) ? -1 : 1) / factorial(i + 1);
    // log(1/g) = -log(1 + u), u = g - 1
    std::vector<Rat> u = g;
    u[0] = 0;
    std::vector<Rat> acc(n + 1, 0), upow(n + 1, 0);
    upow[0] = 1;
    for (int m = 1; m <= n; ++m) {
        // upow *= u
        std::vector<Rat> nx(n + 1, 0);
        for (int i = 0; i <= n; ++i) {
            if (upow[i] == 0) continue;
            for (int j = 1; i + j <= n; ++j) nx[i + j] += upow[i] * u[j];
        }
        upow = std::move(nx);
        // -log(1+u) = sum_m (-1)^m u^m / m
        Rat sgn = (m % 2) ? Rat(-1) : Rat(1);
        for (int i = 0; i <= n; ++i) acc[i] += sgn * upow[i] / m;
    }
    return acc;
}

}  // namespace

ChowClass chern_class(const Ambient& X, const Decomp& A) {
    ChowClass c = ch_to_c(chern_character(X, A));
    assert_integral(c, "chern_class");
    return c;
}

ChowClass chern_class(const Ambient& X, const ExprPtr& e) {
    return chern_class(X, normalize(X, e));
}

ChowClass tangent_chern(const Ambient& X) {
    return chern_class(X, tangent(X));
}

ChowClass todd_class(const Ambient& X) {
    {
        std::lock_guard lk(td_mtx);
        auto it = td_cache.find(X);
        if (it != td_cache.end()) return it->second;
    }
    int d = X.dim();
    ChowClass ch = chern_character(X, tangent(X));
    std::vector<Rat> L = todd_log_series(d);
    ChowClass logtd = chow_zero(X);
    for (int j = 1; j <= d; ++j)
        logtd = chow_add(logtd,
                         chow_scale(ch.graded(j), L[j] * factorial(j)));
    ChowClass td = class_exp(logtd);
    std::lock_guard lk(td_mtx);
    return td_cache.emplace(X, td).first->second;
}

namespace {
std::mutex chi_mtx;
std::map<Summand, Int> chi_cache;
}

Int chi_hrr(const Ambient& X, const Decomp& A) {
    Int total = 0;
    for (const auto& [s, c] : A) {
        {
            std::lock_guard lk(chi_mtx);
            auto it = chi_cache.find(s);
            if (it != chi_cache.end()) {
                total += Int(c) * it->second;
                continue;
            }
        }
        Rat chi = integrate(
            chow_mul(chern_character_summand(X, s), todd_class(X)));
        if (chi.get_den() != 1)
            throw std::logic_error("chi_hrr: not an integer");
        Int v = chi.get_num();
        {
            std::lock_guard lk(chi_mtx);
            chi_cache.emplace(s, v);
        }
        total += Int(c) * v;
    }
    return total;
}

Int chi_hrr(const Ambient& X, const ExprPtr& e) {
    return chi_hrr(X, normalize(X, e));
}

Int euler_number(const Ambient& X) {
    ChowClass ct = tangent_chern(X).graded(X.dim());
    Rat e = integrate(ct);
    if (e.get_den() != 1) throw std::logic_error("euler_number");
    return e.get_num();
}

}  // namespace fanozl
