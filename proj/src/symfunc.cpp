#include "fanozl/symfunc.hpp"

#include <functional>
#include <sstream>

namespace fanozl {

void partitions_of(int n, int max_len, int max_part, std::vector<Weight>& out) {
    Weight cur;
    // iterative backtracking over parts
    std::function<void(int, int)> rec = [&](int rest, int bound) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        if ((int)cur.size() == max_len) return;
        for (int p = std::min(rest, bound); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    rec(n, std::min(n, max_part));
}

std::string weight_str(const Weight& w) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) os << ',';
        os << w[i];
    }
    os << ')';
    return os.str();
}

// --------------------------------------------------------------------------
// Pieri: all mu >= nu with mu/nu a horizontal strip of size r.
// --------------------------------------------------------------------------
void pieri(const Weight& nu, int r, std::vector<Weight>& out) {
    Weight mu(nu.size() + 1, 0);
    std::function<void(size_t, int)> rec = [&](size_t row, int rest) {
        if (row == nu.size() + 1) {
            if (rest == 0) {
                Weight m(mu.begin(), mu.begin() + nu.size() + 1);
                out.push_back(trimmed(std::move(m)));
            }
            return;
        }
        int lo = row < nu.size() ? nu[row] : 0;
        int hi = row == 0 ? lo + rest
                          : std::min(lo + rest, nu[row - 1]);  // strip condition
        for (int v = lo; v <= hi; ++v) {
            mu[row] = v;
            rec(row + 1, rest - (v - lo));
        }
        mu[row] = lo;
    };
    rec(0, r);
}

namespace {

std::mutex lr_mtx;
std::map<std::pair<Weight, Weight>, LrTable> lr_cache;

// multiply an LrTable by h_r via Pieri
LrTable mul_h(const LrTable& t, int r) {
    if (r == 0) return t;
    LrTable out;
    std::vector<Weight> strip;
    for (const auto& [nu, c] : t) {
        strip.clear();
        pieri(nu, r, strip);
        for (const auto& mu : strip) out[mu] += c;
    }
    return out;
}

LrTable lr_compute(const Weight& lam, const Weight& mu) {
    // Jacobi-Trudi: s_mu = det(h_{mu_i - i + j}); expand the determinant and
    // fold each monomial h_a1 h_a2 ... into s_lam by iterated Pieri.
    size_t l = mu.size();
    std::vector<int> perm(l);
    std::iota(perm.begin(), perm.end(), 0);
    LrTable acc;
    do {
        int sign = 1;
        {
            // parity of perm
            int inv = 0;
            for (size_t i = 0; i < l; ++i)
                for (size_t j = i + 1; j < l; ++j)
                    if (perm[i] > perm[j]) inv++;
            sign = (inv % 2) ? -1 : 1;
        }
        bool dead = false;
        std::vector<int> hs;
        for (size_t i = 0; i < l; ++i) {
            int a = mu[i] - (int)i + perm[i];
            if (a < 0) { dead = true; break; }
            if (a > 0) hs.push_back(a);
        }
        if (dead) continue;
        LrTable t{{lam, 1}};
        for (int a : hs) t = mul_h(t, a);
        for (const auto& [nu, c] : t) acc[nu] += sign * c;
    } while (std::next_permutation(perm.begin(), perm.end()));
    // cancellation must leave nonnegative coefficients
    LrTable out;
    for (const auto& [nu, c] : acc) {
        if (c < 0) throw std::logic_error("lr: negative coefficient");
        if (c > 0) out[nu] = c;
    }
    return out;
}

}  // namespace

const LrTable& lr(const Weight& lam, const Weight& mu) {
    Weight a = trimmed(lam), b = trimmed(mu);
    if (!is_partition(a) || !is_partition(b))
        throw std::invalid_argument("lr: not partitions proper");
    if (b.size() > a.size() || (b.size() == a.size() && b > a)) std::swap(a, b);
    auto key = std::make_pair(a, b);
    {
        std::lock_guard lk(lr_mtx);
        auto it = lr_cache.find(key);
        if (it != lr_cache.end()) return it->second;
    }
    LrTable t = lr_compute(a, b);
    std::lock_guard lk(lr_mtx);
    return lr_cache.emplace(key, std::move(t)).first->second;
}

Int schur_dim(const Weight& lam, int r) {
    if ((int)trimmed(lam).size() > r)
        throw std::invalid_argument("schur_dim: rank too small");
    Weight l = padded(trimmed(lam), r);
    // Weyl dimension formula; twist-invariant, so negative entries are fine.
    Int num = 1, den = 1;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            num *= l[i] - l[j] + j - i;
            den *= j - i;
        }
    Int q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

namespace {

std::mutex sw_mtx;
std::map<std::pair<Weight, int>, WeightMultiset> sw_cache;

WeightMultiset ssyt_weights(const Weight& lam, int r) {
    // enumerate semistandard tableaux of shape lam with entries in 1..r
    WeightMultiset out;
    size_t rows = lam.size();
    if (rows == 0) {
        out[std::vector<int>(r, 0)] = 1;
        return out;
    }
    std::vector<std::vector<int>> t(rows);
    for (size_t i = 0; i < rows; ++i) t[i].assign(lam[i], 0);
    std::vector<int> content(r, 0);
    std::function<void(size_t, size_t)> rec = [&](size_t i, size_t j) {
        if (i == rows) {
            out[content] += 1;
            return;
        }
        size_t ni = i, nj = j + 1;
        if ((int)nj == lam[i]) { ni = i + 1; nj = 0; }
        int lo = 1;
        if (j > 0) lo = std::max(lo, t[i][j - 1]);            // rows weakly incr
        if (i > 0 && (int)j < lam[i - 1]) lo = std::max(lo, t[i - 1][j] + 1);
        for (int v = lo; v <= r; ++v) {
            t[i][j] = v;
            content[v - 1]++;
            rec(ni, nj);
            content[v - 1]--;
        }
    };
    rec(0, 0);
    return out;
}

}  // namespace

const WeightMultiset& schur_weights(const Weight& lam, int r) {
    if ((int)trimmed(lam).size() > r)
        throw std::invalid_argument("schur_weights: rank too small");
    Weight l = padded(trimmed(lam), r);
    if (!weakly_decreasing(l))
        throw std::invalid_argument("schur_weights: weight not dominant");
    auto key = std::make_pair(l, r);
    {
        std::lock_guard lk(sw_mtx);
        auto it = sw_cache.find(key);
        if (it != sw_cache.end()) return it->second;
    }
    WeightMultiset m;
    int t = l.back();
    if (t < 0) {  // twist out the negative tail, shift weights back
        const WeightMultiset& base = schur_weights(add_scalar(l, -t), r);
        for (const auto& [w, c] : base) {
            std::vector<int> v = w;
            for (int& x : v) x += t;
            m[v] = c;
        }
    } else {
        m = ssyt_weights(trimmed(l), r);
    }
    std::lock_guard lk(sw_mtx);
    return sw_cache.emplace(key, std::move(m)).first->second;
}

std::vector<std::pair<Weight, Weight>> cauchy_wedge(int k) {
    std::vector<std::pair<Weight, Weight>> out;
    for (const auto& lam : partitions_of(k)) out.emplace_back(lam, conjugate(lam));
    return out;
}

std::vector<std::pair<Weight, Weight>> cauchy_sym(int k) {
    std::vector<std::pair<Weight, Weight>> out;
    for (const auto& lam : partitions_of(k)) out.emplace_back(lam, lam);
    return out;
}

// --------------------------------------------------------------------------
// multiset powers
// --------------------------------------------------------------------------
namespace {

WeightMultiset multiset_power(const WeightMultiset& m, int k, bool wedge) {
    // DP over elements; level = number of chosen entries so far
    std::vector<WeightMultiset> lev(k + 1);
    if (m.empty()) {
        if (k == 0) lev[0][{}] = 1;
        else return {};
    } else {
        lev[0][std::vector<int>(m.begin()->first.size(), 0)] = 1;
    }
    for (const auto& [w, mult] : m) {
        std::vector<WeightMultiset> nxt(k + 1);
        for (int l = 0; l <= k; ++l) {
            if (lev[l].empty()) continue;
            int imax = wedge ? std::min<Coef>(mult, k - l) : (k - l);
            for (int i = 0; i <= imax; ++i) {
                Int ways = wedge ? binomial(mult, i)
                                 : binomial(mult + i - 1, i);
                Coef wl = to_ll(ways);
                if (wl == 0) continue;
                for (const auto& [v, c] : lev[l]) {
                    std::vector<int> nv = v;
                    for (size_t t = 0; t < nv.size(); ++t) nv[t] += i * w[t];
                    nxt[l + i][nv] += c * wl;
                }
            }
        }
        lev = std::move(nxt);
    }
    return lev[k];
}

}  // namespace

WeightMultiset multiset_wedge(const WeightMultiset& m, int k) {
    return multiset_power(m, k, true);
}
WeightMultiset multiset_sym(const WeightMultiset& m, int k) {
    return multiset_power(m, k, false);
}

WeightMultiset block_character(const std::vector<Weight>& lams,
                               const std::vector<int>& block_ranks) {
    WeightMultiset acc;
    acc[{}] = 1;
    for (size_t b = 0; b < block_ranks.size(); ++b) {
        const WeightMultiset& wb = schur_weights(lams[b], block_ranks[b]);
        WeightMultiset nxt;
        for (const auto& [v, c] : acc)
            for (const auto& [w, d] : wb) {
                std::vector<int> nv = v;
                nv.insert(nv.end(), w.begin(), w.end());
                nxt[nv] += c * d;
            }
        acc = std::move(nxt);
    }
    return acc;
}

std::map<std::vector<Weight>, Coef> decompose_character(
    WeightMultiset m, const std::vector<int>& block_ranks) {
    std::map<std::vector<Weight>, Coef> out;
    while (!m.empty()) {
        // lexicographically greatest weight = a highest weight
        auto it = std::prev(m.end());
        if (it->second < 0) throw std::logic_error("decompose: negative mult");
        std::vector<Weight> hw;
        size_t off = 0;
        for (int r : block_ranks) {
            Weight w(it->first.begin() + off, it->first.begin() + off + r);
            if (!weakly_decreasing(w))
                throw std::logic_error("decompose: non-dominant leader");
            hw.push_back(std::move(w));
            off += r;
        }
        Coef mult = it->second;
        WeightMultiset ch = block_character(hw, block_ranks);
        for (const auto& [v, c] : ch) {
            auto jt = m.find(v);
            if (jt == m.end())
                throw std::logic_error("decompose: missing weight");
            jt->second -= mult * c;
            if (jt->second == 0) m.erase(jt);
            else if (jt->second < 0)
                throw std::logic_error("decompose: overshoot");
        }
        out[hw] += mult;
    }
    return out;
}

LrTable plethysm_wedge(const Weight& lam, int r, int k) {
    WeightMultiset p = multiset_wedge(schur_weights(lam, r), k);
    LrTable out;
    for (const auto& [hw, c] : decompose_character(std::move(p), {r}))
        out[trimmed(hw[0])] = c;
    return out;
}

LrTable plethysm_sym(const Weight& lam, int r, int k) {
    WeightMultiset p = multiset_sym(schur_weights(lam, r), k);
    LrTable out;
    for (const auto& [hw, c] : decompose_character(std::move(p), {r}))
        out[trimmed(hw[0])] = c;
    return out;
}

}  // namespace fanozl
