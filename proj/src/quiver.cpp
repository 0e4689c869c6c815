#include "fanozl/quiver.hpp"

#include <fstream>
#include <queue>
#include <set>
#include <sstream>

#include "json.hpp"

namespace fanozl {

void validate(const QuiverDatum& d) {
    size_t n = d.dims.size();
    std::vector<std::string> bad;
    if (n == 0 || d.adjacency.size() != n)
        throw std::invalid_argument("quiver: adjacency/dims size mismatch");
    for (const auto& row : d.adjacency)
        if (row.size() != n)
            throw std::invalid_argument("quiver: adjacency not square");
    for (const auto& row : d.adjacency)
        for (int v : row)
            if (v < 0) bad.push_back("negative arrow count");
    if (d.dims[0] != 1) bad.push_back("source dimension r_0 != 1");
    for (size_t i = 1; i < n; ++i)
        if (d.dims[i] < 1) bad.push_back("nonpositive dimension");
    // acyclicity via Kahn
    {
        std::vector<int> indeg(n, 0);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (d.adjacency[i][j] > 0) indeg[j]++;
        std::vector<size_t> order;
        std::set<size_t> ready;
        for (size_t i = 0; i < n; ++i)
            if (indeg[i] == 0) ready.insert(i);
        std::vector<int> deg = indeg;
        while (!ready.empty()) {
            size_t v = *ready.begin();
            ready.erase(ready.begin());
            order.push_back(v);
            for (size_t j = 0; j < n; ++j)
                if (d.adjacency[v][j] > 0 && --deg[j] == 0) ready.insert(j);
        }
        if (order.size() != n) bad.push_back("acyclic violated");
        int sources = 0;
        for (size_t i = 0; i < n; ++i)
            if (indeg[i] == 0) sources++;
        if (sources != 1 || indeg[0] != 0) bad.push_back("unique source violated");
    }
    if (d.bundle.size() > 0)
        for (const auto& t : d.bundle)
            if (t.tokens.size() != n - 1)
                bad.push_back("bundle tuple arity != number of non-source vertices");
    if (!bad.empty()) {
        std::string msg = "quiver invalid:";
        for (const auto& b : bad) msg += " [" + b + "]";
        throw std::invalid_argument(msg);
    }
}

int quiver_dim(const QuiverDatum& d) {
    int dim = 0;
    size_t n = d.dims.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            dim += d.adjacency[i][j] * d.dims[i] * d.dims[j];
    for (size_t j = 1; j < n; ++j) dim -= d.dims[j] * d.dims[j];
    return dim;
}

TowerSpec build_tower(const QuiverDatum& d) {
    validate(d);
    size_t n = d.dims.size();
    std::vector<int> indeg(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (d.adjacency[i][j] > 0) indeg[j]++;
    std::set<size_t> ready;
    std::vector<int> deg = indeg;
    for (size_t i = 0; i < n; ++i)
        if (deg[i] == 0) ready.insert(i);
    TowerSpec tower;
    while (!ready.empty()) {
        size_t v = *ready.begin();
        ready.erase(ready.begin());
        if (v != 0) {
            TowerStep step;
            step.vertex = (int)v;
            step.rank = d.dims[v];
            int fib_rank = 0;
            for (size_t i = 0; i < n; ++i)
                if (d.adjacency[i][v] > 0) {
                    step.fiber.emplace_back((int)i, d.adjacency[i][v]);
                    fib_rank += d.adjacency[i][v] * d.dims[i];
                }
            if (fib_rank < step.rank)
                throw std::invalid_argument("quiver: empty moduli (rk F_j < r_j)");
            tower.steps.push_back(std::move(step));
            tower.dim += d.dims[v] * (fib_rank - d.dims[v]);
        }
        for (size_t j = 0; j < n; ++j)
            if (d.adjacency[v][j] > 0 && --deg[j] == 0) ready.insert(j);
    }
    return tower;
}

StepFlattening flatten_step(const Ambient& base, int h,
                            const std::vector<TowerPart>& parts) {
    StepFlattening out;
    // absorb a pure line-bundle fiber g^(m) as Gr(h, O^m) with W = U (x) g
    bool absorb = parts.size() == 1 && parts[0].mult >= 1 &&
                  (parts[0].u_factor < 0 ||
                   base.factors[parts[0].u_factor].k == 1);
    int N = 0;
    if (absorb) {
        N = parts[0].mult;
    } else {
        for (const auto& p : parts) {
            for (int t : p.twist)
                if (t != 0)
                    throw std::invalid_argument(
                        "flatten_step: mixed twisted fiber not supported");
            N += p.mult *
                 (p.u_factor < 0 ? 1 : base.factors[p.u_factor].n);
        }
    }
    if (N < h) throw std::invalid_argument("quiver: empty moduli (rk F < r)");
    if (N == h)
        throw std::invalid_argument("flatten_step: degenerate step Gr(N,N)");
    out.ambient = base;
    out.ambient.factors.push_back({h, N});
    size_t newf = out.ambient.size() - 1;
    out.step_twist.assign(out.ambient.size(), 0);
    out.absorbed = absorb;
    if (absorb) {
        const TowerPart& p = parts[0];
        if (p.u_factor >= 0) out.step_twist[p.u_factor] -= 1;  // U_P = O(-1)
        for (size_t i = 0; i < p.twist.size(); ++i)
            out.step_twist[i] += p.twist[i];
    } else {
        for (const auto& p : parts)
            if (p.u_factor >= 0)
                out.structural.emplace_back(
                    tensor({atom_Q(p.u_factor), dual(atom_U((int)newf))}),
                    (Coef)p.mult);
    }
    return out;
}

namespace {

// lift an expression built on a smaller ambient to a larger one (factors are
// appended only, so atom indices and O() arities just extend)
ExprPtr lift(const ExprPtr& e, size_t m) {
    Expr x = *e;
    if (x.kind == Expr::K::O) {
        while (x.tw.size() < m) x.tw.push_back(0);
    }
    for (auto& [kid, mult] : x.kids) kid = lift(kid, m);
    return std::make_shared<const Expr>(std::move(x));
}

std::vector<int> scaled(std::vector<int> v, int s) {
    for (int& x : v) x *= s;
    return v;
}

}  // namespace

ExprPtr TranslationResult::cutting() const {
    std::vector<std::pair<ExprPtr, Coef>> kids;
    auto push = [&](const ExprPtr& e) {
        if (e->kind == Expr::K::Sum)
            for (const auto& [k, m] : e->kids) kids.emplace_back(k, m);
        else
            kids.emplace_back(e, 1);
    };
    push(structural);
    push(translated);
    return kids.empty() ? zero_expr() : sum(std::move(kids));
}

std::string TranslationResult::dsl() const {
    return print_spec(ambient, cutting());
}

TranslationResult flatten(const QuiverDatum& d) {
    TranslationResult out;
    out.datum = d;
    out.tower = build_tower(d);
    size_t n = d.dims.size();
    out.vertex_factor.assign(n, -1);
    std::vector<std::vector<int>> wtwist(n);  // W_v = U_{factor(v)} (x) O(tw)
    Ambient X;  // grows one factor per step
    std::vector<std::pair<ExprPtr, Coef>> structural;

    for (const auto& step : out.tower.steps) {
        std::vector<TowerPart> parts;
        for (const auto& [src, mult] : step.fiber) {
            TowerPart p;
            p.mult = mult;
            if (src == 0) {
                p.u_factor = -1;
                p.twist.assign(X.size(), 0);
            } else {
                p.u_factor = out.vertex_factor[src];
                p.twist = wtwist[src];
                p.twist.resize(X.size(), 0);
            }
            parts.push_back(std::move(p));
        }
        StepFlattening sf = flatten_step(X, step.rank, parts);
        X = sf.ambient;
        out.vertex_factor[step.vertex] = (int)X.size() - 1;
        wtwist[step.vertex] = sf.step_twist;
        for (auto& [e, m] : structural) e = lift(e, X.size());
        for (const auto& [e, m] : sf.structural) structural.emplace_back(e, m);
    }
    out.ambient = X;
    for (auto& [e, m] : structural) e = lift(e, X.size());
    out.structural = structural.empty() ? zero_expr() : sum(structural);

    // translate the Schur-power bundle tuples
    std::vector<std::pair<ExprPtr, Coef>> translated;
    for (const auto& tup : d.bundle) {
        std::vector<ExprPtr> pieces;
        for (size_t v = 1; v < n; ++v) {
            const QuiverDatum::Token& tok = tup.tokens[v - 1];
            Weight lam = trimmed(tok.lam);
            if (lam.empty()) continue;
            int f = out.vertex_factor[v];
            std::vector<int> tw = wtwist[v];
            tw.resize(X.size(), 0);
            int size = weight_sum(lam);
            ExprPtr carrier = tok.dualized
                                  ? schur(lam, dual(atom_U(f)))
                                  : schur(lam, atom_U(f));
            std::vector<int> t = scaled(tw, tok.dualized ? -size : size);
            bool twisted =
                std::any_of(t.begin(), t.end(), [](int x) { return x != 0; });
            pieces.push_back(twisted ? tensor({carrier, atom_O(t)}) : carrier);
        }
        ExprPtr e = pieces.empty()  ? atom_O(std::vector<int>(X.size(), 0))
                    : pieces.size() == 1 ? pieces[0]
                                         : tensor(std::move(pieces));
        translated.emplace_back(e, tup.mult);
    }
    out.translated = translated.empty() ? zero_expr() : sum(translated);

    simplify(out);
    return out;
}

void simplify(TranslationResult& t) {
    // repeat: find a cut that is exactly the hyperplane class of a P^m factor
    // and absorb it (the zero locus of O(0,..,1,..,0) on Gr(1,m+1) is
    // Gr(1,m)), provided every other cut restricts to the same atom shape
    // (line-bundle weight on that factor).
    for (;;) {
        Decomp cuts = normalize(t.ambient, t.cutting());
        bool done = true;
        for (const auto& [s, c] : cuts) {
            auto tw = line_twist(s);
            if (!tw) continue;
            int hot = -1;
            bool is_hyper = true;
            for (size_t i = 0; i < tw->size() && is_hyper; ++i) {
                if ((*tw)[i] == 0) continue;
                if ((*tw)[i] == 1 && hot < 0 &&
                    t.ambient.factors[i].is_proj() &&
                    t.ambient.factors[i].n >= 3)
                    hot = (int)i;
                else
                    is_hyper = false;
            }
            if (!is_hyper || hot < 0) continue;
            // every other summand must be a line bundle along this factor
            bool ok = true;
            for (const auto& [s2, c2] : cuts) {
                int others = (&s2 == &s) ? (int)c2 - 1 : (int)c2;
                if (others == 0) continue;
                const Weight& b = s2.b[hot];
                if (weight_sum(s2.a[hot]) != 0 ||
                    !std::all_of(b.begin(), b.end(),
                                 [&](int x) { return x == b[0]; }))
                    ok = false;
            }
            if (!ok) continue;
            // shrink the factor and rebuild the cut list
            Ambient X2 = t.ambient;
            X2.factors[hot].n -= 1;
            Decomp rest = cuts;
            if (--rest[s] == 0) rest.erase(s);
            std::vector<std::pair<ExprPtr, Coef>> kids;
            for (const auto& [s2, c2] : rest) {
                std::vector<ExprPtr> pieces;
                std::vector<int> twv(X2.size(), 0);
                for (size_t i = 0; i < X2.size(); ++i) {
                    Weight a = s2.a[i];
                    Weight b = s2.b[i];
                    if ((int)i == hot) b.pop_back();  // shorter Q-block
                    int beta = b.empty() ? 0 : b.back();
                    twv[i] = beta;
                    b = trimmed(add_scalar(b, -beta));
                    Weight at = trimmed(a);
                    if (!at.empty())
                        pieces.push_back(schur(at, dual(atom_U((int)i))));
                    if (!b.empty()) pieces.push_back(schur(b, atom_Q((int)i)));
                }
                if (std::any_of(twv.begin(), twv.end(),
                                [](int x) { return x != 0; }) ||
                    pieces.empty())
                    pieces.push_back(atom_O(twv));
                kids.emplace_back(
                    pieces.size() == 1 ? pieces[0] : tensor(std::move(pieces)),
                    c2);
            }
            t.ambient = X2;
            t.structural = zero_expr();
            t.translated = kids.empty() ? zero_expr() : sum(std::move(kids));
            t.reductions++;
            done = false;
            break;
        }
        if (done) break;
    }
}

ZeroLocusSpec to_zero_locus(const QuiverDatum& d) { return flatten(d).spec(); }

// --- JSON ingestion ---------------------------------------------------------

namespace {

QuiverDatum::Token parse_token(const std::string& s) {
    QuiverDatum::Token tok;
    if (s == "0" || s.empty()) return tok;
    if (s.rfind("s[", 0) != 0)
        throw std::invalid_argument("quiver token: expected '0' or 's[...]w|b': " + s);
    size_t close = s.find(']');
    if (close == std::string::npos)
        throw std::invalid_argument("quiver token: missing ']': " + s);
    std::string body = s.substr(2, close - 2);
    std::istringstream is(body);
    std::string part;
    while (std::getline(is, part, ','))
        tok.lam.push_back(std::stoi(part));
    if (!weakly_decreasing(tok.lam) || (int)tok.lam.size() == 0 ||
        tok.lam.back() < 0)
        throw std::invalid_argument("quiver token: bad partition: " + s);
    std::string tail = s.substr(close + 1);
    if (tail == "w") tok.dualized = true;
    else if (tail == "b") tok.dualized = false;
    else
        throw std::invalid_argument("quiver token: expected trailing w or b: " + s);
    return tok;
}

}  // namespace

QuiverDatum quiver_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    QuiverDatum d;
    for (const auto& row : j.at("adjacency"))
        d.adjacency.push_back(row.get<std::vector<int>>());
    d.dims = j.at("dims").get<std::vector<int>>();
    if (j.count("bundle"))
        for (const auto& tup : j.at("bundle")) {
            QuiverDatum::Tuple t;
            const auto& toks = tup.is_array() ? tup : tup.at("tokens");
            for (const auto& s : toks)
                t.tokens.push_back(parse_token(s.get<std::string>()));
            if (!tup.is_array() && tup.count("mult"))
                t.mult = tup.at("mult").get<long>();
            d.bundle.push_back(std::move(t));
        }
    validate(d);
    return d;
}

QuiverDatum load_quiver(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open quiver file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return quiver_from_json(ss.str());
}

}  // namespace fanozl
