#include "fanozl/dsl.hpp"

#include <sstream>

namespace fanozl {

namespace {

struct Lexer {
    const std::string& s;
    size_t pos = 0;
    explicit Lexer(const std::string& str) : s(str) {}

    void skip() {
        while (pos < s.size() && isspace((unsigned char)s[pos])) pos++;
    }
    bool eat(const std::string& tok) {
        skip();
        if (s.compare(pos, tok.size(), tok) == 0) {
            pos += tok.size();
            return true;
        }
        return false;
    }
    bool peek(char c) {
        skip();
        return pos < s.size() && s[pos] == c;
    }
    void expect(const std::string& tok) {
        if (!eat(tok))
            throw std::invalid_argument("DSL: expected '" + tok + "' at \"" +
                                        s.substr(pos, 16) + "\"");
    }
    int integer() {
        skip();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) pos++;
        while (pos < s.size() && isdigit((unsigned char)s[pos])) pos++;
        if (start == pos) throw std::invalid_argument("DSL: expected integer");
        return std::stoi(s.substr(start, pos - start));
    }
    std::vector<int> int_list(char close) {
        std::vector<int> v;
        if (peek(close)) return v;
        v.push_back(integer());
        while (eat(",")) v.push_back(integer());
        return v;
    }
    bool done() {
        skip();
        return pos == s.size();
    }
};

struct Parser {
    Lexer lx;
    const Ambient& X;
    Parser(const std::string& s, const Ambient& amb) : lx(s), X(amb) {}

    ExprPtr expr() {
        std::vector<std::pair<ExprPtr, Coef>> terms;
        auto [e, m] = term();
        terms.emplace_back(e, m);
        while (lx.eat("+")) {
            auto [e2, m2] = term();
            terms.emplace_back(e2, m2);
        }
        if (terms.size() == 1 && terms[0].second == 1) return terms[0].first;
        return sum(std::move(terms));
    }

    std::pair<ExprPtr, Coef> term() {
        auto [e, m] = powered();
        std::vector<ExprPtr> parts{e};
        Coef mult = m;
        while (lx.eat("*") || lx.eat("#")) {
            auto [e2, m2] = powered();
            parts.push_back(e2);
            mult *= m2;
        }
        ExprPtr out = parts.size() == 1 ? parts[0] : tensor(std::move(parts));
        return {out, mult};
    }

    std::pair<ExprPtr, Coef> powered() {
        ExprPtr e = primary();
        if (lx.eat("^")) {
            int m = lx.integer();
            if (m < 0) throw std::invalid_argument("DSL: negative multiplicity");
            return {e, (Coef)m};
        }
        return {e, 1};
    }

    int factor_index() {
        lx.expect("[");
        int i = lx.integer();
        lx.expect("]");
        if (i < 1 || i > (int)X.size())
            throw std::invalid_argument("DSL: factor index out of range");
        return i - 1;
    }

    ExprPtr primary() {
        if (lx.eat("dual(")) {
            ExprPtr e = expr();
            lx.expect(")");
            return dual(e);
        }
        if (lx.eat("wedge^")) {
            int k = lx.integer();
            lx.expect("(");
            ExprPtr e = expr();
            lx.expect(")");
            return wedge(k, e);
        }
        if (lx.eat("sym^")) {
            int k = lx.integer();
            lx.expect("(");
            ExprPtr e = expr();
            lx.expect(")");
            return sym(k, e);
        }
        if (lx.eat("S[")) {
            std::vector<int> lam = lx.int_list(']');
            lx.expect("]");
            ExprPtr child;
            if (lx.eat("(")) {
                child = expr();
                lx.expect(")");
            } else {
                child = primary();  // S[2,1]U[1] shorthand
            }
            return schur(Weight(lam.begin(), lam.end()), child);
        }
        if (lx.eat("U")) return atom_U(factor_index());
        if (lx.eat("Q")) return atom_Q(factor_index());
        if (lx.eat("O(")) {
            std::vector<int> tw = lx.int_list(')');
            lx.expect(")");
            if (tw.size() != X.size())
                throw std::invalid_argument("DSL: O() arity mismatch");
            return atom_O(tw);
        }
        if (lx.eat("0")) return zero_expr();
        if (lx.eat("(")) {
            ExprPtr e = expr();
            lx.expect(")");
            return e;
        }
        throw std::invalid_argument("DSL: unexpected token at \"" +
                                    lx.s.substr(lx.pos, 16) + "\"");
    }
};

}  // namespace

Ambient parse_ambient(const std::string& s) {
    Lexer lx(s);
    Ambient X;
    while (true) {
        if (lx.eat("P(")) {
            int n = lx.integer();
            lx.expect(")");
            if (n < 1) throw std::invalid_argument("P(n): n >= 1 required");
            X.factors.push_back({1, n + 1});
        } else if (lx.eat("Gr(")) {
            int k = lx.integer();
            lx.expect(",");
            int n = lx.integer();
            lx.expect(")");
            if (!(1 <= k && k < n))
                throw std::invalid_argument("Gr(k,n): 1 <= k < n required");
            X.factors.push_back({k, n});
        } else {
            throw std::invalid_argument("DSL: expected P(n) or Gr(k,n)");
        }
        if (!lx.eat("x")) break;
    }
    if (!lx.done()) throw std::invalid_argument("DSL: trailing input in ambient");
    return X;
}

ExprPtr parse_expr(const std::string& s, const Ambient& X) {
    Parser p(s, X);
    auto [e, m] = std::pair<ExprPtr, Coef>{p.expr(), 1};
    if (!p.lx.done()) throw std::invalid_argument("DSL: trailing input in expr");
    (void)m;
    return e;
}

ParsedSpec parse_spec(const std::string& s) {
    size_t sep = s.find("::");
    if (sep == std::string::npos)
        throw std::invalid_argument("spec: expected '<ambient> :: <bundle>'");
    ParsedSpec ps;
    ps.X = parse_ambient(s.substr(0, sep));
    std::string rest = s.substr(sep + 2);
    // allow an empty bundle part meaning the zero bundle (M = X)
    Lexer probe(rest);
    ps.F = probe.done() ? zero_expr() : parse_expr(rest, ps.X);
    return ps;
}

std::string print_ambient(const Ambient& X) {
    std::ostringstream os;
    for (size_t i = 0; i < X.size(); ++i) {
        if (i) os << " x ";
        if (X.factors[i].is_proj())
            os << "P(" << X.factors[i].n - 1 << ")";
        else
            os << "Gr(" << X.factors[i].k << "," << X.factors[i].n << ")";
    }
    return os.str();
}

namespace {

void print_rec(std::ostringstream& os, const ExprPtr& e, int parent_prec);

// precedence: 0 sum, 1 tensor, 2 atom/apply
void print_kids_sum(std::ostringstream& os, const Expr& e) {
    if (e.kids.empty()) {
        os << "0";
        return;
    }
    bool first = true;
    for (const auto& [kid, m] : e.kids) {
        if (!first) os << " + ";
        first = false;
        print_rec(os, kid, m == 1 ? 0 : 2);
        if (m != 1) os << "^" << m;
    }
}

void print_rec(std::ostringstream& os, const ExprPtr& e, int parent_prec) {
    const Expr& x = *e;
    switch (x.kind) {
        case Expr::K::U: os << "U[" << x.factor + 1 << "]"; return;
        case Expr::K::Q: os << "Q[" << x.factor + 1 << "]"; return;
        case Expr::K::O: {
            os << "O(";
            for (size_t i = 0; i < x.tw.size(); ++i) {
                if (i) os << ",";
                os << x.tw[i];
            }
            os << ")";
            return;
        }
        case Expr::K::Dual:
            os << "dual(";
            print_rec(os, x.kids[0].first, 0);
            os << ")";
            return;
        case Expr::K::Wedge:
            os << "wedge^" << x.deg << "(";
            print_rec(os, x.kids[0].first, 0);
            os << ")";
            return;
        case Expr::K::Sym:
            os << "sym^" << x.deg << "(";
            print_rec(os, x.kids[0].first, 0);
            os << ")";
            return;
        case Expr::K::Schur: {
            os << "S[";
            for (size_t i = 0; i < x.lam.size(); ++i) {
                if (i) os << ",";
                os << x.lam[i];
            }
            os << "](";
            print_rec(os, x.kids[0].first, 0);
            os << ")";
            return;
        }
        case Expr::K::Tensor: {
            bool paren = parent_prec > 1;
            if (paren) os << "(";
            for (size_t i = 0; i < x.kids.size(); ++i) {
                if (i) os << "*";
                print_rec(os, x.kids[i].first, 2);
            }
            if (paren) os << ")";
            return;
        }
        case Expr::K::Sum: {
            bool paren = parent_prec > 0 || x.kids.empty();
            if (paren && !x.kids.empty()) os << "(";
            print_kids_sum(os, x);
            if (paren && !x.kids.empty()) os << ")";
            return;
        }
    }
}

}  // namespace

std::string print_expr(const ExprPtr& e) {
    std::ostringstream os;
    print_rec(os, e, 0);
    return os.str();
}

std::string print_spec(const Ambient& X, const ExprPtr& e) {
    return print_ambient(X) + " :: " + print_expr(e);
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind) return false;
    if (a->factor != b->factor || a->tw != b->tw || a->deg != b->deg ||
        a->lam != b->lam || a->kids.size() != b->kids.size())
        return false;
    for (size_t i = 0; i < a->kids.size(); ++i) {
        if (a->kids[i].second != b->kids[i].second) return false;
        if (!expr_equal(a->kids[i].first, b->kids[i].first)) return false;
    }
    return true;
}

std::string print_decomp(const Ambient& X, const Decomp& d) {
    if (d.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, c] : d) {
        if (!first) os << " + ";
        first = false;
        os << print_expr(summand_expr(X, s));
        if (c != 1) os << "^" << c;
    }
    return os.str();
}

}  // namespace fanozl
