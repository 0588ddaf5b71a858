#include "elemf/elemc.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "elemf/builder.hpp"
#include "elemf/stdterms.hpp"

namespace elemf {

namespace {

ElemExpr node(ElemKind kind) {
    auto n = std::make_shared<ElemNode>();
    n->kind = kind;
    return n;
}

}  // namespace

ElemExpr e_zero() { return node(ElemKind::Zero); }
ElemExpr e_succ() { return node(ElemKind::Succ); }
ElemExpr e_add() { return node(ElemKind::Add); }
ElemExpr e_sub() { return node(ElemKind::Sub); }
ElemExpr e_mul() { return node(ElemKind::Mul); }

ElemExpr e_proj(std::size_t i, std::size_t n) {
    auto e = std::make_shared<ElemNode>();
    e->kind = ElemKind::Proj;
    e->index = i;
    e->width = n;
    return e;
}

ElemExpr e_comp(ElemExpr g, std::vector<ElemExpr> hs) {
    auto e = std::make_shared<ElemNode>();
    e->kind = ElemKind::Comp;
    e->g = std::move(g);
    e->hs = std::move(hs);
    return e;
}

ElemExpr e_bsum(ElemExpr g) {
    auto e = std::make_shared<ElemNode>();
    e->kind = ElemKind::BSum;
    e->g = std::move(g);
    return e;
}

ElemExpr e_bprod(ElemExpr g) {
    auto e = std::make_shared<ElemNode>();
    e->kind = ElemKind::BProd;
    e->g = std::move(g);
    return e;
}

std::size_t arity(const ElemExpr& e) {
    switch (e->kind) {
    case ElemKind::Zero: return 0;
    case ElemKind::Succ: return 1;
    case ElemKind::Add:
    case ElemKind::Sub:
    case ElemKind::Mul: return 2;
    case ElemKind::Proj:
        if (e->index >= e->width)
            throw Error("arity", "(proj " + std::to_string(e->index) + " " + std::to_string(e->width) +
                                     "): index out of range");
        return e->width;
    case ElemKind::Comp: {
        const std::size_t ag = arity(e->g);
        if (ag != e->hs.size())
            throw Error("arity", "comp: " + to_string(e->g) + " takes " + std::to_string(ag) + " arguments, given " +
                                     std::to_string(e->hs.size()));
        if (e->hs.empty()) return 0;
        const std::size_t a = arity(e->hs[0]);
        for (const auto& h : e->hs)
            if (arity(h) != a) throw Error("arity", "comp: inner functions differ in arity in " + to_string(e));
        return a;
    }
    case ElemKind::BSum:
    case ElemKind::BProd: {
        const std::size_t a = arity(e->g);
        if (a == 0) throw Error("arity", to_string(e) + ": the summed function needs an index argument");
        return a;
    }
    }
    return 0;
}

std::size_t depth(const ElemExpr& e) {
    std::size_t d = 0;
    if (e->g) d = std::max(d, depth(e->g));
    for (const auto& h : e->hs) d = std::max(d, depth(h));
    return e->g ? d + 1 : 1;
}

//------------------------------------------------------------------------------
// DSL text

namespace {

class SexpParser {
public:
    explicit SexpParser(std::string_view s) : s_(s) {}

    ElemExpr parse() {
        ElemExpr e = expr();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        arity(e);
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error("parse", "elem:" + std::to_string(pos_) + ": " + msg);
    }

    void skip() {
        while (pos_ < s_.size()) {
            if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
                ++pos_;
            } else if (s_[pos_] == ';') {
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::string atom() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' &&
               s_[pos_] != ')' && s_[pos_] != ';')
            ++pos_;
        if (start == pos_) fail("expected a name");
        return std::string(s_.substr(start, pos_ - start));
    }

    std::size_t number() {
        const std::string a = atom();
        if (!std::all_of(a.begin(), a.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            fail("expected a number, got '" + a + "'");
        return std::stoul(a);
    }

    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    ElemExpr expr() {
        if (peek('(')) {
            ++pos_;
            const std::string head = atom();
            ElemExpr e;
            if (head == "proj") {
                std::size_t i = number();
                std::size_t n = number();
                e = e_proj(i, n);
            } else if (head == "comp") {
                ElemExpr g = expr();
                std::vector<ElemExpr> hs;
                while (!peek(')')) {
                    if (pos_ >= s_.size()) fail("unclosed '('");
                    hs.push_back(expr());
                }
                e = e_comp(g, std::move(hs));
            } else if (head == "bsum") {
                e = e_bsum(expr());
            } else if (head == "bprod") {
                e = e_bprod(expr());
            } else {
                fail("unknown form '" + head + "'");
            }
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return e;
        }
        const std::string a = atom();
        if (a == "zero") return e_zero();
        if (a == "succ") return e_succ();
        if (a == "add") return e_add();
        if (a == "sub") return e_sub();
        if (a == "mul") return e_mul();
        fail("unknown function '" + a + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

ElemExpr parse_elem(std::string_view text) { return SexpParser(text).parse(); }

std::string to_string(const ElemExpr& e) {
    switch (e->kind) {
    case ElemKind::Zero: return "zero";
    case ElemKind::Succ: return "succ";
    case ElemKind::Add: return "add";
    case ElemKind::Sub: return "sub";
    case ElemKind::Mul: return "mul";
    case ElemKind::Proj: return "(proj " + std::to_string(e->index) + " " + std::to_string(e->width) + ")";
    case ElemKind::Comp: {
        std::string s = "(comp " + to_string(e->g);
        for (const auto& h : e->hs) s += " " + to_string(h);
        return s + ")";
    }
    case ElemKind::BSum: return "(bsum " + to_string(e->g) + ")";
    case ElemKind::BProd: return "(bprod " + to_string(e->g) + ")";
    }
    return "?";
}

//------------------------------------------------------------------------------
// Oracle

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error("overflow", "value exceeds 64 bits");
    return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error("overflow", "value exceeds 64 bits");
    return r;
}

std::uint64_t eval_rec(const ElemExpr& e, const std::vector<std::uint64_t>& a) {
    switch (e->kind) {
    case ElemKind::Zero: return 0;
    case ElemKind::Succ: return checked_add(a[0], 1);
    case ElemKind::Add: return checked_add(a[0], a[1]);
    case ElemKind::Sub: return a[0] > a[1] ? a[0] - a[1] : 0;
    case ElemKind::Mul: return checked_mul(a[0], a[1]);
    case ElemKind::Proj: return a[e->index];
    case ElemKind::Comp: {
        std::vector<std::uint64_t> inner;
        for (const auto& h : e->hs) inner.push_back(eval_rec(h, a));
        return eval_rec(e->g, inner);
    }
    case ElemKind::BSum:
    case ElemKind::BProd: {
        const bool sum = e->kind == ElemKind::BSum;
        std::vector<std::uint64_t> inner(a.size());
        std::copy(a.begin(), a.end() - 1, inner.begin() + 1);
        std::uint64_t acc = sum ? 0 : 1;
        for (std::uint64_t i = 0; i < a.back(); ++i) {
            inner[0] = i;
            const std::uint64_t v = eval_rec(e->g, inner);
            acc = sum ? checked_add(acc, v) : checked_mul(acc, v);
        }
        return acc;
    }
    }
    return 0;
}

}  // namespace

std::uint64_t eval_oracle(const ElemExpr& e, const std::vector<std::uint64_t>& args) {
    const std::size_t n = arity(e);
    if (args.size() != n)
        throw Error("arity", to_string(e) + " takes " + std::to_string(n) + " arguments, given " +
                                 std::to_string(args.size()));
    return eval_rec(e, args);
}

BigNat two_tower(unsigned k, const BigNat& n, std::size_t max_bits) {
    BigNat v = n;
    for (unsigned i = 0; i < k; ++i) {
        if (v >= max_bits) throw Error("budget", "2_" + std::to_string(k) + "(" + n.str() + ") exceeds " +
                                                     std::to_string(max_bits) + " bits");
        v = BigNat(1) << static_cast<unsigned>(v);
    }
    return v;
}

namespace {

// Least d with m <= 2_d(1); then m * y <= 2_d(y) for every y.
unsigned sum_increment(std::size_t m) {
    unsigned d = 0;
    std::uint64_t t = 1;
    while (t < m) {
        t = t >= 64 ? UINT64_MAX : (std::uint64_t{1} << t);
        ++d;
    }
    return d;
}

// Bound exponent for the sum of the inner functions of a composition.
unsigned comp_args_bound(const ElemExpr& e) {
    unsigned a = 0;
    for (const auto& h : e->hs) a = std::max(a, growth_bound(h));
    return a + sum_increment(e->hs.size());
}

}  // namespace

unsigned growth_bound(const ElemExpr& e) {
    switch (e->kind) {
    case ElemKind::Zero:
    case ElemKind::Proj:
    case ElemKind::Add:
    case ElemKind::Sub: return 0;
    case ElemKind::Succ:  // x+1 <= 2^x
    case ElemKind::Mul: return 1;
    case ElemKind::Comp: return e->hs.empty() ? growth_bound(e->g) : growth_bound(e->g) + comp_args_bound(e);
    case ElemKind::BSum: {
        // X is the sum of the inputs, Y the sum without the bound x.
        // a = 0: sum_{i<x} (i + Y) <= x X - x^2/2 <= X^2/2 <= 2^X.
        // a >= 1: g <= 2_a(X) = 2^Z with x <= Z, so x 2^Z <= 2^(2Z) <= 2_(a+1)(X).
        const unsigned a = growth_bound(e->g);
        return a + 1;
    }
    case ElemKind::BProd: {
        // The product is at most Y^x. a = 0: X^X <= 2_2(X). a = 1: 2^(X*X) <= 2_3(X).
        // a >= 2: Y = 2^Z, Z = 2^W, x <= W, and x * Z <= W * 2^W <= 2^Z.
        const unsigned a = growth_bound(e->g);
        return a == 0 ? 2 : a == 1 ? 3 : a + 1;
    }
    }
    return 0;
}

//------------------------------------------------------------------------------
// Compiler

bool eta_shape_ok(const Type& eta, unsigned k) {
    if (type_eq(eta, tower0(k))) return true;
    Type inner = match_numeral_type(eta);
    if (!inner) return false;
    if (inner->kind == TypeKind::Prod) return eta_shape_ok(inner->left, k) && eta_shape_ok(inner->right, k);
    return eta_shape_ok(inner, k);
}

namespace {

std::string ix(const std::string& base, std::size_t i) { return base + std::to_string(i); }

Build apply_all(Build f, const std::vector<Build>& args) {
    for (const auto& a : args) f = b_app(std::move(f), a);
    return f;
}

Build lambdas(const std::vector<std::pair<std::string, Type>>& binders, Build body) {
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = b_lam(it->first, it->second, std::move(body));
    return body;
}

CompiledFn finish(const Build& b, unsigned k, unsigned l, unsigned r, std::vector<Type> etas, std::size_t n) {
    Derivation d = build(b);
    Term t = d.term();
    return CompiledFn{std::move(t), std::move(d), k, l, r, std::move(etas), n};
}

// \x1..xn. body over inputs of type Nat0^(k)
CompiledFn compile_base(const ElemExpr& e, unsigned k) {
    switch (e->kind) {
    case ElemKind::Zero: return finish(numeral_at(0, k), k, 0, 0, {}, 0);
    case ElemKind::Succ: return finish(b_closed(basic_at("suc", k).derivation), k, 0, 0, {}, 1);
    case ElemKind::Add: return finish(b_closed(basic_at("add", k).derivation), k, 0, 0, {}, 2);
    case ElemKind::Mul: return finish(b_closed(basic_at("mul", k).derivation), k, 0, 0, {}, 2);
    case ElemKind::Sub: {
        if (k == 0) {
            const Type n1 = tower0(1);
            Build b = b_lam("n", n1, b_lam("c", n1, b_apps(b_closed(subtraction().derivation),
                                                          {b_app(b_closed(cast_down_at(0).derivation), b_ax("n")),
                                                           b_ax("c")})));
            return finish(b, 0, 1, 0, {}, 2);
        }
        return finish(b_closed(subt(k).derivation), k, 0, 0, {tower0(k + 1)}, 2);
    }
    case ElemKind::Proj: {
        std::vector<std::pair<std::string, Type>> xs;
        for (std::size_t i = 0; i < e->width; ++i) xs.emplace_back(ix("x", i), tower0(k));
        return finish(lambdas(xs, b_ax(ix("x", e->index))), k, 0, 0, {}, e->width);
    }
    default: break;
    }
    throw std::logic_error("compile_base: not a base function");
}

CompiledFn compile_comp(const ElemExpr& e, unsigned k) {
    const std::size_t n = arity(e);
    CompiledFn cg = compile_lemma(e->g, k);
    std::vector<CompiledFn> chs;
    unsigned lmax = 0;
    for (const auto& h : e->hs) {
        chs.push_back(compile_lemma(h, k + cg.l));
        lmax = std::max(lmax, chs.back().l);
    }
    const unsigned l = cg.l + lmax;
    // g only reads the parameters when it has any.
    const unsigned s = e->hs.empty() ? 0 : comp_args_bound(e);
    unsigned r = cg.etas.empty() ? 0 : cg.r + s;
    for (const auto& c : chs) r = std::max(r, c.r);

    std::vector<std::pair<std::string, Type>> binders;
    std::vector<Type> etas;
    std::vector<Build> g_params;
    for (std::size_t j = 0; j < cg.etas.size(); ++j) {
        binders.emplace_back(ix("v", j), cg.etas[j]);
        etas.push_back(cg.etas[j]);
        g_params.push_back(b_ax(ix("v", j)));
    }
    std::vector<Build> g_args = g_params;
    for (std::size_t i = 0; i < chs.size(); ++i) {
        std::vector<Build> h_args;
        for (std::size_t j = 0; j < chs[i].etas.size(); ++j) {
            const std::string w = "w" + std::to_string(i) + "_" + std::to_string(j);
            binders.emplace_back(w, chs[i].etas[j]);
            etas.push_back(chs[i].etas[j]);
            h_args.push_back(b_ax(w));
        }
        const unsigned drop = l - cg.l - chs[i].l;
        for (std::size_t t = 0; t < n; ++t)
            h_args.push_back(cd_power(drop, k + cg.l + chs[i].l, b_ax(ix("n", t))));
        g_args.push_back(apply_all(b_closed(chs[i].derivation), h_args));
    }
    for (std::size_t t = 0; t < n; ++t) binders.emplace_back(ix("n", t), tower0(k + l));
    Build body = apply_all(b_closed(cg.derivation), g_args);
    return finish(lambdas(binders, body), k, l, r, std::move(etas), n);
}

CompiledFn compile_bounded(const ElemExpr& e, unsigned k) {
    const std::size_t n = arity(e);
    const SumMode mode = e->kind == ElemKind::BSum ? SumMode::Sum : SumMode::Prod;
    CompiledFn cg = compile_lemma(e->g, k + 1);
    const unsigned j = k + cg.l + 1;
    const Type nj = tower0(j);
    const Type acc = prod(nj, nj);

    std::vector<std::pair<std::string, Type>> binders{{"u", numeral_type(acc)}, {"v", tower0(j + 1)}};
    std::vector<Type> etas{numeral_type(acc), tower0(j + 1)};
    std::vector<Build> params;
    for (std::size_t i = 0; i < cg.etas.size(); ++i) {
        binders.emplace_back(ix("w", i), cg.etas[i]);
        etas.push_back(cg.etas[i]);
        params.push_back(b_ax(ix("w", i)));
    }
    for (std::size_t t = 0; t + 1 < n; ++t) binders.emplace_back(ix("n", t), nj);
    binders.emplace_back("m", nj);

    Build tg = b_closed(cg.derivation);
    auto g_of = [tg, params, n](Build y) {
        std::vector<Build> args = params;
        args.push_back(std::move(y));
        for (std::size_t t = 0; t + 1 < n; ++t) args.push_back(b_ax(ix("n", t)));
        return apply_all(tg, args);
    };
    Build p = sum_step_body(mode, k, cg.l, g_of, "v", "m");
    Build start = b_pair(numeral_at(mode == SumMode::Sum ? 0 : 1, j), numeral_at(0, j));
    Build body = cd_power(cg.l + 1, k, b_fst(b_apps(b_ax("u"), {p, start})));
    // The values of g pass through cu^l, which for l = 0 is the identity.
    const unsigned r = std::max(cg.r, cg.l > 0 ? growth_bound(e->g) : 0u);
    return finish(lambdas(binders, body), k, cg.l + 1, r, std::move(etas), n);
}

}  // namespace

CompiledFn compile_lemma(const ElemExpr& e, unsigned k) {
    arity(e);
    switch (e->kind) {
    case ElemKind::Comp: return compile_comp(e, k);
    case ElemKind::BSum:
    case ElemKind::BProd: return compile_bounded(e, k);
    default: return compile_base(e, k);
    }
}

Type parameter_type(const Type& eta, unsigned r) {
    Type rho = eta;
    for (unsigned i = 0; i < r; ++i) {
        Type y = match_numeral_type(rho);
        if (!y) throw std::logic_error("parameter_type: not a numeral type: " + to_string(rho));
        rho = numeral_type(arrow(y, y));
    }
    return rho;
}

TopCompiled compile_top(const ElemExpr& e, const TopOptions& opts) {
    const std::size_t n = arity(e);
    CompiledFn cl = compile_lemma(e, 1);
    unsigned r = cl.r;
    if (opts.even_r) r = std::max(2u, r + r % 2);

    std::vector<Build> args;
    for (const Type& eta : cl.etas) {
        const Type tau = match_numeral_type(parameter_type(eta, r));
        Build s = n == 0 ? b_numeral(0, tau) : b_inst(b_ax(ix("n", 0)), tau);
        Build add = b_closed(basic("add", tau).derivation);
        for (std::size_t i = 1; i < n; ++i) s = b_apps(add, {s, b_inst(b_ax(ix("n", i)), tau)});
        Type cur = tau;
        for (unsigned i = 0; i < r; ++i) {
            if (cur->kind != TypeKind::Arrow || !type_eq(cur->left, cur->right))
                throw std::logic_error("compile_top: parameter type is not an endomorphism: " + to_string(cur));
            s = b_app(s, b_numeral(2, cur->left));
            cur = cur->left;
        }
        args.push_back(s);
    }
    for (std::size_t i = 0; i < n; ++i) args.push_back(b_inst(b_ax(ix("n", i)), tower0(cl.l)));

    std::vector<std::pair<std::string, Type>> inputs;
    for (std::size_t i = 0; i < n; ++i) inputs.emplace_back(ix("n", i), nat1());
    Build t_body = b_app(b_closed(cast_down_at(0).derivation), apply_all(b_closed(cl.derivation), args));
    Derivation t = build(lambdas(inputs, t_body));

    std::vector<Build> ns;
    for (std::size_t i = 0; i < n; ++i) ns.push_back(b_ax(ix("n", i)));
    Build applied = apply_all(b_closed(t), ns);
    Build wrapped = b_gen(0, "a", [applied](const TyVar& a) {
        const Type alpha = tvar(a);
        return b_lam("s", arrow(alpha, alpha),
                     b_lam("z", alpha, b_apps(b_inst(applied, alpha), {b_ax("s"), b_ax("z")})));
    });
    Derivation d = build(lambdas(inputs, wrapped));
    Term term = d.term();
    return TopCompiled{std::move(term), std::move(d), std::move(cl), r, n};
}

namespace {

std::uint64_t run_term(const Term& t, std::uint64_t fuel, bool eta) {
    NormalizeResult res = normalize_strict(t, fuel);
    if (res.budget_exceeded)
        throw Error("budget-exceeded", "evaluation exceeded the allocation budget after " +
                                           std::to_string(res.steps) + " steps");
    if (!res.normal) throw Error("fuel-exhausted", "no normal form within " + std::to_string(fuel) + " steps");
    auto v = decode_numeral(eta ? eta_contract(res.term) : res.term);
    if (!v) throw Error("not-numeral", "normal form is not a numeral: " + to_string(res.term));
    return *v;
}

void check_args(std::size_t want, const std::vector<std::uint64_t>& args) {
    if (args.size() != want)
        throw Error("arity", "expected " + std::to_string(want) + " arguments, given " + std::to_string(args.size()));
}

}  // namespace

std::uint64_t run_compiled(const TopCompiled& c, const std::vector<std::uint64_t>& args, std::uint64_t fuel) {
    check_args(c.arity, args);
    Term t = c.term;
    for (auto a : args) t = app(t, numeral(a));
    return run_term(t, fuel, false);
}

std::uint64_t run_lemma(const CompiledFn& c, std::uint64_t L, const std::vector<std::uint64_t>& args,
                        std::uint64_t fuel) {
    check_args(c.arity, args);
    Term t = c.term;
    for (std::size_t i = 0; i < c.etas.size(); ++i) t = app(t, numeral(L));
    for (auto a : args) t = app(t, numeral(a));
    return run_term(t, fuel, true);
}

}  // namespace elemf
