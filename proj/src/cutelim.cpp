#include "elemf/cutelim.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>
#include <utility>

#include "elemf/builder.hpp"

namespace elemf {

namespace {

std::mutex g_audit_mu;
AuditStats g_audit;

void record(bool ok, const std::string& what) {
    std::lock_guard lock(g_audit_mu);
    ++g_audit.checked;
    if (!ok) {
        ++g_audit.violations;
        g_audit.last_violation = what;
    }
}

/// v ≤ 2^m
bool le_pow2(std::size_t v, std::uint64_t m) { return m >= 63 || v <= (std::size_t{1} << m); }

RankedDerivation audited(RankedDerivation rd, const char* pass) {
    const std::size_t h = height(rd.d.root);
    record(h <= rd.m, std::string(pass) + ": height " + std::to_string(h) + " > m " + std::to_string(rd.m));
    const std::size_t len = length(rd.d.term());
    record(le_pow2(len, rd.m),
           std::string(pass) + ": |t| = " + std::to_string(len) + " > 2^" + std::to_string(rd.m));
    return rd;
}

bool is_all_e(Rule r) { return r == Rule::AllEClosed || r == Rule::AllEFlat; }
bool is_proj(Rule r) { return r == Rule::ProdEL || r == Rule::ProdER; }

DNode pick(const DNode& pair_node, Rule proj) { return pair_node->kids[proj == Rule::ProdEL ? 0 : 1]; }

bool lambda_free_pair(const DNode& p) {
    return is_lambda_free(p->kids[0]->term) && is_lambda_free(p->kids[1]->term);
}

DNode rebuild(const DNode& d, std::vector<DNode> kids) {
    for (std::size_t i = 0; i < kids.size(); ++i)
        if (kids[i] != d->kids[i]) return with_kids(d, std::move(kids));
    return d;
}

/// Bottom-up removal of ∀E-over-∀I and, if `pairs`, of projections of pairs
/// with a component that is not λ-free.
DNode pp(const DNode& d, bool pairs) {
    std::vector<DNode> kids;
    kids.reserve(d->kids.size());
    for (const auto& k : d->kids) kids.push_back(pp(k, pairs));
    DNode cur = rebuild(d, std::move(kids));
    if (is_all_e(cur->rule) && cur->kids[0]->rule == Rule::AllI) {
        const DNode& gen = cur->kids[0];
        return subst_type(gen->kids[0], gen->type->var, cur->inst);
    }
    if (pairs && is_proj(cur->rule) && cur->kids[0]->rule == Rule::ProdI && !lambda_free_pair(cur->kids[0]))
        return pick(cur->kids[0], cur->rule);
    return cur;
}

void check_budget(const DNode& d, std::size_t budget, const char* pass) {
    if (tree_size(d, budget) > budget)
        throw Error("budget", std::string(pass) + ": derivation exceeds " + std::to_string(budget) + " nodes");
}

std::string fresh_for(const std::string& base, const Context& ctx, const std::vector<Term>& avoid) {
    return fresh_name(base, [&](const std::string& n) {
        if (ctx.count(n)) return true;
        for (const auto& t : avoid)
            if (occurs_free(t, n)) return true;
        return false;
    });
}

//------------------------------------------------------------------------------
// Inversion

std::pair<std::string, DNode> invert_go(DNode d, const Context& ctx, unsigned k) {
    d = pp(d, true);
    std::vector<DNode> spine;  // outermost first
    DNode head = d;
    while (head->rule == Rule::ImpE || is_proj(head->rule) || is_all_e(head->rule)) {
        spine.push_back(head);
        head = head->kids[0];
    }
    auto respine = [&](DNode cur, const Context& c, std::size_t upto) {
        for (std::size_t i = upto; i-- > 0;) {
            const DNode& e = spine[i];
            switch (e->rule) {
            case Rule::ImpE: cur = make_imp_e(cur, weaken_into(e->kids[1], c)); break;
            case Rule::ProdEL: cur = make_prod_el(cur); break;
            case Rule::ProdER: cur = make_prod_er(cur); break;
            default: cur = make_all_e(cur, e->inst); break;
            }
        }
        return cur;
    };

    switch (head->rule) {
    case Rule::Ax:
        throw Error("precondition", "head variable " + head->term->name + " : " + to_string(head->type) +
                                        " would need a context entry of rank above " + std::to_string(k));
    case Rule::ImpI: {
        std::string y = head->term->name;
        DNode r = head->kids[0];
        if (spine.empty()) {
            if (ctx.count(y)) {
                std::string y2 = fresh_for(y, ctx, {r->term});
                r = rename_term_var(r, y, y2);
                y = y2;
            }
            return {y, r};
        }
        const DNode& inner = spine.back();
        if (inner->rule != Rule::ImpE)
            throw Error("impossible", "abstraction under " + std::string(rule_name(inner->rule)));
        const Type& tau = head->type->left;
        if (rank(tau) >= k)
            throw Error("precondition", "cut on " + to_string(tau) + " of rank " + std::to_string(rank(tau)) +
                                            " in a derivation of cut rank " + std::to_string(k));
        if (ctx.count(y) || occurs_free(d->term, y)) {
            std::string y2 = fresh_for(y, ctx, {d->term, r->term});
            r = rename_term_var(r, y, y2);
            y = y2;
        }
        Context inner_ctx = ctx;
        inner_ctx[y] = tau;
        DNode body_spine = respine(r, inner_ctx, spine.size() - 1);
        auto [x, body] = invert_go(body_spine, inner_ctx, k);
        Context out_ctx = ctx;
        out_ctx[x] = d->type->left;
        return {x, make_imp_e(make_imp_i(y, tau, body), weaken_into(inner->kids[1], out_ctx))};
    }
    case Rule::ProdI: {
        if (spine.empty() || !is_proj(spine.back()->rule))
            throw Error("impossible", "pair in function position");
        DNode comp = pick(head, spine.back()->rule);
        return invert_go(respine(comp, ctx, spine.size() - 1), ctx, k);
    }
    default:
        throw Error("impossible", std::string(rule_name(head->rule)) + " at the head of an arrow-typed term");
    }
}

//------------------------------------------------------------------------------
// Rank reduction

struct Reducer {
    unsigned k;  // target cut rank
    std::size_t budget;

    DNode go(const DNode& d, Context& ctx) {
        switch (d->rule) {
        case Rule::Ax: return d;
        case Rule::ImpI: {
            const std::string& x = d->term->name;
            const Type& domain = d->type->left;
            if (rank(domain) > k)
                throw Error("precondition", "binder " + x + " : " + to_string(domain) + " has rank above " +
                                                std::to_string(k));
            auto saved = ctx.find(x) != ctx.end() ? std::optional<Type>(ctx[x]) : std::nullopt;
            ctx[x] = domain;
            DNode body = go(d->kids[0], ctx);
            if (saved) ctx[x] = *saved;
            else ctx.erase(x);
            return rebuild(d, {body});
        }
        case Rule::ImpE: {
            DNode f = go(d->kids[0], ctx);
            DNode s = go(d->kids[1], ctx);
            const unsigned r = rank(d->kids[1]->type);
            if (r > k) throw Error("cut-too-big", "argument type " + to_string(d->kids[1]->type) + " has rank " +
                                                      std::to_string(r) + " in a derivation of cut rank " +
                                                      std::to_string(k + 1));
            if (r < k) return rebuild(d, {f, s});
            auto [x, body] = invert_go(f, ctx, k);
            DNode out = subst_derivation(body, ctx, x, s);
            check_budget(out, budget, "reduce_rank");
            return out;
        }
        default: {
            std::vector<DNode> kids;
            for (const auto& kid : d->kids) kids.push_back(go(kid, ctx));
            return rebuild(d, std::move(kids));
        }
        }
    }
};

//------------------------------------------------------------------------------
// Quasinormalization

struct Quasi {
    std::size_t budget;

    DNode go(const DNode& d, Context& ctx) {
        switch (d->rule) {
        case Rule::Ax: return d;
        case Rule::ImpI: {
            const std::string& x = d->term->name;
            auto saved = ctx.find(x) != ctx.end() ? std::optional<Type>(ctx[x]) : std::nullopt;
            ctx[x] = d->type->left;
            DNode body = go(d->kids[0], ctx);
            if (saved) ctx[x] = *saved;
            else ctx.erase(x);
            return rebuild(d, {body});
        }
        case Rule::ImpE: {
            DNode f = go(d->kids[0], ctx);
            DNode s = go(d->kids[1], ctx);
            if (rank(d->kids[1]->type) >= 1)
                throw Error("precondition", "cut on " + to_string(d->kids[1]->type) + " in a rank-1 derivation");
            DNode fe = expose(f);
            if (fe->rule != Rule::ImpI) return rebuild(d, {f, s});
            DNode out = subst_derivation(fe->kids[0], ctx, fe->term->name, s);
            check_budget(out, budget, "quasinormalize");
            return out;
        }
        case Rule::ProdEL:
        case Rule::ProdER: {
            DNode p = go(d->kids[0], ctx);
            DNode pe = expose(p);
            if (pe->rule == Rule::ProdI && !lambda_free_pair(pe)) return pick(pe, d->rule);
            return rebuild(d, {p});
        }
        case Rule::AllEClosed:
        case Rule::AllEFlat: {
            DNode p = go(d->kids[0], ctx);
            if (p->rule == Rule::AllI) return subst_type(p->kids[0], p->type->var, d->inst);
            return rebuild(d, {p});
        }
        default: {
            std::vector<DNode> kids;
            for (const auto& kid : d->kids) kids.push_back(go(kid, ctx));
            return rebuild(d, std::move(kids));
        }
        }
    }
};

//------------------------------------------------------------------------------
// Plugging numerals into x : Nat1

struct Plug {
    const std::string& x;
    std::uint64_t n;
    std::size_t count = 0;
    unsigned c = 0;

    DNode go(const DNode& d, Context& local) {
        const bool free_x = !local.count(x);
        if (d->rule == Rule::AllEClosed && d->kids[0]->rule == Rule::Ax && d->kids[0]->term->name == x && free_x) {
            const Type& xi = d->inst;
            c = std::max(c, rank(xi));
            ++count;
            DNode num = build(b_numeral(n, xi)).root;
            if (height(num) != n + 2)
                throw Error("audit", "numeral derivation of height " + std::to_string(height(num)) + ", expected " +
                                         std::to_string(n + 2));
            return weaken_into(num, local);
        }
        if (d->rule == Rule::Ax && d->term->name == x && free_x)
            throw Error("precondition", x + " occurs other than as a closed ∀E instance");
        if (d->rule == Rule::ImpI) {
            const std::string& y = d->term->name;
            auto saved = local.find(y) != local.end() ? std::optional<Type>(local[y]) : std::nullopt;
            local[y] = d->type->left;
            DNode body = go(d->kids[0], local);
            if (saved) local[y] = *saved;
            else local.erase(y);
            return rebuild(d, {body});
        }
        std::vector<DNode> kids;
        for (const auto& kid : d->kids) kids.push_back(go(kid, local));
        return rebuild(d, std::move(kids));
    }
};

PassReport pass_record(const std::string& name, const RankedDerivation& rd) {
    return PassReport{name, rd.m, rd.k, size(rd.d.term()), tree_size(rd.d.root)};
}

}  // namespace

//------------------------------------------------------------------------------

std::size_t length(const Term& t) {
    switch (t->kind) {
    case TermKind::Var: return 1;
    case TermKind::App: return length(t->left) + length(t->right);
    case TermKind::Lam: return 1 + length(t->left);
    case TermKind::Pair: return length(t->left) + length(t->right);
    case TermKind::Fst:
    case TermKind::Snd: return 1 + length(t->left);
    }
    return 0;
}

bool within_tower(std::uint64_t h, unsigned k, std::uint64_t m) {
    std::uint64_t v = m;
    for (unsigned i = 0; i < k; ++i) {
        if (v >= 64) return true;
        v = std::uint64_t{1} << v;
    }
    return h <= v;
}

std::size_t tree_size(const DNode& d, std::size_t cap) {
    std::unordered_map<const DerivNode*, std::size_t> memo;
    auto go = [&](auto& self, const DNode& n) -> std::size_t {
        auto it = memo.find(n.get());
        if (it != memo.end()) return it->second;
        std::size_t total = 1;
        for (const auto& k : n->kids) {
            total += self(self, k);
            if (total > cap) break;
        }
        total = std::min(total, cap == SIZE_MAX ? cap : cap + 1);
        memo.emplace(n.get(), total);
        return total;
    };
    return go(go, d);
}

AuditStats audit_stats() {
    std::lock_guard lock(g_audit_mu);
    return g_audit;
}

void reset_audit_stats() {
    std::lock_guard lock(g_audit_mu);
    g_audit = {};
}

RankedDerivation annotate(const Derivation& d) {
    for (const auto& [name, t] : d.ctx)
        if (!level_at_most_one(t)) throw Error("level", "context entry " + name + " : " + to_string(t));
    unsigned k = 0;
    auto go = [&](auto& self, const DNode& n) -> void {
        if (!level_at_most_one(n->type)) throw Error("level", "type " + to_string(n->type) + " of level 2");
        if (n->rule == Rule::ImpE) k = std::max(k, rank(n->kids[1]->type) + 1);
        for (const auto& kid : n->kids) self(self, kid);
    };
    go(go, d.root);
    return audited(RankedDerivation{d, height(d.root), k}, "annotate");
}

CheckResult check_ranked(const RankedDerivation& rd) {
    CheckResult r = check_derivation(rd.d);
    if (!r) return r;
    auto fail = [&](std::string path, std::string code, std::string msg) {
        r.ok = false;
        r.path = std::move(path);
        r.code = std::move(code);
        r.message = std::move(msg);
        return r;
    };
    for (const auto& [name, t] : rd.d.ctx)
        if (!level_at_most_one(t)) return fail("root", "level", "context entry " + name + " is not of level ≤ 1");
    std::string bad_path, bad_code, bad_msg;
    auto go = [&](auto& self, const DNode& n, const std::string& path) -> bool {
        if (!level_at_most_one(n->type)) {
            bad_path = path, bad_code = "level", bad_msg = to_string(n->type) + " is not of level ≤ 1";
            return false;
        }
        if (n->rule == Rule::ImpE) {
            const unsigned rk = rank(n->kids[1]->type);
            if (rk >= rd.k) {
                bad_path = path, bad_code = "cut-too-big";
                bad_msg = "argument type " + to_string(n->kids[1]->type) + " of rank " + std::to_string(rk) +
                          " needs cut rank above " + std::to_string(rd.k);
                return false;
            }
        }
        for (std::size_t i = 0; i < n->kids.size(); ++i)
            if (!self(self, n->kids[i], path + "/" + std::to_string(i))) return false;
        return true;
    };
    if (!go(go, rd.d.root, "root")) return fail(bad_path, bad_code, bad_msg);
    const std::size_t h = height(rd.d.root);
    if (h > rd.m) return fail("root", "height", "height " + std::to_string(h) + " exceeds m = " + std::to_string(rd.m));
    if (!le_pow2(length(rd.d.term()), rd.m))
        return fail("root", "size", "|t| = " + std::to_string(length(rd.d.term())) + " exceeds 2^" + std::to_string(rd.m));
    return r;
}

RankedDerivation weaken_ranked(const RankedDerivation& rd, const Context& wider, std::uint64_t m, unsigned k) {
    if (m < rd.m || k < rd.k)
        throw Error("weaken", "bounds (" + std::to_string(m) + ", " + std::to_string(k) + ") below (" +
                                  std::to_string(rd.m) + ", " + std::to_string(rd.k) + ")");
    return audited(RankedDerivation{weaken(rd.d, wider), m, k}, "weaken_ranked");
}

RankedDerivation subst_flat_ranked(const RankedDerivation& rd, const TyVar& alpha, const Type& sigma) {
    if (alpha.level != 0 || !is_flat(sigma))
        throw Error("not-flat", "cannot substitute " + to_string(sigma) + " for " + alpha.name);
    return audited(RankedDerivation{subst_type(rd.d, alpha, sigma), rd.m, rd.k}, "subst_flat_ranked");
}

RankedDerivation remove_alli_alles(const RankedDerivation& rd) {
    DNode root = pp(rd.d.root, false);
    return audited(RankedDerivation{{rd.d.ctx, root}, std::min<std::uint64_t>(rd.m, height(root)), rd.k},
                   "remove_alli_alles");
}

RankedDerivation preprocess(const RankedDerivation& rd) {
    DNode root = pp(rd.d.root, true);
    return audited(RankedDerivation{{rd.d.ctx, root}, std::min<std::uint64_t>(rd.m, height(root)), rd.k},
                   "preprocess");
}

bool is_preprocessed(const DNode& d) {
    if (is_all_e(d->rule) && d->kids[0]->rule == Rule::AllI) return false;
    if (is_proj(d->rule) && d->kids[0]->rule == Rule::ProdI && !lambda_free_pair(d->kids[0])) return false;
    for (const auto& k : d->kids)
        if (!is_preprocessed(k)) return false;
    return true;
}

RankedDerivation cut(const RankedDerivation& body, const std::string& x, const RankedDerivation& arg) {
    auto it = body.d.ctx.find(x);
    if (it == body.d.ctx.end()) throw Error("mismatch", x + " is not in the body's context");
    if (!type_eq(it->second, arg.d.type()))
        throw Error("mismatch", x + " : " + to_string(it->second) + " but the argument has type " +
                                    to_string(arg.d.type()));
    Context gamma = body.d.ctx;
    gamma.erase(x);
    if (gamma.size() != arg.d.ctx.size())
        throw Error("mismatch", "the argument's context differs from the body's");
    for (const auto& [name, t] : gamma) {
        auto a = arg.d.ctx.find(name);
        if (a == arg.d.ctx.end() || !type_eq(a->second, t))
            throw Error("mismatch", "the argument's context differs from the body's at " + name);
    }
    DNode root = subst_derivation(body.d.root, gamma, x, arg.d.root);
    return audited(RankedDerivation{{gamma, root}, body.m + arg.m, std::max(body.k, arg.k)}, "cut");
}

Inversion invert(const RankedDerivation& rd) {
    const Type& t = rd.d.type();
    if (t->kind != TypeKind::Arrow) throw Error("precondition", "type " + to_string(t) + " is not an arrow");
    if (rank(rd.d.ctx) > rd.k)
        throw Error("precondition", "context rank " + std::to_string(rank(rd.d.ctx)) + " exceeds k = " +
                                        std::to_string(rd.k));
    if (rank(t->left) < rd.k)
        throw Error("precondition", "domain rank " + std::to_string(rank(t->left)) + " is below k = " +
                                        std::to_string(rd.k));
    auto [x, body] = invert_go(rd.d.root, rd.d.ctx, rd.k);
    Context ctx = rd.d.ctx;
    ctx[x] = t->left;
    return Inversion{x, audited(RankedDerivation{{ctx, body}, rd.m, rd.k}, "invert")};
}

RankedDerivation reduce_rank(const RankedDerivation& rd, std::size_t node_budget) {
    if (rd.k == 0) throw Error("precondition", "cut rank 0 cannot be lowered");
    const unsigned k = rd.k - 1;
    if (rank(rd.d.ctx) > k)
        throw Error("precondition", "context rank " + std::to_string(rank(rd.d.ctx)) + " exceeds " + std::to_string(k));
    if (rank(rd.d.type()) > rd.k)
        throw Error("precondition", "conclusion rank " + std::to_string(rank(rd.d.type())) + " exceeds " +
                                        std::to_string(rd.k));
    Context ctx = rd.d.ctx;
    DNode root = Reducer{k, node_budget}.go(pp(rd.d.root, true), ctx);
    RankedDerivation out{{rd.d.ctx, root}, height(root), k};
    record(rd.m >= 63 || out.m <= (std::uint64_t{1} << rd.m),
           "reduce_rank: height " + std::to_string(out.m) + " > 2^" + std::to_string(rd.m));
    return audited(std::move(out), "reduce_rank");
}

RankedDerivation cut_elim_to_rank1(const RankedDerivation& rd, std::size_t node_budget,
                                   std::vector<PassReport>* report) {
    if (!rd.d.ctx.empty()) throw Error("precondition", "cut elimination to rank 1 needs a closed derivation");
    if (rank(rd.d.type()) > 2)
        throw Error("precondition", "conclusion " + to_string(rd.d.type()) + " has rank above 2");
    if (report) report->push_back(pass_record("input", rd));
    RankedDerivation cur = rd;
    while (cur.k > 1) {
        cur = reduce_rank(cur, node_budget);
        if (report) report->push_back(pass_record("reduce_rank", cur));
    }
    if (rd.k > 1)
        record(within_tower(cur.m, rd.k - 1, rd.m), "cut_elim_to_rank1: height " + std::to_string(cur.m) +
                                                        " > 2_" + std::to_string(rd.k - 1) + "(" +
                                                        std::to_string(rd.m) + ")");
    return cur;
}

bool is_quasinormal(const Term& t) {
    switch (t->kind) {
    case TermKind::Var: return true;
    case TermKind::Lam: return is_quasinormal(t->left);
    case TermKind::App: return t->left->kind != TermKind::Lam && is_quasinormal(t->left) && is_quasinormal(t->right);
    case TermKind::Pair: return is_quasinormal(t->left) && is_quasinormal(t->right);
    case TermKind::Fst:
    case TermKind::Snd:
        if (t->left->kind == TermKind::Pair &&
            !(is_lambda_free(t->left->left) && is_lambda_free(t->left->right)))
            return false;
        return is_quasinormal(t->left);
    }
    return false;
}

RankedDerivation quasinormalize(const RankedDerivation& rd, std::size_t node_budget) {
    if (rd.k > 1) throw Error("precondition", "cut rank " + std::to_string(rd.k) + " is above 1");
    Context ctx = rd.d.ctx;
    DNode root = Quasi{node_budget}.go(rd.d.root, ctx);
    if (!is_quasinormal(root->term))
        throw Error("precondition", "result " + to_string(root->term) + " is not quasinormal");
    RankedDerivation out{{rd.d.ctx, root}, height(root), rd.k};
    record(rd.m >= 63 || out.m <= (std::uint64_t{1} << rd.m),
           "quasinormalize: height " + std::to_string(out.m) + " > 2^" + std::to_string(rd.m));
    return audited(std::move(out), "quasinormalize");
}

FinishResult finish_quasinormal(const Term& t) {
    if (!is_quasinormal(t)) throw Error("precondition", to_string(t) + " is not quasinormal");
    FinishResult out{t, 0, size(t)};
    const std::size_t input = out.peak;
    while (auto next = step(out.term)) {
        out.term = *next;
        ++out.steps;
        out.peak = std::max(out.peak, size(out.term));
    }
    record(out.peak <= input, "finish_quasinormal: peak " + std::to_string(out.peak) + " > input " +
                                  std::to_string(input));
    return out;
}

SoundEval evaluate_via_cutelim(const Derivation& d, std::uint64_t n, std::size_t node_budget, std::uint64_t fuel) {
    if (d.ctx.size() != 1 || !type_eq(d.ctx.begin()->second, nat1()))
        throw Error("precondition", "expected a context x : Nat1");
    if (!type_eq(d.type(), nat0())) throw Error("precondition", "expected conclusion type Nat0");
    if (!is_normal(d.term())) throw Error("precondition", "subject " + to_string(d.term()) + " is not normal");
    if (CheckResult c = check_derivation(d); !c) throw Error(c.code, c.message + " at " + c.path);
    const std::string& x = d.ctx.begin()->first;

    SoundEval out;
    NormalizeResult direct = normalize(substitute(d.term(), x, numeral(n)), fuel);
    if (!direct.normal) throw Error("fuel-exhausted", "direct normalization did not finish");
    auto direct_value = decode_numeral(direct.term);
    if (!direct_value) throw Error("not-numeral", "direct normal form " + to_string(direct.term));
    out.direct = *direct_value;

    Plug plug{x, n};
    Context local;
    DNode root = plug.go(pp(d.root, false), local);
    out.occurrences = plug.count;
    out.c = plug.c;
    Derivation plugged{{}, root};
    if (CheckResult c = check_derivation(plugged); !c)
        throw Error(c.code, "after substitution: " + c.message + " at " + c.path);

    RankedDerivation rd = annotate(plugged);
    out.height = rd.m;
    out.cut_rank = rd.k;
    out.height_bound = out.occurrences * (n + 2) + 2 * size(d.term());
    if (rd.m > out.height_bound)
        throw Error("audit", "height " + std::to_string(rd.m) + " after substitution exceeds " +
                                 std::to_string(out.height_bound));

    RankedDerivation low = cut_elim_to_rank1(rd, node_budget, &out.passes);
    RankedDerivation qn = quasinormalize(low, node_budget);
    out.passes.push_back(pass_record("quasinormalize", qn));
    out.final_height = qn.m;
    FinishResult fin = finish_quasinormal(qn.d.term());
    out.peak = fin.peak;
    auto value = decode_numeral(fin.term);
    if (!value) throw Error("not-numeral", "normal form " + to_string(fin.term));
    out.value = *value;
    if (out.value != out.direct)
        throw Error("mismatch", "cut elimination gives " + std::to_string(out.value) + ", direct normalization " +
                                    std::to_string(out.direct));
    return out;
}

}  // namespace elemf
