#include "elemf/typing.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <utility>

namespace elemf {

namespace {

constexpr std::array<std::string_view, 9> kRuleNames = {"Ax",     "ImpI", "ImpE",       "ProdI",   "ProdEL",
                                                        "ProdER", "AllI", "AllEClosed", "AllEFlat"};

DNode mk(Rule rule, Term term, Type type, Type inst, std::vector<DNode> kids) {
    return std::make_shared<const DerivNode>(DerivNode{rule, std::move(term), std::move(type), std::move(inst), std::move(kids)});
}

}  // namespace

std::string_view rule_name(Rule r) { return kRuleNames[static_cast<std::size_t>(r)]; }

std::optional<Rule> rule_from_name(std::string_view s) {
    for (std::size_t i = 0; i < kRuleNames.size(); ++i)
        if (kRuleNames[i] == s) return static_cast<Rule>(i);
    return std::nullopt;
}

//------------------------------------------------------------------------------
// Node constructors

DNode make_ax(const std::string& x, Type t) { return mk(Rule::Ax, var(x), std::move(t), nullptr, {}); }

DNode make_imp_i(const std::string& x, Type domain, DNode body) {
    Term term = lam(x, body->term);
    Type type = arrow(std::move(domain), body->type);
    return mk(Rule::ImpI, std::move(term), std::move(type), nullptr, {std::move(body)});
}

DNode make_imp_e(DNode fun, DNode arg) {
    if (fun->type->kind != TypeKind::Arrow)
        throw std::logic_error("make_imp_e: function has non-arrow type " + to_string(fun->type) + " for " +
                               to_string(fun->term));
    if (!type_eq(fun->type->left, arg->type))
        throw std::logic_error("make_imp_e: argument type " + to_string(arg->type) + " does not match domain " +
                               to_string(fun->type->left) + " of " + to_string(fun->term));
    Term term = app(fun->term, arg->term);
    Type type = fun->type->right;
    return mk(Rule::ImpE, std::move(term), std::move(type), nullptr, {std::move(fun), std::move(arg)});
}

DNode make_prod_i(DNode left, DNode right) {
    Term term = pair(left->term, right->term);
    Type type = prod(left->type, right->type);
    return mk(Rule::ProdI, std::move(term), std::move(type), nullptr, {std::move(left), std::move(right)});
}

DNode make_prod_el(DNode p) {
    if (p->type->kind != TypeKind::Prod) throw std::logic_error("make_prod_el: non-product type " + to_string(p->type));
    Term term = fst(p->term);
    Type type = p->type->left;
    return mk(Rule::ProdEL, std::move(term), std::move(type), nullptr, {std::move(p)});
}

DNode make_prod_er(DNode p) {
    if (p->type->kind != TypeKind::Prod) throw std::logic_error("make_prod_er: non-product type " + to_string(p->type));
    Term term = snd(p->term);
    Type type = p->type->right;
    return mk(Rule::ProdER, std::move(term), std::move(type), nullptr, {std::move(p)});
}

DNode make_all_i(DNode body, const TyVar& alpha) {
    Term term = body->term;
    Type type = forall(alpha, body->type);
    return mk(Rule::AllI, std::move(term), std::move(type), nullptr, {std::move(body)});
}

DNode make_all_e(DNode d, Type instance) {
    if (d->type->kind != TypeKind::Forall)
        throw std::logic_error("make_all_e: non-quantified type " + to_string(d->type) + " for " + to_string(d->term));
    Type type = type_substitute(d->type->left, d->type->var, instance);
    Rule rule = is_closed(instance) ? Rule::AllEClosed : Rule::AllEFlat;
    Term term = d->term;
    return mk(rule, std::move(term), std::move(type), std::move(instance), {std::move(d)});
}

//------------------------------------------------------------------------------
// Checking

bool well_leveled(const Type& t) { return is_level(t, 0) || is_level(t, 1) || is_level(t, 2); }

namespace {

struct Checker {
    CheckResult result;

    bool fail(const std::string& path, std::string code, std::string message) {
        result.ok = false;
        result.path = path;
        result.code = std::move(code);
        result.message = std::move(message);
        return false;
    }

    static std::set<TyVar> ctx_ftv(const Context& ctx) {
        std::set<TyVar> out;
        for (const auto& [name, t] : ctx) {
            auto f = free_type_vars(t);
            out.insert(f.begin(), f.end());
        }
        return out;
    }

    bool check_kids(const DNode& d, std::size_t n, const std::string& path) {
        if (d->kids.size() != n)
            return fail(path, "shape",
                        std::string(rule_name(d->rule)) + " expects " + std::to_string(n) + " premise(s), got " +
                            std::to_string(d->kids.size()));
        for (const auto& k : d->kids)
            if (!k || !k->term || !k->type) return fail(path, "shape", "incomplete premise");
        return true;
    }

    bool same_subject(const Term& expected, const DNode& kid, const std::string& path) {
        if (expected == kid->term || alpha_eq(expected, kid->term)) return true;
        return fail(path, "subject", "premise subject " + to_string(kid->term) + " does not match " + to_string(expected));
    }

    bool go(const DNode& d, const Context& ctx, const std::string& path) {
        if (!d || !d->term || !d->type) return fail(path, "shape", "incomplete node");
        if (!well_leveled(d->type)) return fail(path, "ill-leveled", "type " + to_string(d->type) + " has no level");
        const Term& t = d->term;
        const Type& ty = d->type;
        switch (d->rule) {
        case Rule::Ax: {
            if (!check_kids(d, 0, path)) return false;
            if (t->kind != TermKind::Var) return fail(path, "shape", "Ax subject must be a variable");
            auto it = ctx.find(t->name);
            if (it == ctx.end()) return fail(path, "axiom-miss", "variable " + t->name + " is not in the context");
            if (!type_eq(it->second, ty))
                return fail(path, "type-mismatch",
                            "context assigns " + t->name + " : " + to_string(it->second) + ", not " + to_string(ty));
            return true;
        }
        case Rule::ImpI: {
            if (!check_kids(d, 1, path)) return false;
            if (t->kind != TermKind::Lam) return fail(path, "shape", "ImpI subject must be an abstraction");
            if (ty->kind != TypeKind::Arrow) return fail(path, "shape", "ImpI conclusion must be an arrow type");
            if (!well_leveled(ty->left)) return fail(path, "ill-leveled", "binder type has no level");
            const DNode& kid = d->kids[0];
            if (!same_subject(t->left, kid, path)) return false;
            if (!type_eq(kid->type, ty->right))
                return fail(path, "type-mismatch", "body type " + to_string(kid->type) + " vs " + to_string(ty->right));
            Context inner = ctx;
            inner[t->name] = ty->left;
            return go(kid, inner, path + "/0");
        }
        case Rule::ImpE: {
            if (!check_kids(d, 2, path)) return false;
            if (t->kind != TermKind::App) return fail(path, "shape", "ImpE subject must be an application");
            const DNode& f = d->kids[0];
            const DNode& a = d->kids[1];
            if (!same_subject(t->left, f, path) || !same_subject(t->right, a, path)) return false;
            if (f->type->kind != TypeKind::Arrow) return fail(path, "shape", "ImpE function premise must have arrow type");
            if (!type_eq(f->type->left, a->type))
                return fail(path, "type-mismatch",
                            "argument type " + to_string(a->type) + " vs domain " + to_string(f->type->left));
            if (!type_eq(f->type->right, ty))
                return fail(path, "type-mismatch", "codomain " + to_string(f->type->right) + " vs " + to_string(ty));
            return go(f, ctx, path + "/0") && go(a, ctx, path + "/1");
        }
        case Rule::ProdI: {
            if (!check_kids(d, 2, path)) return false;
            if (t->kind != TermKind::Pair) return fail(path, "shape", "ProdI subject must be a pair");
            if (ty->kind != TypeKind::Prod) return fail(path, "shape", "ProdI conclusion must be a product");
            const DNode& l = d->kids[0];
            const DNode& r = d->kids[1];
            if (!same_subject(t->left, l, path) || !same_subject(t->right, r, path)) return false;
            if (!type_eq(l->type, ty->left) || !type_eq(r->type, ty->right))
                return fail(path, "type-mismatch", "component types do not match the product");
            return go(l, ctx, path + "/0") && go(r, ctx, path + "/1");
        }
        case Rule::ProdEL:
        case Rule::ProdER: {
            if (!check_kids(d, 1, path)) return false;
            const bool left = d->rule == Rule::ProdEL;
            if (t->kind != (left ? TermKind::Fst : TermKind::Snd))
                return fail(path, "shape", std::string(rule_name(d->rule)) + " subject must be a projection");
            const DNode& p = d->kids[0];
            if (!same_subject(t->left, p, path)) return false;
            if (p->type->kind != TypeKind::Prod) return fail(path, "shape", "projection premise must have product type");
            if (!type_eq(left ? p->type->left : p->type->right, ty))
                return fail(path, "type-mismatch", "projected component does not match the conclusion");
            return go(p, ctx, path + "/0");
        }
        case Rule::AllI: {
            if (!check_kids(d, 1, path)) return false;
            if (ty->kind != TypeKind::Forall) return fail(path, "shape", "AllI conclusion must be quantified");
            const DNode& kid = d->kids[0];
            if (!same_subject(t, kid, path)) return false;
            if (!type_eq(kid->type, ty->left))
                return fail(path, "type-mismatch", "premise type " + to_string(kid->type) + " vs " + to_string(ty->left));
            if (ctx_ftv(ctx).count(ty->var))
                return fail(path, "eigenvariable",
                            "generalized variable a" + std::to_string(ty->var.level) + "_" + ty->var.name +
                                " is free in the context");
            return go(kid, ctx, path + "/0");
        }
        case Rule::AllEClosed:
        case Rule::AllEFlat: {
            if (!check_kids(d, 1, path)) return false;
            const DNode& kid = d->kids[0];
            if (!same_subject(t, kid, path)) return false;
            if (!d->inst) return fail(path, "shape", "instantiation rule without instance type");
            if (kid->type->kind != TypeKind::Forall) return fail(path, "shape", "premise must be quantified");
            const TyVar& alpha = kid->type->var;
            const Type& sigma = d->inst;
            if (d->rule == Rule::AllEClosed) {
                if (!is_closed(sigma))
                    return fail(path, "not-closed", "instance " + to_string(sigma) + " of a closed instantiation is open");
                bool level_ok = false;
                for (unsigned l = 0; l <= alpha.level && !level_ok; ++l) level_ok = is_level(sigma, l);
                if (!level_ok)
                    return fail(path, "level",
                                "instance " + to_string(sigma) + " is not of level <= " + std::to_string(alpha.level));
            } else {
                if (alpha.level != 0)
                    return fail(path, "level", "flat instantiation applies to level-0 quantifiers only");
                if (!is_flat(sigma)) return fail(path, "not-flat", "instance " + to_string(sigma) + " is not flat");
            }
            if (!type_eq(type_substitute(kid->type->left, alpha, sigma), ty))
                return fail(path, "type-mismatch", "conclusion is not the instantiated body");
            return go(kid, ctx, path + "/0");
        }
        }
        return fail(path, "shape", "unknown rule");
    }
};

}  // namespace

CheckResult check_derivation(const Derivation& d) {
    Checker c;
    for (const auto& [name, t] : d.ctx)
        if (!well_leveled(t)) {
            c.fail("root", "ill-leveled", "context type of " + name + " has no level");
            return c.result;
        }
    c.go(d.root, d.ctx, "root");
    return c.result;
}

//------------------------------------------------------------------------------
// Rank

bool level_at_most_one(const Type& t) { return is_level(t, 0) || is_level(t, 1); }

namespace {

unsigned rank_go(const Type& t) {
    switch (t->kind) {
    case TypeKind::Var: return 0;
    case TypeKind::Prod: return std::max(rank_go(t->left), rank_go(t->right));
    case TypeKind::Arrow: return std::max(rank_go(t->left) + 1, rank_go(t->right));
    case TypeKind::Forall: return rank_go(t->left);
    }
    return 0;
}

}  // namespace

unsigned rank(const Type& t) {
    if (!level_at_most_one(t)) throw Error("level", "rank is defined for types of level <= 1, got " + to_string(t));
    return rank_go(t);
}

unsigned rank(const Context& ctx) {
    unsigned r = 0;
    for (const auto& [name, t] : ctx) r = std::max(r, rank(t));
    return r;
}

//------------------------------------------------------------------------------
// Structural operations

std::size_t node_count(const DNode& d) {
    std::size_t n = 1;
    for (const auto& k : d->kids) n += node_count(k);
    return n;
}

std::size_t height(const DNode& d) {
    std::size_t h = 0;
    for (const auto& k : d->kids) h = std::max(h, height(k) + 1);
    return h;
}

DNode with_kids(const DNode& d, std::vector<DNode> kids) {
    Term term;
    switch (d->rule) {
    case Rule::Ax: term = d->term; break;
    case Rule::ImpI: term = lam(d->term->name, kids[0]->term); break;
    case Rule::ImpE: term = app(kids[0]->term, kids[1]->term); break;
    case Rule::ProdI: term = pair(kids[0]->term, kids[1]->term); break;
    case Rule::ProdEL: term = fst(kids[0]->term); break;
    case Rule::ProdER: term = snd(kids[0]->term); break;
    case Rule::AllI:
    case Rule::AllEClosed:
    case Rule::AllEFlat: term = kids[0]->term; break;
    }
    return mk(d->rule, std::move(term), d->type, d->inst, std::move(kids));
}

std::set<std::string> type_var_names(const Context& ctx) {
    std::set<std::string> out;
    for (const auto& [name, t] : ctx) collect_type_var_names(t, out);
    return out;
}

void collect_type_var_names(const DNode& d, std::set<std::string>& out) {
    collect_type_var_names(d->type, out);
    if (d->inst) collect_type_var_names(d->inst, out);
    for (const auto& k : d->kids) collect_type_var_names(k, out);
}

namespace {

TyVar fresh_tyvar(const TyVar& base, const std::set<std::string>& used) {
    return TyVar{fresh_name(base.name, [&](const std::string& n) { return used.count(n) > 0; }), base.level};
}

}  // namespace

DNode rename_type_var(const DNode& d, const TyVar& from, const TyVar& to) { return subst_type(d, from, tvar(to)); }

DNode subst_type(const DNode& d, const TyVar& alpha, const Type& sigma) {
    if (d->rule == Rule::AllI) {
        const TyVar& beta = d->type->var;
        if (beta == alpha) return d;
        if (type_occurs_free(sigma, beta)) {
            std::set<std::string> used;
            collect_type_var_names(d, used);
            collect_type_var_names(sigma, used);
            used.insert(alpha.name);
            TyVar fresh = fresh_tyvar(beta, used);
            DNode kid = subst_type(d->kids[0], beta, tvar(fresh));
            kid = subst_type(kid, alpha, sigma);
            return make_all_i(kid, fresh);
        }
        DNode kid = subst_type(d->kids[0], alpha, sigma);
        if (kid == d->kids[0]) return d;
        return make_all_i(kid, beta);
    }
    std::vector<DNode> kids;
    kids.reserve(d->kids.size());
    bool changed = false;
    for (const auto& k : d->kids) {
        kids.push_back(subst_type(k, alpha, sigma));
        changed |= kids.back() != k;
    }
    Type type = type_substitute(d->type, alpha, sigma);
    Type inst = d->inst ? type_substitute(d->inst, alpha, sigma) : nullptr;
    if (!changed && type == d->type && inst == d->inst) return d;
    DNode rebuilt = with_kids(d, std::move(kids));
    return mk(rebuilt->rule, rebuilt->term, std::move(type), std::move(inst), rebuilt->kids);
}

Derivation subst_type(const Derivation& d, const TyVar& alpha, const Type& sigma) {
    Context ctx;
    for (const auto& [name, t] : d.ctx) ctx[name] = type_substitute(t, alpha, sigma);
    return Derivation{std::move(ctx), subst_type(d.root, alpha, sigma)};
}

DNode rename_term_var(const DNode& d, const std::string& y, const std::string& y2) {
    switch (d->rule) {
    case Rule::Ax:
        if (d->term->name == y) return make_ax(y2, d->type);
        return d;
    case Rule::ImpI:
        if (d->term->name == y) return d;
        break;
    default: break;
    }
    std::vector<DNode> kids;
    bool changed = false;
    for (const auto& k : d->kids) {
        kids.push_back(rename_term_var(k, y, y2));
        changed |= kids.back() != k;
    }
    return changed ? with_kids(d, std::move(kids)) : d;
}

namespace {

DNode weaken_go(const DNode& d, const std::set<TyVar>& clash, const std::set<std::string>& clash_names) {
    if (d->rule == Rule::AllI && clash.count(d->type->var)) {
        std::set<std::string> used = clash_names;
        collect_type_var_names(d, used);
        TyVar fresh = fresh_tyvar(d->type->var, used);
        DNode kid = subst_type(d->kids[0], d->type->var, tvar(fresh));
        kid = weaken_go(kid, clash, clash_names);
        return make_all_i(kid, fresh);
    }
    std::vector<DNode> kids;
    bool changed = false;
    for (const auto& k : d->kids) {
        kids.push_back(weaken_go(k, clash, clash_names));
        changed |= kids.back() != k;
    }
    return changed ? with_kids(d, std::move(kids)) : d;
}

}  // namespace

DNode weaken_into(const DNode& d, const Context& target) {
    std::set<TyVar> clash;
    for (const auto& [name, t] : target) {
        auto f = free_type_vars(t);
        clash.insert(f.begin(), f.end());
    }
    if (clash.empty()) return d;
    std::set<std::string> names;
    for (const auto& v : clash) names.insert(v.name);
    return weaken_go(d, clash, names);
}

Derivation weaken(const Derivation& d, const Context& wider) {
    for (const auto& [name, t] : d.ctx) {
        auto it = wider.find(name);
        if (it == wider.end() || !type_eq(it->second, t))
            throw Error("weaken", "target context does not extend the derivation's context at " + name);
    }
    return Derivation{wider, weaken_into(d.root, wider)};
}

namespace {

struct DerivSubst {
    const std::string& x;
    const DNode& arg;
    std::set<std::string> arg_free;

    DNode go(const DNode& d, Context& ctx) const {
        switch (d->rule) {
        case Rule::Ax:
            if (d->term->name == x) return weaken_into(arg, ctx);
            return d;
        case Rule::ImpI: {
            std::string y = d->term->name;
            if (y == x) return d;
            DNode kid = d->kids[0];
            const Type& domain = d->type->left;
            if (arg_free.count(y) && occurs_free(kid->term, x)) {
                std::string y2 = fresh_name(y, [&](const std::string& n) {
                    return arg_free.count(n) > 0 || n == x || ctx.count(n) > 0 || occurs_free(kid->term, n);
                });
                kid = rename_term_var(kid, y, y2);
                y = y2;
            }
            auto saved = ctx.find(y) != ctx.end() ? std::optional<Type>(ctx[y]) : std::nullopt;
            ctx[y] = domain;
            DNode body = go(kid, ctx);
            if (saved) ctx[y] = *saved;
            else ctx.erase(y);
            if (body == d->kids[0] && y == d->term->name) return d;
            return make_imp_i(y, domain, body);
        }
        default: break;
        }
        std::vector<DNode> kids;
        bool changed = false;
        for (const auto& k : d->kids) {
            kids.push_back(go(k, ctx));
            changed |= kids.back() != k;
        }
        return changed ? with_kids(d, std::move(kids)) : d;
    }
};

}  // namespace

DNode subst_derivation(const DNode& body, const Context& ctx, const std::string& x, const DNode& arg) {
    DerivSubst s{x, arg, free_vars(arg->term)};
    Context local = ctx;
    return s.go(body, local);
}

DNode expose(const DNode& d) {
    if (d->rule != Rule::AllEClosed && d->rule != Rule::AllEFlat) return d;
    DNode kid = expose(d->kids[0]);
    if (kid->rule == Rule::AllI) {
        DNode inner = subst_type(kid->kids[0], kid->type->var, d->inst);
        return expose(inner);
    }
    if (kid == d->kids[0]) return d;
    return with_kids(d, {kid});
}

}  // namespace elemf
