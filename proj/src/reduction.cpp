#include "elemf/reduction.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <cstdlib>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace elemf {

//------------------------------------------------------------------------------
// Substitution for the reducer: same result as substitute() up to α, but the
// free variables of the argument are only computed when a binder could
// capture one of them.

namespace {

class Subst {
public:
    Subst(const std::string& x, const Term& s) : x_(x), s_(s) {}

    Term run(const Term& t) {
        Term r = go(t);
        return r ? r : t;
    }

private:
    const std::set<std::string>& s_free() {
        if (!fv_) fv_ = free_vars(s_);
        return *fv_;
    }

    // nullptr: unchanged
    Term go(const Term& t) {
        switch (t->kind) {
        case TermKind::Var: return t->name == x_ ? s_ : nullptr;
        case TermKind::App:
        case TermKind::Pair: {
            Term l = go(t->left);
            Term r = go(t->right);
            if (!l && !r) return nullptr;
            if (!l) l = t->left;
            if (!r) r = t->right;
            return t->kind == TermKind::App ? app(l, r) : pair(l, r);
        }
        case TermKind::Fst:
        case TermKind::Snd: {
            Term l = go(t->left);
            if (!l) return nullptr;
            return t->kind == TermKind::Fst ? fst(l) : snd(l);
        }
        case TermKind::Lam: {
            if (t->name == x_) return nullptr;
            Term b = go(t->left);
            if (!b) return nullptr;
            if (!s_free().count(t->name)) return lam(t->name, b);
            const Term& body = t->left;
            std::string fresh = fresh_name(t->name, [&](const std::string& n) {
                return s_free().count(n) > 0 || n == x_ || occurs_free(body, n);
            });
            Term renamed = substitute(body, t->name, var(fresh));
            Term b2 = go(renamed);
            return lam(fresh, b2 ? b2 : renamed);
        }
        }
        return nullptr;
    }

    const std::string& x_;
    const Term& s_;
    std::optional<std::set<std::string>> fv_;
};

Term contract_beta(const Term& redex) {
    const Term& f = redex->left;
    return Subst(f->name, redex->right).run(f->left);
}

bool is_redex(const Term& t) {
    switch (t->kind) {
    case TermKind::App: return t->left->kind == TermKind::Lam;
    case TermKind::Fst:
    case TermKind::Snd: return t->left->kind == TermKind::Pair;
    default: return false;
    }
}

Term contract(const Term& t) {
    if (t->kind == TermKind::App) return contract_beta(t);
    return t->kind == TermKind::Fst ? t->left->left : t->left->right;
}

}  // namespace

std::optional<Term> step(const Term& t) {
    if (is_redex(t)) return contract(t);
    switch (t->kind) {
    case TermKind::Var: return std::nullopt;
    case TermKind::Lam: {
        auto b = step(t->left);
        if (!b) return std::nullopt;
        return lam(t->name, *b);
    }
    case TermKind::App:
    case TermKind::Pair: {
        if (auto l = step(t->left)) return t->kind == TermKind::App ? app(*l, t->right) : pair(*l, t->right);
        if (auto r = step(t->right)) return t->kind == TermKind::App ? app(t->left, *r) : pair(t->left, *r);
        return std::nullopt;
    }
    case TermKind::Fst:
    case TermKind::Snd: {
        auto l = step(t->left);
        if (!l) return std::nullopt;
        return t->kind == TermKind::Fst ? fst(*l) : snd(*l);
    }
    }
    return std::nullopt;
}

bool is_normal(const Term& t) {
    if (is_redex(t)) return false;
    switch (t->kind) {
    case TermKind::Var: return true;
    case TermKind::Lam:
    case TermKind::Fst:
    case TermKind::Snd: return is_normal(t->left);
    case TermKind::App:
    case TermKind::Pair: return is_normal(t->left) && is_normal(t->right);
    }
    return true;
}

//------------------------------------------------------------------------------
// Normal order

namespace {

class NormalOrder {
public:
    explicit NormalOrder(std::uint64_t fuel) : fuel_(fuel) {}

    enum class Want { Nothing, Lam, Pair };

    // Reduces t in normal order. With want = Lam (Pair) it stops as soon as t
    // is an abstraction (pair), the point where the enclosing application
    // (projection) becomes the leftmost-outermost redex.
    Term red(Term t, Want want) {
        while (true) {
            if (out_of_fuel()) return t;
            switch (t->kind) {
            case TermKind::Var: return t;
            case TermKind::Lam: {
                if (want == Want::Lam) return t;
                Term b = red(t->left, Want::Nothing);
                return b == t->left ? t : lam(t->name, b);
            }
            case TermKind::Pair: {
                if (want == Want::Pair) return t;
                Term l = red(t->left, Want::Nothing);
                if (out_of_fuel()) return l == t->left ? t : pair(l, t->right);
                Term r = red(t->right, Want::Nothing);
                return (l == t->left && r == t->right) ? t : pair(l, r);
            }
            case TermKind::App: {
                Term f = red(t->left, Want::Lam);
                if (out_of_fuel()) return f == t->left ? t : app(f, t->right);
                if (f->kind == TermKind::Lam) {
                    ++steps_;
                    t = Subst(f->name, t->right).run(f->left);
                    continue;
                }
                Term a = red(t->right, Want::Nothing);
                return (f == t->left && a == t->right) ? t : app(f, a);
            }
            case TermKind::Fst:
            case TermKind::Snd: {
                Term p = red(t->left, Want::Pair);
                if (out_of_fuel()) return p == t->left ? t : (t->kind == TermKind::Fst ? fst(p) : snd(p));
                if (p->kind == TermKind::Pair) {
                    ++steps_;
                    t = t->kind == TermKind::Fst ? p->left : p->right;
                    continue;
                }
                return p == t->left ? t : (t->kind == TermKind::Fst ? fst(p) : snd(p));
            }
            }
            return t;
        }
    }

    bool out_of_fuel() const { return steps_ >= fuel_; }
    std::uint64_t steps() const { return steps_; }

private:
    std::uint64_t fuel_;
    std::uint64_t steps_ = 0;
};

}  // namespace

NormalizeResult normalize(const Term& t, std::uint64_t fuel) {
    NormalOrder n(fuel);
    Term r = n.red(t, NormalOrder::Want::Nothing);
    // Running out exactly on the last contraction still leaves a normal form.
    const bool normal = !n.out_of_fuel() || is_normal(r);
    return NormalizeResult{r, normal, n.steps()};
}

//------------------------------------------------------------------------------
// Strong call-by-value

namespace {

struct Code;
using CodePtr = std::shared_ptr<const Code>;

// Terms with de Bruijn indices for bound variables.
struct Code {
    TermKind kind;
    std::size_t index = 0;  // bound Var
    bool free = false;      // Var: a free variable, named by `name`
    std::string name;       // free Var name, or Lam binder hint
    CodePtr left, right;
};

CodePtr compile(const Term& t, std::vector<std::string>& scope) {
    auto c = std::make_shared<Code>();
    c->kind = t->kind;
    switch (t->kind) {
    case TermKind::Var: {
        for (std::size_t i = scope.size(); i-- > 0;)
            if (scope[i] == t->name) {
                c->index = scope.size() - 1 - i;
                return c;
            }
        c->free = true;
        c->name = t->name;
        return c;
    }
    case TermKind::Lam:
        c->name = t->name;
        scope.push_back(t->name);
        c->left = compile(t->left, scope);
        scope.pop_back();
        return c;
    case TermKind::App:
    case TermKind::Pair:
        c->left = compile(t->left, scope);
        c->right = compile(t->right, scope);
        return c;
    case TermKind::Fst:
    case TermKind::Snd: c->left = compile(t->left, scope); return c;
    }
    return c;
}

// Machine nodes currently alive on this thread; the allocation budget bounds it.
thread_local std::uint64_t live_nodes = 0;

struct Live {
    Live() { ++live_nodes; }
    Live(const Live&) { ++live_nodes; }
    Live& operator=(const Live&) = default;
    ~Live() { --live_nodes; }
};

struct Value;
struct Env;
struct Spine;
using VPtr = std::shared_ptr<const Value>;
using EnvPtr = std::shared_ptr<const Env>;
using SpinePtr = std::shared_ptr<const Spine>;

struct Env {
    VPtr head;
    EnvPtr tail;
    Live live{};
};

enum class ElimKind { App, Fst, Snd };

struct Spine {
    ElimKind kind;
    VPtr arg;
    SpinePtr prev;
    Live live{};
};

enum class ValueKind { Lam, Pair, Neutral };

struct Value {
    ValueKind kind;
    bool normal = false;    // a closure or pair over a normal term
    bool given_up = false;  // normalizing it as an argument ran out of steps
    // Lam
    CodePtr body;
    EnvPtr env;
    std::string hint;
    // Pair
    VPtr left, right;
    // Neutral: a variable head, or a stuck value such as a projection of an abstraction
    std::string head;
    VPtr stuck;
    SpinePtr spine;
    Live live;
};

struct FuelOut {};
struct BudgetOut {};
struct AttemptOut {};

constexpr std::uint64_t kAttemptSteps = 4096;
// Attempts stop for good after this many consecutive failures.
constexpr std::uint64_t kAttemptGiveUp = 128;

class Machine {
public:
    Machine(std::uint64_t fuel, std::uint64_t budget, std::set<std::string> scope)
        : fuel_(fuel), budget_(budget), scope_(scope.begin(), scope.end()) {}

    VPtr eval(CodePtr c, EnvPtr env) {
        while (true) {
            switch (c->kind) {
            case TermKind::Var: {
                if (c->free) return neutral_var(c->name);
                const Env* e = env.get();
                for (std::size_t i = 0; i < c->index; ++i) e = e->tail.get();
                return e->head;
            }
            case TermKind::Lam: {
                alloc();
                auto v = std::make_shared<Value>();
                v->kind = ValueKind::Lam;
                v->body = c->left;
                v->env = env;
                v->hint = c->name;
                return v;
            }
            case TermKind::Pair: {
                alloc();
                auto v = std::make_shared<Value>();
                v->kind = ValueKind::Pair;
                v->left = strong(eval(c->left, env));
                v->right = strong(eval(c->right, env));
                return v;
            }
            case TermKind::App: {
                VPtr f = eval(c->left, env);
                VPtr a = strong(eval(c->right, env));
                if (f->kind == ValueKind::Lam) {
                    tick();
                    alloc();
                    env = std::make_shared<const Env>(Env{a, f->env, {}});
                    c = f->body;
                    continue;
                }
                return extend(f, ElimKind::App, a);
            }
            case TermKind::Fst:
            case TermKind::Snd: {
                VPtr p = eval(c->left, env);
                const bool left = c->kind == TermKind::Fst;
                if (p->kind == ValueKind::Pair) {
                    tick();
                    return left ? p->left : p->right;
                }
                return extend(p, left ? ElimKind::Fst : ElimKind::Snd, nullptr);
            }
            }
        }
    }

    Term readback(const VPtr& v) {
        alloc();
        switch (v->kind) {
        case ValueKind::Lam: {
            std::string name = fresh_name(v->hint, [&](const std::string& n) { return scope_.count(n) > 0; });
            tick();
            alloc();
            scope_.insert(name);
            bound_.push_back(name);
            VPtr body = eval(v->body, std::make_shared<const Env>(Env{neutral_var(name), v->env, {}}));
            Term b = readback(body);
            scope_.erase(name);
            bound_.pop_back();
            return lam(name, b);
        }
        case ValueKind::Pair: {
            tick();
            Term l = readback(v->left);
            Term r = readback(v->right);
            return pair(l, r);
        }
        case ValueKind::Neutral: {
            std::vector<const Spine*> elims;
            for (const Spine* s = v->spine.get(); s; s = s->prev.get()) elims.push_back(s);
            Term acc = v->stuck ? readback(v->stuck) : var(v->head);
            for (auto it = elims.rbegin(); it != elims.rend(); ++it) {
                tick();
                alloc();
                switch ((*it)->kind) {
                case ElimKind::App: acc = app(acc, readback((*it)->arg)); break;
                case ElimKind::Fst: acc = fst(acc); break;
                case ElimKind::Snd: acc = snd(acc); break;
                }
            }
            return acc;
        }
        }
        return nullptr;
    }

    std::uint64_t steps() const { return steps_; }

private:
    // Normalizes an argument before it is shared: an abstraction is read back
    // to its normal form and closed over that, so every use of it starts
    // from the normal form instead of redoing the work under its binder.
    // The attempt gets a bounded number of steps; a partial application whose
    // open normal form is large stays a plain closure.
    VPtr strong(const VPtr& v) {
        if (v->normal || v->given_up || v->kind == ValueKind::Neutral) return v;
        if (failed_in_row_ >= kAttemptGiveUp) return v;
        const std::uint64_t saved_limit = limit_;
        const std::size_t saved_bound = bound_.size();
        const std::uint64_t own = steps_ + kAttemptSteps;
        // An attempt nested in one with an earlier deadline runs under that deadline.
        const bool owner = own < limit_;
        auto attempt = [&] {
            Term nf = readback(v);
            limit_ = saved_limit;
            failed_in_row_ = 0;
            std::vector<std::string> names;
            VPtr out = eval(compile(nf, names), nullptr);
            if (out->kind != ValueKind::Neutral) std::const_pointer_cast<Value>(out)->normal = true;
            return out;
        };
        if (!owner) return attempt();
        limit_ = own;
        try {
            return attempt();
        } catch (const AttemptOut&) {
            limit_ = saved_limit;
            while (bound_.size() > saved_bound) {
                scope_.erase(bound_.back());
                bound_.pop_back();
            }
            ++failed_in_row_;
            std::const_pointer_cast<Value>(v)->given_up = true;
            return v;
        }
    }

    void tick() {
        if (steps_ >= fuel_) throw FuelOut{};
        if (steps_ >= limit_) throw AttemptOut{};
        ++steps_;
    }

    void alloc() {
        if (live_nodes > budget_) throw BudgetOut{};
    }

    VPtr neutral_var(const std::string& name) {
        alloc();
        auto v = std::make_shared<Value>();
        v->kind = ValueKind::Neutral;
        v->head = name;
        return v;
    }

    VPtr extend(const VPtr& f, ElimKind kind, VPtr arg) {
        tick();
        alloc();
        auto v = std::make_shared<Value>();
        v->kind = ValueKind::Neutral;
        if (f->kind == ValueKind::Neutral) {
            v->head = f->head;
            v->stuck = f->stuck;
            v->spine = std::make_shared<const Spine>(Spine{kind, std::move(arg), f->spine, {}});
        } else {
            v->stuck = f;
            v->spine = std::make_shared<const Spine>(Spine{kind, std::move(arg), nullptr, {}});
        }
        return v;
    }

    std::uint64_t fuel_;
    std::uint64_t budget_;
    std::unordered_set<std::string> scope_;
    std::vector<std::string> bound_;  // names added to scope_ by enclosing readbacks
    std::uint64_t steps_ = 0;
    std::uint64_t limit_ = UINT64_MAX;
    std::uint64_t failed_in_row_ = 0;
};

}  // namespace

NormalizeResult normalize_strict(const Term& t, std::uint64_t fuel, std::uint64_t node_budget) {
    std::vector<std::string> names;
    CodePtr code = compile(t, names);
    Machine m(fuel, node_budget, free_vars(t));
    try {
        VPtr v = m.eval(code, nullptr);
        Term r = m.readback(v);
        return NormalizeResult{r, true, m.steps()};
    } catch (const FuelOut&) {
        return NormalizeResult{t, false, m.steps()};
    } catch (const BudgetOut&) {
        return NormalizeResult{t, false, m.steps(), true};
    }
}

//------------------------------------------------------------------------------
// Equality

Term eta_contract(const Term& t) {
    switch (t->kind) {
    case TermKind::Var: return t;
    case TermKind::Lam: {
        Term b = eta_contract(t->left);
        if (b->kind == TermKind::App && b->right->kind == TermKind::Var && b->right->name == t->name &&
            !occurs_free(b->left, t->name))
            return b->left;
        return b == t->left ? t : lam(t->name, b);
    }
    case TermKind::App:
    case TermKind::Pair: {
        Term l = eta_contract(t->left);
        Term r = eta_contract(t->right);
        if (l == t->left && r == t->right) return t;
        return t->kind == TermKind::App ? app(l, r) : pair(l, r);
    }
    case TermKind::Fst:
    case TermKind::Snd: {
        Term l = eta_contract(t->left);
        if (l == t->left) return t;
        return t->kind == TermKind::Fst ? fst(l) : snd(l);
    }
    }
    return t;
}

namespace {

Term normal_form_or_throw(const Term& t, std::uint64_t fuel, Strategy s) {
    NormalizeResult r = s == Strategy::Strict ? normalize_strict(t, fuel) : normalize(t, fuel);
    if (!r.normal)
        throw Error("undecided", "no normal form within " + std::to_string(fuel) + " steps for " + to_string(t));
    return r.term;
}

}  // namespace

bool beta_eq(const Term& a, const Term& b, std::uint64_t fuel, Strategy s) {
    return alpha_eq(normal_form_or_throw(a, fuel, s), normal_form_or_throw(b, fuel, s));
}

bool beta_eta_eq(const Term& a, const Term& b, std::uint64_t fuel, Strategy s) {
    return alpha_eq(eta_contract(normal_form_or_throw(a, fuel, s)), eta_contract(normal_form_or_throw(b, fuel, s)));
}

//------------------------------------------------------------------------------
// Numerals

Term encode_numeral(std::uint64_t n) { return numeral(n); }

std::optional<std::uint64_t> decode_numeral(const Term& t) {
    if (t->kind != TermKind::Lam) return std::nullopt;
    const Term& inner = t->left;
    if (inner->kind == TermKind::Var && inner->name == t->name) return 1;
    if (inner->kind != TermKind::Lam) return std::nullopt;
    if (inner->name == t->name) {
        // \x x. x: the shadowed outer binder can only be zero
        if (inner->left->kind == TermKind::Var && inner->left->name == t->name) return 0;
        return std::nullopt;
    }
    const std::string& f = t->name;
    const std::string& x = inner->name;
    std::uint64_t n = 0;
    const TermNode* cur = inner->left.get();
    while (cur->kind == TermKind::App) {
        if (cur->left->kind != TermKind::Var || cur->left->name != f) return std::nullopt;
        ++n;
        cur = cur->right.get();
    }
    if (cur->kind != TermKind::Var || cur->name != x) return std::nullopt;
    return n;
}

//------------------------------------------------------------------------------
// Reduction of derivations

namespace {

struct DerivStepper {
    // Contracts the leftmost-outermost redex of the subject of d (valid in
    // ctx); nullptr if the subject is normal.
    DNode go(const DNode& d, const Context& ctx) {
        switch (d->rule) {
        case Rule::Ax: return nullptr;
        case Rule::ImpI: {
            Context inner = ctx;
            inner[d->term->name] = d->type->left;
            DNode k = go(d->kids[0], inner);
            return k ? with_kids(d, {k}) : nullptr;
        }
        case Rule::AllI:
        case Rule::AllEClosed:
        case Rule::AllEFlat: {
            DNode k = go(d->kids[0], ctx);
            return k ? with_kids(d, {k}) : nullptr;
        }
        case Rule::ImpE: {
            if (d->kids[0]->term->kind == TermKind::Lam) {
                DNode f = expose(d->kids[0]);
                if (f->rule != Rule::ImpI) throw std::logic_error("reduce_with_derivation: abstraction not derived by ImpI");
                return subst_derivation(f->kids[0], ctx, f->term->name, d->kids[1]);
            }
            if (DNode f = go(d->kids[0], ctx)) return with_kids(d, {f, d->kids[1]});
            if (DNode a = go(d->kids[1], ctx)) return with_kids(d, {d->kids[0], a});
            return nullptr;
        }
        case Rule::ProdI: {
            if (DNode l = go(d->kids[0], ctx)) return with_kids(d, {l, d->kids[1]});
            if (DNode r = go(d->kids[1], ctx)) return with_kids(d, {d->kids[0], r});
            return nullptr;
        }
        case Rule::ProdEL:
        case Rule::ProdER: {
            if (d->kids[0]->term->kind == TermKind::Pair) {
                DNode p = expose(d->kids[0]);
                if (p->rule != Rule::ProdI) throw std::logic_error("reduce_with_derivation: pair not derived by ProdI");
                return p->kids[d->rule == Rule::ProdEL ? 0 : 1];
            }
            DNode k = go(d->kids[0], ctx);
            return k ? with_kids(d, {k}) : nullptr;
        }
        }
        return nullptr;
    }
};

}  // namespace

DerivReduceResult reduce_with_derivation(const Derivation& d, std::uint64_t fuel) {
    DerivStepper s;
    DNode cur = d.root;
    std::uint64_t steps = 0;
    while (true) {
        if (steps >= fuel) return DerivReduceResult{Derivation{d.ctx, cur}, is_normal(cur->term), steps};
        DNode next = s.go(cur, d.ctx);
        if (!next) return DerivReduceResult{Derivation{d.ctx, cur}, true, steps};
        cur = std::move(next);
        ++steps;
    }
}

std::uint64_t default_fuel() {
    if (const char* env = std::getenv("ELEMF_FUEL")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && end != env && v > 0) return v;
    }
    return kDefaultFuel;
}

}  // namespace elemf
