#include "elemf/syntax.hpp"

#include <cassert>
#include <cctype>
#include <map>
#include <stdexcept>
#include <utility>

namespace elemf {

//------------------------------------------------------------------------------
// Term construction

Term var(std::string name) {
    return std::make_shared<const TermNode>(TermNode{TermKind::Var, std::move(name), nullptr, nullptr});
}

Term app(Term fun, Term arg) {
    return std::make_shared<const TermNode>(TermNode{TermKind::App, {}, std::move(fun), std::move(arg)});
}

Term app(Term fun, std::initializer_list<Term> args) {
    for (const auto& a : args) fun = app(fun, a);
    return fun;
}

Term lam(std::string bound, Term body) {
    return std::make_shared<const TermNode>(TermNode{TermKind::Lam, std::move(bound), std::move(body), nullptr});
}

Term lam(std::initializer_list<std::string> bound, Term body) {
    std::vector<std::string> names(bound);
    for (auto it = names.rbegin(); it != names.rend(); ++it) body = lam(*it, body);
    return body;
}

Term pair(Term left, Term right) {
    return std::make_shared<const TermNode>(TermNode{TermKind::Pair, {}, std::move(left), std::move(right)});
}

Term fst(Term t) {
    return std::make_shared<const TermNode>(TermNode{TermKind::Fst, {}, std::move(t), nullptr});
}

Term snd(Term t) {
    return std::make_shared<const TermNode>(TermNode{TermKind::Snd, {}, std::move(t), nullptr});
}

Term numeral(std::uint64_t n) {
    Term body = var("x");
    const Term f = var("f");
    for (std::uint64_t i = 0; i < n; ++i) body = app(f, body);
    return lam("f", lam("x", body));
}

//------------------------------------------------------------------------------
// Term queries

std::size_t size(const Term& t) {
    switch (t->kind) {
    case TermKind::Var: return 1;
    case TermKind::App:
    case TermKind::Pair: return 1 + size(t->left) + size(t->right);
    case TermKind::Lam:
    case TermKind::Fst:
    case TermKind::Snd: return 1 + size(t->left);
    }
    return 0;
}

namespace {

void collect_free(const Term& t, std::vector<std::string>& bound, std::set<std::string>& out) {
    switch (t->kind) {
    case TermKind::Var:
        for (const auto& b : bound)
            if (b == t->name) return;
        out.insert(t->name);
        return;
    case TermKind::Lam:
        bound.push_back(t->name);
        collect_free(t->left, bound, out);
        bound.pop_back();
        return;
    case TermKind::App:
    case TermKind::Pair:
        collect_free(t->left, bound, out);
        collect_free(t->right, bound, out);
        return;
    case TermKind::Fst:
    case TermKind::Snd: collect_free(t->left, bound, out); return;
    }
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
    std::set<std::string> out;
    std::vector<std::string> bound;
    collect_free(t, bound, out);
    return out;
}

bool occurs_free(const Term& t, std::string_view x) {
    switch (t->kind) {
    case TermKind::Var: return t->name == x;
    case TermKind::Lam: return t->name != x && occurs_free(t->left, x);
    case TermKind::App:
    case TermKind::Pair: return occurs_free(t->left, x) || occurs_free(t->right, x);
    case TermKind::Fst:
    case TermKind::Snd: return occurs_free(t->left, x);
    }
    return false;
}

bool is_closed(const Term& t) { return free_vars(t).empty(); }

bool is_lambda_free(const Term& t) {
    switch (t->kind) {
    case TermKind::Var: return true;
    case TermKind::Lam: return false;
    case TermKind::App:
    case TermKind::Pair: return is_lambda_free(t->left) && is_lambda_free(t->right);
    case TermKind::Fst:
    case TermKind::Snd: return is_lambda_free(t->left);
    }
    return true;
}

std::string fresh_name(std::string_view base, const std::function<bool(const std::string&)>& taken) {
    std::string stem(base);
    while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
    if (stem.empty()) stem = "v";
    if (!taken(std::string(base))) return std::string(base);
    for (std::size_t i = 1;; ++i) {
        std::string candidate = stem + std::to_string(i);
        if (!taken(candidate)) return candidate;
    }
}

//------------------------------------------------------------------------------
// Substitution

namespace {

struct Substituter {
    std::string_view x;
    const Term& s;
    const std::set<std::string>& s_free;

    // Returns nullptr when the subtree is unchanged.
    Term go(const Term& t) const {
        switch (t->kind) {
        case TermKind::Var: return t->name == x ? s : nullptr;
        case TermKind::App:
        case TermKind::Pair: {
            Term l = go(t->left);
            Term r = go(t->right);
            if (!l && !r) return nullptr;
            auto node = TermNode{t->kind, {}, l ? l : t->left, r ? r : t->right};
            return std::make_shared<const TermNode>(std::move(node));
        }
        case TermKind::Fst:
        case TermKind::Snd: {
            Term l = go(t->left);
            if (!l) return nullptr;
            return std::make_shared<const TermNode>(TermNode{t->kind, {}, l, nullptr});
        }
        case TermKind::Lam: {
            if (t->name == x) return nullptr;
            if (s_free.count(t->name) && occurs_free(t->left, x)) {
                // Rename the binder away from the free variables of s.
                const Term& body = t->left;
                std::string fresh = fresh_name(t->name, [&](const std::string& n) {
                    return s_free.count(n) > 0 || n == x || occurs_free(body, n);
                });
                Term renamed = substitute(body, t->name, var(fresh));
                Term b = go(renamed);
                return lam(fresh, b ? b : renamed);
            }
            Term b = go(t->left);
            if (!b) return nullptr;
            return lam(t->name, b);
        }
        }
        return nullptr;
    }
};

}  // namespace

Term substitute(const Term& t, std::string_view x, const Term& s) {
    const auto s_free = free_vars(s);
    Substituter sub{x, s, s_free};
    Term r = sub.go(t);
    return r ? r : t;
}

//------------------------------------------------------------------------------
// Alpha equivalence

namespace {

// Index of the innermost binder named n, counted from the inside, or -1.
long lookup(const std::vector<std::string_view>& scope, std::string_view n) {
    for (std::size_t i = scope.size(); i-- > 0;)
        if (scope[i] == n) return static_cast<long>(scope.size() - 1 - i);
    return -1;
}

bool alpha_go(const Term& a, const Term& b, std::vector<std::string_view>& sa, std::vector<std::string_view>& sb) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case TermKind::Var: {
        long ia = lookup(sa, a->name);
        long ib = lookup(sb, b->name);
        if (ia != ib) return false;
        return ia >= 0 || a->name == b->name;
    }
    case TermKind::Lam: {
        sa.push_back(a->name);
        sb.push_back(b->name);
        bool r = alpha_go(a->left, b->left, sa, sb);
        sa.pop_back();
        sb.pop_back();
        return r;
    }
    case TermKind::App:
    case TermKind::Pair: return alpha_go(a->left, b->left, sa, sb) && alpha_go(a->right, b->right, sa, sb);
    case TermKind::Fst:
    case TermKind::Snd: return alpha_go(a->left, b->left, sa, sb);
    }
    return false;
}

}  // namespace

bool alpha_eq(const Term& a, const Term& b) {
    if (a == b) return true;
    std::vector<std::string_view> sa, sb;
    return alpha_go(a, b, sa, sb);
}

//------------------------------------------------------------------------------
// Term printing

namespace {

void print_term(const Term& t, int prec, std::string& out) {
    switch (t->kind) {
    case TermKind::Var: out += t->name; return;
    case TermKind::Lam: {
        if (prec > 0) out += '(';
        out += '\\';
        Term cur = t;
        bool first = true;
        while (cur->kind == TermKind::Lam) {
            if (!first) out += ' ';
            out += cur->name;
            first = false;
            cur = cur->left;
        }
        out += ". ";
        print_term(cur, 0, out);
        if (prec > 0) out += ')';
        return;
    }
    case TermKind::App:
        if (prec > 1) out += '(';
        print_term(t->left, 1, out);
        out += ' ';
        print_term(t->right, 2, out);
        if (prec > 1) out += ')';
        return;
    case TermKind::Fst:
    case TermKind::Snd:
        if (prec > 1) out += '(';
        out += t->kind == TermKind::Fst ? "fst " : "snd ";
        print_term(t->left, 2, out);
        if (prec > 1) out += ')';
        return;
    case TermKind::Pair:
        out += '<';
        print_term(t->left, 0, out);
        out += ", ";
        print_term(t->right, 0, out);
        out += '>';
        return;
    }
}

}  // namespace

std::string to_string(const Term& t) {
    std::string out;
    print_term(t, 0, out);
    return out;
}

//------------------------------------------------------------------------------
// Types

Type tvar(std::string name, unsigned level) {
    return std::make_shared<const TypeNode>(TypeNode{TypeKind::Var, TyVar{std::move(name), level}, nullptr, nullptr});
}

Type tvar(const TyVar& v) { return tvar(v.name, v.level); }

Type arrow(Type from, Type to) {
    return std::make_shared<const TypeNode>(TypeNode{TypeKind::Arrow, {}, std::move(from), std::move(to)});
}

Type arrows(std::initializer_list<Type> chain) {
    std::vector<Type> v(chain);
    if (v.empty()) throw std::invalid_argument("arrows: empty chain");
    Type t = v.back();
    for (std::size_t i = v.size() - 1; i-- > 0;) t = arrow(v[i], t);
    return t;
}

Type prod(Type left, Type right) {
    return std::make_shared<const TypeNode>(TypeNode{TypeKind::Prod, {}, std::move(left), std::move(right)});
}

Type forall(const TyVar& bound, Type body) {
    return std::make_shared<const TypeNode>(TypeNode{TypeKind::Forall, bound, std::move(body), nullptr});
}

Type numeral_type(const Type& t) { return arrow(arrow(t, t), arrow(t, t)); }

Type nat0() {
    static const Type t = forall(TyVar{"a", 0}, numeral_type(tvar("a", 0)));
    return t;
}

Type nat1() {
    static const Type t = forall(TyVar{"a", 1}, numeral_type(tvar("a", 1)));
    return t;
}

Type tower(const Type& base, unsigned k) {
    Type t = base;
    for (unsigned i = 0; i < k; ++i) t = numeral_type(t);
    return t;
}

namespace {

void collect_ftv(const Type& t, std::vector<TyVar>& bound, std::set<TyVar>& out) {
    switch (t->kind) {
    case TypeKind::Var:
        for (const auto& b : bound)
            if (b == t->var) return;
        out.insert(t->var);
        return;
    case TypeKind::Arrow:
    case TypeKind::Prod:
        collect_ftv(t->left, bound, out);
        collect_ftv(t->right, bound, out);
        return;
    case TypeKind::Forall:
        bound.push_back(t->var);
        collect_ftv(t->left, bound, out);
        bound.pop_back();
        return;
    }
}

}  // namespace

std::set<TyVar> free_type_vars(const Type& t) {
    std::set<TyVar> out;
    std::vector<TyVar> bound;
    collect_ftv(t, bound, out);
    return out;
}

bool is_closed(const Type& t) { return free_type_vars(t).empty(); }

bool type_occurs_free(const Type& t, const TyVar& v) {
    switch (t->kind) {
    case TypeKind::Var: return t->var == v;
    case TypeKind::Arrow:
    case TypeKind::Prod: return type_occurs_free(t->left, v) || type_occurs_free(t->right, v);
    case TypeKind::Forall: return t->var != v && type_occurs_free(t->left, v);
    }
    return false;
}

void collect_type_var_names(const Type& t, std::set<std::string>& out) {
    switch (t->kind) {
    case TypeKind::Var: out.insert(t->var.name); return;
    case TypeKind::Arrow:
    case TypeKind::Prod:
        collect_type_var_names(t->left, out);
        collect_type_var_names(t->right, out);
        return;
    case TypeKind::Forall:
        out.insert(t->var.name);
        collect_type_var_names(t->left, out);
        return;
    }
}

Type type_substitute(const Type& t, const TyVar& v, const Type& s) {
    switch (t->kind) {
    case TypeKind::Var: return t->var == v ? s : t;
    case TypeKind::Arrow:
    case TypeKind::Prod: {
        Type l = type_substitute(t->left, v, s);
        Type r = type_substitute(t->right, v, s);
        if (l == t->left && r == t->right) return t;
        return std::make_shared<const TypeNode>(TypeNode{t->kind, {}, l, r});
    }
    case TypeKind::Forall: {
        if (t->var == v || !type_occurs_free(t->left, v)) return t;
        if (type_occurs_free(s, t->var)) {
            std::set<std::string> used;
            collect_type_var_names(s, used);
            collect_type_var_names(t->left, used);
            used.insert(v.name);
            TyVar fresh{fresh_name(t->var.name, [&](const std::string& n) { return used.count(n) > 0; }), t->var.level};
            Type body = type_substitute(t->left, t->var, tvar(fresh));
            return forall(fresh, type_substitute(body, v, s));
        }
        Type body = type_substitute(t->left, v, s);
        return forall(t->var, body);
    }
    }
    return t;
}

bool is_level(const Type& t, unsigned n) {
    switch (t->kind) {
    case TypeKind::Var: return t->var.level == n;
    case TypeKind::Arrow:
    case TypeKind::Prod: return is_level(t->left, n) && is_level(t->right, n);
    case TypeKind::Forall: {
        const unsigned k = t->var.level;
        if (k >= n || !is_level(t->left, k)) return false;
        for (const auto& fv : free_type_vars(t->left))
            if (fv != t->var) return false;
        return true;
    }
    }
    return false;
}

bool is_flat(const Type& t) {
    switch (t->kind) {
    case TypeKind::Var: return t->var.level == 0;
    case TypeKind::Prod: return is_flat(t->left) && is_flat(t->right);
    default: return false;
    }
}

namespace {

bool type_eq_go(const Type& a, const Type& b, std::vector<TyVar>& sa, std::vector<TyVar>& sb) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case TypeKind::Var: {
        long ia = -1, ib = -1;
        for (std::size_t i = sa.size(); i-- > 0;)
            if (sa[i] == a->var) { ia = static_cast<long>(i); break; }
        for (std::size_t i = sb.size(); i-- > 0;)
            if (sb[i] == b->var) { ib = static_cast<long>(i); break; }
        if (ia != ib) return false;
        return ia >= 0 || a->var == b->var;
    }
    case TypeKind::Arrow:
    case TypeKind::Prod: return type_eq_go(a->left, b->left, sa, sb) && type_eq_go(a->right, b->right, sa, sb);
    case TypeKind::Forall: {
        if (a->var.level != b->var.level) return false;
        sa.push_back(a->var);
        sb.push_back(b->var);
        bool r = type_eq_go(a->left, b->left, sa, sb);
        sa.pop_back();
        sb.pop_back();
        return r;
    }
    }
    return false;
}

}  // namespace

bool type_eq(const Type& a, const Type& b) {
    if (a == b) return true;
    std::vector<TyVar> sa, sb;
    return type_eq_go(a, b, sa, sb);
}

Type match_numeral_type(const Type& t) {
    if (t->kind != TypeKind::Arrow) return nullptr;
    const Type& step = t->left;
    const Type& iter = t->right;
    if (step->kind != TypeKind::Arrow || iter->kind != TypeKind::Arrow) return nullptr;
    const Type& s = step->left;
    if (!type_eq(s, step->right) || !type_eq(s, iter->left) || !type_eq(s, iter->right)) return nullptr;
    return s;
}

namespace {

std::string tyvar_name(const TyVar& v) { return "a" + std::to_string(v.level) + "_" + v.name; }

// N(u -> u) and N(u) -> N(u) are the same tree. The N(s) spelling is used
// when s itself reads as a numeral type or an atom, or cannot be split as u -> u.
bool prints_as_numeral(const Type& t) {
    Type s = match_numeral_type(t);
    if (!s) return false;
    if (s->kind != TypeKind::Arrow || prints_as_numeral(s)) return true;
    return !type_eq(s->left, s->right);
}

// prec: 0 = arrow/forall position, 1 = arrow domain, 2 = product operand
void print_type(const Type& t, int prec, std::string& out) {
    if (t->kind == TypeKind::Forall) {
        const Type& body = t->left;
        if (Type inner = match_numeral_type(body);
            inner && inner->kind == TypeKind::Var && inner->var == t->var && t->var.level <= 1) {
            out += t->var.level == 0 ? "Nat0" : "Nat1";
            return;
        }
        if (prec > 0) out += '(';
        out += "forall " + tyvar_name(t->var) + ". ";
        print_type(body, 0, out);
        if (prec > 0) out += ')';
        return;
    }
    if (Type inner = match_numeral_type(t); inner && prints_as_numeral(t)) {
        out += "N(";
        print_type(inner, 0, out);
        out += ')';
        return;
    }
    switch (t->kind) {
    case TypeKind::Var: out += tyvar_name(t->var); return;
    case TypeKind::Arrow:
        if (prec > 0) out += '(';
        print_type(t->left, 1, out);
        out += " -> ";
        print_type(t->right, 0, out);
        if (prec > 0) out += ')';
        return;
    case TypeKind::Prod:
        // Right-associative; a product on the left needs parentheses.
        if (prec > 1) out += '(';
        print_type(t->left, 2, out);
        out += " * ";
        print_type(t->right, 1, out);
        if (prec > 1) out += ')';
        return;
    case TypeKind::Forall: break;
    }
}

}  // namespace

std::string to_string(const Type& t) {
    std::string out;
    print_type(t, 0, out);
    return out;
}

}  // namespace elemf
