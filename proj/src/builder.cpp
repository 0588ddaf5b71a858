#include "elemf/builder.hpp"

#include <stdexcept>
#include <utility>

namespace elemf {

Build b_ax(std::string x) {
    return [x = std::move(x)](const Context& ctx) {
        auto it = ctx.find(x);
        if (it == ctx.end()) throw std::logic_error("b_ax: " + x + " is not in the context");
        return make_ax(x, it->second);
    };
}

Build b_lam(std::string x, Type domain, Build body) {
    return [x = std::move(x), domain = std::move(domain), body = std::move(body)](const Context& ctx) {
        Context inner = ctx;
        inner[x] = domain;
        return make_imp_i(x, domain, body(inner));
    };
}

Build b_app(Build fun, Build arg) {
    return [fun = std::move(fun), arg = std::move(arg)](const Context& ctx) { return make_imp_e(fun(ctx), arg(ctx)); };
}

Build b_apps(Build fun, std::initializer_list<Build> args) {
    Build out = std::move(fun);
    for (const auto& a : args) out = b_app(std::move(out), a);
    return out;
}

Build b_pair(Build left, Build right) {
    return [left = std::move(left), right = std::move(right)](const Context& ctx) {
        return make_prod_i(left(ctx), right(ctx));
    };
}

Build b_fst(Build p) {
    return [p = std::move(p)](const Context& ctx) { return make_prod_el(p(ctx)); };
}

Build b_snd(Build p) {
    return [p = std::move(p)](const Context& ctx) { return make_prod_er(p(ctx)); };
}

Build b_inst(Build d, Type instance) {
    return [d = std::move(d), instance = std::move(instance)](const Context& ctx) {
        return make_all_e(d(ctx), instance);
    };
}

Build b_gen(unsigned level, std::string hint, std::function<Build(const TyVar&)> body) {
    return [level, hint = std::move(hint), body = std::move(body)](const Context& ctx) {
        const std::set<std::string> used = type_var_names(ctx);
        TyVar alpha{fresh_name(hint, [&](const std::string& n) { return used.count(n) > 0; }), level};
        return make_all_i(body(alpha)(ctx), alpha);
    };
}

Build b_closed(Derivation d) {
    if (!d.ctx.empty()) throw std::logic_error("b_closed: derivation has a nonempty context");
    return [root = std::move(d.root)](const Context& ctx) { return weaken_into(root, ctx); };
}

namespace {

DNode numeral_node(std::uint64_t n, const Type& tau) {
    const Type endo = arrow(tau, tau);
    DNode f = make_ax("f", endo);
    DNode body = make_ax("x", tau);
    for (std::uint64_t i = 0; i < n; ++i) body = make_imp_e(f, body);
    return make_imp_i("f", endo, make_imp_i("x", tau, body));
}

}  // namespace

Build b_numeral(std::uint64_t n, Type tau) {
    return [n, tau = std::move(tau)](const Context& ctx) { return weaken_into(numeral_node(n, tau), ctx); };
}

Build b_numeral_nat0(std::uint64_t n) {
    return b_gen(0, "a", [n](const TyVar& a) { return b_numeral(n, tvar(a)); });
}

Derivation build(const Build& b, const Context& ctx) { return Derivation{ctx, b(ctx)}; }

}  // namespace elemf
