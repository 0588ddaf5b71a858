#include "elemf/stdterms.hpp"

#include <stdexcept>

namespace elemf {

namespace {

Build use(const NamedTerm& t) { return b_closed(t.derivation); }

std::uint64_t monus(std::uint64_t a, std::uint64_t b) { return a > b ? a - b : 0; }

NamedTerm named(std::string name, const Build& b, std::string property, std::size_t arity,
                std::function<std::uint64_t(const Args&)> semantics,
                std::function<bool(const Args&)> pre = [](const Args&) { return true; }) {
    Derivation d = build(b);
    Term term = d.term();
    return NamedTerm{std::move(name), std::move(term), std::move(d), std::move(property), arity, std::move(pre),
                     std::move(semantics)};
}

Type endo(const Type& t) { return arrow(t, t); }

// Shapes of suc/add/mul given a way to apply a numeral variable to s, z.
Build basic_body(const std::string& name, const std::function<Build(const std::string&)>& at, const Type& alpha) {
    const Type s_ty = endo(alpha);
    if (name == "suc")
        return b_lam("s", s_ty, b_lam("z", alpha, b_app(b_ax("s"), b_apps(at("n"), {b_ax("s"), b_ax("z")}))));
    if (name == "add")
        return b_lam("s", s_ty,
                     b_lam("z", alpha, b_apps(at("m"), {b_ax("s"), b_apps(at("n"), {b_ax("s"), b_ax("z")})})));
    if (name == "mul") return b_lam("s", s_ty, b_app(at("m"), b_app(at("n"), b_ax("s"))));
    throw Error("std", "unknown basic function '" + name + "'");
}

Build basic_args(const std::string& name, const Type& arg, Build body) {
    if (name == "suc") return b_lam("n", arg, std::move(body));
    return b_lam("m", arg, b_lam("n", arg, std::move(body)));
}

std::function<std::uint64_t(const Args&)> basic_semantics(const std::string& name) {
    if (name == "suc") return [](const Args& a) { return a[0] + 1; };
    if (name == "add") return [](const Args& a) { return a[0] + a[1]; };
    return [](const Args& a) { return a[0] * a[1]; };
}

std::string basic_property(const std::string& name) {
    if (name == "suc") return "suc #n = #(n+1)";
    if (name == "add") return "add #m #n = #(m+n)";
    return "mul #m #n = #(m*n)";
}

}  // namespace

Type tower0(unsigned j) { return tower(nat0(), j); }

NamedTerm basic(const std::string& name, const Type& tau) {
    Build body = basic_body(name, [](const std::string& v) { return b_ax(v); }, tau);
    return named(name, basic_args(name, numeral_type(tau), body), basic_property(name), name == "suc" ? 1 : 2,
                 basic_semantics(name));
}

NamedTerm basic_nat0(const std::string& name) {
    Build b = basic_args(name, nat0(), b_gen(0, "a", [name](const TyVar& a) {
                             Type alpha = tvar(a);
                             return basic_body(name, [alpha](const std::string& v) { return b_inst(b_ax(v), alpha); },
                                               alpha);
                         }));
    return named(name, b, basic_property(name), name == "suc" ? 1 : 2, basic_semantics(name));
}

NamedTerm basic_at(const std::string& name, unsigned j) {
    return j == 0 ? basic_nat0(name) : basic(name, tower0(j - 1));
}

NamedTerm cast_down(const Type& tau) {
    Build b = b_lam("n", numeral_type(numeral_type(tau)),
                    b_apps(b_ax("n"), {use(basic("suc", tau)), b_numeral(0, tau)}));
    return named("cd", b, "cd #n = #n", 1, [](const Args& a) { return a[0]; });
}

NamedTerm cast_down_nat0() {
    Build b = b_lam("n", numeral_type(nat0()), b_apps(b_ax("n"), {use(basic_nat0("suc")), b_numeral_nat0(0)}));
    return named("cd", b, "cd #n = #n", 1, [](const Args& a) { return a[0]; });
}

NamedTerm cast_down_at(unsigned j) { return j == 0 ? cast_down_nat0() : cast_down(tower0(j - 1)); }

Build cd_power(unsigned i, unsigned j, Build arg) {
    Build out = std::move(arg);
    for (unsigned q = i; q-- > 0;) out = b_app(use(cast_down_at(j + q)), std::move(out));
    return out;
}

Build numeral_at(std::uint64_t n, unsigned j) { return j == 0 ? b_numeral_nat0(n) : b_numeral(n, tower0(j - 1)); }

NamedTerm predecessor() {
    Build b = b_lam("n", nat0(), b_gen(0, "a", [](const TyVar& a) {
                        const Type alpha = tvar(a);
                        const Type pp = prod(alpha, alpha);
                        Build p = b_lam("p", pp, b_pair(b_app(b_ax("s"), b_fst(b_ax("p"))), b_fst(b_ax("p"))));
                        return b_lam("s", endo(alpha),
                                     b_lam("z", alpha,
                                           b_snd(b_apps(b_inst(b_ax("n"), pp), {p, b_pair(b_ax("z"), b_ax("z"))}))));
                    }));
    return named("pred", b, "pred #(n+1) = #n, pred #0 = #0", 1, [](const Args& a) { return monus(a[0], 1); });
}

NamedTerm subtraction() {
    Build b = b_lam("m", nat0(), b_lam("n", numeral_type(nat0()), b_apps(b_ax("n"), {use(predecessor()), b_ax("m")})));
    return named("sub", b, "sub #m #n = #(m - n) truncated at 0", 2,
                 [](const Args& a) { return monus(a[0], a[1]); });
}

NamedTerm chi_zero(const Type& tau) {
    Build b = b_lam("n", numeral_type(tau),
                    b_lam("x", tau, b_lam("y", tau, b_apps(b_ax("n"), {b_lam("z", tau, b_ax("y")), b_ax("x")}))));
    return named("chi0", b, "chi0 #0 x y = x, chi0 #(n+1) x y = y", 3,
                 [](const Args& a) { return a[0] == 0 ? a[1] : a[2]; });
}

NamedTerm t_zero(unsigned k) {
    const Type nk = tower0(k);
    auto inner = [](const Type& rho, const std::function<Build(Build)>& lower, const std::function<Build()>& n) {
        Build xsz = b_apps(b_ax("x"), {b_ax("s"), b_ax("z")});
        Build sxsz = b_app(b_ax("s"), xsz);
        return b_lam("s'", endo(rho),
                     b_lam("z'", rho,
                           b_apps(use(chi_zero(rho)),
                                  {n(), b_apps(lower(xsz), {b_ax("s'"), b_ax("z'")}),
                                   b_apps(lower(sxsz), {b_ax("s'"), b_ax("z'")})})));
    };
    Build body;
    if (k == 0) {
        body = b_gen(0, "a", [inner](const TyVar& a) {
            const Type alpha = tvar(a);
            return inner(
                alpha, [alpha](Build t) { return b_inst(std::move(t), alpha); },
                [alpha] { return b_inst(b_ax("n"), alpha); });
        });
    } else {
        body = inner(
            tower0(k - 1), [](Build t) { return t; }, [] { return b_ax("n"); });
    }
    Build b = b_lam("n", nk, b_lam("x", tower0(k + 1), b_lam("s", endo(nk), b_lam("z", nk, body))));
    return named("T0", b, "T0 #0 #m = #m, T0 #(n+1) #m = #(m+1)", 2,
                 [](const Args& a) { return a[0] == 0 ? a[1] : a[1] + 1; });
}

NamedTerm cast_up(unsigned k) {
    Build inner = k == 0 ? b_apps(use(subtraction()), {b_ax("n"), b_ax("x")})
                         : b_apps(use(subt(k)), {b_app(use(cast_down_at(k + 1)), b_ax("m")), b_ax("n"),
                                                 b_app(use(cast_down_at(k)), b_ax("x"))});
    Build step = b_lam("x", tower0(k + 1), b_apps(use(t_zero(k)), {inner, b_ax("x")}));
    Build b = b_lam("m", tower0(k + 2),
                    b_lam("n", tower0(k), b_apps(b_ax("m"), {step, b_numeral(0, tower0(k))})));
    return named(k == 0 ? "cu" : "cu_" + std::to_string(k), b, "cu #m #n = #n when m >= n", 2,
                 [](const Args& a) { return a[1]; }, [](const Args& a) { return a[0] >= a[1]; });
}

NamedTerm subt(unsigned k) {
    auto sem = [](const Args& a) { return monus(a[1], a[2]); };
    auto pre = [](const Args& a) { return a[0] >= monus(a[1], a[2]); };
    const std::string name = "subt_" + std::to_string(k);
    if (k == 0) {
        const Type n1 = tower0(1);
        Build b = b_lam("m", n1,
                        b_lam("n", n1, b_lam("c", n1, b_apps(use(subtraction()),
                                                             {b_app(use(cast_down_at(0)), b_ax("n")), b_ax("c")}))));
        return named(name, b, "subt #m #n #c = #(n - c); m is ignored", 3, sem);
    }
    if (k == 1) {
        const Type n1 = tower0(1);
        Build diff = b_apps(use(subtraction()), {b_app(use(cast_down_at(0)), b_ax("n")), b_ax("c")});
        Build b = b_lam("m", tower0(2), b_lam("n", n1, b_lam("c", n1, b_apps(use(cast_up(0)), {b_ax("m"), diff}))));
        return named(name, b, "subt #m #n #c = #(n - c) when m >= n - c", 3, sem, pre);
    }
    const Type nk = tower0(k);
    Build diff = b_apps(use(subt(k - 1)), {b_app(use(cast_down_at(k)), b_ax("m")),
                                            b_app(use(cast_down_at(k - 1)), b_ax("n1")),
                                            b_app(use(cast_down_at(k - 1)), b_ax("n2"))});
    Build b = b_lam("m", tower0(k + 1),
                    b_lam("n1", nk, b_lam("n2", nk, b_apps(use(cast_up(k - 1)), {b_ax("m"), diff}))));
    return named(name, b, "subt #m #n #c = #(n - c) when m >= n - c", 3, sem, pre);
}

NamedTerm cast_up_iter(unsigned l, unsigned k) {
    Build b;
    if (l == 0) {
        b = b_lam("m", tower0(k + 1), b_lam("n", tower0(k), b_ax("n")));
    } else {
        Build inner = b_apps(use(cast_up_iter(l - 1, k)), {b_app(use(cast_down_at(k + l)), b_ax("m")), b_ax("n")});
        b = b_lam("m", tower0(k + l + 1), b_lam("n", tower0(k), b_apps(use(cast_up(k + l - 1)), {b_ax("m"), inner})));
    }
    return named("cu^" + std::to_string(l) + "_" + std::to_string(k), b, "cu^l #m #n = #n when m >= n", 2,
                 [](const Args& a) { return a[1]; }, [l](const Args& a) { return l == 0 || a[0] >= a[1]; });
}

NamedTerm chi_zero_lifted(unsigned j) {
    if (j == 0) throw Error("std", "chi0~ needs a tower index >= 1");
    const Type nj = tower0(j);
    const Type rho = tower0(j - 1);
    Build body = b_lam("s", endo(rho),
                       b_lam("z", rho,
                             b_apps(use(chi_zero(rho)), {b_ax("n"), b_apps(b_ax("x"), {b_ax("s"), b_ax("z")}),
                                                         b_apps(b_ax("y"), {b_ax("s"), b_ax("z")})})));
    Build b = b_lam("n", nj, b_lam("x", nj, b_lam("y", nj, body)));
    return named("chi0~", b, "chi0~ #0 #i #j = #i, chi0~ #(n+1) #i #j = #j", 3,
                 [](const Args& a) { return a[0] == 0 ? a[1] : a[2]; });
}

Build sum_step_body(SumMode mode, unsigned k, unsigned l, const std::function<Build(Build)>& g_of,
                    const std::string& v, const std::string& m) {
    const unsigned j = k + l + 1;
    const Type nj = tower0(j);
    Build gy = b_apps(use(cast_up_iter(l, k + 1)), {b_ax(v), g_of(b_ax("y"))});
    Build acc = b_apps(use(basic_at(mode == SumMode::Sum ? "add" : "mul", j)), {b_ax("x"), gy});
    Build test = b_apps(use(subt(j)), {b_ax(v), b_ax(m), b_ax("y")});
    Build t = b_lam("x", nj, b_lam("y", nj, b_apps(use(chi_zero_lifted(j)), {test, b_ax("x"), acc})));
    Build left = b_apps(t, {b_fst(b_ax("p")), b_snd(b_ax("p"))});
    Build right = b_app(use(basic_at("suc", j)), b_snd(b_ax("p")));
    return b_lam("p", prod(nj, nj), b_pair(left, right));
}

NamedTerm sum_step(SumMode mode, unsigned k, unsigned l, const Derivation& g) {
    const unsigned j = k + l + 1;
    Build gb = b_closed(g);
    Build p = sum_step_body(mode, k, l, [gb](Build y) { return b_app(gb, std::move(y)); });
    Build b = b_lam("v", tower0(j + 1), b_lam("m", tower0(j), p));
    return named(mode == SumMode::Sum ? "P_sum" : "P_prod", b,
                 "\\v m. P maps <s, i> to <s op g(i), i+1> while i < m, else <s, i+1>", 0, nullptr);
}

std::vector<std::string> std_names() {
    return {"suc", "add", "mul", "cd", "pred", "sub", "chi0", "T0", "cu", "subt", "cuiter", "chi0~"};
}

NamedTerm std_term(const std::string& name, unsigned k, unsigned l) {
    if (name == "suc" || name == "add" || name == "mul") return basic_at(name, k);
    if (name == "cd") return cast_down_at(k);
    if (name == "pred") return predecessor();
    if (name == "sub") return subtraction();
    if (name == "chi0") return chi_zero(tower0(k));
    if (name == "T0") return t_zero(k);
    if (name == "cu") return cast_up(k);
    if (name == "subt") return subt(k);
    if (name == "cuiter") return cast_up_iter(l, k);
    if (name == "chi0~") return chi_zero_lifted(k);
    throw Error("std", "unknown term '" + name + "'");
}

}  // namespace elemf
