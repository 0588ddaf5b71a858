// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "pipeline_cases.hpp"
#include "support.hpp"

using namespace elemf;
using namespace elemf::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void fail(const std::string& why) {
        if (pass) detail << "first failure: " << why << "; ";
        pass = false;
    }
};

std::uint64_t monus(std::uint64_t a, std::uint64_t b) { return a > b ? a - b : 0; }

// 1. compiled suc/add/sub/mul on 0..8, under 60 s.
Outcome base_functions() {
    Outcome o;
    auto t0 = Clock::now();
    struct Base {
        const char* name;
        ElemExpr e;
        std::function<std::uint64_t(std::uint64_t, std::uint64_t)> f;
    };
    std::vector<Base> bases = {{"suc", e_succ(), [](auto a, auto) { return a + 1; }},
                               {"add", e_add(), [](auto a, auto b) { return a + b; }},
                               {"sub", e_sub(), [](auto a, auto b) { return monus(a, b); }},
                               {"mul", e_mul(), [](auto a, auto b) { return a * b; }}};
    std::size_t cases = 0;
    for (const auto& b : bases) {
        auto c = compile_top(b.e);
        for (std::uint64_t x = 0; x <= 8; ++x)
            for (std::uint64_t y = 0; y <= (c.arity == 1 ? 0 : 8); ++y) {
                std::vector<std::uint64_t> args = c.arity == 1 ? std::vector<std::uint64_t>{x} : std::vector<std::uint64_t>{x, y};
                ++cases;
                try {
                    auto v = run_compiled(c, args);
                    if (v != b.f(x, y)) o.fail(std::string(b.name) + " got " + std::to_string(v));
                } catch (const Error& e) {
                    o.fail(std::string(b.name) + " " + e.code());
                }
            }
    }
    double s = seconds_since(t0);
    if (s >= 60) o.fail("took " + std::to_string(s) + " s");
    o.detail << cases << " cases in " << s << " s (limit 60 s)";
    return o;
}

// 2. cd, cu_k, subt_k on their stated ranges.
Outcome typecasts() {
    Outcome o;
    std::size_t cases = 0;
    auto expect = [&](const std::string& what, std::optional<std::uint64_t> got, std::uint64_t want) {
        ++cases;
        if (got != want) o.fail(what + " got " + (got ? std::to_string(*got) : std::string("none")));
    };
    Term cd = cast_down(tvar("a", 0)).term;
    for (std::uint64_t n = 0; n <= 50; ++n) {
        auto r = normalize(app(cd, numeral(n)));
        expect("cd #" + std::to_string(n), r.normal ? decode_numeral(r.term) : std::nullopt, n);
    }
    for (unsigned k = 0; k <= 1; ++k) {
        Term cu = cast_up(k).term;
        for (std::uint64_t n = 0; n <= 5; ++n)
            for (std::uint64_t m : {n, n + 1, std::uint64_t{10}})
                expect("cu_" + std::to_string(k) + " #" + std::to_string(m) + " #" + std::to_string(n), eval_at(cu, {m, n}), n);
    }
    for (unsigned k = 0; k <= 2; ++k) {
        Term s = subt(k).term;
        for (std::uint64_t n = 0; n <= 5; ++n)
            for (std::uint64_t c = 0; c <= 5; ++c)
                expect("subt_" + std::to_string(k), eval_at(s, {10, n, c}), monus(n, c));
    }
    o.detail << cases << " cases";
    return o;
}

// 3. triangular numbers and factorials.
Outcome bounded_sums() {
    Outcome o;
    auto tri = compile_top(e_bsum(e_proj(0, 2)));
    auto fact = compile_top(e_bprod(e_comp(e_succ(), {e_proj(0, 1)})));
    std::uint64_t f = 1;
    for (std::uint64_t x = 0; x <= 5; ++x) {
        try {
            auto v = run_compiled(tri, {0, x}, 10'000'000);
            if (v != (x == 0 ? 0 : x * (x - 1) / 2)) o.fail("sum at " + std::to_string(x) + " got " + std::to_string(v));
        } catch (const Error& e) {
            o.fail("sum at " + std::to_string(x) + ": " + e.code());
        }
    }
    for (std::uint64_t x = 0; x <= 4; ++x) {
        if (x > 0) f *= x;
        try {
            auto v = run_compiled(fact, {x}, 10'000'000);
            if (v != f) o.fail("product at " + std::to_string(x) + " got " + std::to_string(v));
        } catch (const Error& e) {
            o.fail("product at " + std::to_string(x) + ": " + e.code());
        }
    }
    o.detail << "sum x<=5, product x<=4, fuel 10^7";
    return o;
}

// 4. random definitions against the oracle.
struct Gen {
    Rng r;
    explicit Gen(std::uint64_t seed) : r(seed) {}
    ElemExpr base(std::size_t n) {
        if (n == 1) return e_succ();
        switch (r.below(3)) {
        case 0: return e_add();
        case 1: return e_sub();
        default: return e_mul();
        }
    }
    ElemExpr expr(std::size_t n, std::size_t d) {
        if (d <= 1) {
            if (n == 1 && r.below(3) == 0) return e_succ();
            if (n == 2 && r.below(3) == 0) return base(2);
            return e_proj(r.below(n), n);
        }
        switch (r.below(4)) {
        case 0: return expr(n, 1);
        case 1: {
            std::size_t m = 1 + r.below(2);
            ElemExpr g = r.below(2) != 0 ? base(m) : expr(m, d - 1);
            std::vector<ElemExpr> hs;
            for (std::size_t i = 0; i < m; ++i) hs.push_back(expr(n, d - 1));
            return e_comp(g, hs);
        }
        case 2: return e_bsum(expr(n, d - 1));
        default: return e_bprod(expr(n, d - 1));
        }
    }
};

Outcome oracle_equivalence() {
    Outcome o;
    Gen g(12345);
    std::size_t ok = 0, wrong = 0, exhausted = 0, overflow = 0;
    auto t0 = Clock::now();
    for (int c = 0; c < 200; ++c) {
        std::size_t n = 1 + g.r.below(2);
        std::size_t d = 1 + g.r.below(3);
        ElemExpr e = g.expr(n, d);
        std::vector<std::uint64_t> args(n);
        std::uint64_t left = g.r.below(7);
        for (std::size_t i = 0; i < n; ++i) {
            args[i] = i + 1 == n ? left : g.r.below(left + 1);
            left -= args[i];
        }
        std::uint64_t want;
        try {
            want = eval_oracle(e, args);
        } catch (const Error&) {
            ++overflow;
            continue;
        }
        std::string got;
        try {
            auto v = run_compiled(compile_top(e), args, 10'000'000);
            got = std::to_string(v);
            if (v == want) {
                ++ok;
            } else {
                ++wrong;
                o.fail("case " + std::to_string(c) + " " + to_string(e));
            }
        } catch (const Error& x) {
            got = x.code();
            ++exhausted;
        }
        std::cerr << "  case " << c << " " << to_string(e) << " args";
        for (auto a : args) std::cerr << " " << a;
        std::cerr << " oracle=" << want << " compiled=" << got << "\n";
    }
    const std::size_t total = 200;
    const double rate = double(exhausted) / double(total);
    if (rate >= 0.05) o.fail("exhaustion rate " + std::to_string(rate));
    o.detail << "agree=" << ok << " disagree=" << wrong << " exhausted=" << exhausted << " oracle-overflow=" << overflow
             << " exhaustion-rate=" << rate << " (limit < 0.05) time=" << seconds_since(t0) << " s";
    return o;
}

// 5. rank invariance under flat substitution.
Type random_flat(Rng& r, int depth) {
    if (depth == 0 || r.coin()) return tvar(r.coin() ? "a" : "b", 0);
    return prod(random_flat(r, depth - 1), random_flat(r, depth - 1));
}

Type random_type(Rng& r, int depth, unsigned level) {
    if (depth == 0 || r.below(4) == 0) {
        if (level == 1) return r.coin() ? nat0() : tvar("c", 1);
        return tvar(r.coin() ? "a" : "b", 0);
    }
    switch (r.below(3)) {
    case 0: return arrow(random_type(r, depth - 1, level), random_type(r, depth - 1, level));
    case 1: return prod(random_type(r, depth - 1, level), random_type(r, depth - 1, level));
    default: return numeral_type(random_type(r, depth - 1, level));
    }
}

Outcome rank_invariance() {
    Outcome o;
    Rng r(2024);
    for (int i = 0; i < 1000; ++i) {
        // level-0 types mention a0 directly; level-1 types reach it through Nat0's body only
        Type t = random_type(r, 5, static_cast<unsigned>(r.below(2)));
        if (!level_at_most_one(t)) {
            o.fail("generator produced " + to_string(t));
            continue;
        }
        Type s = random_flat(r, 3);
        if (rank(type_substitute(t, TyVar{"a", 0}, s)) != rank(t)) o.fail(to_string(t) + " with " + to_string(s));
    }
    o.detail << "1000 pairs, exact equality";
    return o;
}

// 7. the soundness pipeline against direct normalization.
Outcome pipeline() {
    Outcome o;
    std::size_t runs = 0;
    auto t0 = Clock::now();
    for (const auto& pc : pipeline_cases())
        for (std::uint64_t n = 0; n <= 3; ++n) {
            ++runs;
            try {
                auto r = evaluate_via_cutelim(pc.d, n);
                if (r.value != r.direct || r.value != pc.expect(n))
                    o.fail(pc.name + " n=" + std::to_string(n) + " got " + std::to_string(r.value));
                if (r.height > r.height_bound) o.fail(pc.name + " height bound");
            } catch (const Error& e) {
                o.fail(pc.name + " n=" + std::to_string(n) + ": " + e.code() + " " + e.what());
            }
        }
    o.detail << pipeline_cases().size() << " derivations x n<=3 = " << runs << " runs, height <= k(n+2)+2|t'| asserted, time="
             << seconds_since(t0) << " s";
    return o;
}

// 6. audit counters over everything the run produced.
Outcome audits() {
    Outcome o;
    const Type a0 = tvar("a", 0);
    for (std::uint64_t n = 0; n <= 3; ++n) {
        for (const auto& d : {build(b_app(b_closed(cast_down(a0).derivation), b_numeral(n, numeral_type(a0)))),
                              build(b_apps(b_closed(basic("add", a0).derivation), {b_numeral(n, a0), b_numeral(2, a0)})),
                              build(b_apps(b_closed(basic("mul", a0).derivation), {b_numeral(n, a0), b_numeral(2, a0)}))}) {
            try {
                auto low = cut_elim_to_rank1(annotate(d));
                auto q = quasinormalize(low);
                finish_quasinormal(q.d.term());
            } catch (const Error& e) {
                o.fail(std::string("pass error ") + e.code());
            }
        }
    }
    auto s = audit_stats();
    if (s.checked == 0) o.fail("nothing audited");
    if (s.violations != 0) o.fail(s.last_violation);
    o.detail << "checked=" << s.checked << " violations=" << s.violations << " (limit 0)";
    return o;
}

// 8. the super-elementary family 2_n(1).
Outcome growth() {
    Outcome o;
    auto t0 = Clock::now();
    auto three = normalize(T("(#2 #2) #2"));
    if (!three.normal || decode_numeral(three.term) != 16) o.fail("n=3");
    auto four = normalize(T("((#2 #2) #2) #2"));
    if (!four.normal || decode_numeral(four.term) != 65536) o.fail("n=4");
    if (two_tower(3, 1) != 16 || two_tower(4, 1) != 65536) o.fail("tower");
    auto five = normalize_strict(T("(((#2 #2) #2) #2) #2"));
    if (five.normal) o.fail("n=5 was not rejected");
    auto five_no = normalize(T("(((#2 #2) #2) #2) #2"));
    if (five_no.normal) o.fail("n=5 was not rejected by normal order");
    o.detail << "16 in " << three.steps << " steps, 65536 in " << four.steps << " steps, n=5 rejected ("
             << (five.budget_exceeded ? "node budget" : "fuel") << "), time=" << seconds_since(t0) << " s";
    return o;
}

void print(int n, const char* name, const Outcome& o) {
    std::cout << "criterion " << n << " " << name << ": " << (o.pass ? "PASS" : "FAIL") << " " << o.detail.str() << std::endl;
}

}  // namespace

int main() {
    return with_big_stack([] {
        bool all = true;
        auto run = [&](int n, const char* name, const std::function<Outcome()>& f) {
            Outcome o = f();
            print(n, name, o);
            all = all && o.pass;
        };
        reset_audit_stats();
        run(1, "base-functions", base_functions);
        run(2, "typecasts", typecasts);
        run(3, "bounded-sum-product", bounded_sums);
        run(4, "oracle-equivalence", oracle_equivalence);
        run(5, "rank-invariance", rank_invariance);
        Outcome seven = pipeline();
        Outcome six = audits();
        print(6, "bound-audits", six);
        print(7, "pipeline-agreement", seven);
        all = all && six.pass && seven.pass;
        run(8, "growth-witness", growth);
        return all ? 0 : 1;
    });
}
