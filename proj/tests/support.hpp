#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "elemf/parse.hpp"
#include "elemf/reduction.hpp"
#include "elemf/stack.hpp"

namespace elemf::testing {

inline Term T(std::string_view s) { return parse_term(s); }
inline Type Ty(std::string_view s) { return parse_type(s); }

inline Term apply_nums(Term f, const std::vector<std::uint64_t>& args) {
    for (auto a : args) f = app(f, numeral(a));
    return f;
}

// Decoded normal form up to η; nullopt when it is not a numeral or fuel runs out.
inline std::optional<std::uint64_t> value_of(const Term& t, std::uint64_t fuel = kDefaultFuel) {
    auto r = normalize_strict(t, fuel);
    if (!r.normal) return std::nullopt;
    if (auto v = decode_numeral(r.term)) return v;
    return decode_numeral(eta_contract(r.term));
}

inline std::optional<std::uint64_t> eval_at(const Term& f, const std::vector<std::uint64_t>& args,
                                            std::uint64_t fuel = kDefaultFuel) {
    return value_of(apply_nums(f, args), fuel);
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen); }
    bool coin() { return below(2) == 0; }
};

}  // namespace elemf::testing
