#include "elemf/derivation_io.hpp"

#include <json.hpp>

#include "elemf/parse.hpp"

namespace elemf {

using nlohmann::json;

namespace {

json ctx_json(const Context& ctx) {
    json out = json::object();
    for (const auto& [name, t] : ctx) out[name] = to_string(t);
    return out;
}

json node_json(const DNode& d, const Context& ctx) {
    json out = json::object();
    out["rule"] = std::string(rule_name(d->rule));
    out["ctx"] = ctx_json(ctx);
    out["term"] = to_string(d->term);
    out["type"] = to_string(d->type);
    if (d->inst) out["subst"] = to_string(d->inst);
    if (d->rule == Rule::AllI && d->type->kind == TypeKind::Forall) out["eigenvar"] = to_string(tvar(d->type->var));
    json kids = json::array();
    if (d->rule == Rule::ImpI && d->term->kind == TermKind::Lam && d->type->kind == TypeKind::Arrow) {
        Context inner = ctx;
        inner[d->term->name] = d->type->left;
        for (const auto& k : d->kids) kids.push_back(node_json(k, inner));
    } else {
        for (const auto& k : d->kids) kids.push_back(node_json(k, ctx));
    }
    out["kids"] = std::move(kids);
    return out;
}

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
    throw Error("derivation-format", path + ": " + msg);
}

const json& field(const json& j, const char* key, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) bad(path, std::string("missing field '") + key + "'");
    return *it;
}

std::string string_field(const json& j, const char* key, const std::string& path) {
    const json& v = field(j, key, path);
    if (!v.is_string()) bad(path, std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

Context read_ctx(const json& j, const std::string& path) {
    const json& c = field(j, "ctx", path);
    if (!c.is_object()) bad(path, "field 'ctx' must be an object");
    Context out;
    for (auto it = c.begin(); it != c.end(); ++it) {
        if (!it.value().is_string()) bad(path, "context entry " + it.key() + " must be a type string");
        out[it.key()] = parse_type(it.value().get<std::string>());
    }
    return out;
}

bool same_ctx(const Context& a, const Context& b) {
    if (a.size() != b.size()) return false;
    for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
        if (ia->first != ib->first || !type_eq(ia->second, ib->second)) return false;
    return true;
}

DNode read_node(const json& j, const Context& expected, const std::string& path) {
    if (!j.is_object()) bad(path, "node must be an object");
    const std::string rule_text = string_field(j, "rule", path);
    auto rule = rule_from_name(rule_text);
    if (!rule) bad(path, "unknown rule '" + rule_text + "'");
    if (!same_ctx(read_ctx(j, path), expected)) bad(path, "context disagrees with the enclosing node");
    Term term;
    Type type;
    Type inst;
    try {
        term = parse_term(string_field(j, "term", path));
        type = parse_type(string_field(j, "type", path));
        if (j.contains("subst")) inst = parse_type(string_field(j, "subst", path));
        if (*rule == Rule::AllI && j.contains("eigenvar") && type->kind == TypeKind::Forall) {
            // The printed type may spell the quantifier as Nat0/Nat1 and lose the name.
            Type v = parse_type(string_field(j, "eigenvar", path));
            if (v->kind != TypeKind::Var || v->var.level != type->var.level)
                bad(path, "eigenvar must be a variable of the quantifier's level");
            type = forall(v->var, type_substitute(type->left, type->var, v));
        }
    } catch (const Error& e) {
        if (e.code() == "derivation-format") throw;
        bad(path, e.what());
    }
    const json& kids_json = field(j, "kids", path);
    if (!kids_json.is_array()) bad(path, "field 'kids' must be an array");
    Context inner = expected;
    if (*rule == Rule::ImpI) {
        if (term->kind != TermKind::Lam || type->kind != TypeKind::Arrow)
            bad(path, "ImpI node needs an abstraction of arrow type");
        inner[term->name] = type->left;
    }
    std::vector<DNode> kids;
    for (std::size_t i = 0; i < kids_json.size(); ++i)
        kids.push_back(read_node(kids_json[i], inner, path + "/" + std::to_string(i)));
    return std::make_shared<const DerivNode>(DerivNode{*rule, term, type, inst, std::move(kids)});
}

}  // namespace

std::string print_derivation(const Derivation& d) { return node_json(d.root, d.ctx).dump(2) + "\n"; }

Derivation parse_derivation(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error("derivation-format", std::string("invalid JSON: ") + e.what());
    }
    Context ctx;
    try {
        ctx = read_ctx(j, "root");
    } catch (const Error& e) {
        if (e.code() == "derivation-format") throw;
        bad("root", e.what());
    }
    return Derivation{ctx, read_node(j, ctx, "root")};
}

}  // namespace elemf
