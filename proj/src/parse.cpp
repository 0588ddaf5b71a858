#include "elemf/parse.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <vector>

namespace elemf {
namespace {

enum class Tok { Ident, Number, Backslash, Dot, LParen, RParen, Lt, Gt, Comma, Hash, Arrow, Star, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto ident_char = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        if (c == '-' && i + 1 < s.size() && s[i + 1] == '-') {
            while (i < s.size() && s[i] != '\n') ++i;
            continue;
        }
        const std::size_t start = i;
        if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') { out.push_back({Tok::Arrow, "->", start}); i += 2; continue; }
        // U+03BB GREEK SMALL LETTER LAMDA, UTF-8 encoded
        if (static_cast<unsigned char>(c) == 0xCE && i + 1 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0xBB) {
            out.push_back({Tok::Backslash, "\\", start});
            i += 2;
            continue;
        }
        switch (c) {
        case '\\': out.push_back({Tok::Backslash, "\\", start}); ++i; continue;
        case '.': out.push_back({Tok::Dot, ".", start}); ++i; continue;
        case '(': out.push_back({Tok::LParen, "(", start}); ++i; continue;
        case ')': out.push_back({Tok::RParen, ")", start}); ++i; continue;
        case '<': out.push_back({Tok::Lt, "<", start}); ++i; continue;
        case '>': out.push_back({Tok::Gt, ">", start}); ++i; continue;
        case ',': out.push_back({Tok::Comma, ",", start}); ++i; continue;
        case '#': out.push_back({Tok::Hash, "#", start}); ++i; continue;
        case '*': out.push_back({Tok::Star, "*", start}); ++i; continue;
        default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            out.push_back({Tok::Number, std::string(s.substr(start, i - start)), start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < s.size() && ident_char(s[i])) ++i;
            out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
            continue;
        }
        throw Error("parse", "unexpected character '" + std::string(1, c) + "' at offset " + std::to_string(start));
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(lex(text)) {}

    Term term_document() {
        Term t = term();
        expect(Tok::End, "end of input");
        return t;
    }

    Type type_document() {
        Type t = type();
        expect(Tok::End, "end of input");
        return t;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool at(Tok k) const { return peek().kind == k; }
    bool at_ident(std::string_view word) const { return at(Tok::Ident) && peek().text == word; }

    [[noreturn]] void fail(const std::string& what) const {
        const Token& t = peek();
        throw Error("parse", "expected " + what + " at offset " + std::to_string(t.pos) +
                                 (t.kind == Tok::End ? " (end of input)" : " near '" + t.text + "'"));
    }

    const Token& expect(Tok k, const std::string& what) {
        if (!at(k)) fail(what);
        return next();
    }

    static bool is_keyword(const std::string& s) { return s == "fst" || s == "snd"; }

    std::string term_ident() {
        if (!at(Tok::Ident) || is_keyword(peek().text)) fail("variable name");
        return next().text;
    }

    Term term() {
        if (at(Tok::Backslash)) return lambda();
        return application();
    }

    Term lambda() {
        next();
        std::vector<std::string> names;
        names.push_back(term_ident());
        while (at(Tok::Ident) && !is_keyword(peek().text)) names.push_back(next().text);
        expect(Tok::Dot, "'.'");
        Term body = term();
        for (auto it = names.rbegin(); it != names.rend(); ++it) body = lam(*it, body);
        return body;
    }

    bool starts_atom() const {
        return at(Tok::Ident) || at(Tok::Hash) || at(Tok::LParen) || at(Tok::Lt);
    }

    Term application() {
        Term head = atom();
        while (true) {
            if (at(Tok::Backslash)) return app(head, lambda());
            if (!starts_atom()) return head;
            head = app(head, atom());
        }
    }

    Term atom() {
        if (at_ident("fst")) { next(); return fst(atom()); }
        if (at_ident("snd")) { next(); return snd(atom()); }
        if (at(Tok::Ident)) return var(next().text);
        if (at(Tok::Hash)) {
            next();
            const Token& n = expect(Tok::Number, "numeral digits after '#'");
            std::uint64_t v = 0;
            auto [p, ec] = std::from_chars(n.text.data(), n.text.data() + n.text.size(), v);
            if (ec != std::errc() || v > 10'000'000) throw Error("parse", "numeral out of range: #" + n.text);
            return numeral(v);
        }
        if (at(Tok::LParen)) {
            next();
            Term t = term();
            expect(Tok::RParen, "')'");
            return t;
        }
        if (at(Tok::Lt)) {
            next();
            Term l = term();
            expect(Tok::Comma, "','");
            Term r = term();
            expect(Tok::Gt, "'>'");
            return pair(l, r);
        }
        fail("term");
    }

    static bool parse_tyvar(const std::string& s, TyVar& out) {
        if (s.size() < 4 || s[0] != 'a') return false;
        std::size_t i = 1;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == 1 || i >= s.size() - 1 || s[i] != '_') return false;
        unsigned level = 0;
        auto [p, ec] = std::from_chars(s.data() + 1, s.data() + i, level);
        if (ec != std::errc()) return false;
        out = TyVar{s.substr(i + 1), level};
        return true;
    }

    TyVar tyvar() {
        TyVar v;
        if (!at(Tok::Ident) || !parse_tyvar(peek().text, v)) fail("type variable a<level>_<name>");
        next();
        return v;
    }

    Type type() {
        if (at_ident("forall")) {
            next();
            TyVar v = tyvar();
            expect(Tok::Dot, "'.'");
            return forall(v, type());
        }
        Type left = product();
        if (at(Tok::Arrow)) {
            next();
            return arrow(left, type());
        }
        return left;
    }

    Type product() {
        Type left = type_atom();
        if (at(Tok::Star)) {
            next();
            return prod(left, product());
        }
        return left;
    }

    Type type_atom() {
        if (at_ident("Nat0")) { next(); return nat0(); }
        if (at_ident("Nat1")) { next(); return nat1(); }
        if (at_ident("N")) {
            next();
            expect(Tok::LParen, "'(' after N");
            Type inner = type();
            expect(Tok::RParen, "')'");
            return numeral_type(inner);
        }
        if (at(Tok::LParen)) {
            next();
            Type t = type();
            expect(Tok::RParen, "')'");
            return t;
        }
        if (at_ident("forall")) return type();
        return tvar(tyvar());
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) { return Parser(text).term_document(); }

Type parse_type(std::string_view text) { return Parser(text).type_document(); }

}  // namespace elemf
