#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "lwb/formula.hpp"
#include "lwb/signature.hpp"

namespace lwb {

// Prefix ASCII grammar:
//   formula := var | conn "(" formula ("," formula)* ")" | conn      (0-ary)
//   var     := "x" digits
// The Unicode aliases below are accepted on input and normalized to the
// canonical ASCII names on output.
namespace detail {

struct AliasEntry {
    const char* utf8;
    const char* name;
};

inline const std::vector<AliasEntry>& conn_aliases() {
    static const std::vector<AliasEntry> table = {
        {"¬", "neg"}, // ¬
        {"∨", "or"},  // ∨
        {"→", "imp"}, // →
        {"∧", "and"}, // ∧
    };
    return table;
}

class FormulaParser {
public:
    FormulaParser(std::string_view text, const Signature& sig) : text_(text), sig_(sig) {}

    Formula parse() {
        Formula f = parse_formula();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("trailing input after formula", pos_);
        return f;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool is_ident_char(char c) const {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }

    Formula parse_formula() {
        skip_ws();
        if (pos_ >= text_.size())
            throw ParseError("unexpected end of input, expected formula", pos_);
        std::size_t start = pos_;
        std::string tok = next_token();
        if (tok.size() >= 2 && tok[0] == 'x' && all_digits(tok, 1)) {
            long idx = std::stol(tok.substr(1));
            return Formula::var(static_cast<int>(idx));
        }
        if (!sig_.contains(tok))
            throw ParseError("unknown connective '" + tok + "' in signature " + sig_.name(),
                             start);
        int ar = sig_.arity_of(tok);
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != '(') {
            if (ar != 0)
                throw ParseError("connective '" + tok + "' expects " + std::to_string(ar) +
                                 " arguments",
                                 pos_);
            return Formula::app(tok, {});
        }
        ++pos_; // '('
        std::vector<Formula> args;
        args.push_back(parse_formula());
        skip_ws();
        while (pos_ < text_.size() && text_[pos_] == ',') {
            ++pos_;
            args.push_back(parse_formula());
            skip_ws();
        }
        if (pos_ >= text_.size() || text_[pos_] != ')')
            throw ParseError("expected ')' or ','", pos_);
        ++pos_;
        if (static_cast<int>(args.size()) != ar)
            throw ParseError("connective '" + tok + "' expects " + std::to_string(ar) +
                             " arguments, got " + std::to_string(args.size()),
                             start);
        return Formula::app(tok, std::move(args));
    }

    static bool all_digits(const std::string& s, std::size_t from) {
        for (std::size_t i = from; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                return false;
        return true;
    }

    std::string next_token() {
        // unicode alias?
        for (const auto& [utf8, name] : conn_aliases()) {
            std::string_view a(utf8);
            if (text_.substr(pos_).substr(0, a.size()) == a) {
                pos_ += a.size();
                return std::string(name);
            }
        }
        char c = text_[pos_];
        if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_'))
            throw ParseError(std::string("unexpected character '") + c + "'", pos_);
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_]))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string_view text_;
    const Signature& sig_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Formula parse_formula(std::string_view text, const Signature& sig) {
    return detail::FormulaParser(text, sig).parse();
}

inline void print_formula(std::string& out, const Formula& f) {
    if (f.is_var()) {
        out += 'x';
        out += std::to_string(f.var_index());
        return;
    }
    out += f.conn();
    if (f.args().empty())
        return;
    out += '(';
    for (std::size_t i = 0; i < f.args().size(); ++i) {
        if (i)
            out += ',';
        print_formula(out, f.args()[i]);
    }
    out += ')';
}

inline std::string to_string(const Formula& f) {
    std::string out;
    print_formula(out, f);
    return out;
}

} // namespace lwb
