#pragma once

#include <cctype>
#include <stdexcept>
#include <string>

#include "chv/polynomial.hpp"

namespace chv {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Recursive-descent parser for the textual polynomial syntax: integers,
/// rationals p/q, `+ - * ^`, parentheses, and variable names from the
/// context. Whitespace is insignificant.
class PolyParser {
public:
    PolyParser(std::string src, ContextPtr ctx)
        : src_(std::move(src)), ctx_(std::move(ctx))
    {
    }

    Polynomial parse()
    {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("trailing input");
        return p;
    }

private:
    Polynomial expr()
    {
        Polynomial acc = sign() ? -term() : term();
        for (;;) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                acc += term();
            } else if (peek() == '-') {
                ++pos_;
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    Polynomial term()
    {
        Polynomial acc = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                acc *= factor();
            } else {
                return acc;
            }
        }
    }

    Polynomial factor()
    {
        Polynomial base = atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            std::string digits = read_digits();
            if (digits.empty()) fail("expected exponent");
            return base.pow(static_cast<unsigned>(std::stoul(digits)));
        }
        return base;
    }

    Polynomial atom()
    {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return p;
        }
        if (c == '-') {
            ++pos_;
            return -atom();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = read_digits();
            skip_ws();
            if (peek() == '/') {
                ++pos_;
                skip_ws();
                std::string den = read_digits();
                if (den.empty()) fail("expected denominator");
                mpq_class q(num + "/" + den);
                q.canonicalize();
                if (q.get_den() == 0) fail("zero denominator");
                return Polynomial::constant(ctx_, q);
            }
            return Polynomial::constant(ctx_, mpq_class(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = read_ident();
            int idx = ctx_->find(name);
            if (idx < 0) fail("unknown variable '" + name + "'");
            return Polynomial::variable(ctx_, static_cast<std::size_t>(idx));
        }
        fail("unexpected character");
        return Polynomial::zero(ctx_); // unreachable
    }

    bool sign()
    {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return true;
        }
        if (peek() == '+') ++pos_;
        return false;
    }

    std::string read_digits()
    {
        std::string s;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            s += src_[pos_++];
        return s;
    }

    std::string read_ident()
    {
        std::string s;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            s += src_[pos_++];
        return s;
    }

    void skip_ws()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError("polynomial parse error at position " + std::to_string(pos_) + ": " +
                         msg + " in \"" + src_ + "\"");
    }

    std::string src_;
    ContextPtr ctx_;
    std::size_t pos_ = 0;
};

inline Polynomial parse_poly(const std::string& s, const ContextPtr& ctx)
{
    return PolyParser(s, ctx).parse();
}

} // namespace chv
