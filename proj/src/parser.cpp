#include "killingweb/parser.hpp"

#include "killingweb/ktparams.hpp"

#include <cctype>

namespace kw {

namespace {

struct Parser {
    const std::string& text;
    const std::map<std::string, Rational>& constants;
    size_t pos = 0;
    VarsPtr vars = xyz_vars();

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }

    bool accept(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg, size_t at) const {
        throw PotentialParseError(msg, at);
    }

    RatFun parse() {
        RatFun v = expr();
        skip_ws();
        if (pos != text.size()) fail("unexpected trailing input", pos);
        return v;
    }

    RatFun expr() {
        RatFun v = term();
        for (;;) {
            if (accept('+')) v = v + term();
            else if (accept('-')) v = v - term();
            else return v;
        }
    }

    RatFun term() {
        RatFun v = factor();
        for (;;) {
            if (accept('*')) v = v * factor();
            else if (accept('/')) {
                size_t at = pos;
                RatFun d = factor();
                if (d.is_zero()) fail("division by a zero expression", at);
                v = v / d;
            } else {
                return v;
            }
        }
    }

    RatFun factor() {
        if (accept('-')) return -factor();
        return power();
    }

    RatFun power() {
        RatFun base = atom();
        if (!accept('^')) return base;
        size_t at = pos;
        RatFun e = factor();
        if (!(e.is_polynomial() && e.num().is_constant()))
            fail("exponent must be a constant integer", at);
        Rational ev = e.num().constant_value() / e.den().constant_value();
        if (!ev.is_integer()) fail("exponent must be an integer", at);
        long n = ev.to_long();
        if (n < 0 && base.is_zero()) fail("negative power of zero", at);
        return base.pow(n);
    }

    RatFun atom() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input", pos);
        char c = text[pos];
        if (c == '(') {
            ++pos;
            RatFun v = expr();
            if (!accept(')')) fail("expected ')'", pos);
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos < text.size() && (text[pos] == '.' || text[pos] == 'e' || text[pos] == 'E'))
                fail("floating literals are not accepted; write an exact rational with '/'", pos);
            return RatFun::constant(vars, Rational::from_string(text.substr(start, pos - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                         text[pos] == '_'))
                ++pos;
            std::string name = text.substr(start, pos - start);
            if (name == "x") return RatFun(Poly::variable(vars, size_t{0}));
            if (name == "y") return RatFun(Poly::variable(vars, size_t{1}));
            if (name == "z") return RatFun(Poly::variable(vars, size_t{2}));
            auto it = constants.find(name);
            if (it == constants.end()) fail("unbound constant '" + name + "'", start);
            return RatFun::constant(vars, it->second);
        }
        fail(std::string("unexpected character '") + c + "'", pos);
    }
};

}  // namespace

RatFun parse_potential(const std::string& text, const std::map<std::string, Rational>& constants) {
    Parser p{text, constants};
    return p.parse();
}

}  // namespace kw
