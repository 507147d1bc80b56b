#include "algres/parser.hpp"
#include "algres/error.hpp"

#include <cctype>

namespace algres {

namespace {

std::string normalize_minus(const std::string& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        // U+2212 MINUS SIGN
        if (i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xE2 &&
            static_cast<unsigned char>(s[i + 1]) == 0x88 && static_cast<unsigned char>(s[i + 2]) == 0x92) {
            out.push_back('-');
            i += 2;
        } else {
            out.push_back(s[i]);
        }
    }
    return out;
}

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& vars,
           const std::map<std::string, Q>& constants)
        : s_(normalize_minus(text)), vars_(vars), consts_(constants) {}

    Polynomial run() {
        Polynomial p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    std::string s_;
    const std::vector<std::string>& vars_;
    const std::map<std::string, Q>& consts_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("parse error at column " + std::to_string(pos_ + 1) + " in '" + s_ + "': " + msg);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial p = term();
        for (;;) {
            if (eat('+'))
                p += term();
            else if (eat('-'))
                p -= term();
            else
                return p;
        }
    }

    Polynomial term() {
        Polynomial p = unary();
        for (;;) {
            if (eat('*')) {
                p = p * unary();
            } else if (eat('/')) {
                Polynomial d = unary();
                if (d.is_zero() || d.degree() != 0) fail("division by a non-constant or zero");
                p *= Q(1) / d.terms().begin()->second;
            } else {
                return p;
            }
        }
    }

    Polynomial unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    Polynomial power() {
        Polynomial b = primary();
        if (eat('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected integer exponent");
            std::string digits = s_.substr(start, pos_ - start);
            if (digits.size() > 4) fail("exponent too large");
            b = b.pow(static_cast<unsigned>(std::stoul(digits)));
        }
        return b;
    }

    Polynomial primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return Polynomial::constant(vars_.size(), Q(Z(s_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string id = s_.substr(start, pos_ - start);
            for (std::size_t i = 0; i < vars_.size(); ++i)
                if (vars_[i] == id) return Polynomial::variable(vars_.size(), i);
            auto it = consts_.find(id);
            if (it != consts_.end()) return Polynomial::constant(vars_.size(), it->second);
            pos_ = start;
            fail("unknown identifier '" + id + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

} // namespace

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& vars,
                            const std::map<std::string, Q>& constants) {
    Polynomial p = Parser(text, vars, constants).run();
    if (p.nvars() != vars.size()) p = Polynomial(vars.size()) + p;
    return p;
}

} // namespace algres
