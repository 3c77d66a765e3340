#pragma once

// Minimal polynomial expression grammar for the command line:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := INT ['x' ['^' UINT]] | 'x' ['^' UINT]
//           | 'Phi' '(' UINT ')' | 'compose1m' '(' expr ',' UINT ')'
//           | '(' expr ')'
// compose1m(p, n) is the substitution p(1 - x^n). Examples: "x^64-2",
// "Phi(105)", "compose1m(Phi(3), 2)", "3x^2-2x+1".

#include <cctype>
#include <cstddef>
#include <string>

#include "eqdist/errors.hpp"
#include "eqdist/int_poly.hpp"

namespace eqdist {

namespace detail {

class PolyParser {
  public:
    explicit PolyParser(const std::string& src) : s_(src) {}

    IntPolynomial parse() {
        IntPolynomial p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return p;
    }

  private:
    IntPolynomial expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = (get() == '-');
        IntPolynomial acc = term();
        if (neg) acc = poly_neg(acc);
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+' || c == '-') {
                get();
                IntPolynomial t = term();
                acc = (c == '+') ? poly_add(acc, t) : poly_sub(acc, t);
            } else {
                return acc;
            }
        }
    }

    IntPolynomial term() {
        IntPolynomial acc = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                get();
                acc = poly_mul(acc, factor());
            } else {
                return acc;
            }
        }
    }

    IntPolynomial factor() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            IntPolynomial p = expr();
            expect(')');
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpz_class coeff(read_uint_string());
            skip_ws();
            if (peek() == 'x') return poly_mul(IntPolynomial::constant(coeff), monome());
            return IntPolynomial::constant(coeff);
        }
        if (c == 'x') return monome();
        if (starts_with("Phi")) {
            pos_ += 3;
            expect('(');
            unsigned long m = read_ulong();
            expect(')');
            return cyclotomic(m);
        }
        if (starts_with("compose1m")) {
            pos_ += 9;
            expect('(');
            IntPolynomial p = expr();
            expect(',');
            unsigned long n = read_ulong();
            expect(')');
            return compose_shift_power(p, n);
        }
        fail("expected integer, 'x', 'Phi(m)', 'compose1m(p,n)' or '('");
        return {};
    }

    IntPolynomial monome() {
        expect('x');
        skip_ws();
        unsigned long k = 1;
        if (peek() == '^') {
            get();
            k = read_ulong();
        }
        return IntPolynomial::monomial(k);
    }

    std::string read_uint_string() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        return s_.substr(start, pos_ - start);
    }

    unsigned long read_ulong() { return std::stoul(read_uint_string()); }

    bool starts_with(const char* kw) const { return s_.compare(pos_, std::string(kw).size(), kw) == 0; }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        get();
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return s_[pos_++]; }

    [[noreturn]] void fail(const std::string& why) const {
        throw UsageError("polynomial expression: " + why + " at position " + std::to_string(pos_) +
                         " in \"" + s_ + "\"");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline IntPolynomial parse_poly(const std::string& text) {
    return detail::PolyParser(text).parse();
}

} // namespace eqdist
