#include "liftcoc/parser.hpp"

#include "liftcoc/errors.hpp"

#include <cctype>

namespace liftcoc {

namespace {

struct Parser {
    const std::string &text;
    std::size_t pos = 0;
    int nvars;
    TruncationPolicy policy;
    const std::optional<Rat> &lambda;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
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

    void expect(char c) {
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "'", pos);
    }

    long parse_uint() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == start)
            throw ParseError("expected integer", pos);
        return std::stol(text.substr(start, pos - start));
    }

    long parse_signed_int() {
        skip_ws();
        bool neg = accept('-');
        long v = parse_uint();
        return neg ? -v : v;
    }

    AugmentedOp identity_const(const Rat &c) {
        return AugmentedOp::identity_times(PsiSymbol::constant(nvars, policy.depth, c));
    }

    AugmentedOp generator(char kind, std::size_t at) {
        long idx = parse_uint();
        if (idx < 1 || idx > nvars)
            throw IndexOutOfRangeError("variable index " + std::to_string(idx) +
                                           " exceeds configured n=" + std::to_string(nvars),
                                       at);
        long p = 1;
        if (accept('^'))
            p = parse_signed_int();
        Monomial m = kind == 'x' ? Monomial::var_x(static_cast<int>(idx) - 1, static_cast<int>(p))
                                 : Monomial::var_d(static_cast<int>(idx) - 1, static_cast<int>(p));
        if (p == 0)
            m = Monomial::one();
        return AugmentedOp::identity_times(PsiSymbol::monomial(nvars, policy.depth, m));
    }

    AugmentedOp power(const AugmentedOp &base, std::size_t at) {
        long p = parse_signed_int();
        if (p < 0)
            throw ParseError("negative power is only defined on the x/d generators", at);
        AugmentedOp acc = identity_const(Rat(1));
        for (long i = 0; i < p; ++i)
            acc = aug_product(acc, base);
        return acc;
    }

    AugmentedOp parse_factor() {
        skip_ws();
        if (pos >= text.size())
            throw ParseError("unexpected end of input", pos);
        std::size_t at = pos;
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long num = parse_uint();
            if (accept('/')) {
                long den = parse_uint();
                if (den == 0)
                    throw ParseError("zero denominator", at);
                return identity_const(rat_of(num, den));
            }
            return identity_const(Rat(num));
        }
        if (c == '(') {
            ++pos;
            AugmentedOp v = parse_expr();
            expect(')');
            if (accept('^'))
                return power(v, pos);
            return v;
        }
        if (c == 'x' || c == 'd') {
            ++pos;
            return generator(c, at);
        }
        if (text.compare(pos, 2, "ID") == 0) {
            pos += 2;
            AugmentedOp v = identity_const(Rat(1));
            if (accept('^'))
                return power(v, pos);
            return v;
        }
        if (c == 'E') {
            ++pos;
            expect('[');
            long r = parse_uint();
            expect(',');
            long cc = parse_uint();
            expect(']');
            if (r < 1 || cc < 1)
                throw IndexOutOfRangeError("matrix indices must be positive", at);
            AugmentedOp v = AugmentedOp::unit_matrix(
                static_cast<int>(r), static_cast<int>(cc),
                PsiSymbol::constant(nvars, policy.depth, Rat(1)));
            if (accept('^'))
                return power(v, pos);
            return v;
        }
        if (c == 'L') {
            ++pos;
            if (!lambda)
                throw ParseError("parameter L used but no value bound", at);
            AugmentedOp v = identity_const(*lambda);
            if (accept('^'))
                return power(v, pos);
            return v;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }

    AugmentedOp parse_term() {
        AugmentedOp v = parse_factor();
        while (accept('*'))
            v = aug_product(v, parse_factor());
        return v;
    }

    AugmentedOp parse_expr() {
        skip_ws();
        bool neg = accept('-');
        AugmentedOp v = parse_term();
        if (neg)
            v *= Rat(-1);
        for (;;) {
            if (accept('+'))
                v += parse_term();
            else if (accept('-'))
                v -= parse_term();
            else
                break;
        }
        return v;
    }

    AugmentedOp parse_all() {
        AugmentedOp v = parse_expr();
        skip_ws();
        if (pos != text.size())
            throw ParseError("trailing input", pos);
        return v;
    }
};

} // namespace

AugmentedOp parse_operator(const std::string &text, int nvars, const TruncationPolicy &policy,
                           const std::optional<Rat> &lambda) {
    if (nvars < 1 || nvars > kMaxVars)
        throw std::invalid_argument("nvars out of range");
    Parser p{text, 0, nvars, policy, lambda};
    return p.parse_all();
}

std::string print_operator(const AugmentedOp &v) { return aug_str(v); }

} // namespace liftcoc
