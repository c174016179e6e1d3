#include "curlkit/parser.hpp"

#include <cctype>

namespace curlkit {

namespace {

struct Token {
    enum Kind { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, Slash, End } kind;
    std::string text;
    int column;  // 1-based
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const int col = static_cast<int>(pos_) + 1;
        if (pos_ >= src_.size()) return {Token::End, "", col};
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            return {Token::Number, src_.substr(start, pos_ - start), col};
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])))) ++pos_;
            return {Token::Ident, src_.substr(start, pos_ - start), col};
        }
        ++pos_;
        switch (c) {
            case '+': return {Token::Plus, "+", col};
            case '-': return {Token::Minus, "-", col};
            case '*': return {Token::Star, "*", col};
            case '^': return {Token::Caret, "^", col};
            case '(': return {Token::LParen, "(", col};
            case ')': return {Token::RParen, ")", col};
            case '/': return {Token::Slash, "/", col};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", col);
    }

private:
    const std::string& src_;
    size_t pos_ = 0;
};

class Parser {
public:
    Parser(const std::string& src, int ell) : lexer_(src), ell_(ell), nvars_(2 * ell + 1) {
        advance();
    }

    Poly parse() {
        Poly p = expression();
        if (tok_.kind != Token::End) throw ParseError("trailing input", tok_.column);
        return p;
    }

private:
    void advance() { tok_ = lexer_.next(); }

    Poly expression() {
        bool negate = false;
        if (tok_.kind == Token::Plus || tok_.kind == Token::Minus) {
            negate = tok_.kind == Token::Minus;
            advance();
        }
        Poly acc = term();
        if (negate) acc = -acc;
        while (tok_.kind == Token::Plus || tok_.kind == Token::Minus) {
            const bool minus = tok_.kind == Token::Minus;
            advance();
            Poly t = term();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    Poly term() {
        Poly acc = factor();
        while (tok_.kind == Token::Star) {
            advance();
            acc = acc * factor();
        }
        return acc;
    }

    Poly factor() {
        Poly base = primary();
        if (tok_.kind == Token::Caret) {
            const int col = tok_.column;
            advance();
            if (tok_.kind != Token::Number)
                throw ParseError("exponent must be a nonnegative integer", col + 1);
            const long k = std::stol(tok_.text);
            advance();
            Poly out = Poly::constant(nvars_, Rational(1));
            for (long t = 0; t < k; ++t) out = out * base;
            return out;
        }
        return base;
    }

    Poly primary() {
        if (tok_.kind == Token::Number) {
            const long num = std::stol(tok_.text);
            advance();
            if (tok_.kind == Token::Slash) {
                const int col = tok_.column;
                advance();
                if (tok_.kind != Token::Number)
                    throw ParseError("expected a denominator after '/'", col + 1);
                const long den = std::stol(tok_.text);
                if (den == 0) throw ParseError("zero denominator", tok_.column);
                advance();
                return Poly::constant(nvars_, Rational(num, den));
            }
            return Poly::constant(nvars_, Rational(num));
        }
        if (tok_.kind == Token::Ident) {
            const int idx = variable_index(tok_.text, tok_.column);
            advance();
            return Poly::variable(nvars_, idx);
        }
        if (tok_.kind == Token::LParen) {
            advance();
            Poly inner = expression();
            if (tok_.kind != Token::RParen) throw ParseError("expected ')'", tok_.column);
            advance();
            return inner;
        }
        if (tok_.kind == Token::Minus) {
            advance();
            return -primary();
        }
        throw ParseError("expected a number, variable or '('", tok_.column);
    }

    int variable_index(const std::string& name, int col) const {
        if (name == "z") return 2 * ell_;
        if (name == "x") return 0;
        if (name == "y") return ell_;
        if (name.size() >= 2 && (name[0] == 'x' || name[0] == 'y')) {
            for (size_t i = 1; i < name.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(name[i])))
                    throw ParseError("unknown variable '" + name + "'", col);
            const int k = std::stoi(name.substr(1));
            if (k >= 1 && k <= ell_) return (name[0] == 'x' ? 0 : ell_) + (k - 1);
        }
        throw ParseError("unknown variable '" + name + "'", col);
    }

    Lexer lexer_;
    Token tok_;
    int ell_;
    int nvars_;
};

}  // namespace

Poly parse_hamiltonian(const std::string& text, int ell) {
    return Parser(text, ell).parse();
}

std::string print_poly(const Poly& poly, int ell) {
    DarbouxChart chart;
    chart.ell = ell;
    return poly.to_string(chart.names());
}

}  // namespace curlkit
