// Copyright 2026 The QFw Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lexer.hpp"

#include <cctype>

#include "qfw/qasm.hpp"

namespace qfw::qasm::detail {

std::string_view describe(TokenKind kind) {
    switch (kind) {
    case TokenKind::identifier: return "identifier";
    case TokenKind::integer: return "integer";
    case TokenKind::real: return "real number";
    case TokenKind::string: return "string";
    case TokenKind::semicolon: return "';'";
    case TokenKind::comma: return "','";
    case TokenKind::lbracket: return "'['";
    case TokenKind::rbracket: return "']'";
    case TokenKind::lparen: return "'('";
    case TokenKind::rparen: return "')'";
    case TokenKind::lbrace: return "'{'";
    case TokenKind::rbrace: return "'}'";
    case TokenKind::arrow: return "'->'";
    case TokenKind::plus: return "'+'";
    case TokenKind::minus: return "'-'";
    case TokenKind::star: return "'*'";
    case TokenKind::slash: return "'/'";
    case TokenKind::caret: return "'^'";
    case TokenKind::equals: return "'=='";
    case TokenKind::end: return "end of input";
    }
    return "token";
}

namespace {

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_blank();
            if (at_end()) {
                out.push_back({TokenKind::end, "", line_, col_});
                return out;
            }
            out.push_back(next());
        }
    }

  private:
    [[nodiscard]] bool at_end() const { return pos_ >= src_.size(); }
    [[nodiscard]] char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    char advance() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_blank() {
        while (!at_end()) {
            const char c = peek();
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (!at_end() && peek() != '\n') {
                    advance();
                }
            } else if (c == '/' && peek(1) == '*') {
                const std::size_t line = line_;
                const std::size_t col = col_;
                advance();
                advance();
                while (!(peek() == '*' && peek(1) == '/')) {
                    if (at_end()) {
                        throw ParseError(ParseErrorCategory::syntax, line, col,
                                         "unterminated block comment");
                    }
                    advance();
                }
                advance();
                advance();
            } else {
                return;
            }
        }
    }

    Token next() {
        const std::size_t line = line_;
        const std::size_t col = col_;
        const char c = peek();
        auto single = [&](TokenKind kind) {
            advance();
            return Token{kind, std::string(1, c), line, col};
        };

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string text;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
                text.push_back(advance());
            }
            return {TokenKind::identifier, std::move(text), line, col};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
            return number(line, col);
        }
        switch (c) {
        case ';': return single(TokenKind::semicolon);
        case ',': return single(TokenKind::comma);
        case '[': return single(TokenKind::lbracket);
        case ']': return single(TokenKind::rbracket);
        case '(': return single(TokenKind::lparen);
        case ')': return single(TokenKind::rparen);
        case '{': return single(TokenKind::lbrace);
        case '}': return single(TokenKind::rbrace);
        case '+': return single(TokenKind::plus);
        case '*': return single(TokenKind::star);
        case '/': return single(TokenKind::slash);
        case '^': return single(TokenKind::caret);
        case '-':
            if (peek(1) == '>') {
                advance();
                advance();
                return {TokenKind::arrow, "->", line, col};
            }
            return single(TokenKind::minus);
        case '=':
            if (peek(1) == '=') {
                advance();
                advance();
                return {TokenKind::equals, "==", line, col};
            }
            break;
        case '"': {
            advance();
            std::string text;
            while (peek() != '"') {
                if (at_end() || peek() == '\n') {
                    throw ParseError(ParseErrorCategory::syntax, line, col,
                                     "unterminated string literal");
                }
                text.push_back(advance());
            }
            advance();
            return {TokenKind::string, std::move(text), line, col};
        }
        default: break;
        }
        throw ParseError(ParseErrorCategory::syntax, line, col,
                         std::string("unexpected character '") + c + "'");
    }

    Token number(std::size_t line, std::size_t col) {
        std::string text;
        bool real = false;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            text.push_back(advance());
        }
        if (peek() == '.') {
            real = true;
            text.push_back(advance());
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                text.push_back(advance());
            }
        }
        if (peek() == 'e' || peek() == 'E') {
            const char sign = peek(1);
            const bool signed_exp = sign == '+' || sign == '-';
            const char first = signed_exp ? peek(2) : sign;
            if (std::isdigit(static_cast<unsigned char>(first))) {
                real = true;
                text.push_back(advance());
                if (signed_exp) {
                    text.push_back(advance());
                }
                while (std::isdigit(static_cast<unsigned char>(peek()))) {
                    text.push_back(advance());
                }
            }
        }
        return {real ? TokenKind::real : TokenKind::integer, std::move(text), line, col};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

} // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

} // namespace qfw::qasm::detail
