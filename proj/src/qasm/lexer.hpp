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

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qfw::qasm::detail {

enum class TokenKind {
    identifier,
    integer,
    real,
    string,
    semicolon,
    comma,
    lbracket,
    rbracket,
    lparen,
    rparen,
    lbrace,
    rbrace,
    arrow,
    plus,
    minus,
    star,
    slash,
    caret,
    equals,
    end,
};

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::string_view describe(TokenKind kind);

/// Splits source into tokens, dropping whitespace and `//` / `/* */`
/// comments. The final token is always `end`.
std::vector<Token> tokenize(std::string_view source);

} // namespace qfw::qasm::detail
