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

#include "qfw/circuit.hpp"
#include "qfw/error.hpp"

namespace qfw::qasm {

enum class ParseErrorCategory { syntax, unsupported, semantic };

[[nodiscard]] std::string_view to_string(ParseErrorCategory category);

/// Parse failure with a 1-based line/column into the source text.
class ParseError : public Error {
  public:
    ParseError(ParseErrorCategory category, std::size_t line, std::size_t column,
               const std::string &message);

    [[nodiscard]] ParseErrorCategory category() const noexcept { return category_; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }
    [[nodiscard]] const std::string &detail() const noexcept { return detail_; }

  private:
    ParseErrorCategory category_;
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

/// Parses an OpenQASM 2.0 program. Registers are flattened in declaration
/// order and user-defined gates are expanded inline.
[[nodiscard]] Circuit parse(std::string_view source);

/// Emits a program with one `q` register and (when there are clbits) one `c`
/// register. Angles are printed with enough digits to round-trip exactly.
[[nodiscard]] std::string emit(const Circuit &circuit);

/// One description per violated Circuit/Instruction invariant.
[[nodiscard]] std::vector<std::string> validate(const Circuit &circuit);

} // namespace qfw::qasm
