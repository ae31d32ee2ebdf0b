#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gg/syntax.hpp"

namespace gg {

/// First syntax error in the input. No recovery is attempted.
class ParseError : public std::runtime_error {
public:
    ParseError(SourceSpan span, std::vector<std::string> expected, std::string found);

    SourceSpan span;
    std::vector<std::string> expected;
    std::string found;
};

Program parseProgram(std::string_view text, const std::string &filename);
TermPtr parseTerm(std::string_view text, const std::string &filename = "<term>");
TypePtr parseType(std::string_view text, const std::string &filename = "<type>");

} // namespace gg
