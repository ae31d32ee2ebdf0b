#pragma once

#include <string>

#include "gg/syntax.hpp"

namespace gg {

// Printers emit the accepted surface syntax, so their output reparses to the
// same tree.

std::string formatTerm(const Term &t);
std::string formatPattern(const Pattern &p);
std::string formatProgram(const Program &p);
std::string quoteString(const std::string &s);

} // namespace gg
