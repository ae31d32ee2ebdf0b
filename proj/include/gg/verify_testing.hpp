#pragma once

// Test-only entry points. These skip type checking so that deliberately
// ill-typed witnesses can show the fuzzers detect real violations. Nothing
// outside the test suites includes this header.

#include "gg/verify.hpp"

namespace gg::verify::testing {

Report fuzzConfidentialityUnchecked(const Program &p, const std::string &fnName,
                                    std::size_t trials, std::uint64_t seed);

Report fuzzIntegrityUnchecked(const Program &p, const std::string &fnName, std::size_t trials,
                              std::uint64_t seed);

} // namespace gg::verify::testing
