#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gg/syntax.hpp"

namespace gg::verify {

struct Failure {
    std::size_t trial;
    std::string inputs;
    std::string left;
    std::string right;
};

/// Outcome of a property run. Identical (seed, trials) give identical reports.
struct Report {
    std::string property;
    std::size_t trials = 0;
    std::vector<Failure> failures;
    std::uint64_t seed = 0;

    bool passed() const { return failures.empty(); }
};

/// Line-oriented rendering, one failure per line.
std::string formatReport(const Report &r);
/// Single-line JSON summary: property, trials, failures count, seed.
std::string reportSummaryJson(const Report &r);

/// The fuzz target's signature is not the one the property needs.
class SignatureMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The law generator could not produce a well-typed instance. Distinct from
/// a law failure.
class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::int64_t kSampleMin = -1000;
inline constexpr std::int64_t kSampleMax = 1000;

/// Noninterference, confidentiality direction: for `fnName : Int [Private] ->
/// Int [Public]`, distinct private inputs must give equal public outputs.
/// The program is type checked first.
Report fuzzConfidentiality(const Program &p, const std::string &fnName, std::size_t trials,
                           std::uint64_t seed);

/// Noninterference, integrity direction: `fnName : Int [Public] -> Int
/// *{Trusted}` must be constant over sampled public inputs.
Report fuzzIntegrity(const Program &p, const std::string &fnName, std::size_t trials,
                     std::uint64_t seed);

/// Relative-monad laws with reveal as unit and endorse as bind:
///   L1  endorse (reveal s) as x in b          ==  b[x := s]
///   L2  endorse e as x in reveal x            ==  e
///   L3  endorse (endorse e as x in f) as y in g
///                                             ==  endorse e as x in (endorse f as y in g)
Report checkMonadLaws(std::size_t trials, std::uint64_t seed);

/// Closed, well-typed term of goal `Int`, `Int [Public]` or `Int *{Trusted}`,
/// deterministic in the seed. Throws std::invalid_argument for other goals or
/// depth 0.
TermPtr genTerm(std::uint64_t seed, const TypePtr &goal, std::size_t depth);

} // namespace gg::verify
