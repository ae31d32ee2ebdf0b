#include "gg/verify.hpp"

#include <random>
#include <sstream>

#include <json.hpp>

#include "gg/evaluator.hpp"
#include "gg/pretty.hpp"
#include "gg/typechecker.hpp"
#include "gg/verify_testing.hpp"

namespace gg::verify {

std::string formatReport(const Report &r) {
    std::ostringstream out;
    out << "property: " << r.property << "\n";
    out << "seed: " << r.seed << "\n";
    out << "trials: " << r.trials << "\n";
    out << "failures: " << r.failures.size() << "\n";
    for (const auto &f : r.failures) {
        out << "  trial " << f.trial << ": " << f.inputs << ": " << f.left << " vs " << f.right
            << "\n";
    }
    out << "result: " << (r.passed() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

std::string reportSummaryJson(const Report &r) {
    nlohmann::ordered_json j;
    j["property"] = r.property;
    j["trials"] = r.trials;
    j["failures"] = r.failures.size();
    j["seed"] = r.seed;
    return j.dump();
}

namespace {

// Uniform enough for test sampling, and unlike std::uniform_int_distribution
// the sequence is fixed by the standard, so reports are portable.
std::int64_t draw(std::mt19937_64 &rng, std::int64_t lo, std::int64_t hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng() % span);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::string runToString(const Program &p, const std::string &fn, const ValuePtr &arg,
                        ValuePtr &out) {
    try {
        out = evalProgram(p, fn, {arg});
        return formatValue(*out);
    } catch (const RuntimeError &e) {
        out = nullptr;
        return std::string("error(") + e.what() + ")";
    }
}

bool sameOutcome(const ValuePtr &a, const ValuePtr &b) { return a && b && valueEq(*a, *b); }

void requireSignature(const Program &p, const std::string &fnName, const TypePtr &want) {
    const FunDecl *f = p.findFunction(fnName);
    if (!f) {
        throw SignatureMismatch("no function named " + fnName);
    }
    if (!typeEq(*f->signature, *want)) {
        throw SignatureMismatch(fnName + " has type " + formatType(*f->signature) +
                                " but this property needs " + formatType(*want));
    }
}

TypePtr confidentialitySignature() {
    return ty::fun(ty::box(Grade::privateLevel(), ty::intType()),
                   ty::box(Grade::publicLevel(), ty::intType()));
}

TypePtr integritySignature() {
    return ty::fun(ty::box(Grade::publicLevel(), ty::intType()), ty::star(ty::intType()));
}

Report runConfidentiality(const Program &p, const std::string &fnName, std::size_t trials,
                          std::uint64_t seed) {
    requireSignature(p, fnName, confidentialitySignature());
    Report report{"confidentiality(" + fnName + ")", trials, {}, seed};
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < trials; ++k) {
        std::int64_t i = draw(rng, kSampleMin, kSampleMax);
        std::int64_t j = draw(rng, kSampleMin, kSampleMax);
        while (j == i) {
            j = draw(rng, kSampleMin, kSampleMax);
        }
        ValuePtr left;
        ValuePtr right;
        std::string ls = runToString(p, fnName, val::box(val::integer(i)), left);
        std::string rs = runToString(p, fnName, val::box(val::integer(j)), right);
        if (!sameOutcome(left, right)) {
            report.failures.push_back(
                {k, "[" + std::to_string(i) + "], [" + std::to_string(j) + "]", ls, rs});
        }
    }
    return report;
}

Report runIntegrity(const Program &p, const std::string &fnName, std::size_t trials,
                    std::uint64_t seed) {
    requireSignature(p, fnName, integritySignature());
    Report report{"integrity(" + fnName + ")", trials, {}, seed};
    std::mt19937_64 rng(seed);
    std::int64_t first = 0;
    ValuePtr reference;
    std::string referenceText;
    for (std::size_t k = 0; k < trials; ++k) {
        std::int64_t x = draw(rng, kSampleMin, kSampleMax);
        ValuePtr out;
        std::string text = runToString(p, fnName, val::box(val::integer(x)), out);
        if (k == 0) {
            first = x;
            reference = out;
            referenceText = text;
            if (!out) {
                report.failures.push_back({k, "[" + std::to_string(x) + "]", text, text});
            }
            continue;
        }
        if (!sameOutcome(reference, out)) {
            report.failures.push_back(
                {k, "[" + std::to_string(first) + "], [" + std::to_string(x) + "]",
                 referenceText, text});
        }
    }
    return report;
}

// ------------------------------
// term generation
// ------------------------------

class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    TermPtr intTerm(std::size_t depth) {
        if (depth <= 1) {
            return literal();
        }
        switch (pick(4)) {
        case 0:
            return literal();
        case 1:
            return term::prim(arithOp(), intTerm(depth - 1), intTerm(depth - 1));
        case 2:
            return term::prim(BinOp::Div, intTerm(depth - 1), nonZeroLiteral());
        default: {
            std::string v = fresh("v");
            return term::letBox(v, inferableBox(depth - 1),
                                term::prim(arithOp(), term::var(v), intTerm(depth - 1)));
        }
        }
    }

    TermPtr boxTerm(std::size_t depth) {
        if (depth <= 1) {
            return term::box(literal());
        }
        switch (pick(4)) {
        case 0:
            return term::box(intTerm(depth - 1));
        case 1:
            return term::reveal(starTerm(depth - 1));
        case 2: {
            std::string v = fresh("v");
            return term::letBox(
                v, inferableBox(depth - 1),
                term::box(term::prim(arithOp(), term::var(v), intTerm(depth - 1))));
        }
        default: {
            std::string x = fresh("x");
            return term::endorse(boxTerm(depth - 1), x, body(x, depth - 1));
        }
        }
    }

    TermPtr starTerm(std::size_t depth) { return term::trust(intTerm(depth > 1 ? depth - 1 : 1)); }

    /// Public box with `x : Int *{Trusted}` free and used exactly once.
    TermPtr body(const std::string &x, std::size_t depth) {
        std::size_t d = depth > 0 ? depth : 1;
        switch (pick(5)) {
        case 0:
            return term::reveal(term::var(x));
        case 1: {
            std::string v = fresh("v");
            return term::letBox(v, term::reveal(term::var(x)),
                                term::box(term::prim(arithOp(), term::var(v), intTerm(d))));
        }
        case 2: {
            std::string v = fresh("v");
            return term::letBox(v, term::reveal(term::var(x)),
                                term::box(term::prim(arithOp(), intTerm(d), term::var(v))));
        }
        case 3: {
            std::string v = fresh("v");
            std::string z = fresh("z");
            return term::letBox(
                v, term::reveal(term::var(x)),
                term::endorse(term::box(term::prim(arithOp(), term::var(v), intTerm(d))), z,
                              term::reveal(term::var(z))));
        }
        default: {
            std::string z = fresh("z");
            std::string w = fresh("w");
            return term::endorse(
                term::reveal(term::var(x)), z,
                term::letBox(w, term::reveal(term::var(z)),
                             term::box(term::prim(arithOp(), term::var(w), intTerm(d)))));
        }
        }
    }

    std::string fresh(const std::string &prefix) { return prefix + std::to_string(counter_++); }

private:
    // Boxes whose type can be inferred, for let-box bounds.
    TermPtr inferableBox(std::size_t depth) {
        if (depth <= 1 || pick(2) == 0) {
            return term::reveal(starTerm(depth));
        }
        std::string x = fresh("x");
        return term::endorse(boxTerm(depth - 1), x, body(x, depth - 1));
    }

    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
    TermPtr literal() { return term::intLit(draw(rng_, -9, 9)); }
    TermPtr nonZeroLiteral() {
        std::int64_t n = draw(rng_, 1, 9);
        return term::intLit(pick(2) == 0 ? n : -n);
    }
    BinOp arithOp() {
        static constexpr BinOp ops[] = {BinOp::Add, BinOp::Sub, BinOp::Mul};
        return ops[pick(3)];
    }

    std::mt19937_64 rng_;
    std::size_t counter_ = 0;
};

TypePtr publicInt() { return ty::box(Grade::publicLevel(), ty::intType()); }

void requireWellTyped(const TermPtr &t, const TypePtr &goal, const std::string &what) {
    try {
        checkTerm(Context{}, *t, goal);
    } catch (const TypeError &e) {
        throw GenerationError("generated " + what + " does not type check (" + e.message +
                              "): " + formatTerm(*t));
    }
}

std::string evalToString(const TermPtr &t, ValuePtr &out) {
    try {
        out = evalTerm(*t);
        return formatValue(*out);
    } catch (const RuntimeError &e) {
        out = nullptr;
        return std::string("error(") + e.what() + ")";
    }
}

void compareSides(Report &report, std::size_t trial, const std::string &law, const TermPtr &lhs,
                  const TermPtr &rhs) {
    requireWellTyped(lhs, publicInt(), law + " left side");
    requireWellTyped(rhs, publicInt(), law + " right side");
    ValuePtr l;
    ValuePtr r;
    std::string ls = evalToString(lhs, l);
    std::string rs = evalToString(rhs, r);
    if (!sameOutcome(l, r)) {
        report.failures.push_back(
            {trial, law + " " + formatTerm(*lhs) + " == " + formatTerm(*rhs), ls, rs});
    }
}

constexpr std::size_t kLawDepth = 3;

} // namespace

Report fuzzConfidentiality(const Program &p, const std::string &fnName, std::size_t trials,
                           std::uint64_t seed) {
    checkProgram(p);
    return runConfidentiality(p, fnName, trials, seed);
}

Report fuzzIntegrity(const Program &p, const std::string &fnName, std::size_t trials,
                     std::uint64_t seed) {
    checkProgram(p);
    return runIntegrity(p, fnName, trials, seed);
}

namespace testing {

Report fuzzConfidentialityUnchecked(const Program &p, const std::string &fnName,
                                    std::size_t trials, std::uint64_t seed) {
    return runConfidentiality(p, fnName, trials, seed);
}

Report fuzzIntegrityUnchecked(const Program &p, const std::string &fnName, std::size_t trials,
                              std::uint64_t seed) {
    return runIntegrity(p, fnName, trials, seed);
}

} // namespace testing

Report checkMonadLaws(std::size_t trials, std::uint64_t seed) {
    Report report{"relative-monad-laws", trials, {}, seed};
    for (std::size_t k = 0; k < trials; ++k) {
        Generator gen(splitmix64(seed ^ splitmix64(k)));

        // L1: endorse (reveal s) as x in b == b[x := s]
        TermPtr s = gen.starTerm(kLawDepth);
        std::string x1 = gen.fresh("x");
        TermPtr b = gen.body(x1, kLawDepth - 1);
        compareSides(report, k, "L1", term::endorse(term::reveal(s), x1, b), subst(b, x1, s));

        // L2: endorse e as x in reveal x == e
        TermPtr e = gen.boxTerm(kLawDepth);
        std::string x2 = gen.fresh("x");
        compareSides(report, k, "L2", term::endorse(e, x2, term::reveal(term::var(x2))), e);

        // L3: associativity, with x not free in g.
        TermPtr e3 = gen.boxTerm(kLawDepth);
        std::string x3 = gen.fresh("x");
        std::string y3 = gen.fresh("y");
        TermPtr f = gen.body(x3, kLawDepth - 1);
        TermPtr g = gen.body(y3, kLawDepth - 1);
        compareSides(report, k, "L3", term::endorse(term::endorse(e3, x3, f), y3, g),
                     term::endorse(e3, x3, term::endorse(f, y3, g)));
    }
    return report;
}

TermPtr genTerm(std::uint64_t seed, const TypePtr &goal, std::size_t depth) {
    if (depth == 0) {
        throw std::invalid_argument("genTerm needs depth >= 1");
    }
    Generator gen(seed);
    if (typeEq(*goal, *ty::intType())) {
        return gen.intTerm(depth);
    }
    if (typeEq(*goal, *publicInt())) {
        return gen.boxTerm(depth);
    }
    if (typeEq(*goal, *ty::star(ty::intType()))) {
        return gen.starTerm(depth);
    }
    throw std::invalid_argument("genTerm does not support goal " + formatType(*goal));
}

} // namespace gg::verify
