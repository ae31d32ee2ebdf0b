#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "gg/semiring.hpp"
#include "gg/syntax.hpp"

namespace gg {

enum class ErrorCode {
    E001, // structural misuse (parse errors, duplicate declarations)
    E101, // unbound variable, constructor or type
    E102, // type mismatch
    E103, // linearity violation
    E104, // grade violation
    E105, // trust of a term with local dependencies
    E106, // cross-semiring promotion
    E107, // case alternatives disagree on usage
    E108, // semiring tag mismatch
};

const char *codeName(ErrorCode code);

class TypeError : public std::runtime_error {
public:
    TypeError(ErrorCode code, SourceSpan span, std::string message,
              std::optional<std::string> expected = std::nullopt,
              std::optional<std::string> actual = std::nullopt);

    ErrorCode code;
    SourceSpan span;
    std::string message;
    std::optional<std::string> expected;
    std::optional<std::string> actual;
};

/// `FILE:LINE:COL: error[CODE]: MESSAGE`
std::string formatDiagnostic(const TypeError &err);

// ------------------------------
// contexts
// ------------------------------

struct LinearBind {
    TypePtr type;
};
struct GradedBind {
    TypePtr type;
    SemiringTag tag;
};
struct GlobalBind {
    TypePtr type;
};
using Binding = std::variant<LinearBind, GradedBind, GlobalBind>;
using Context = std::map<std::string, Binding>;

struct LinearCount {
    std::uint64_t n;
    bool operator==(const LinearCount &) const = default;
};
struct GradeUse {
    Grade g;
    bool operator==(const GradeUse &) const = default;
};
using UsageEntry = std::variant<LinearCount, GradeUse>;

/// Synthesized demand per variable. Absent names have zero use.
using UsageContext = std::map<std::string, UsageEntry>;

/// Pointwise sum; E108 when entries for one name disagree on kind or tag.
UsageContext usageAdd(const UsageContext &a, const UsageContext &b);

/// Promotion scaling r * u. E103 for any linear use, E106 for a grade from a
/// different semiring than r.
UsageContext usageScale(Grade r, const UsageContext &u, const SourceSpan &span = {});

/// Drops zero entries so that contexts compare up to "absent = zero".
UsageContext usageNormalize(const UsageContext &u);

std::string formatUsage(const UsageContext &u);

/// Subsumption: boxes are covariant in payload and reverse the grade order,
/// functions are contravariant in the domain, stars are invariant.
bool typeLeq(const Type &actual, const Type &expected);

// ------------------------------
// checking
// ------------------------------

struct DataInfo {
    std::string name;
    std::vector<Constructor> constructors;
};

struct ConstructorInfo {
    std::string dataName;
    std::vector<TypePtr> fields;
};

/// Declarations visible to the checker: data types, constructors, and the
/// signatures of top-level functions.
struct Declarations {
    std::map<std::string, DataInfo> data;
    std::map<std::string, ConstructorInfo> constructors;
    std::map<std::string, TypePtr> functions;
};

struct Inferred {
    TypePtr type;
    UsageContext usage;
};

Inferred inferTerm(const Declarations &decls, const Context &ctx, const Term &t);
inline Inferred inferTerm(const Context &ctx, const Term &t) { return inferTerm({}, ctx, t); }

UsageContext checkTerm(const Declarations &decls, const Context &ctx, const Term &t,
                       const TypePtr &expected);
inline UsageContext checkTerm(const Context &ctx, const Term &t, const TypePtr &expected) {
    return checkTerm({}, ctx, t, expected);
}

/// Checks every declaration in order and returns the signature environment.
/// Functions may refer to themselves and to earlier functions.
std::map<std::string, TypePtr> checkProgram(const Program &p);

/// Declarations gathered without checking bodies.
Declarations collectDeclarations(const Program &p);

/// Context with every top-level function bound as a global.
Context globalContext(const Declarations &decls);

} // namespace gg
