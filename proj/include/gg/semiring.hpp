#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gg {

enum class SemiringTag { Security, Usage };

/// An element of one of the two grading semirings. Security grades form the
/// two-point confidentiality semiring (0 = Private, 1 = Public); Usage grades
/// are exact natural-number use counts.
class Grade {
public:
    enum class Kind : std::uint8_t { Public, Private, Usage };

    static constexpr Grade publicLevel() { return Grade(Kind::Public, 0); }
    static constexpr Grade privateLevel() { return Grade(Kind::Private, 0); }
    static constexpr Grade usage(std::uint64_t n) { return Grade(Kind::Usage, n); }

    constexpr Kind kind() const { return kind_; }
    constexpr SemiringTag tag() const {
        return kind_ == Kind::Usage ? SemiringTag::Usage : SemiringTag::Security;
    }
    /// Only meaningful for Usage grades.
    constexpr std::uint64_t count() const { return count_; }

    constexpr bool operator==(const Grade &) const = default;

    std::string toString() const;

private:
    constexpr Grade(Kind k, std::uint64_t n) : kind_(k), count_(n) {}

    Kind kind_;
    std::uint64_t count_;
};

std::string toString(SemiringTag tag);

/// Raised when a semiring operation receives grades from different carriers.
class GradeTagMismatch : public std::invalid_argument {
public:
    GradeTagMismatch(Grade lhs, Grade rhs);

    Grade lhs;
    Grade rhs;
};

namespace semiring {

Grade zero(SemiringTag tag);
Grade one(SemiringTag tag);

Grade add(Grade a, Grade b);
Grade mul(Grade a, Grade b);

/// Approximation preorder. Security: Private <= Public plus reflexivity.
/// Usage: equality.
bool leq(Grade a, Grade b);

} // namespace semiring

} // namespace gg
