#include "gg/semiring.hpp"

#include <limits>

namespace gg {

std::string Grade::toString() const {
    switch (kind_) {
    case Kind::Public:
        return "Public";
    case Kind::Private:
        return "Private";
    case Kind::Usage:
        return std::to_string(count_);
    }
    return "?";
}

std::string toString(SemiringTag tag) {
    return tag == SemiringTag::Security ? "Security" : "Usage";
}

GradeTagMismatch::GradeTagMismatch(Grade l, Grade r)
    : std::invalid_argument("grade tag mismatch: " + l.toString() + " (" + gg::toString(l.tag()) +
                            ") vs " + r.toString() + " (" + gg::toString(r.tag()) + ")"),
      lhs(l), rhs(r) {}

namespace semiring {

namespace {

void requireSameTag(Grade a, Grade b) {
    if (a.tag() != b.tag()) {
        throw GradeTagMismatch(a, b);
    }
}

std::uint64_t saturatingAdd(std::uint64_t a, std::uint64_t b) {
    constexpr auto max = std::numeric_limits<std::uint64_t>::max();
    return a > max - b ? max : a + b;
}

std::uint64_t saturatingMul(std::uint64_t a, std::uint64_t b) {
    constexpr auto max = std::numeric_limits<std::uint64_t>::max();
    if (a == 0 || b == 0) {
        return 0;
    }
    return a > max / b ? max : a * b;
}

} // namespace

Grade zero(SemiringTag tag) {
    return tag == SemiringTag::Security ? Grade::privateLevel() : Grade::usage(0);
}

Grade one(SemiringTag tag) {
    return tag == SemiringTag::Security ? Grade::publicLevel() : Grade::usage(1);
}

// Security: + is meet, Private is its unit, so the sum is Public iff either side is.
Grade add(Grade a, Grade b) {
    requireSameTag(a, b);
    if (a.tag() == SemiringTag::Usage) {
        return Grade::usage(saturatingAdd(a.count(), b.count()));
    }
    bool anyPublic = a.kind() == Grade::Kind::Public || b.kind() == Grade::Kind::Public;
    return anyPublic ? Grade::publicLevel() : Grade::privateLevel();
}

// Security: * is join, Public is its unit and Private annihilates.
Grade mul(Grade a, Grade b) {
    requireSameTag(a, b);
    if (a.tag() == SemiringTag::Usage) {
        return Grade::usage(saturatingMul(a.count(), b.count()));
    }
    bool anyPrivate = a.kind() == Grade::Kind::Private || b.kind() == Grade::Kind::Private;
    return anyPrivate ? Grade::privateLevel() : Grade::publicLevel();
}

bool leq(Grade a, Grade b) {
    requireSameTag(a, b);
    if (a == b) {
        return true;
    }
    return a.kind() == Grade::Kind::Private && b.kind() == Grade::Kind::Public;
}

} // namespace semiring

} // namespace gg
