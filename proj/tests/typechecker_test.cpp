#include <doctest.h>

#include "gg/parser.hpp"
#include "gg/typechecker.hpp"
#include "gg/verify.hpp"
#include "test_support.hpp"

using namespace gg;

namespace {

const Grade Pub = Grade::publicLevel();
const Grade Priv = Grade::privateLevel();

ErrorCode programError(const std::string &text) {
    Program p = parseProgram(text, "t.gg");
    try {
        checkProgram(p);
    } catch (const TypeError &e) {
        return e.code;
    }
    FAIL("program was accepted: " << text);
    return ErrorCode::E001;
}

void accepts(const std::string &text) {
    Program p = parseProgram(text, "t.gg");
    CHECK_NOTHROW(checkProgram(p));
}

ErrorCode termError(const Context &ctx, const std::string &src, const TypePtr &expected) {
    try {
        checkTerm(ctx, *parseTerm(src), expected);
    } catch (const TypeError &e) {
        return e.code;
    }
    FAIL("term was accepted: " << src);
    return ErrorCode::E001;
}

// Independent count of free occurrences of a name.
int occurrences(const Term &t, const std::string &x) {
    return std::visit(
        [&](const auto &n) -> int {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Var>) {
                return n.name == x ? 1 : 0;
            } else if constexpr (std::is_same_v<N, PrimOp>) {
                return occurrences(*n.lhs, x) + occurrences(*n.rhs, x);
            } else if constexpr (std::is_same_v<N, App>) {
                return occurrences(*n.fun, x) + occurrences(*n.arg, x);
            } else {
                return 0;
            }
        },
        t.node);
}

} // namespace

TEST_CASE("inferTerm examples") {
    Inferred r = inferTerm({}, *parseTerm("reveal (trust 42)"));
    CHECK(typeEq(*r.type, *ty::box(Pub, ty::intType())));
    CHECK(r.usage.empty());

    Context ctx{{"e", LinearBind{ty::box(Pub, ty::intType())}}};
    r = inferTerm(ctx, *parseTerm("endorse e as x in reveal x"));
    CHECK(typeEq(*r.type, *ty::box(Pub, ty::intType())));
    CHECK(r.usage == UsageContext{{"e", LinearCount{1}}});

    Context local{{"y", LinearBind{ty::intType()}}};
    try {
        inferTerm(local, *parseTerm("trust y"));
        FAIL("trust of a local was accepted");
    } catch (const TypeError &e) {
        CHECK(e.code == ErrorCode::E105);
    }
    Context graded{{"y", GradedBind{ty::intType(), SemiringTag::Security}}};
    CHECK_THROWS_AS(inferTerm(graded, *parseTerm("trust y")), TypeError);
}

TEST_CASE("checkTerm examples") {
    Context ctx{{"x", GradedBind{ty::intType(), SemiringTag::Security}}};
    CHECK(checkTerm(ctx, *parseTerm("[x]"), ty::box(Priv, ty::intType())) ==
          UsageContext{{"x", GradeUse{semiring::mul(Priv, Pub)}}});
    CHECK(checkTerm(ctx, *parseTerm("[x]"), ty::box(Priv, ty::intType())) ==
          UsageContext{{"x", GradeUse{Priv}}});

    CHECK(checkTerm({}, *parseTerm("trust \"a\""), ty::star(ty::stringType())).empty());

    Context usage{{"x", GradedBind{ty::intType(), SemiringTag::Usage}}};
    for (const std::string src : {"x", "x + x", "x * x + x", "x - x - x - x"}) {
        TermPtr t = parseTerm(src);
        UsageContext u = checkTerm(usage, *t, ty::intType());
        int expected = occurrences(*t, "x");
        CHECK(u == UsageContext{{"x", GradeUse{Grade::usage(expected)}}});
    }
}

TEST_CASE("typeLeq examples") {
    auto i = ty::intType();
    CHECK(typeLeq(*ty::box(Pub, i), *ty::box(Priv, i)));
    CHECK_FALSE(typeLeq(*ty::box(Priv, i), *ty::box(Pub, i)));
    CHECK(typeLeq(*ty::fun(ty::box(Priv, i), i), *ty::fun(ty::box(Pub, i), i)));
    CHECK_FALSE(typeLeq(*ty::fun(ty::box(Pub, i), i), *ty::fun(ty::box(Priv, i), i)));
    CHECK_FALSE(typeLeq(*ty::star(ty::box(Pub, i)), *ty::star(ty::box(Priv, i))));
    CHECK(typeLeq(*ty::box(Grade::usage(2), i), *ty::box(Grade::usage(2), i)));
    CHECK_FALSE(typeLeq(*ty::box(Grade::usage(3), i), *ty::box(Grade::usage(2), i)));
    CHECK_FALSE(typeLeq(*ty::box(Pub, i), *ty::box(Grade::usage(1), i)));
    CHECK_FALSE(typeLeq(*ty::box(Pub, i), *i));
}

TEST_CASE("usageAdd examples") {
    CHECK(usageAdd({{"x", LinearCount{1}}}, {{"x", LinearCount{1}}}) ==
          UsageContext{{"x", LinearCount{2}}});
    CHECK(usageAdd({{"x", GradeUse{Pub}}}, {}) == UsageContext{{"x", GradeUse{Pub}}});
    CHECK(usageAdd({{"x", GradeUse{Priv}}}, {{"x", GradeUse{Pub}}}) ==
          UsageContext{{"x", GradeUse{Pub}}});
    CHECK(usageAdd({{"x", LinearCount{1}}}, {{"y", GradeUse{Priv}}}) ==
          UsageContext{{"x", LinearCount{1}}, {"y", GradeUse{Priv}}});
    try {
        usageAdd({{"x", GradeUse{Pub}}}, {{"x", GradeUse{Grade::usage(1)}}});
        FAIL("mixed tags were added");
    } catch (const TypeError &e) {
        CHECK(e.code == ErrorCode::E108);
    }
}

TEST_CASE("usageScale examples") {
    CHECK(usageScale(Pub, {{"x", GradeUse{Priv}}}) == UsageContext{{"x", GradeUse{Priv}}});
    CHECK(usageScale(Priv, {{"x", GradeUse{Pub}}}) == UsageContext{{"x", GradeUse{Priv}}});
    CHECK(usageScale(Grade::usage(3), {{"x", GradeUse{Grade::usage(2)}}}) ==
          UsageContext{{"x", GradeUse{Grade::usage(6)}}});
    try {
        usageScale(Pub, {{"x", GradeUse{Grade::usage(2)}}});
        FAIL("cross-semiring scaling was accepted");
    } catch (const TypeError &e) {
        CHECK(e.code == ErrorCode::E106);
    }
    try {
        usageScale(Pub, {{"x", LinearCount{1}}});
        FAIL("linear use under promotion was accepted");
    } catch (const TypeError &e) {
        CHECK(e.code == ErrorCode::E103);
    }
}

TEST_CASE("usage addition is commutative and associative") {
    std::vector<UsageContext> samples = {
        {},
        {{"x", GradeUse{Pub}}},
        {{"x", GradeUse{Priv}}},
        {{"x", GradeUse{Priv}}, {"y", GradeUse{Pub}}},
        {{"y", GradeUse{Priv}}},
    };
    for (const auto &a : samples) {
        for (const auto &b : samples) {
            CHECK(usageNormalize(usageAdd(a, b)) == usageNormalize(usageAdd(b, a)));
            for (const auto &c : samples) {
                CHECK(usageNormalize(usageAdd(usageAdd(a, b), c)) ==
                      usageNormalize(usageAdd(a, usageAdd(b, c))));
            }
        }
    }
}

TEST_CASE("confidentiality leak is rejected at the binder") {
    Program p = parseProgram(test::readCorpus("leak.gg"), "leak.gg");
    try {
        checkProgram(p);
        FAIL("leak was accepted");
    } catch (const TypeError &e) {
        CHECK(e.code == ErrorCode::E104);
        CHECK(formatDiagnostic(e).rfind("leak.gg:2:", 0) == 0);
        CHECK(formatDiagnostic(e).find(": error[E104]: ") != std::string::npos);
    }
}

TEST_CASE("flatten composes nested grades") {
    accepts(test::readCorpus("flatten.gg"));
    CHECK(programError(test::readCorpus("flattenMirror.gg")) == ErrorCode::E104);
}

TEST_CASE("linearity and exact usage") {
    CHECK(programError(test::readCorpus("linearBad.gg")) == ErrorCode::E103);
    accepts(test::readCorpus("usageTwice.gg"));
    CHECK(programError(test::readCorpus("usageOnce.gg")) == ErrorCode::E104);
    CHECK(programError("drop : Int -> Int\ndrop x = 1\n") == ErrorCode::E103);
    CHECK(programError("drop : Int -> Int\ndrop _ = 1\n") == ErrorCode::E103);
    accepts("drop : Int [Public] -> Int\ndrop [x] = 1\n");
    accepts("drop : Int [Private] -> Int\ndrop [_] = 1\n");
    accepts("drop : Int [0] -> Int\ndrop [x] = 1\n");
    CHECK(programError("drop : Int [1] -> Int\ndrop [x] = 1\n") == ErrorCode::E104);
    CHECK(programError("lam : Int -> Int -> Int\nlam x = \\y -> x\n") == ErrorCode::E103);
}

TEST_CASE("trust and endorse") {
    accepts(test::readCorpus("addPatient.gg"));
    CHECK(programError(test::readCorpus("addPatientUntrusted.gg")) == ErrorCode::E102);
    CHECK(programError(test::readCorpus("trustLocal.gg")) == ErrorCode::E105);
    CHECK(programError(test::readCorpus("smuggle.gg")) == ErrorCode::E102);
    accepts("k : Int\nk = 3\nt : Int *{Trusted}\nt = trust k\n");
    CHECK(programError("f : Int [Private] -> Int [Public]\n"
                       "f v = endorse v as t in reveal t\n") == ErrorCode::E102);
    CHECK(programError("f : Int [Public] -> Int [Public]\n"
                       "f v = endorse v as t in [1]\n") == ErrorCode::E103);
    accepts("f : Int *{Trusted} -> Int [Private]\nf s = reveal s\n");
}

TEST_CASE("promotion and case rules") {
    CHECK(programError("f : Int [2] -> Int [Public]\nf [x] = [x]\n") == ErrorCode::E106);
    CHECK(programError("f : Int -> Int [Public]\nf x = [x]\n") == ErrorCode::E103);
    CHECK(programError("f : Int [Public] -> Int -> Int\n"
                       "f [a] n = case n of | 0 -> a | k -> k\n") == ErrorCode::E107);
    CHECK(programError("f : Int [Public] -> Int\nf [a] = a ++ \"s\"\n") == ErrorCode::E102);
    CHECK(programError("f : Int -> Int\nf x = y\n") == ErrorCode::E101);
    CHECK(programError("f : Int -> Int\nf x = x\nf : Int -> Int\nf y = y\n") == ErrorCode::E001);
    CHECK(programError("f : Foo -> Int\nf x = 1\n") == ErrorCode::E101);
}

TEST_CASE("diagnostics are formatted with location and code") {
    TypeError e(ErrorCode::E103, SourceSpan{"a.gg", 3, 5, 3, 9}, "linear variable 'x' used twice");
    CHECK(formatDiagnostic(e) == "a.gg:3:5: error[E103]: linear variable 'x' used twice");
}

TEST_CASE("approximation direction: Public results may be used as Private") {
    const auto pubInt = ty::box(Pub, ty::intType());
    const auto privInt = ty::box(Priv, ty::intType());
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        TermPtr t = verify::genTerm(seed, pubInt, 3);
        CAPTURE(seed);
        REQUIRE_NOTHROW(checkTerm({}, *t, pubInt));
        CHECK_NOTHROW(checkTerm({}, *t, privInt));
    }
    Context ctx{{"x", GradedBind{ty::intType(), SemiringTag::Security}}};
    CHECK_NOTHROW(checkTerm(ctx, *parseTerm("[x]"), privInt));
    CHECK(termError(Context{{"x", LinearBind{ty::intType()}}}, "[x]", privInt) == ErrorCode::E103);
    CHECK(termError(Context{{"x", GradedBind{ty::intType(), SemiringTag::Usage}}}, "[x]",
                    privInt) == ErrorCode::E106);
    // The converse fails on the leak witness.
    CHECK_THROWS_AS(checkProgram(parseProgram(test::readCorpus("leak.gg"), "leak.gg")), TypeError);
}

TEST_CASE("every accepted corpus program checks deterministically") {
    for (const auto &name : test::corpusFiles()) {
        CAPTURE(name);
        Program p = parseProgram(test::readCorpus(name), name);
        std::string first, second;
        for (std::string *out : {&first, &second}) {
            try {
                checkProgram(p);
                *out = "OK";
            } catch (const TypeError &e) {
                *out = formatDiagnostic(e);
            }
        }
        CHECK(first == second);
    }
}
