#include <doctest.h>

#include <algorithm>

#include "gg/parser.hpp"
#include "gg/pretty.hpp"
#include "test_support.hpp"

using namespace gg;

namespace {

const FunDecl &onlyFunction(const Program &p) {
    REQUIRE(p.decls.size() == 1);
    return std::get<FunDecl>(p.decls[0]);
}

ParseError parseFailure(const std::string &text) {
    try {
        parseProgram(text, "in.gg");
    } catch (const ParseError &e) {
        return e;
    }
    FAIL("expected a parse error");
    throw;
}

} // namespace

TEST_CASE("patient data declaration") {
    Program p = parseProgram(R"(data Patient where
    Patient
      (Int    [Private]) -- Patient ID
      (String [Private]) -- Patient name
      (Int    [Public]);  -- Patient age
)",
                             "patient.gg");
    REQUIRE(p.decls.size() == 1);
    const auto &d = std::get<DataDecl>(p.decls[0]);
    CHECK(d.name == "Patient");
    REQUIRE(d.constructors.size() == 1);
    const auto &fields = d.constructors[0].fields;
    REQUIRE(fields.size() == 3);
    CHECK(typeEq(*fields[0], *ty::box(Grade::privateLevel(), ty::intType())));
    CHECK(typeEq(*fields[1], *ty::box(Grade::privateLevel(), ty::stringType())));
    CHECK(typeEq(*fields[2], *ty::box(Grade::publicLevel(), ty::intType())));
}

TEST_CASE("identity function") {
    Program p = parseProgram("f : Int -> Int\nf x = x", "f.gg");
    const auto &f = onlyFunction(p);
    CHECK(f.name == "f");
    CHECK(typeEq(*f.signature, *ty::fun(ty::intType(), ty::intType())));
    REQUIRE(f.params.size() == 1);
    CHECK(patternEq(*f.params[0], *pat::var("x")));
    CHECK(termEq(*f.body, *term::var("x")));
}

TEST_CASE("trusted parameter and reveal") {
    Program p = parseProgram("g : String *{Trusted} -> String [Public]\ng s = reveal s", "g.gg");
    const auto &g = onlyFunction(p);
    CHECK(typeEq(*g.signature, *ty::fun(ty::star(ty::stringType()),
                                        ty::box(Grade::publicLevel(), ty::stringType()))));
    CHECK(termEq(*g.body, *term::reveal(term::var("s"))));
}

TEST_CASE("parseTerm examples") {
    CHECK(termEq(*parseTerm("reveal (trust 42)"), *term::reveal(term::trust(term::intLit(42)))));
    CHECK(termEq(*parseTerm("endorse [5] as x in reveal x"),
                 *term::endorse(term::box(term::intLit(5)), "x", term::reveal(term::var("x")))));
    CHECK(termEq(*parseTerm("let [y] = [1 + 2] in [y]"),
                 *term::letBox("y",
                               term::box(term::prim(BinOp::Add, term::intLit(1), term::intLit(2))),
                               term::box(term::var("y")))));
}

TEST_CASE("operator precedence and associativity") {
    auto t = parseTerm("a - b - c * d / e ++ f == g");
    // ((((a - b) - ((c * d) / e)) ++ f) == g)
    auto cd = term::prim(BinOp::Div, term::prim(BinOp::Mul, term::var("c"), term::var("d")),
                         term::var("e"));
    auto ab = term::prim(BinOp::Sub, term::var("a"), term::var("b"));
    auto expected = term::prim(
        BinOp::Eq,
        term::prim(BinOp::Concat, term::prim(BinOp::Sub, ab, cd), term::var("f")),
        term::var("g"));
    CHECK(termEq(*t, *expected));
    CHECK(termEq(*parseTerm("f x y"),
                 *term::app(term::app(term::var("f"), term::var("x")), term::var("y"))));
    CHECK(termEq(*parseTerm("Cons p Nil"),
                 *term::ctor("Cons", {term::var("p"), term::ctor("Nil", {})})));
}

TEST_CASE("negative literals only at operand heads") {
    CHECK(termEq(*parseTerm("-5"), *term::intLit(-5)));
    CHECK(termEq(*parseTerm("x -5"), *term::prim(BinOp::Sub, term::var("x"), term::intLit(5))));
    CHECK(termEq(*parseTerm("3 * -2"), *term::prim(BinOp::Mul, term::intLit(3), term::intLit(-2))));
    CHECK(termEq(*parseTerm("f (-2)"), *term::app(term::var("f"), term::intLit(-2))));
    CHECK_THROWS_AS(parseProgram("f : Int -> Int\nf -1 = 0", "neg.gg"), ParseError);
}

TEST_CASE("patterns") {
    auto t = parseTerm("case p of | Cons [[x]] Nil -> x | (Pair _ 3) -> 0 | y -> y");
    const auto &c = std::get<Case>(t->node);
    REQUIRE(c.alternatives.size() == 3);
    CHECK(patternEq(*c.alternatives[0].pattern,
                    *pat::ctor("Cons", {pat::box(pat::box(pat::var("x"))), pat::ctor("Nil", {})})));
    CHECK(patternEq(*c.alternatives[1].pattern,
                    *pat::ctor("Pair", {pat::wild(), pat::intLit(3)})));
    CHECK(patternEq(*c.alternatives[2].pattern, *pat::var("y")));
}

TEST_CASE("string escapes") {
    auto t = parseTerm(R"("a\"b\\c\nd")");
    CHECK(std::get<StrLit>(t->node).value == "a\"b\\c\nd");
    CHECK_THROWS_AS(parseTerm(R"("bad \t")"), ParseError);
    CHECK_THROWS_AS(parseTerm("\"open"), ParseError);
}

TEST_CASE("postfix modalities nest to the left") {
    CHECK(typeEq(*parseType("Int [Private] [Public]"),
                 *ty::box(Grade::publicLevel(), ty::box(Grade::privateLevel(), ty::intType()))));
    CHECK(typeEq(*parseType("Int [2] *{Trusted} -> Int"),
                 *ty::fun(ty::star(ty::box(Grade::usage(2), ty::intType())), ty::intType())));
    CHECK(typeEq(*parseType("(Int -> Int) -> Int"),
                 *ty::fun(ty::fun(ty::intType(), ty::intType()), ty::intType())));
}

TEST_CASE("declarations are delimited by column 1") {
    Program p = parseProgram("f : Int -> Int\nf x =\n  g\n  x\ng : Int -> Int\ng y = y\n", "cols.gg");
    REQUIRE(p.decls.size() == 2);
    CHECK(termEq(*std::get<FunDecl>(p.decls[0]).body, *term::app(term::var("g"), term::var("x"))));
}

TEST_CASE("parse errors carry spans and expectations") {
    ParseError e = parseFailure("f : Int -> Int\nf x = x +\n");
    CHECK(e.span.file == "in.gg");
    CHECK(e.found == "end of input");

    e = parseFailure("f : Int -> Int\ng x = x\n");
    CHECK(e.span.startLine == 2);
    CHECK(e.span.startCol == 1);
    CHECK(e.expected == std::vector<std::string>{"a definition of 'f'"});

    e = parseFailure("f : Int [Secret] -> Int\nf x = x\n");
    CHECK(e.span.startLine == 1);
    CHECK(e.span.startCol == 10);
    CHECK(e.found == "'Secret'");

    e = parseFailure("  f : Int\n");
    CHECK(e.expected == std::vector<std::string>{"a declaration starting at column 1"});

    e = parseFailure("f : Int -> Int\nf x = (x\nh : Int\nh = 1\n");
    CHECK(e.found == "end of declaration");
    CHECK(e.span.startLine == 3);

    e = parseFailure("f : Int\nf = 1 $ 2\n");
    CHECK(e.span.startCol == 7);
    CHECK(e.found == "'$'");

    e = parseFailure("f : Int *{Untrusted}\nf = 1\n");
    CHECK(e.found == "'Untrusted'");
}

TEST_CASE("parsing is deterministic") {
    const std::string text = test::readCorpus("meanAge.gg");
    CHECK(programEq(parseProgram(text, "a.gg"), parseProgram(text, "a.gg")));
    for (int i = 0; i < 3; ++i) {
        try {
            parseProgram("f : Int\nf = (1", "bad.gg");
            FAIL("expected parse error");
        } catch (const ParseError &e) {
            CHECK(std::string(e.what()) == "expected ')', found end of input");
        }
    }
}

TEST_CASE("pretty printing round-trips every corpus file") {
    for (const auto &name : test::corpusFiles()) {
        CAPTURE(name);
        Program first = parseProgram(test::readCorpus(name), name);
        std::string printed = formatProgram(first);
        Program second = parseProgram(printed, name);
        CHECK(programEq(first, second));
        CHECK(formatProgram(second) == printed);
    }
}

TEST_CASE("pretty printing round-trips awkward terms") {
    const std::vector<std::string> terms = {
        "case a of | 0 -> (case b of | 1 -> 2) | n -> n",
        "case a of | 0 -> (\\x -> x) | n -> endorse n as t in reveal t",
        "f (-3) (g x) [y] (trust 2)",
        "a - (b - c) * (d + e)",
        "endorse (case e of | [x] -> [x]) as t in let [v] = reveal t in [v]",
        "Cons (Patient [1] [\"A\\\"\"] a) Nil",
        "(reveal (f x)) ++ y",
        "g (reveal x) (trust (h y))",
        "let [a] = let [b] = c in d in a",
    };
    for (const auto &src : terms) {
        CAPTURE(src);
        auto t = parseTerm(src);
        CHECK(termEq(*parseTerm(formatTerm(*t)), *t));
    }
}
