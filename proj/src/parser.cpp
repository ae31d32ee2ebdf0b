#include "gg/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>

namespace gg {

namespace {

std::string describeExpected(const std::vector<std::string> &expected) {
    std::string out;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i > 0) {
            out += i + 1 == expected.size() ? " or " : ", ";
        }
        out += expected[i];
    }
    return out;
}

} // namespace

ParseError::ParseError(SourceSpan s, std::vector<std::string> exp, std::string f)
    : std::runtime_error("expected " + describeExpected(exp) + ", found " + f),
      span(std::move(s)), expected(std::move(exp)), found(std::move(f)) {}

namespace {

// ------------------------------
// lexer
// ------------------------------

enum class Tok {
    LowerId,
    UpperId,
    Int,
    Str,
    Keyword,
    Symbol,
    Wildcard,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
    std::int64_t intValue = 0;
    // The token is the first one on a line at column 1, so it starts a new
    // declaration.
    bool startsDecl = false;
};

const std::vector<std::string> kKeywords = {"data",    "where",  "let",   "in",   "endorse",
                                            "as",      "reveal", "trust", "case", "of"};

// Longest symbols first so that "->" wins over "-".
const std::vector<std::string> kSymbols = {"*{", "->", "==", "++", "\\", "=", ":", ";", "|",
                                           "[",  "]",  "(",  ")",  "}",  "*", "/", "+", "-"};

class Lexer {
public:
    Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skipTrivia();
            if (pos_ >= text_.size()) {
                Token end{Tok::End, "end of input", span(line_, col_, line_, col_)};
                end.startsDecl = true;
                out.push_back(std::move(end));
                return out;
            }
            out.push_back(next());
        }
    }

private:
    SourceSpan span(int l1, int c1, int l2, int c2) const { return {file_, l1, c1, l2, c2}; }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skipTrivia() {
        while (pos_ < text_.size()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '-' && peek(1) == '-') {
                while (pos_ < text_.size() && peek() != '\n') {
                    advance();
                }
            } else {
                return;
            }
        }
    }

    Token next() {
        int line = line_;
        int col = col_;
        auto finish = [&](Tok kind, std::string text) {
            Token tok{kind, std::move(text), span(line, col, line_, col_ - 1)};
            tok.startsDecl = col == 1;
            return tok;
        };
        char c = peek();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                   peek() == '\'') {
                word += peek();
                advance();
            }
            if (word == "_") {
                return finish(Tok::Wildcard, word);
            }
            if (std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end()) {
                return finish(Tok::Keyword, word);
            }
            bool upper = std::isupper(static_cast<unsigned char>(word[0]));
            return finish(upper ? Tok::UpperId : Tok::LowerId, word);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                digits += peek();
                advance();
            }
            Token tok = finish(Tok::Int, digits);
            auto [ptr, ec] =
                std::from_chars(digits.data(), digits.data() + digits.size(), tok.intValue);
            if (ec != std::errc{}) {
                throw ParseError(tok.span, {"integer literal within 64-bit range"}, digits);
            }
            return tok;
        }
        if (c == '"') {
            return lexString(line, col);
        }
        for (const auto &sym : kSymbols) {
            if (text_.substr(pos_, sym.size()) == sym) {
                for (std::size_t i = 0; i < sym.size(); ++i) {
                    advance();
                }
                return finish(Tok::Symbol, sym);
            }
        }
        advance();
        throw ParseError(span(line, col, line, col), {"a token"}, "'" + std::string(1, c) + "'");
    }

    Token lexString(int line, int col) {
        advance();
        std::string value;
        while (true) {
            if (pos_ >= text_.size() || peek() == '\n') {
                throw ParseError(span(line, col, line_, col_), {"closing '\"'"}, "end of line");
            }
            char c = peek();
            advance();
            if (c == '"') {
                break;
            }
            if (c == '\\') {
                char e = peek();
                if (e == '"' || e == '\\') {
                    value += e;
                } else if (e == 'n') {
                    value += '\n';
                } else {
                    throw ParseError(span(line_, col_ - 1, line_, col_),
                                     {"escape \\\", \\\\ or \\n"}, "'\\" + std::string(1, e) + "'");
                }
                advance();
                continue;
            }
            value += c;
        }
        Token tok{Tok::Str, value, span(line, col, line_, col_ - 1)};
        tok.startsDecl = col == 1;
        return tok;
    }

    std::string_view text_;
    std::string file_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

// ------------------------------
// parser
// ------------------------------

SourceSpan join(const SourceSpan &a, const SourceSpan &b) {
    return {a.file, a.startLine, a.startCol, b.endLine, b.endCol};
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    Program program() {
        Program prog;
        while (!atEnd()) {
            if (!cur().startsDecl) {
                fail({"a declaration starting at column 1"});
            }
            if (isKeyword("data")) {
                prog.decls.emplace_back(dataDecl());
            } else {
                prog.decls.emplace_back(funDecl());
            }
        }
        return prog;
    }

    TermPtr standaloneTerm() {
        inDecl_ = false;
        TermPtr t = parseTermExpr();
        if (!atEnd()) {
            fail({"end of input"});
        }
        return t;
    }

    TypePtr standaloneType() {
        inDecl_ = false;
        TypePtr t = type();
        if (!atEnd()) {
            fail({"end of input"});
        }
        return t;
    }

private:
    // Inside a declaration any token at column 1 behaves like end of input.
    const Token &cur() const {
        const Token &t = toks_[pos_];
        if (inDecl_ && t.startsDecl && pos_ != declStart_) {
            return toks_.back();
        }
        return t;
    }
    const Token &peekAt(std::size_t ahead) const {
        std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
        for (std::size_t j = pos_ + 1; j <= i; ++j) {
            if (inDecl_ && toks_[j].startsDecl) {
                return toks_.back();
            }
        }
        return toks_[i];
    }
    bool atEnd() const { return cur().kind == Tok::End; }

    // Span of the current token, even when it is hidden by a declaration boundary.
    const SourceSpan &curSpan() const { return toks_[pos_].span; }
    std::string curText() const {
        if (cur().kind == Tok::End) {
            return atDeclBoundary() ? "end of declaration" : "end of input";
        }
        if (cur().kind == Tok::Str) {
            return "string literal";
        }
        return "'" + cur().text + "'";
    }
    bool atDeclBoundary() const { return toks_[pos_].kind != Tok::End; }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        throw ParseError(curSpan(), std::move(expected), curText());
    }

    const Token &advance() {
        const Token &t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) {
            ++pos_;
        }
        lastSpan_ = t.span;
        return t;
    }

    bool isSymbol(std::string_view s) const {
        return cur().kind == Tok::Symbol && cur().text == s;
    }
    bool isKeyword(std::string_view s) const {
        return cur().kind == Tok::Keyword && cur().text == s;
    }

    const Token &expectSymbol(const std::string &s) {
        if (!isSymbol(s)) {
            fail({"'" + s + "'"});
        }
        return advance();
    }
    const Token &expectKeyword(const std::string &s) {
        if (!isKeyword(s)) {
            fail({"'" + s + "'"});
        }
        return advance();
    }
    const Token &expect(Tok kind, const std::string &what) {
        if (cur().kind != kind) {
            fail({what});
        }
        return advance();
    }

    void beginDecl() {
        inDecl_ = true;
        declStart_ = pos_;
    }

    // data UPPERID where { UPPERID { atype } ";" }
    DataDecl dataDecl() {
        beginDecl();
        SourceSpan start = advance().span;
        DataDecl decl;
        decl.name = expect(Tok::UpperId, "a type name").text;
        expectKeyword("where");
        while (cur().kind == Tok::UpperId) {
            Constructor c;
            c.span = cur().span;
            c.name = advance().text;
            while (startsAtype()) {
                c.fields.push_back(atype());
            }
            c.span = join(c.span, lastSpan_);
            expectSymbol(";");
            decl.constructors.push_back(std::move(c));
        }
        if (!atEnd()) {
            fail({"a constructor name", "end of declaration"});
        }
        decl.span = join(start, lastSpan_);
        inDecl_ = false;
        return decl;
    }

    // funSig funDef, each starting at column 1.
    FunDecl funDecl() {
        beginDecl();
        FunDecl decl;
        const Token &nameTok = expect(Tok::LowerId, "a declaration");
        decl.name = nameTok.text;
        SourceSpan start = nameTok.span;
        expectSymbol(":");
        decl.signature = type();
        decl.signatureSpan = join(start, lastSpan_);
        if (!atEnd()) {
            fail({"'->'", "end of signature"});
        }
        if (toks_[pos_].kind == Tok::End) {
            fail({"a definition of '" + decl.name + "'"});
        }
        beginDecl();
        if (cur().kind != Tok::LowerId || cur().text != decl.name) {
            fail({"a definition of '" + decl.name + "'"});
        }
        SourceSpan defStart = advance().span;
        while (!isSymbol("=")) {
            if (!startsApat()) {
                fail({"a parameter pattern", "'='"});
            }
            decl.params.push_back(apat());
        }
        advance();
        decl.body = parseTermExpr();
        if (!atEnd()) {
            fail({"end of declaration"});
        }
        decl.span = join(defStart, lastSpan_);
        inDecl_ = false;
        return decl;
    }

    // ------------------------------
    // types
    // ------------------------------

    bool startsAtype() const { return cur().kind == Tok::UpperId || isSymbol("("); }

    TypePtr type() {
        TypePtr dom = btype();
        if (isSymbol("->")) {
            advance();
            return ty::fun(std::move(dom), type());
        }
        return dom;
    }

    TypePtr btype() {
        TypePtr t = atype();
        while (true) {
            if (isSymbol("[")) {
                advance();
                Grade g = grade();
                expectSymbol("]");
                t = ty::box(g, std::move(t));
            } else if (isSymbol("*{")) {
                advance();
                if (cur().kind != Tok::UpperId || cur().text != "Trusted") {
                    fail({"'Trusted'"});
                }
                advance();
                expectSymbol("}");
                t = ty::star(std::move(t));
            } else {
                return t;
            }
        }
    }

    TypePtr atype() {
        if (isSymbol("(")) {
            advance();
            TypePtr t = type();
            expectSymbol(")");
            return t;
        }
        if (cur().kind != Tok::UpperId) {
            fail({"a type"});
        }
        std::string name = advance().text;
        if (name == "Int") {
            return ty::intType();
        }
        if (name == "String") {
            return ty::stringType();
        }
        return ty::data(std::move(name));
    }

    Grade grade() {
        if (cur().kind == Tok::UpperId && cur().text == "Public") {
            advance();
            return Grade::publicLevel();
        }
        if (cur().kind == Tok::UpperId && cur().text == "Private") {
            advance();
            return Grade::privateLevel();
        }
        if (cur().kind == Tok::Int) {
            return Grade::usage(static_cast<std::uint64_t>(advance().intValue));
        }
        fail({"'Public'", "'Private'", "a natural number grade"});
    }

    // ------------------------------
    // patterns
    // ------------------------------

    bool startsApat() const {
        Tok k = cur().kind;
        return k == Tok::LowerId || k == Tok::UpperId || k == Tok::Wildcard || k == Tok::Int ||
               isSymbol("[") || isSymbol("(");
    }

    PatternPtr pattern() {
        if (cur().kind == Tok::UpperId) {
            SourceSpan start = cur().span;
            std::string name = advance().text;
            std::vector<PatternPtr> args;
            while (startsApat()) {
                args.push_back(apat());
            }
            return pat::ctor(std::move(name), std::move(args), join(start, lastSpan_));
        }
        return apat();
    }

    // Bare constructor names are accepted as nullary constructor patterns.
    PatternPtr apat() {
        const Token &t = cur();
        SourceSpan start = t.span;
        switch (t.kind) {
        case Tok::LowerId:
            return pat::var(advance().text, start);
        case Tok::UpperId:
            return pat::ctor(advance().text, {}, start);
        case Tok::Wildcard:
            advance();
            return pat::wild(start);
        case Tok::Int:
            return pat::intLit(advance().intValue, start);
        default:
            break;
        }
        if (isSymbol("[")) {
            advance();
            PatternPtr inner = apat();
            expectSymbol("]");
            return pat::box(std::move(inner), join(start, lastSpan_));
        }
        if (isSymbol("(")) {
            advance();
            PatternPtr inner = pattern();
            expectSymbol(")");
            return inner;
        }
        fail({"a pattern"});
    }

    // ------------------------------
    // terms
    // ------------------------------

    TermPtr parseTermExpr() {
        SourceSpan start = curSpan();
        if (isSymbol("\\")) {
            advance();
            std::string param = expect(Tok::LowerId, "a parameter name").text;
            expectSymbol("->");
            TermPtr body = parseTermExpr();
            return term::lam(std::move(param), std::move(body), join(start, lastSpan_));
        }
        if (isKeyword("let")) {
            advance();
            expectSymbol("[");
            std::string var = expect(Tok::LowerId, "a variable name").text;
            expectSymbol("]");
            expectSymbol("=");
            TermPtr bound = parseTermExpr();
            expectKeyword("in");
            TermPtr body = parseTermExpr();
            return term::letBox(std::move(var), std::move(bound), std::move(body),
                                join(start, lastSpan_));
        }
        if (isKeyword("endorse")) {
            advance();
            TermPtr bound = parseTermExpr();
            expectKeyword("as");
            std::string var = expect(Tok::LowerId, "a variable name").text;
            expectKeyword("in");
            TermPtr body = parseTermExpr();
            return term::endorse(std::move(bound), std::move(var), std::move(body),
                                 join(start, lastSpan_));
        }
        if (isKeyword("reveal")) {
            advance();
            TermPtr body = aterm();
            return term::reveal(std::move(body), join(start, lastSpan_));
        }
        if (isKeyword("trust")) {
            advance();
            TermPtr body = aterm();
            return term::trust(std::move(body), join(start, lastSpan_));
        }
        if (isKeyword("case")) {
            advance();
            TermPtr scrutinee = parseTermExpr();
            expectKeyword("of");
            std::vector<Alternative> alts;
            while (isSymbol("|")) {
                advance();
                PatternPtr p = pattern();
                expectSymbol("->");
                TermPtr body = parseTermExpr();
                alts.push_back({std::move(p), std::move(body)});
            }
            return term::caseOf(std::move(scrutinee), std::move(alts), join(start, lastSpan_));
        }
        return additive();
    }

    std::optional<BinOp> additiveOp() const {
        if (isSymbol("+")) return BinOp::Add;
        if (isSymbol("-")) return BinOp::Sub;
        if (isSymbol("++")) return BinOp::Concat;
        if (isSymbol("==")) return BinOp::Eq;
        return std::nullopt;
    }

    std::optional<BinOp> multiplicativeOp() const {
        if (isSymbol("*")) return BinOp::Mul;
        if (isSymbol("/")) return BinOp::Div;
        return std::nullopt;
    }

    TermPtr additive() {
        SourceSpan start = curSpan();
        TermPtr lhs = multiplicative();
        while (auto op = additiveOp()) {
            advance();
            TermPtr rhs = multiplicative();
            lhs = term::prim(*op, std::move(lhs), std::move(rhs), join(start, lastSpan_));
        }
        return lhs;
    }

    TermPtr multiplicative() {
        SourceSpan start = curSpan();
        TermPtr lhs = application();
        while (auto op = multiplicativeOp()) {
            advance();
            TermPtr rhs = application();
            lhs = term::prim(*op, std::move(lhs), std::move(rhs), join(start, lastSpan_));
        }
        return lhs;
    }

    bool startsAterm() const {
        Tok k = cur().kind;
        return k == Tok::LowerId || k == Tok::UpperId || k == Tok::Int || k == Tok::Str ||
               isSymbol("[") || isSymbol("(");
    }

    // A '-' directly followed by a literal starts a negative literal only at
    // the head of an operand; elsewhere it is subtraction.
    bool atNegativeLiteral() const {
        if (!isSymbol("-")) {
            return false;
        }
        const Token &next = peekAt(1);
        return next.kind == Tok::Int && next.span.startLine == cur().span.endLine &&
               next.span.startCol == cur().span.endCol + 1;
    }

    TermPtr application() {
        SourceSpan start = curSpan();
        if (atNegativeLiteral()) {
            advance();
            const Token &lit = advance();
            return term::intLit(-lit.intValue, join(start, lastSpan_));
        }
        if (cur().kind == Tok::UpperId) {
            std::string name = advance().text;
            std::vector<TermPtr> args;
            while (startsAterm()) {
                args.push_back(aterm());
            }
            return term::ctor(std::move(name), std::move(args), join(start, lastSpan_));
        }
        TermPtr head = aterm();
        while (startsAterm()) {
            TermPtr arg = aterm();
            head = term::app(std::move(head), std::move(arg), join(start, lastSpan_));
        }
        return head;
    }

    TermPtr aterm() {
        const Token &t = cur();
        SourceSpan start = t.span;
        switch (t.kind) {
        case Tok::LowerId:
            return term::var(advance().text, start);
        case Tok::UpperId:
            return term::ctor(advance().text, {}, start);
        case Tok::Int:
            return term::intLit(advance().intValue, start);
        case Tok::Str:
            return term::strLit(advance().text, start);
        default:
            break;
        }
        if (isSymbol("[")) {
            advance();
            TermPtr body = parseTermExpr();
            expectSymbol("]");
            return term::box(std::move(body), join(start, lastSpan_));
        }
        if (isSymbol("(")) {
            advance();
            TermPtr inner = parseTermExpr();
            expectSymbol(")");
            return inner;
        }
        fail({"a term"});
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t declStart_ = 0;
    bool inDecl_ = false;
    SourceSpan lastSpan_;
};

} // namespace

Program parseProgram(std::string_view text, const std::string &filename) {
    Parser parser(Lexer(text, filename).run());
    return parser.program();
}

TermPtr parseTerm(std::string_view text, const std::string &filename) {
    Parser parser(Lexer(text, filename).run());
    return parser.standaloneTerm();
}

TypePtr parseType(std::string_view text, const std::string &filename) {
    Parser parser(Lexer(text, filename).run());
    return parser.standaloneType();
}

} // namespace gg
