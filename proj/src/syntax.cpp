#include "gg/syntax.hpp"

#include <algorithm>

namespace gg {

std::string formatLocation(const SourceSpan &span) {
    return span.file + ":" + std::to_string(span.startLine) + ":" + std::to_string(span.startCol);
}

namespace ty {
TypePtr intType() { return std::make_shared<const Type>(Type{TInt{}}); }
TypePtr stringType() { return std::make_shared<const Type>(Type{TString{}}); }
TypePtr data(std::string name) { return std::make_shared<const Type>(Type{TData{std::move(name)}}); }
TypePtr fun(TypePtr domain, TypePtr codomain) {
    return std::make_shared<const Type>(Type{TFun{std::move(domain), std::move(codomain)}});
}
TypePtr box(Grade grade, TypePtr payload) {
    return std::make_shared<const Type>(Type{TBox{grade, std::move(payload)}});
}
TypePtr star(TypePtr payload) {
    return std::make_shared<const Type>(Type{TStar{std::move(payload)}});
}
} // namespace ty

bool typeEq(const Type &a, const Type &b) {
    if (a.node.index() != b.node.index()) {
        return false;
    }
    if (auto *d = std::get_if<TData>(&a.node)) {
        return d->name == std::get<TData>(b.node).name;
    }
    if (auto *f = std::get_if<TFun>(&a.node)) {
        auto &g = std::get<TFun>(b.node);
        return typeEq(*f->domain, *g.domain) && typeEq(*f->codomain, *g.codomain);
    }
    if (auto *x = std::get_if<TBox>(&a.node)) {
        auto &y = std::get<TBox>(b.node);
        return x->grade == y.grade && typeEq(*x->payload, *y.payload);
    }
    if (auto *s = std::get_if<TStar>(&a.node)) {
        return typeEq(*s->payload, *std::get<TStar>(b.node).payload);
    }
    return true;
}

namespace pat {
PatternPtr var(std::string name, SourceSpan span) {
    return std::make_shared<const Pattern>(Pattern{PVar{std::move(name)}, std::move(span)});
}
PatternPtr wild(SourceSpan span) {
    return std::make_shared<const Pattern>(Pattern{PWild{}, std::move(span)});
}
PatternPtr intLit(std::int64_t value, SourceSpan span) {
    return std::make_shared<const Pattern>(Pattern{PInt{value}, std::move(span)});
}
PatternPtr ctor(std::string name, std::vector<PatternPtr> args, SourceSpan span) {
    return std::make_shared<const Pattern>(
        Pattern{PCtor{std::move(name), std::move(args)}, std::move(span)});
}
PatternPtr box(PatternPtr inner, SourceSpan span) {
    return std::make_shared<const Pattern>(Pattern{PBox{std::move(inner)}, std::move(span)});
}
} // namespace pat

bool patternEq(const Pattern &a, const Pattern &b) {
    if (a.node.index() != b.node.index()) {
        return false;
    }
    return std::visit(
        [&](const auto &x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto &y = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, PVar>) {
                return x.name == y.name;
            } else if constexpr (std::is_same_v<T, PWild>) {
                return true;
            } else if constexpr (std::is_same_v<T, PInt>) {
                return x.value == y.value;
            } else if constexpr (std::is_same_v<T, PCtor>) {
                return x.name == y.name &&
                       std::equal(x.args.begin(), x.args.end(), y.args.begin(), y.args.end(),
                                  [](const PatternPtr &p, const PatternPtr &q) {
                                      return patternEq(*p, *q);
                                  });
            } else {
                return patternEq(*x.inner, *y.inner);
            }
        },
        a.node);
}

namespace {

void collectPatternVars(const Pattern &p, std::vector<std::string> &out) {
    if (auto *v = std::get_if<PVar>(&p.node)) {
        out.push_back(v->name);
    } else if (auto *c = std::get_if<PCtor>(&p.node)) {
        for (const auto &arg : c->args) {
            collectPatternVars(*arg, out);
        }
    } else if (auto *b = std::get_if<PBox>(&p.node)) {
        collectPatternVars(*b->inner, out);
    }
}

} // namespace

std::vector<std::string> patternVars(const Pattern &p) {
    std::vector<std::string> out;
    collectPatternVars(p, out);
    return out;
}

namespace term {
namespace {
template <typename Node>
TermPtr make(Node node, SourceSpan span) {
    return std::make_shared<const Term>(Term{std::move(node), std::move(span)});
}
} // namespace

TermPtr var(std::string name, SourceSpan span) { return make(Var{std::move(name)}, std::move(span)); }
TermPtr intLit(std::int64_t value, SourceSpan span) { return make(IntLit{value}, std::move(span)); }
TermPtr strLit(std::string value, SourceSpan span) {
    return make(StrLit{std::move(value)}, std::move(span));
}
TermPtr lam(std::string param, TermPtr body, SourceSpan span) {
    return make(Lam{std::move(param), std::move(body)}, std::move(span));
}
TermPtr app(TermPtr fun, TermPtr arg, SourceSpan span) {
    return make(App{std::move(fun), std::move(arg)}, std::move(span));
}
TermPtr box(TermPtr body, SourceSpan span) { return make(BoxIntro{std::move(body)}, std::move(span)); }
TermPtr trust(TermPtr body, SourceSpan span) {
    return make(TrustIntro{std::move(body)}, std::move(span));
}
TermPtr letBox(std::string var, TermPtr bound, TermPtr body, SourceSpan span) {
    return make(LetBox{std::move(var), std::move(bound), std::move(body)}, std::move(span));
}
TermPtr reveal(TermPtr body, SourceSpan span) { return make(Reveal{std::move(body)}, std::move(span)); }
TermPtr endorse(TermPtr bound, std::string var, TermPtr body, SourceSpan span) {
    return make(Endorse{std::move(bound), std::move(var), std::move(body)}, std::move(span));
}
TermPtr caseOf(TermPtr scrutinee, std::vector<Alternative> alternatives, SourceSpan span) {
    return make(Case{std::move(scrutinee), std::move(alternatives)}, std::move(span));
}
TermPtr ctor(std::string name, std::vector<TermPtr> args, SourceSpan span) {
    return make(Ctor{std::move(name), std::move(args)}, std::move(span));
}
TermPtr prim(BinOp op, TermPtr lhs, TermPtr rhs, SourceSpan span) {
    return make(PrimOp{op, std::move(lhs), std::move(rhs)}, std::move(span));
}
} // namespace term

namespace {

bool termListEq(const std::vector<TermPtr> &a, const std::vector<TermPtr> &b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                      [](const TermPtr &x, const TermPtr &y) { return termEq(*x, *y); });
}

} // namespace

bool termEq(const Term &a, const Term &b) {
    if (a.node.index() != b.node.index()) {
        return false;
    }
    return std::visit(
        [&](const auto &x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto &y = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, Var>) {
                return x.name == y.name;
            } else if constexpr (std::is_same_v<T, IntLit> || std::is_same_v<T, StrLit>) {
                return x.value == y.value;
            } else if constexpr (std::is_same_v<T, Lam>) {
                return x.param == y.param && termEq(*x.body, *y.body);
            } else if constexpr (std::is_same_v<T, App>) {
                return termEq(*x.fun, *y.fun) && termEq(*x.arg, *y.arg);
            } else if constexpr (std::is_same_v<T, BoxIntro> || std::is_same_v<T, TrustIntro> ||
                                 std::is_same_v<T, Reveal>) {
                return termEq(*x.body, *y.body);
            } else if constexpr (std::is_same_v<T, LetBox>) {
                return x.var == y.var && termEq(*x.bound, *y.bound) && termEq(*x.body, *y.body);
            } else if constexpr (std::is_same_v<T, Endorse>) {
                return x.var == y.var && termEq(*x.bound, *y.bound) && termEq(*x.body, *y.body);
            } else if constexpr (std::is_same_v<T, Case>) {
                return termEq(*x.scrutinee, *y.scrutinee) &&
                       std::equal(x.alternatives.begin(), x.alternatives.end(),
                                  y.alternatives.begin(), y.alternatives.end(),
                                  [](const Alternative &p, const Alternative &q) {
                                      return patternEq(*p.pattern, *q.pattern) &&
                                             termEq(*p.body, *q.body);
                                  });
            } else if constexpr (std::is_same_v<T, Ctor>) {
                return x.name == y.name && termListEq(x.args, y.args);
            } else {
                return x.op == y.op && termEq(*x.lhs, *y.lhs) && termEq(*x.rhs, *y.rhs);
            }
        },
        a.node);
}

namespace {

void collectFree(const Term &t, std::set<std::string> &bound, std::set<std::string> &out);

// Visits `body` with `names` added to the bound set, restoring it afterwards.
void collectUnder(const Term &body, const std::vector<std::string> &names,
                  std::set<std::string> &bound, std::set<std::string> &out) {
    std::vector<std::string> added;
    for (const auto &n : names) {
        if (bound.insert(n).second) {
            added.push_back(n);
        }
    }
    collectFree(body, bound, out);
    for (const auto &n : added) {
        bound.erase(n);
    }
}

void collectFree(const Term &t, std::set<std::string> &bound, std::set<std::string> &out) {
    std::visit(
        [&](const auto &x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Var>) {
                if (!bound.contains(x.name)) {
                    out.insert(x.name);
                }
            } else if constexpr (std::is_same_v<T, IntLit> || std::is_same_v<T, StrLit>) {
            } else if constexpr (std::is_same_v<T, Lam>) {
                collectUnder(*x.body, {x.param}, bound, out);
            } else if constexpr (std::is_same_v<T, App>) {
                collectFree(*x.fun, bound, out);
                collectFree(*x.arg, bound, out);
            } else if constexpr (std::is_same_v<T, BoxIntro> || std::is_same_v<T, TrustIntro> ||
                                 std::is_same_v<T, Reveal>) {
                collectFree(*x.body, bound, out);
            } else if constexpr (std::is_same_v<T, LetBox> || std::is_same_v<T, Endorse>) {
                collectFree(*x.bound, bound, out);
                collectUnder(*x.body, {x.var}, bound, out);
            } else if constexpr (std::is_same_v<T, Case>) {
                collectFree(*x.scrutinee, bound, out);
                for (const auto &alt : x.alternatives) {
                    collectUnder(*alt.body, patternVars(*alt.pattern), bound, out);
                }
            } else if constexpr (std::is_same_v<T, Ctor>) {
                for (const auto &arg : x.args) {
                    collectFree(*arg, bound, out);
                }
            } else {
                collectFree(*x.lhs, bound, out);
                collectFree(*x.rhs, bound, out);
            }
        },
        t.node);
}

} // namespace

std::set<std::string> freeVars(const Term &t) {
    std::set<std::string> bound;
    std::set<std::string> out;
    collectFree(t, bound, out);
    return out;
}

TermPtr subst(const TermPtr &t, const std::string &name, const TermPtr &replacement) {
    auto rec = [&](const TermPtr &sub) { return subst(sub, name, replacement); };
    return std::visit(
        [&](const auto &x) -> TermPtr {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Var>) {
                return x.name == name ? replacement : t;
            } else if constexpr (std::is_same_v<T, IntLit> || std::is_same_v<T, StrLit>) {
                return t;
            } else if constexpr (std::is_same_v<T, Lam>) {
                return x.param == name ? t : term::lam(x.param, rec(x.body), t->span);
            } else if constexpr (std::is_same_v<T, App>) {
                return term::app(rec(x.fun), rec(x.arg), t->span);
            } else if constexpr (std::is_same_v<T, BoxIntro>) {
                return term::box(rec(x.body), t->span);
            } else if constexpr (std::is_same_v<T, TrustIntro>) {
                return term::trust(rec(x.body), t->span);
            } else if constexpr (std::is_same_v<T, Reveal>) {
                return term::reveal(rec(x.body), t->span);
            } else if constexpr (std::is_same_v<T, LetBox>) {
                auto body = x.var == name ? x.body : rec(x.body);
                return term::letBox(x.var, rec(x.bound), std::move(body), t->span);
            } else if constexpr (std::is_same_v<T, Endorse>) {
                auto body = x.var == name ? x.body : rec(x.body);
                return term::endorse(rec(x.bound), x.var, std::move(body), t->span);
            } else if constexpr (std::is_same_v<T, Case>) {
                std::vector<Alternative> alts;
                for (const auto &alt : x.alternatives) {
                    auto vars = patternVars(*alt.pattern);
                    bool shadowed = std::find(vars.begin(), vars.end(), name) != vars.end();
                    alts.push_back({alt.pattern, shadowed ? alt.body : rec(alt.body)});
                }
                return term::caseOf(rec(x.scrutinee), std::move(alts), t->span);
            } else if constexpr (std::is_same_v<T, Ctor>) {
                std::vector<TermPtr> args;
                for (const auto &arg : x.args) {
                    args.push_back(rec(arg));
                }
                return term::ctor(x.name, std::move(args), t->span);
            } else {
                return term::prim(x.op, rec(x.lhs), rec(x.rhs), t->span);
            }
        },
        t->node);
}

const char *binOpSymbol(BinOp op) {
    switch (op) {
    case BinOp::Add:
        return "+";
    case BinOp::Sub:
        return "-";
    case BinOp::Mul:
        return "*";
    case BinOp::Div:
        return "/";
    case BinOp::Eq:
        return "==";
    case BinOp::Concat:
        return "++";
    }
    return "?";
}

const FunDecl *Program::findFunction(const std::string &name) const {
    for (const auto &decl : decls) {
        if (auto *f = std::get_if<FunDecl>(&decl); f && f->name == name) {
            return f;
        }
    }
    return nullptr;
}

namespace {

bool constructorEq(const Constructor &a, const Constructor &b) {
    return a.name == b.name &&
           std::equal(a.fields.begin(), a.fields.end(), b.fields.begin(), b.fields.end(),
                      [](const TypePtr &x, const TypePtr &y) { return typeEq(*x, *y); });
}

bool declEq(const Decl &a, const Decl &b) {
    if (a.index() != b.index()) {
        return false;
    }
    if (auto *d = std::get_if<DataDecl>(&a)) {
        const auto &e = std::get<DataDecl>(b);
        return d->name == e.name &&
               std::equal(d->constructors.begin(), d->constructors.end(), e.constructors.begin(),
                          e.constructors.end(), constructorEq);
    }
    const auto &f = std::get<FunDecl>(a);
    const auto &g = std::get<FunDecl>(b);
    return f.name == g.name && typeEq(*f.signature, *g.signature) &&
           std::equal(f.params.begin(), f.params.end(), g.params.begin(), g.params.end(),
                      [](const PatternPtr &p, const PatternPtr &q) { return patternEq(*p, *q); }) &&
           termEq(*f.body, *g.body);
}

} // namespace

bool programEq(const Program &a, const Program &b) {
    return std::equal(a.decls.begin(), a.decls.end(), b.decls.begin(), b.decls.end(), declEq);
}

} // namespace gg
