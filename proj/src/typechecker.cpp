#include "gg/typechecker.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "gg/pretty.hpp"

namespace gg {

const char *codeName(ErrorCode code) {
    switch (code) {
    case ErrorCode::E001:
        return "E001";
    case ErrorCode::E101:
        return "E101";
    case ErrorCode::E102:
        return "E102";
    case ErrorCode::E103:
        return "E103";
    case ErrorCode::E104:
        return "E104";
    case ErrorCode::E105:
        return "E105";
    case ErrorCode::E106:
        return "E106";
    case ErrorCode::E107:
        return "E107";
    case ErrorCode::E108:
        return "E108";
    }
    return "E???";
}

TypeError::TypeError(ErrorCode c, SourceSpan s, std::string msg, std::optional<std::string> exp,
                     std::optional<std::string> act)
    : std::runtime_error(std::string(codeName(c)) + ": " + msg), code(c), span(std::move(s)),
      message(std::move(msg)), expected(std::move(exp)), actual(std::move(act)) {}

std::string formatDiagnostic(const TypeError &err) {
    std::string loc = err.span.known() ? formatLocation(err.span)
                                       : (err.span.file.empty() ? "<input>" : err.span.file) + ":0:0";
    return loc + ": error[" + codeName(err.code) + "]: " + err.message;
}

// ------------------------------
// usage contexts
// ------------------------------

namespace {

std::string quoteName(const std::string &name) { return "`" + name + "`"; }

UsageContext usageAddAt(const UsageContext &a, const UsageContext &b, const SourceSpan &span) {
    UsageContext out = a;
    for (const auto &[name, entry] : b) {
        auto it = out.find(name);
        if (it == out.end()) {
            out.emplace(name, entry);
            continue;
        }
        auto *l1 = std::get_if<LinearCount>(&it->second);
        auto *l2 = std::get_if<LinearCount>(&entry);
        if (l1 && l2) {
            it->second = LinearCount{l1->n + l2->n};
            continue;
        }
        auto *g1 = std::get_if<GradeUse>(&it->second);
        auto *g2 = std::get_if<GradeUse>(&entry);
        if (g1 && g2 && g1->g.tag() == g2->g.tag()) {
            it->second = GradeUse{semiring::add(g1->g, g2->g)};
            continue;
        }
        throw TypeError(ErrorCode::E108, span,
                        "uses of " + quoteName(name) + " come from different semirings");
    }
    return out;
}

std::string formatEntry(const UsageEntry &e) {
    if (auto *l = std::get_if<LinearCount>(&e)) {
        return "linear " + std::to_string(l->n);
    }
    return std::get<GradeUse>(e).g.toString();
}

} // namespace

UsageContext usageAdd(const UsageContext &a, const UsageContext &b) { return usageAddAt(a, b, {}); }

UsageContext usageScale(Grade r, const UsageContext &u, const SourceSpan &span) {
    UsageContext out;
    for (const auto &[name, entry] : u) {
        if (auto *l = std::get_if<LinearCount>(&entry)) {
            if (l->n > 0) {
                throw TypeError(ErrorCode::E103, span,
                                "linear variable " + quoteName(name) +
                                    " cannot be used inside a promotion");
            }
            continue;
        }
        Grade g = std::get<GradeUse>(entry).g;
        if (g.tag() != r.tag()) {
            throw TypeError(ErrorCode::E106, span,
                            "variable " + quoteName(name) + " is graded by the " +
                                toString(g.tag()) + " semiring but the promotion is at grade " +
                                r.toString(),
                            toString(r.tag()), toString(g.tag()));
        }
        out.emplace(name, GradeUse{semiring::mul(r, g)});
    }
    return out;
}

UsageContext usageNormalize(const UsageContext &u) {
    UsageContext out;
    for (const auto &[name, entry] : u) {
        if (auto *l = std::get_if<LinearCount>(&entry)) {
            if (l->n == 0) {
                continue;
            }
        } else {
            Grade g = std::get<GradeUse>(entry).g;
            if (g == semiring::zero(g.tag())) {
                continue;
            }
        }
        out.emplace(name, entry);
    }
    return out;
}

std::string formatUsage(const UsageContext &u) {
    std::string out = "{";
    bool first = true;
    for (const auto &[name, entry] : u) {
        out += (first ? "" : ", ") + name + ": " + formatEntry(entry);
        first = false;
    }
    return out + "}";
}

bool typeLeq(const Type &actual, const Type &expected) {
    if (actual.node.index() != expected.node.index()) {
        return false;
    }
    if (auto *a = std::get_if<TBox>(&actual.node)) {
        const auto &e = std::get<TBox>(expected.node);
        if (a->grade.tag() != e.grade.tag()) {
            return false;
        }
        return semiring::leq(e.grade, a->grade) && typeLeq(*a->payload, *e.payload);
    }
    if (auto *a = std::get_if<TFun>(&actual.node)) {
        const auto &e = std::get<TFun>(expected.node);
        return typeLeq(*e.domain, *a->domain) && typeLeq(*a->codomain, *e.codomain);
    }
    return typeEq(actual, expected);
}

// ------------------------------
// checker
// ------------------------------

namespace {

struct PatBinding {
    std::string name;
    TypePtr type;
    // Present for graded binders: the grade available for the variable.
    std::optional<Grade> supply;
    SourceSpan span;
};

std::string showType(const TypePtr &t) { return formatType(*t); }

class Checker {
public:
    explicit Checker(const Declarations &decls) : decls_(decls) {}

    Inferred infer(const Context &ctx, const Term &t) {
        return std::visit([&](const auto &node) { return inferNode(ctx, t, node); }, t.node);
    }

    UsageContext check(const Context &ctx, const Term &t, const TypePtr &expected) {
        if (auto *lam = std::get_if<Lam>(&t.node)) {
            auto *fn = std::get_if<TFun>(&expected->node);
            if (!fn) {
                throw mismatch(t.span, "a lambda cannot have type " + showType(expected), expected,
                               std::nullopt);
            }
            std::vector<PatBinding> binder{{lam->param, fn->domain, std::nullopt, t.span}};
            UsageContext u = check(extend(ctx, binder), *lam->body, fn->codomain);
            closeBinders(binder, u);
            return u;
        }
        if (auto *box = std::get_if<BoxIntro>(&t.node)) {
            auto *b = std::get_if<TBox>(&expected->node);
            if (!b) {
                throw mismatch(t.span, "a promotion cannot have type " + showType(expected),
                               expected, std::nullopt);
            }
            return usageScale(b->grade, check(ctx, *box->body, b->payload), t.span);
        }
        if (auto *trust = std::get_if<TrustIntro>(&t.node)) {
            if (auto *s = std::get_if<TStar>(&expected->node)) {
                requireClosed(ctx, *trust->body, t.span);
                check(globalsOnly(ctx), *trust->body, s->payload);
                return {};
            }
        }
        if (auto *let = std::get_if<LetBox>(&t.node)) {
            return letBox(ctx, t, *let, [&](const Context &inner, const Term &body) {
                       return Inferred{expected, check(inner, body, expected)};
                   })
                .usage;
        }
        if (auto *endorse = std::get_if<Endorse>(&t.node)) {
            auto *b = std::get_if<TBox>(&expected->node);
            if (b && b->grade.tag() == SemiringTag::Security) {
                TypePtr required = ty::box(Grade::publicLevel(), b->payload);
                return endorseWith(ctx, t, *endorse, [&](const Context &inner, const Term &body) {
                           return Inferred{b->payload, check(inner, body, required)};
                       })
                    .usage;
            }
        }
        if (auto *c = std::get_if<Case>(&t.node)) {
            return caseWith(ctx, t, *c,
                            [&](const Context &inner, const Term &body, std::size_t) {
                                return Inferred{expected, check(inner, body, expected)};
                            },
                            expected)
                .usage;
        }
        Inferred inf = infer(ctx, t);
        if (!typeLeq(*inf.type, *expected)) {
            throw mismatch(t.span,
                           "expected type " + showType(expected) + " but found " +
                               showType(inf.type),
                           expected, inf.type);
        }
        return inf.usage;
    }

    // Checks `t` against `payload [r]` for a payload type that is not yet
    // known, returning that payload type. Covers the premises of endorse,
    // whose grade is fixed to Public.
    Inferred inferBoxAt(const Context &ctx, const Term &t, Grade r) {
        if (auto *box = std::get_if<BoxIntro>(&t.node)) {
            Inferred inner = infer(ctx, *box->body);
            return {inner.type, usageScale(r, inner.usage, t.span)};
        }
        if (auto *let = std::get_if<LetBox>(&t.node)) {
            return letBox(ctx, t, *let, [&](const Context &inner, const Term &body) {
                return inferBoxAt(inner, body, r);
            });
        }
        if (auto *c = std::get_if<Case>(&t.node)) {
            TypePtr first;
            return caseWith(ctx, t, *c,
                            [&](const Context &inner, const Term &body, std::size_t i) {
                                if (i == 0) {
                                    Inferred res = inferBoxAt(inner, body, r);
                                    first = res.type;
                                    return res;
                                }
                                return Inferred{first, check(inner, body, ty::box(r, first))};
                            });
        }
        Inferred inf = infer(ctx, t);
        auto *b = std::get_if<TBox>(&inf.type->node);
        if (!b || b->grade.tag() != r.tag() || !semiring::leq(r, b->grade)) {
            throw mismatch(t.span,
                           "expected a value of type _ [" + r.toString() + "] but found " +
                               showType(inf.type),
                           std::nullopt, inf.type, "_ [" + r.toString() + "]");
        }
        return {b->payload, inf.usage};
    }

    void bindPattern(const Pattern &p, const TypePtr &type, std::optional<Grade> scale,
                     std::vector<PatBinding> &out) {
        std::visit(
            [&](const auto &x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, PVar>) {
                    out.push_back({x.name, type, scale, p.span});
                } else if constexpr (std::is_same_v<T, PWild>) {
                    if (!scale) {
                        throw TypeError(ErrorCode::E103, p.span,
                                        "wildcard discards a linear value of type " +
                                            showType(type));
                    }
                    if (!semiring::leq(semiring::zero(scale->tag()), *scale)) {
                        throw TypeError(ErrorCode::E104, p.span,
                                        "a value available at grade " + scale->toString() +
                                            " cannot be discarded",
                                        scale->toString(),
                                        semiring::zero(scale->tag()).toString());
                    }
                } else if constexpr (std::is_same_v<T, PInt>) {
                    if (!std::holds_alternative<TInt>(type->node)) {
                        throw mismatch(p.span,
                                       "integer pattern cannot match a value of type " +
                                           showType(type),
                                       ty::intType(), type);
                    }
                } else if constexpr (std::is_same_v<T, PCtor>) {
                    auto it = decls_.constructors.find(x.name);
                    if (it == decls_.constructors.end()) {
                        throw TypeError(ErrorCode::E101, p.span,
                                        "unknown constructor " + quoteName(x.name));
                    }
                    auto *d = std::get_if<TData>(&type->node);
                    if (!d || d->name != it->second.dataName) {
                        throw mismatch(p.span,
                                       "constructor " + quoteName(x.name) +
                                           " cannot match a value of type " + showType(type),
                                       ty::data(it->second.dataName), type);
                    }
                    const auto &fields = it->second.fields;
                    if (fields.size() != x.args.size()) {
                        throw TypeError(ErrorCode::E102, p.span,
                                        "constructor " + quoteName(x.name) + " expects " +
                                            std::to_string(fields.size()) + " fields but the "
                                            "pattern has " + std::to_string(x.args.size()));
                    }
                    for (std::size_t i = 0; i < fields.size(); ++i) {
                        bindPattern(*x.args[i], fields[i], scale, out);
                    }
                } else {
                    auto *b = std::get_if<TBox>(&type->node);
                    if (!b) {
                        throw mismatch(p.span,
                                       "box pattern cannot match a value of type " +
                                           showType(type),
                                       std::nullopt, type);
                    }
                    Grade inner = b->grade;
                    if (scale) {
                        if (scale->tag() != inner.tag()) {
                            throw TypeError(ErrorCode::E108, p.span,
                                            "nested box grades " + scale->toString() + " and " +
                                                inner.toString() +
                                                " come from different semirings");
                        }
                        inner = semiring::mul(*scale, inner);
                    }
                    bindPattern(*x.inner, b->payload, inner, out);
                }
            },
            p.node);
    }

    static void requireDistinct(const std::vector<PatBinding> &bindings) {
        std::set<std::string> seen;
        for (const auto &b : bindings) {
            if (!seen.insert(b.name).second) {
                throw TypeError(ErrorCode::E001, b.span,
                                "variable " + quoteName(b.name) + " is bound more than once");
            }
        }
    }

    static Context extend(const Context &ctx, const std::vector<PatBinding> &bindings) {
        Context out = ctx;
        for (const auto &b : bindings) {
            if (b.supply) {
                out.insert_or_assign(b.name, GradedBind{b.type, b.supply->tag()});
            } else {
                out.insert_or_assign(b.name, LinearBind{b.type});
            }
        }
        return out;
    }

    // Discharges each binder against its synthesized use and removes it.
    static void closeBinders(const std::vector<PatBinding> &bindings, UsageContext &u) {
        for (const auto &b : bindings) {
            if (b.supply) {
                closeGraded(b.name, *b.supply, u, b.span);
            } else {
                closeLinear(b.name, u, b.span);
            }
        }
    }

private:
    static TypeError mismatch(const SourceSpan &span, std::string message,
                              std::optional<TypePtr> expected, std::optional<TypePtr> actual,
                              std::optional<std::string> expectedText = std::nullopt) {
        std::optional<std::string> exp = expectedText;
        if (!exp && expected && *expected) {
            exp = showType(*expected);
        }
        std::optional<std::string> act;
        if (actual && *actual) {
            act = showType(*actual);
        }
        return TypeError(ErrorCode::E102, span, std::move(message), exp, act);
    }

    static void closeLinear(const std::string &name, UsageContext &u, const SourceSpan &span) {
        std::uint64_t n = 0;
        if (auto it = u.find(name); it != u.end()) {
            auto *l = std::get_if<LinearCount>(&it->second);
            if (!l) {
                throw TypeError(ErrorCode::E108, span,
                                "linear variable " + quoteName(name) + " has a graded use");
            }
            n = l->n;
            u.erase(it);
        }
        if (n == 0) {
            throw TypeError(ErrorCode::E103, span,
                            "linear variable " + quoteName(name) + " is never used", "1", "0");
        }
        if (n > 1) {
            throw TypeError(ErrorCode::E103, span,
                            "linear variable " + quoteName(name) + " is used " +
                                std::to_string(n) + " times",
                            "1", std::to_string(n));
        }
    }

    static void closeGraded(const std::string &name, Grade supply, UsageContext &u,
                            const SourceSpan &span) {
        Grade use = semiring::zero(supply.tag());
        if (auto it = u.find(name); it != u.end()) {
            auto *g = std::get_if<GradeUse>(&it->second);
            if (!g || g->g.tag() != supply.tag()) {
                throw TypeError(ErrorCode::E108, span,
                                "uses of " + quoteName(name) +
                                    " do not match the semiring of its grade");
            }
            use = g->g;
            u.erase(it);
        }
        if (semiring::leq(use, supply)) {
            return;
        }
        if (supply.tag() == SemiringTag::Usage) {
            throw TypeError(ErrorCode::E104, span,
                            "variable " + quoteName(name) + " must be used exactly " +
                                supply.toString() + " times but is used " + use.toString() +
                                " times",
                            supply.toString(), use.toString());
        }
        throw TypeError(ErrorCode::E104, span,
                        "variable " + quoteName(name) + " is available at grade " +
                            supply.toString() + " but is demanded at grade " + use.toString(),
                        supply.toString(), use.toString());
    }

    static void requireClosed(const Context &ctx, const Term &body, const SourceSpan &span) {
        for (const auto &name : freeVars(body)) {
            auto it = ctx.find(name);
            if (it != ctx.end() && !std::holds_alternative<GlobalBind>(it->second)) {
                throw TypeError(ErrorCode::E105, span,
                                "trust requires a closed term, but it depends on local variable " +
                                    quoteName(name));
            }
        }
    }

    static Context globalsOnly(const Context &ctx) {
        Context out;
        for (const auto &[name, b] : ctx) {
            if (std::holds_alternative<GlobalBind>(b)) {
                out.emplace(name, b);
            }
        }
        return out;
    }

    using BodyFn = std::function<Inferred(const Context &, const Term &)>;
    using AltFn = std::function<Inferred(const Context &, const Term &, std::size_t)>;

    Inferred letBox(const Context &ctx, const Term &t, const LetBox &let, const BodyFn &body) {
        Inferred bound = infer(ctx, *let.bound);
        auto *b = std::get_if<TBox>(&bound.type->node);
        if (!b) {
            throw mismatch(let.bound->span,
                           "let [" + let.var + "] expects a boxed value but found " +
                               showType(bound.type),
                           std::nullopt, bound.type, "_ [r]");
        }
        std::vector<PatBinding> binder{{let.var, b->payload, b->grade, t.span}};
        Inferred res = body(extend(ctx, binder), *let.body);
        closeBinders(binder, res.usage);
        return {res.type, usageAddAt(bound.usage, res.usage, t.span)};
    }

    Inferred endorseWith(const Context &ctx, const Term &t, const Endorse &e, const BodyFn &body) {
        Inferred bound = inferBoxAt(ctx, *e.bound, Grade::publicLevel());
        std::vector<PatBinding> binder{{e.var, ty::star(bound.type), std::nullopt, t.span}};
        Inferred res = body(extend(ctx, binder), *e.body);
        closeBinders(binder, res.usage);
        return {ty::box(Grade::publicLevel(), res.type),
                usageAddAt(bound.usage, res.usage, t.span)};
    }

    Inferred caseWith(const Context &ctx, const Term &t, const Case &c, const AltFn &body,
                      TypePtr resultType = nullptr) {
        Inferred scrutinee = infer(ctx, *c.scrutinee);
        std::optional<UsageContext> branchUsage;
        for (std::size_t i = 0; i < c.alternatives.size(); ++i) {
            const auto &alt = c.alternatives[i];
            std::vector<PatBinding> bindings;
            bindPattern(*alt.pattern, scrutinee.type, std::nullopt, bindings);
            requireDistinct(bindings);
            Inferred res = body(extend(ctx, bindings), *alt.body, i);
            closeBinders(bindings, res.usage);
            if (i == 0) {
                resultType = res.type;
                branchUsage = res.usage;
            } else if (usageNormalize(res.usage) != usageNormalize(*branchUsage)) {
                throw TypeError(ErrorCode::E107, alt.body->span,
                                "case alternatives use outer variables differently: " +
                                    formatUsage(usageNormalize(*branchUsage)) + " vs " +
                                    formatUsage(usageNormalize(res.usage)),
                                formatUsage(usageNormalize(*branchUsage)),
                                formatUsage(usageNormalize(res.usage)));
            }
        }
        if (!branchUsage) {
            if (!resultType) {
                throw TypeError(ErrorCode::E102, t.span,
                                "cannot infer the type of a case with no alternatives");
            }
            return {resultType, scrutinee.usage};
        }
        return {resultType, usageAddAt(scrutinee.usage, *branchUsage, t.span)};
    }

    // ------------------------------
    // inference rules
    // ------------------------------

    Inferred inferNode(const Context &ctx, const Term &t, const Var &v) {
        auto it = ctx.find(v.name);
        if (it == ctx.end()) {
            throw TypeError(ErrorCode::E101, t.span, "unbound variable " + quoteName(v.name));
        }
        return std::visit(
            [&](const auto &b) -> Inferred {
                using B = std::decay_t<decltype(b)>;
                if constexpr (std::is_same_v<B, LinearBind>) {
                    return {b.type, {{v.name, LinearCount{1}}}};
                } else if constexpr (std::is_same_v<B, GradedBind>) {
                    return {b.type, {{v.name, GradeUse{semiring::one(b.tag)}}}};
                } else {
                    return {b.type, {}};
                }
            },
            it->second);
    }

    Inferred inferNode(const Context &, const Term &, const IntLit &) {
        return {ty::intType(), {}};
    }

    Inferred inferNode(const Context &, const Term &, const StrLit &) {
        return {ty::stringType(), {}};
    }

    Inferred inferNode(const Context &, const Term &t, const Lam &) {
        throw TypeError(ErrorCode::E102, t.span,
                        "cannot infer the type of a lambda; it needs an expected function type");
    }

    Inferred inferNode(const Context &ctx, const Term &t, const App &a) {
        Inferred fn = infer(ctx, *a.fun);
        auto *f = std::get_if<TFun>(&fn.type->node);
        if (!f) {
            throw mismatch(a.fun->span,
                           "cannot apply a value of non-function type " + showType(fn.type),
                           std::nullopt, fn.type, "a function type");
        }
        UsageContext arg = check(ctx, *a.arg, f->domain);
        return {f->codomain, usageAddAt(fn.usage, arg, t.span)};
    }

    Inferred inferNode(const Context &, const Term &t, const BoxIntro &) {
        throw TypeError(ErrorCode::E102, t.span,
                        "cannot infer the grade of a promotion; it needs an expected box type");
    }

    Inferred inferNode(const Context &ctx, const Term &t, const TrustIntro &trust) {
        requireClosed(ctx, *trust.body, t.span);
        Inferred payload = infer(globalsOnly(ctx), *trust.body);
        return {ty::star(payload.type), {}};
    }

    Inferred inferNode(const Context &ctx, const Term &t, const LetBox &let) {
        return letBox(ctx, t, let,
                      [&](const Context &inner, const Term &body) { return infer(inner, body); });
    }

    Inferred inferNode(const Context &ctx, const Term &t, const Reveal &r) {
        Inferred inner = infer(ctx, *r.body);
        auto *s = std::get_if<TStar>(&inner.type->node);
        if (!s) {
            throw mismatch(t.span,
                           "reveal expects a trusted value but found " + showType(inner.type),
                           std::nullopt, inner.type, "_ *{Trusted}");
        }
        return {ty::box(Grade::publicLevel(), s->payload), inner.usage};
    }

    Inferred inferNode(const Context &ctx, const Term &t, const Endorse &e) {
        return endorseWith(ctx, t, e, [&](const Context &inner, const Term &body) {
            return inferBoxAt(inner, body, Grade::publicLevel());
        });
    }

    Inferred inferNode(const Context &ctx, const Term &t, const Case &c) {
        TypePtr first;
        return caseWith(ctx, t, c, [&](const Context &inner, const Term &body, std::size_t i) {
            if (i == 0) {
                Inferred res = infer(inner, body);
                first = res.type;
                return res;
            }
            return Inferred{first, check(inner, body, first)};
        });
    }

    Inferred inferNode(const Context &ctx, const Term &t, const Ctor &c) {
        auto it = decls_.constructors.find(c.name);
        if (it == decls_.constructors.end()) {
            throw TypeError(ErrorCode::E101, t.span, "unknown constructor " + quoteName(c.name));
        }
        const auto &fields = it->second.fields;
        if (fields.size() != c.args.size()) {
            throw TypeError(ErrorCode::E102, t.span,
                            "constructor " + quoteName(c.name) + " expects " +
                                std::to_string(fields.size()) + " arguments but got " +
                                std::to_string(c.args.size()));
        }
        UsageContext u;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            u = usageAddAt(u, check(ctx, *c.args[i], fields[i]), t.span);
        }
        return {ty::data(it->second.dataName), std::move(u)};
    }

    Inferred inferNode(const Context &ctx, const Term &t, const PrimOp &p) {
        TypePtr operand = p.op == BinOp::Concat ? ty::stringType() : ty::intType();
        UsageContext u = usageAddAt(check(ctx, *p.lhs, operand), check(ctx, *p.rhs, operand), t.span);
        return {operand, std::move(u)};
    }

    const Declarations &decls_;
};

void requireKnownTypes(const Type &t, const Declarations &decls, const SourceSpan &span) {
    std::visit(
        [&](const auto &x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, TData>) {
                if (!decls.data.contains(x.name)) {
                    throw TypeError(ErrorCode::E101, span, "unknown type " + quoteName(x.name));
                }
            } else if constexpr (std::is_same_v<T, TFun>) {
                requireKnownTypes(*x.domain, decls, span);
                requireKnownTypes(*x.codomain, decls, span);
            } else if constexpr (std::is_same_v<T, TBox> || std::is_same_v<T, TStar>) {
                requireKnownTypes(*x.payload, decls, span);
            }
        },
        t.node);
}

} // namespace

Inferred inferTerm(const Declarations &decls, const Context &ctx, const Term &t) {
    return Checker(decls).infer(ctx, t);
}

UsageContext checkTerm(const Declarations &decls, const Context &ctx, const Term &t,
                       const TypePtr &expected) {
    return Checker(decls).check(ctx, t, expected);
}

Declarations collectDeclarations(const Program &p) {
    Declarations decls;
    for (const auto &decl : p.decls) {
        if (auto *d = std::get_if<DataDecl>(&decl)) {
            decls.data[d->name] = DataInfo{d->name, d->constructors};
            for (const auto &c : d->constructors) {
                decls.constructors[c.name] = ConstructorInfo{d->name, c.fields};
            }
        } else {
            const auto &f = std::get<FunDecl>(decl);
            decls.functions[f.name] = f.signature;
        }
    }
    return decls;
}

Context globalContext(const Declarations &decls) {
    Context ctx;
    for (const auto &[name, type] : decls.functions) {
        ctx.emplace(name, GlobalBind{type});
    }
    return ctx;
}

std::map<std::string, TypePtr> checkProgram(const Program &p) {
    Declarations decls;
    for (const auto &decl : p.decls) {
        if (auto *d = std::get_if<DataDecl>(&decl)) {
            if (decls.data.contains(d->name)) {
                throw TypeError(ErrorCode::E001, d->span,
                                "data type " + quoteName(d->name) + " is declared more than once");
            }
            // Registered before its fields are validated so that recursive
            // types can mention themselves.
            decls.data[d->name] = DataInfo{d->name, d->constructors};
            for (const auto &c : d->constructors) {
                if (decls.constructors.contains(c.name)) {
                    throw TypeError(ErrorCode::E001, c.span,
                                    "constructor " + quoteName(c.name) +
                                        " is declared more than once");
                }
                for (const auto &field : c.fields) {
                    requireKnownTypes(*field, decls, c.span);
                }
                decls.constructors[c.name] = ConstructorInfo{d->name, c.fields};
            }
            continue;
        }
        const auto &f = std::get<FunDecl>(decl);
        if (decls.functions.contains(f.name)) {
            throw TypeError(ErrorCode::E001, f.signatureSpan,
                            "function " + quoteName(f.name) + " is defined more than once");
        }
        requireKnownTypes(*f.signature, decls, f.signatureSpan);
        decls.functions[f.name] = f.signature;

        Checker checker(decls);
        TypePtr remaining = f.signature;
        std::vector<PatBinding> bindings;
        for (const auto &param : f.params) {
            auto *fn = std::get_if<TFun>(&remaining->node);
            if (!fn) {
                throw TypeError(ErrorCode::E102, param->span,
                                quoteName(f.name) + " has more parameters than its signature " +
                                    formatType(*f.signature) + " allows");
            }
            checker.bindPattern(*param, fn->domain, std::nullopt, bindings);
            remaining = fn->codomain;
        }
        Checker::requireDistinct(bindings);
        UsageContext u =
            checker.check(Checker::extend(globalContext(decls), bindings), *f.body, remaining);
        Checker::closeBinders(bindings, u);
    }
    return decls.functions;
}

} // namespace gg
