#include "gg/evaluator.hpp"

#include <cstdint>
#include <limits>

#include <pthread.h>

#include "gg/pretty.hpp"

namespace gg {

namespace {

// Evaluation recurses on the native stack. Rather than counting frames, the
// guard measures how far the stack has grown since the outermost call and
// stops before the thread's stack is exhausted.
constexpr std::size_t kFallbackStack = std::size_t{1} << 20;
constexpr std::size_t kStackReserve = std::size_t{256} << 10;

std::size_t threadStackSize() {
    pthread_attr_t attr;
    if (pthread_getattr_np(pthread_self(), &attr) != 0) {
        return kFallbackStack;
    }
    void *addr = nullptr;
    std::size_t size = 0;
    int rc = pthread_attr_getstack(&attr, &addr, &size);
    pthread_attr_destroy(&attr);
    return rc == 0 ? size : kFallbackStack;
}

thread_local int evalDepth = 0;
thread_local std::uintptr_t stackBase = 0;
thread_local std::size_t stackBudget = 0;

struct DepthGuard {
    explicit DepthGuard(const SourceSpan &span) {
        char marker = 0;
        auto here = reinterpret_cast<std::uintptr_t>(&marker);
        if (evalDepth == 0) {
            stackBase = here;
            std::size_t size = threadStackSize();
            // The outermost call may already sit some way into the stack.
            stackBudget = size / 4 * 3 > kStackReserve ? size / 4 * 3 - kStackReserve : size / 4;
        }
        if (stackBase > here && stackBase - here > stackBudget) {
            throw RuntimeError(RuntimeErrorKind::DepthExceeded, "evaluation depth limit exceeded",
                               span);
        }
        ++evalDepth;
    }
    ~DepthGuard() { --evalDepth; }
    DepthGuard(const DepthGuard &) = delete;
    DepthGuard &operator=(const DepthGuard &) = delete;
};

const std::shared_ptr<const Globals> &emptyGlobals() {
    static const auto empty = std::make_shared<const Globals>();
    return empty;
}

} // namespace

Env::Env() : globals_(emptyGlobals()) {}

Env::Env(std::shared_ptr<const Globals> globals) : globals_(std::move(globals)) {}

Env Env::bind(std::string name, ValuePtr value) const {
    Env out = *this;
    out.head_ = std::make_shared<const Node>(Node{std::move(name), std::move(value), head_});
    return out;
}

ValuePtr Env::lookupLocal(const std::string &name) const {
    for (const Node *n = head_.get(); n != nullptr; n = n->next.get()) {
        if (n->name == name) {
            return n->value;
        }
    }
    return nullptr;
}

namespace val {
ValuePtr integer(std::int64_t n) { return std::make_shared<const Value>(Value{IntV{n}}); }
ValuePtr string(std::string s) { return std::make_shared<const Value>(Value{StrV{std::move(s)}}); }
ValuePtr ctor(std::string name, std::vector<ValuePtr> args) {
    return std::make_shared<const Value>(Value{CtorV{std::move(name), std::move(args)}});
}
ValuePtr box(ValuePtr payload) { return std::make_shared<const Value>(Value{BoxV{std::move(payload)}}); }
ValuePtr star(ValuePtr payload) {
    return std::make_shared<const Value>(Value{StarV{std::move(payload)}});
}
} // namespace val

bool valueEq(const Value &a, const Value &b) {
    if (a.node.index() != b.node.index()) {
        return false;
    }
    return std::visit(
        [&](const auto &x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto &y = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, IntV> || std::is_same_v<T, StrV>) {
                return x.value == y.value;
            } else if constexpr (std::is_same_v<T, CtorV>) {
                if (x.name != y.name || x.args.size() != y.args.size()) {
                    return false;
                }
                for (std::size_t i = 0; i < x.args.size(); ++i) {
                    if (!valueEq(*x.args[i], *y.args[i])) {
                        return false;
                    }
                }
                return true;
            } else if constexpr (std::is_same_v<T, BoxV> || std::is_same_v<T, StarV>) {
                return valueEq(*x.payload, *y.payload);
            } else {
                return false;
            }
        },
        a.node);
}

namespace {

std::string printValue(const Value &v, bool argument) {
    return std::visit(
        [&](const auto &x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, IntV>) {
                std::string s = std::to_string(x.value);
                return argument && x.value < 0 ? "(" + s + ")" : s;
            } else if constexpr (std::is_same_v<T, StrV>) {
                return quoteString(x.value);
            } else if constexpr (std::is_same_v<T, CtorV>) {
                if (x.args.empty()) {
                    return x.name;
                }
                std::string s = x.name;
                for (const auto &arg : x.args) {
                    s += " " + printValue(*arg, true);
                }
                return argument ? "(" + s + ")" : s;
            } else if constexpr (std::is_same_v<T, BoxV>) {
                return "[" + printValue(*x.payload, false) + "]";
            } else if constexpr (std::is_same_v<T, StarV>) {
                return "*" + printValue(*x.payload, true);
            } else {
                return "<closure>";
            }
        },
        v.node);
}

} // namespace

std::string formatValue(const Value &v) { return printValue(v, false); }

const char *runtimeErrorName(RuntimeErrorKind kind) {
    switch (kind) {
    case RuntimeErrorKind::DivisionByZero:
        return "DivisionByZero";
    case RuntimeErrorKind::NonExhaustiveMatch:
        return "NonExhaustiveMatch";
    case RuntimeErrorKind::TagMismatch:
        return "TagMismatch";
    case RuntimeErrorKind::UnboundVariable:
        return "UnboundVariable";
    case RuntimeErrorKind::UnknownMain:
        return "UnknownMain";
    case RuntimeErrorKind::ArityMismatch:
        return "ArityMismatch";
    case RuntimeErrorKind::DepthExceeded:
        return "DepthExceeded";
    }
    return "RuntimeError";
}

RuntimeError::RuntimeError(RuntimeErrorKind k, const std::string &message, SourceSpan s)
    : std::runtime_error(std::string(runtimeErrorName(k)) + ": " + message), kind(k),
      span(std::move(s)) {}

std::shared_ptr<const Globals> buildGlobals(const Program &p) {
    auto globals = std::make_shared<Globals>();
    for (const auto &decl : p.decls) {
        if (auto *d = std::get_if<DataDecl>(&decl)) {
            for (const auto &c : d->constructors) {
                globals->constructorArity[c.name] = c.fields.size();
            }
            continue;
        }
        const auto &f = std::get<FunDecl>(decl);
        // f p1 .. pn = body  ~>  \%0 -> .. \%n-1 -> case %0 of | p1 -> .. body
        // '%' cannot occur in source identifiers, so these names never clash.
        TermPtr lowered = f.body;
        for (std::size_t i = f.params.size(); i-- > 0;) {
            std::string arg = "%" + std::to_string(i);
            lowered = term::caseOf(term::var(arg, f.span), {{f.params[i], lowered}}, f.span);
        }
        for (std::size_t i = f.params.size(); i-- > 0;) {
            lowered = term::lam("%" + std::to_string(i), lowered, f.span);
        }
        globals->definitions[f.name] = lowered;
        globals->arity[f.name] = f.params.size();
    }
    return globals;
}

namespace {

[[noreturn]] void tagMismatch(const std::string &what, const Value &found, const SourceSpan &span) {
    throw RuntimeError(RuntimeErrorKind::TagMismatch,
                       "expected " + what + " but found " + formatValue(found), span);
}

std::int64_t expectInt(const ValuePtr &v, const SourceSpan &span) {
    auto *i = std::get_if<IntV>(&v->node);
    if (!i) {
        tagMismatch("an integer", *v, span);
    }
    return i->value;
}

// Two's-complement wrapping arithmetic.
std::int64_t wrap(std::uint64_t bits) { return static_cast<std::int64_t>(bits); }

std::int64_t arith(BinOp op, std::int64_t a, std::int64_t b, const SourceSpan &span) {
    auto ua = static_cast<std::uint64_t>(a);
    auto ub = static_cast<std::uint64_t>(b);
    switch (op) {
    case BinOp::Add:
        return wrap(ua + ub);
    case BinOp::Sub:
        return wrap(ua - ub);
    case BinOp::Mul:
        return wrap(ua * ub);
    case BinOp::Div:
        if (b == 0) {
            throw RuntimeError(RuntimeErrorKind::DivisionByZero, "division by zero", span);
        }
        if (a == std::numeric_limits<std::int64_t>::min() && b == -1) {
            return a;
        }
        return a / b;
    case BinOp::Eq:
        return a == b ? 1 : 0;
    case BinOp::Concat:
        break;
    }
    throw RuntimeError(RuntimeErrorKind::TagMismatch, "string operator applied to integers", span);
}

bool match(const Pattern &p, const ValuePtr &v, Env &env) {
    return std::visit(
        [&](const auto &x) -> bool {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, PVar>) {
                env = env.bind(x.name, v);
                return true;
            } else if constexpr (std::is_same_v<T, PWild>) {
                return true;
            } else if constexpr (std::is_same_v<T, PInt>) {
                return expectInt(v, p.span) == x.value;
            } else if constexpr (std::is_same_v<T, PCtor>) {
                auto *c = std::get_if<CtorV>(&v->node);
                if (!c) {
                    tagMismatch("a constructor value", *v, p.span);
                }
                if (c->name != x.name) {
                    return false;
                }
                if (c->args.size() != x.args.size()) {
                    throw RuntimeError(RuntimeErrorKind::ArityMismatch,
                                       "constructor " + x.name + " matched with wrong arity",
                                       p.span);
                }
                for (std::size_t i = 0; i < x.args.size(); ++i) {
                    if (!match(*x.args[i], c->args[i], env)) {
                        return false;
                    }
                }
                return true;
            } else {
                auto *b = std::get_if<BoxV>(&v->node);
                if (!b) {
                    tagMismatch("a boxed value", *v, p.span);
                }
                return match(*x.inner, b->payload, env);
            }
        },
        p.node);
}

class Evaluator {
public:
    ValuePtr eval(const Env &env, const Term &t) {
        DepthGuard guard(t.span);
        return std::visit([&](const auto &node) { return evalNode(env, t, node); }, t.node);
    }

    ValuePtr apply(const ValuePtr &fn, const ValuePtr &arg, const SourceSpan &span) {
        auto *c = std::get_if<ClosV>(&fn->node);
        if (!c) {
            tagMismatch("a function", *fn, span);
        }
        return eval(c->env.bind(c->param, arg), *c->body);
    }

private:
    ValuePtr evalNode(const Env &env, const Term &t, const Var &v) {
        if (auto local = env.lookupLocal(v.name)) {
            return local;
        }
        const auto &defs = env.globals().definitions;
        auto it = defs.find(v.name);
        if (it == defs.end()) {
            throw RuntimeError(RuntimeErrorKind::UnboundVariable, "unbound variable " + v.name,
                               t.span);
        }
        return eval(Env(env.globalsPtr()), *it->second);
    }

    ValuePtr evalNode(const Env &, const Term &, const IntLit &i) { return val::integer(i.value); }

    ValuePtr evalNode(const Env &, const Term &, const StrLit &s) { return val::string(s.value); }

    ValuePtr evalNode(const Env &env, const Term &, const Lam &l) {
        return std::make_shared<const Value>(Value{ClosV{env, l.param, l.body}});
    }

    ValuePtr evalNode(const Env &env, const Term &t, const App &a) {
        ValuePtr fn = eval(env, *a.fun);
        ValuePtr arg = eval(env, *a.arg);
        return apply(fn, arg, t.span);
    }

    ValuePtr evalNode(const Env &env, const Term &, const BoxIntro &b) {
        return val::box(eval(env, *b.body));
    }

    ValuePtr evalNode(const Env &env, const Term &, const TrustIntro &b) {
        return val::star(eval(env, *b.body));
    }

    ValuePtr evalNode(const Env &env, const Term &t, const LetBox &l) {
        ValuePtr bound = eval(env, *l.bound);
        auto *b = std::get_if<BoxV>(&bound->node);
        if (!b) {
            tagMismatch("a boxed value", *bound, t.span);
        }
        return eval(env.bind(l.var, b->payload), *l.body);
    }

    // Trusted values become public boxes.
    ValuePtr evalNode(const Env &env, const Term &t, const Reveal &r) {
        ValuePtr inner = eval(env, *r.body);
        auto *s = std::get_if<StarV>(&inner->node);
        if (!s) {
            tagMismatch("a trusted value", *inner, t.span);
        }
        return val::box(s->payload);
    }

    // The public payload is rebound as trusted for the body only; the body
    // must produce a public box again.
    ValuePtr evalNode(const Env &env, const Term &t, const Endorse &e) {
        ValuePtr bound = eval(env, *e.bound);
        auto *b = std::get_if<BoxV>(&bound->node);
        if (!b) {
            tagMismatch("a boxed value", *bound, t.span);
        }
        ValuePtr result = eval(env.bind(e.var, val::star(b->payload)), *e.body);
        if (!std::holds_alternative<BoxV>(result->node)) {
            tagMismatch("a boxed result from endorse", *result, t.span);
        }
        return result;
    }

    ValuePtr evalNode(const Env &env, const Term &t, const Case &c) {
        ValuePtr scrutinee = eval(env, *c.scrutinee);
        for (const auto &alt : c.alternatives) {
            Env inner = env;
            if (match(*alt.pattern, scrutinee, inner)) {
                return eval(inner, *alt.body);
            }
        }
        throw RuntimeError(RuntimeErrorKind::NonExhaustiveMatch,
                           "no alternative matches " + formatValue(*scrutinee), t.span);
    }

    ValuePtr evalNode(const Env &env, const Term &t, const Ctor &c) {
        const auto &arities = env.globals().constructorArity;
        if (auto it = arities.find(c.name); it != arities.end() && it->second != c.args.size()) {
            throw RuntimeError(RuntimeErrorKind::ArityMismatch,
                               "constructor " + c.name + " applied to " +
                                   std::to_string(c.args.size()) + " arguments",
                               t.span);
        }
        std::vector<ValuePtr> args;
        args.reserve(c.args.size());
        for (const auto &arg : c.args) {
            args.push_back(eval(env, *arg));
        }
        return val::ctor(c.name, std::move(args));
    }

    ValuePtr evalNode(const Env &env, const Term &t, const PrimOp &p) {
        ValuePtr lhs = eval(env, *p.lhs);
        ValuePtr rhs = eval(env, *p.rhs);
        if (p.op == BinOp::Concat) {
            auto *a = std::get_if<StrV>(&lhs->node);
            auto *b = std::get_if<StrV>(&rhs->node);
            if (!a || !b) {
                tagMismatch("two strings", !a ? *lhs : *rhs, t.span);
            }
            return val::string(a->value + b->value);
        }
        return val::integer(arith(p.op, expectInt(lhs, p.lhs->span), expectInt(rhs, p.rhs->span),
                                  t.span));
    }
};

} // namespace

ValuePtr evalTerm(const Env &env, const Term &t) { return Evaluator().eval(env, t); }

ValuePtr applyValue(const ValuePtr &fn, const ValuePtr &arg) {
    return Evaluator().apply(fn, arg, {});
}

ValuePtr evalProgram(const Program &p, const std::string &mainName,
                     const std::vector<ValuePtr> &args) {
    const FunDecl *main = p.findFunction(mainName);
    if (!main) {
        throw RuntimeError(RuntimeErrorKind::UnknownMain, "no function named " + mainName);
    }
    if (main->params.size() != args.size()) {
        throw RuntimeError(RuntimeErrorKind::ArityMismatch,
                           mainName + " takes " + std::to_string(main->params.size()) +
                               " arguments but " + std::to_string(args.size()) + " were given",
                           main->span);
    }
    Env env(buildGlobals(p));
    Evaluator ev;
    ValuePtr result = ev.eval(env, *term::var(mainName, main->span));
    for (const auto &arg : args) {
        result = ev.apply(result, arg, main->span);
    }
    return result;
}

} // namespace gg
