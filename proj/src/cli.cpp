#include "gg/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "gg/evaluator.hpp"
#include "gg/parser.hpp"
#include "gg/typechecker.hpp"
#include "gg/verify.hpp"

namespace gg {

namespace {

struct Loaded {
    std::optional<Program> program;
    int status = kExitOk;
};

std::optional<std::string> readFile(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string parseDiagnostic(const ParseError &e) {
    return formatLocation(e.span) + ": error[E001]: " + e.what();
}

// Parses and type checks; prints the diagnostic and sets the status on failure.
Loaded load(const std::string &path, std::ostream &err) {
    auto text = readFile(path);
    if (!text) {
        err << path << ": error: cannot read file\n";
        return {std::nullopt, kExitUsage};
    }
    try {
        Program p = parseProgram(*text, path);
        checkProgram(p);
        return {std::move(p), kExitOk};
    } catch (const ParseError &e) {
        err << parseDiagnostic(e) << "\n";
        return {std::nullopt, kExitParseError};
    } catch (const TypeError &e) {
        err << formatDiagnostic(e) << "\n";
        return {std::nullopt, kExitTypeError};
    }
}

std::string runtimeDiagnostic(const std::string &file, const RuntimeError &e) {
    std::string loc = e.span.known() ? formatLocation(e.span) : file;
    return loc + ": runtime error: " + e.what();
}

int cmdCheck(const std::vector<std::string> &files, std::ostream &out, std::ostream &err) {
    int status = kExitOk;
    for (const auto &file : files) {
        Loaded l = load(file, err);
        if (l.program) {
            out << "OK " << file << "\n";
        } else if (status == kExitOk) {
            status = l.status;
        }
    }
    return status;
}

// Bare Int, `[i]` for box-typed and `trust i` for star-typed parameters.
std::optional<ValuePtr> wrapArgument(const Type &param, std::int64_t n) {
    if (std::holds_alternative<TInt>(param.node)) {
        return val::integer(n);
    }
    if (auto *b = std::get_if<TBox>(&param.node);
        b && std::holds_alternative<TInt>(b->payload->node)) {
        return val::box(val::integer(n));
    }
    if (auto *s = std::get_if<TStar>(&param.node);
        s && std::holds_alternative<TInt>(s->payload->node)) {
        return val::star(val::integer(n));
    }
    return std::nullopt;
}

int cmdRun(const std::string &file, const std::string &mainName,
           const std::vector<std::int64_t> &ints, std::ostream &out, std::ostream &err) {
    Loaded l = load(file, err);
    if (!l.program) {
        return l.status;
    }
    const Program &p = *l.program;
    std::vector<ValuePtr> args;
    if (const FunDecl *main = p.findFunction(mainName)) {
        TypePtr t = main->signature;
        for (std::size_t i = 0; i < ints.size(); ++i) {
            auto *fn = std::get_if<TFun>(&t->node);
            if (!fn) {
                break;
            }
            auto wrapped = wrapArgument(*fn->domain, ints[i]);
            if (!wrapped) {
                err << file << ": error: parameter " << i + 1 << " of " << mainName
                    << " has type " << formatType(*fn->domain)
                    << "; --arg supplies only Int, Int [r] or Int *{Trusted}\n";
                return kExitUsage;
            }
            args.push_back(*wrapped);
            t = fn->codomain;
        }
        // Surplus arguments are reported as an arity mismatch by evalProgram.
        for (std::size_t i = args.size(); i < ints.size(); ++i) {
            args.push_back(val::integer(ints[i]));
        }
    }
    try {
        out << formatValue(*evalProgram(p, mainName, args)) << "\n";
        return kExitOk;
    } catch (const RuntimeError &e) {
        err << runtimeDiagnostic(file, e) << "\n";
        return kExitRuntimeError;
    }
}

int printReport(const verify::Report &r, std::ostream &out) {
    out << verify::formatReport(r);
    out << verify::reportSummaryJson(r) << "\n";
    return r.passed() ? kExitOk : kExitPropertyFailure;
}

int cmdFuzz(const std::string &file, const std::string &fn, const std::string &mode,
            std::size_t trials, std::uint64_t seed, std::ostream &out, std::ostream &err) {
    Loaded l = load(file, err);
    if (!l.program) {
        return l.status;
    }
    try {
        return printReport(mode == "conf"
                               ? verify::fuzzConfidentiality(*l.program, fn, trials, seed)
                               : verify::fuzzIntegrity(*l.program, fn, trials, seed),
                           out);
    } catch (const verify::SignatureMismatch &e) {
        err << file << ": error[E102]: " << e.what() << "\n";
        return kExitTypeError;
    }
}

int cmdLaws(std::size_t trials, std::uint64_t seed, std::ostream &out, std::ostream &err) {
    try {
        return printReport(verify::checkMonadLaws(trials, seed), out);
    } catch (const verify::GenerationError &e) {
        err << "generation failure: " << e.what() << "\n";
        return kExitRuntimeError;
    }
}

} // namespace

int runCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Type checker, evaluator and noninterference harness for .gg programs", "gg"};
    app.require_subcommand(1);

    std::vector<std::string> checkFiles;
    auto *check = app.add_subcommand("check", "Parse and type check files");
    check->add_option("files", checkFiles, "Input .gg files")->required();

    std::string runFile;
    std::string runMain;
    std::vector<std::int64_t> runArgs;
    auto *run = app.add_subcommand("run", "Evaluate a top-level function");
    run->add_option("file", runFile, "Input .gg file")->required();
    run->add_option("--main", runMain, "Function to apply")->required();
    run->add_option("--arg", runArgs, "Integer argument, wrapped per the parameter type")
        ->allow_extra_args(false);

    std::string fuzzFile;
    std::string fuzzFn;
    std::string fuzzMode;
    std::size_t fuzzTrials = 100;
    std::uint64_t fuzzSeed = 0;
    auto *fuzz = app.add_subcommand("fuzz-ni", "Fuzz noninterference of a function");
    fuzz->add_option("file", fuzzFile, "Input .gg file")->required();
    fuzz->add_option("--fn", fuzzFn, "Function under test")->required();
    fuzz->add_option("--mode", fuzzMode, "conf or integ")
        ->required()
        ->check(CLI::IsMember({"conf", "integ"}));
    fuzz->add_option("--trials", fuzzTrials, "Number of trials")->capture_default_str();
    fuzz->add_option("--seed", fuzzSeed, "Random seed")->capture_default_str();

    std::size_t lawTrials = 200;
    std::uint64_t lawSeed = 0;
    auto *laws = app.add_subcommand("laws", "Check the reveal/endorse monad laws");
    laws->add_option("--trials", lawTrials, "Number of trials")->capture_default_str();
    laws->add_option("--seed", lawSeed, "Random seed")->capture_default_str();

    std::vector<std::string> argvStorage{"gg"};
    argvStorage.insert(argvStorage.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &a : argvStorage) {
        argv.push_back(a.data());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    if (check->parsed()) {
        return cmdCheck(checkFiles, out, err);
    }
    if (run->parsed()) {
        return cmdRun(runFile, runMain, runArgs, out, err);
    }
    if (fuzz->parsed()) {
        return cmdFuzz(fuzzFile, fuzzFn, fuzzMode, fuzzTrials, fuzzSeed, out, err);
    }
    return cmdLaws(lawTrials, lawSeed, out, err);
}

} // namespace gg
