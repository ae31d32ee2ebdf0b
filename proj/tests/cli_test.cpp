#include <doctest.h>

#include <sstream>

#include "gg/cli.hpp"
#include "test_support.hpp"

using namespace gg;

namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int status = runCli(args, out, err);
    return {status, out.str(), err.str()};
}

bool startsWith(const std::string &s, const std::string &prefix) {
    return s.rfind(prefix, 0) == 0;
}

std::string writeTemp(const std::string &name, const std::string &text) {
    auto path = std::filesystem::temp_directory_path() / ("gg_cli_" + name);
    std::ofstream(path) << text;
    return path.string();
}

} // namespace

TEST_CASE("check accepts and rejects corpus files") {
    std::string ok = test::corpusPath("addPatient.gg");
    Result r = cli({"check", ok});
    CHECK(r.status == kExitOk);
    CHECK(r.out == "OK " + ok + "\n");
    CHECK(r.err.empty());

    std::string leak = test::corpusPath("leak.gg");
    r = cli({"check", leak});
    CHECK(r.status == kExitTypeError);
    CHECK(r.out.empty());
    CHECK(startsWith(r.err, leak + ":2:"));
    CHECK(r.err.find(": error[E104]: ") != std::string::npos);

    r = cli({"check", ok, leak, test::corpusPath("flatten.gg")});
    CHECK(r.status == kExitTypeError);
    CHECK(r.out == "OK " + ok + "\nOK " + test::corpusPath("flatten.gg") + "\n");
}

TEST_CASE("check reports parse errors with status 2") {
    std::string path = writeTemp("bad.gg", "f : Int\nf = (1\n");
    Result r = cli({"check", path});
    CHECK(r.status == kExitParseError);
    CHECK(r.err == path + ":3:1: error[E001]: expected ')', found end of input\n");
}

TEST_CASE("run prints values") {
    Result r = cli({"run", test::corpusPath("meanAge.gg"), "--main", "twoPatients", "--arg", "30",
                    "--arg", "40"});
    CHECK(r.status == kExitOk);
    CHECK(r.out == "[35]\n");

    std::string path = writeTemp("run.gg", "id : Int -> Int\nid x = x\n"
                                           "rev : Int *{Trusted} -> Int [Public]\nrev s = reveal s\n"
                                           "div : Int -> Int\ndiv x = 10 / x\n");
    CHECK(cli({"run", path, "--main", "id", "--arg", "-5"}).out == "-5\n");
    CHECK(cli({"run", path, "--main", "rev", "--arg", "8"}).out == "[8]\n");

    r = cli({"run", path, "--main", "div", "--arg", "0"});
    CHECK(r.status == kExitRuntimeError);
    CHECK(r.err.find("runtime error: DivisionByZero") != std::string::npos);

    r = cli({"run", path, "--main", "nope"});
    CHECK(r.status == kExitRuntimeError);
    CHECK(r.err.find("UnknownMain") != std::string::npos);

    r = cli({"run", path, "--main", "id", "--arg", "1", "--arg", "2"});
    CHECK(r.status == kExitRuntimeError);
    CHECK(r.err.find("ArityMismatch") != std::string::npos);
}

TEST_CASE("fuzz-ni") {
    std::string ni = test::corpusPath("noninterference.gg");
    Result r = cli({"fuzz-ni", ni, "--fn", "const42", "--mode", "conf"});
    CHECK(r.status == kExitOk);
    CHECK(startsWith(r.out, "property: confidentiality(const42)\nseed: 0\ntrials: 100\nfailures: 0\n"
                            "result: PASS\n"));
    CHECK(r.out.find("{\"property\":\"confidentiality(const42)\",\"trials\":100,\"failures\":0,"
                     "\"seed\":0}") != std::string::npos);

    r = cli({"fuzz-ni", ni, "--fn", "mkKey", "--mode", "integ", "--trials", "7", "--seed", "3"});
    CHECK(r.status == kExitOk);
    CHECK(r.out.find("trials: 7\n") != std::string::npos);
    CHECK(r.out.find("seed: 3\n") != std::string::npos);

    r = cli({"fuzz-ni", ni, "--fn", "mkKey", "--mode", "conf"});
    CHECK(r.status == kExitTypeError);
    CHECK(r.err.find("error[E102]") != std::string::npos);

    CHECK(cli({"fuzz-ni", ni, "--fn", "const42", "--mode", "sideways"}).status == kExitUsage);
    CHECK(cli({"fuzz-ni", ni, "--mode", "conf"}).status == kExitUsage);
    CHECK(cli({"fuzz-ni", test::corpusPath("leak.gg"), "--fn", "leak", "--mode", "conf"}).status ==
          kExitTypeError);
}

TEST_CASE("laws") {
    Result r = cli({"laws", "--trials", "200", "--seed", "7"});
    CHECK(r.status == kExitOk);
    CHECK(startsWith(r.out, "property: relative-monad-laws\nseed: 7\ntrials: 200\nfailures: 0\n"));
    r = cli({"laws"});
    CHECK(r.status == kExitOk);
    CHECK(r.out.find("trials: 200\n") != std::string::npos);
    CHECK(r.out.find("seed: 0\n") != std::string::npos);
}

TEST_CASE("usage errors give status 5 and usage text") {
    for (const auto &args : std::vector<std::vector<std::string>>{
             {}, {"frobnicate"}, {"check"}, {"laws", "--trials", "many"}, {"check", "--nope", "x.gg"},
             {"run", test::corpusPath("meanAge.gg")}}) {
        Result r = cli(args);
        CAPTURE(args.size());
        CHECK(r.status == kExitUsage);
        CHECK_FALSE(r.err.empty());
    }
    CHECK(cli({"check", "/definitely/missing.gg"}).status == kExitUsage);
}

TEST_CASE("output is byte-identical across runs") {
    const std::vector<std::vector<std::string>> script = {
        {"check", test::corpusPath("meanAge.gg"), test::corpusPath("usageOnce.gg")},
        {"fuzz-ni", test::corpusPath("noninterference.gg"), "--fn", "hideThenConst", "--mode", "conf",
         "--seed", "11"},
        {"laws", "--trials", "40", "--seed", "2"},
    };
    for (const auto &args : script) {
        Result a = cli(args);
        Result b = cli(args);
        CHECK(a.status == b.status);
        CHECK(a.out == b.out);
        CHECK(a.err == b.err);
    }
}
