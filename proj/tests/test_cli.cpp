#include "doctest.h"

#include "dlab/config.hpp"
#include "dlab/output.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

using namespace dlab;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string output;  // stdout and stderr
};

std::string cli_path()
{
    const char* p = std::getenv("DLAB_CLI");
    REQUIRE_MESSAGE(p != nullptr, "DLAB_CLI must point at the dlab_cli binary");
    return p;
}

Result run_cli(const std::string& args)
{
    Result r;
    const std::string cmd = cli_path() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("dlab_cli_test_" + std::to_string(::getpid())))
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& text)
{
    std::ofstream out(p, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("config: defaults, overrides and typed access")
{
    Config c("tech-lemma");
    CHECK(c.real("alpha") == 2.0);
    CHECK(c.integer("seed") == 1);
    CHECK(c.integer("samples") == 1000000);
    c.apply_override("delta=0.2");
    c.merge_text("# comment\nalpha = 1.5\n; another\n\nsampling = paired\n");
    CHECK(c.real("delta") == 0.2);
    CHECK(c.real("alpha") == 1.5);
    CHECK(c.text("sampling") == "paired");

    Config k("kernel-decay");
    k.merge_text("[n_sweep]\nNs = 16, 32\n[check]\ndoubling_tolerance = 0.02\n");
    CHECK(k.real_list("n_sweep.Ns") == std::vector<double>{16, 32});
    CHECK(k.real("check.doubling_tolerance") == 0.02);
    CHECK_THROWS_AS(k.integer("delta"), ConfigError);
}

TEST_CASE("config: errors name the problem")
{
    Config c("tech-lemma");
    auto message = [&](auto&& f) -> std::string {
        try {
            f();
        } catch (const ConfigError& e) {
            return e.what();
        }
        return "";
    };
    CHECK(message([&] { c.set("alpha", "2.5"); }) == "invalid value '2.5' for alpha: constraint alpha ∈ [1,2]");
    CHECK(message([&] { c.set("B", "1"); }) == "B is derived, not settable");
    CHECK(message([&] { c.set("foo", "1"); }).rfind("unknown key 'foo' for tech-lemma (valid keys:", 0) == 0);
    CHECK(message([&] { c.merge_text("delta = 0.1\nthis line is wrong\n", "cfg.ini"); }).rfind("cfg.ini:2:", 0) == 0);
    CHECK(message([&] { c.merge_text("[broken\n", "cfg.ini"); }).rfind("cfg.ini:1:", 0) == 0);
    CHECK(!message([&] { c.set("samples", "1.5"); }).empty());
    CHECK(!message([&] { c.set("sampling", "sideways"); }).empty());
    CHECK(!message([&] { Config bad("nonsense"); }).empty());
    for (const char* k : {"B", "beta", "s_alpha", "gamma", "tau", "q", "p"}) CHECK(is_derived_key(k));
}

TEST_CASE("config: every subcommand has alpha and seed")
{
    for (const auto& sub : subcommands()) {
        Config c(sub);
        CHECK(c.values().count("alpha") == 1);
        CHECK(c.values().count("seed") == 1);
    }
}

TEST_CASE("output helpers")
{
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_text({"a", "b"}, {{"1", "2"}}) == "a,b\r\n1,2\r\n");
    CHECK_THROWS(csv_text({"a", "b"}, {{"1"}}));
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_real(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(format_real(INFINITY) == "inf");
    // FNV-1a 64 reference vectors
    CHECK(hex64(fnv1a64("")) == "cbf29ce484222325");
    CHECK(hex64(fnv1a64("a")) == "af63dc4c8601ec8c");
    CHECK(hex64(fnv1a64("foobar")) == "85944171f73967e8");
}

TEST_CASE("cli: keys lists the schema")
{
    const Result r = run_cli("keys energy");
    CHECK(r.code == 0);
    CHECK(r.output.find("alpha = 2") != std::string::npos);
    CHECK(r.output.find("data.b0_norm = 0.009") != std::string::npos);
}

TEST_CASE("cli: fixed seed gives byte-identical outputs and a consistent manifest")
{
    TempDir tmp;
    const std::string args = "run tech-lemma samples=20000 alpha=1.5 --seed 3 --threads 1 --out-dir ";
    const Result a = run_cli(args + (tmp.path / "a").string());
    const Result b = run_cli(args + (tmp.path / "b").string());
    CHECK(a.code == 0);
    CHECK(b.code == 0);
    CHECK(a.output.find("PASS tech-lemma.no_violations") != std::string::npos);
    for (const char* f : {"tech_lemma.csv", "summary.json"}) {
        INFO(f);
        const std::string x = slurp(tmp.path / "a" / f);
        CHECK(!x.empty());
        CHECK(x == slurp(tmp.path / "b" / f));
    }
    const Json m = Json::parse(slurp(tmp.path / "a" / "manifest.json"));
    CHECK(m["tool"] == "dlab 1.0.0");
    CHECK(m["seed"] == 3);
    CHECK(m["threads"] == 1);
    CHECK(m["pass"] == true);
    CHECK(m["config"]["alpha"] == "1.5");
    for (const auto& [name, digest] : m["outputs"].items()) CHECK(digest == file_digest((tmp.path / "a" / name).string()));
    const Json s = Json::parse(slurp(tmp.path / "a" / "summary.json"));
    CHECK(s["checks"]["no_violations"]["pass"] == true);
}

TEST_CASE("cli: exit codes")
{
    TempDir tmp;
    const std::string out = " --out-dir " + (tmp.path / "o").string();
    CHECK(run_cli("run scaling grid.n=32 lambdas=0.5 time.t_end=0.05" + out).code == 0);
    const Result failed = run_cli("run energy grid.n=32 time.t_end=0.02 check.ratio_hi=0.5" + out);
    CHECK(failed.code == 2);
    CHECK(failed.output.find("FAIL energy.coercivity") != std::string::npos);

    const Result bad_alpha = run_cli("run tech-lemma alpha=2.5" + out);
    CHECK(bad_alpha.code == 1);
    CHECK(bad_alpha.output.find("constraint alpha ∈ [1,2]") != std::string::npos);
    const Result derived = run_cli("run tech-lemma B=3" + out);
    CHECK(derived.code == 1);
    CHECK(derived.output.find("B is derived, not settable") != std::string::npos);
    const Result unknown = run_cli("run tech-lemma foo=1" + out);
    CHECK(unknown.code == 1);
    CHECK(unknown.output.find("unknown key 'foo'") != std::string::npos);
    CHECK(run_cli("run nonsense" + out).code == 1);
    CHECK(run_cli("run tech-lemma " + (tmp.path / "missing.ini").string() + out).code == 1);
}

TEST_CASE("cli: config files")
{
    TempDir tmp;
    const fs::path empty = tmp.path / "empty.ini", broken = tmp.path / "broken.ini", good = tmp.path / "good.ini";
    write_file(empty, "");
    write_file(broken, "samples = 1000\n\nsampling paired\n");
    write_file(good, "# small run\nsamples = 1000\n");

    const Result e = run_cli("run tech-lemma " + empty.string() + " samples=1000 --out-dir " + (tmp.path / "e").string());
    CHECK(e.code == 0);
    const Json s = Json::parse(slurp(tmp.path / "e" / "summary.json"));
    Config defaults("tech-lemma");
    defaults.set("samples", "1000");
    for (const auto& [k, v] : defaults.values()) CHECK(s["config"][k] == v);
    const Json m = Json::parse(slurp(tmp.path / "e" / "manifest.json"));
    CHECK(m["inputs"][empty.string()] == hex64(fnv1a64("")));

    const Result b = run_cli("run tech-lemma --config " + broken.string() + " --out-dir " + (tmp.path / "b").string());
    CHECK(b.code == 1);
    CHECK(b.output.find(broken.string() + ":3:") != std::string::npos);

    const Result g = run_cli("run tech-lemma --config " + good.string() + " --out-dir " + (tmp.path / "g").string());
    CHECK(g.code == 0);
    CHECK(Json::parse(slurp(tmp.path / "g" / "summary.json"))["config"]["samples"] == "1000");
}
