#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

// Runs the tool through the shell, capturing stdout; stderr (timing line,
// error text) is dropped unless the caller redirects it explicitly.
RunResult run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + "\"" + ATLIFT_CLI_PATH + "\" " + args +
                      " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    int status = pclose(p);
    REQUIRE(WIFEXITED(status));
    r.code = WEXITSTATUS(status);
    return r;
}

std::string model_path(const std::string& file) { return std::string(ATLIFT_MODELS_DIR) + "/" + file; }

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("validate passes on every canned model") {
    for (const char* name : {"point", "torus1", "torus2", "delbar-toy", "iwasawa"}) {
        CAPTURE(name);
        RunResult r = run(std::string("validate --model ") + name);
        CHECK(r.code == 0);
        CHECK(contains(r.out, "PASS algebra-axioms"));
        CHECK(contains(r.out, "RESULT PASS"));
    }
}

TEST_CASE("validate accepts the shipped fixture and checks all its sections") {
    RunResult r = run("validate --model \"" + model_path("torus1-rank2.model") + "\"");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "model torus1-rank2"));
    CHECK(contains(r.out, "PASS algebra-axioms"));
    CHECK(contains(r.out, "PASS complex-structure"));
    CHECK(contains(r.out, "PASS connection-bidegrees"));
    CHECK(contains(r.out, "RESULT PASS"));
}

TEST_CASE("a fixture violating the square-zero axiom fails with a named check") {
    RunResult r = run("validate --model \"" + model_path("broken.model") + "\"");
    CHECK(r.code == 1);
    CHECK(contains(r.out, "FAIL complex-structure"));
    // The report carries the exact residual detail for the offending block.
    CHECK(contains(r.out, "  ! "));
    CHECK(contains(r.out, "RESULT FAIL"));
}

TEST_CASE("usage and input errors exit with code two") {
    CHECK(run("frobnicate").code == 2);
    CHECK(run("validate --no-such-flag").code == 2);
    CHECK(run("validate --model no-such-model").code == 2);
    CHECK(run("validate --model torus1 --format yaml").code == 2);
    CHECK(run("").code == 2);  // a subcommand is required
    // A directory is not a model file; it must be rejected, not streamed.
    CHECK(run("validate --model \"" + model_path("") + "\"").code == 2);
}

TEST_CASE("bare model filenames resolve through the models directory variable") {
    RunResult r = run("validate --model torus1-rank2.model",
                      std::string("ATLIFT_MODELS_DIR=\"") + ATLIFT_MODELS_DIR + "\"");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "model torus1-rank2"));
}

TEST_CASE("the morphism suite passes on the fixture at full arity") {
    RunResult r = run("linfty-check --model \"" + model_path("torus1-rank2.model") +
                      "\" --max-n 5 --seed 7");
    CHECK(r.code == 0);
    for (int n = 1; n <= 5; ++n) {
        CAPTURE(n);
        CHECK(contains(r.out, "PASS condition-n" + std::to_string(n)));
    }
}

TEST_CASE("the deformation suite passes on the fixture with many trials") {
    RunResult r = run("mc --model \"" + model_path("delbar-toy-rank2.model") +
                      "\" --order 4 --trials 25 --seed 7");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "PASS obstruction-annihilation"));
    CHECK(contains(r.out, "PASS pushforward-closed"));
}

TEST_CASE("the cocycle and trace suites pass on canned models") {
    CHECK(run("atiyah --model torus1 --seed 3").code == 0);
    CHECK(run("semiregularity --model iwasawa --p 2 --seed 5").code == 0);
}

TEST_CASE("recorded seeds drive nonzero obstruction classes through the tool") {
    for (int seed : {3, 38}) {
        CAPTURE(seed);
        RunResult r =
            run("mc --model delbar-toy --seed " + std::to_string(seed) + " --format json");
        CHECK(r.code == 0);
        nlohmann::json j = nlohmann::json::parse(r.out);
        CHECK(j.at("pass").get<bool>());
        bool found = false;
        for (const auto& c : j.at("checks"))
            if (c.at("name") == "obstruction-annihilation") {
                found = true;
                CHECK(c.at("counts").at("order2_nonzero").get<long long>() > 0);
            }
        CHECK(found);
    }
}

TEST_CASE("reports are byte-identical across repeated runs") {
    for (const char* args : {"atiyah --model torus1 --seed 11",
                             "linfty-check --model delbar-toy --max-n 3 --seed 11 --format json",
                             "mc --model delbar-toy --seed 3 --format json"}) {
        CAPTURE(args);
        RunResult a = run(args);
        RunResult b = run(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
}

TEST_CASE("reports are byte-identical when the worker count is capped") {
    const char* args = "linfty-check --model torus2 --max-n 3 --seed 9";
    RunResult wide = run(args);
    RunResult narrow = run(args, "ATLIFT_THREADS=1");
    CHECK(wide.code == 0);
    CHECK(narrow.code == wide.code);
    CHECK(narrow.out == wide.out);
}

TEST_CASE("different seeds draw different instances") {
    RunResult a = run("atiyah --model torus1 --seed 1");
    RunResult b = run("atiyah --model torus1 --seed 2");
    CHECK(a.code == 0);
    CHECK(b.code == 0);
    CHECK(a.out != b.out);  // the instance hash covers the drawn pieces
}

TEST_CASE("machine-readable and human-readable renderings agree") {
    for (const char* base :
         {"validate --model torus1", "atiyah --model torus1 --seed 4"}) {
        CAPTURE(base);
        RunResult text = run(base);
        RunResult js = run(std::string(base) + " --format json");
        CHECK(text.code == js.code);
        nlohmann::json j = nlohmann::json::parse(js.out);
        CHECK(j.at("pass").get<bool>() == contains(text.out, "RESULT PASS"));
        CHECK(j.at("checks").size() > 0);
        for (const auto& c : j.at("checks")) {
            // Every check named in the JSON report appears in the text form.
            std::string line = std::string(c.at("pass").get<bool>() ? "PASS " : "FAIL ") +
                               c.at("name").get<std::string>();
            CHECK(contains(text.out, line));
        }
    }
}

TEST_CASE("failing reports keep the same shape in json") {
    RunResult r = run("validate --model \"" + model_path("broken.model") + "\" --format json");
    CHECK(r.code == 1);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(!j.at("pass").get<bool>());
    bool saw_fail = false;
    for (const auto& c : j.at("checks"))
        if (!c.at("pass").get<bool>()) {
            saw_fail = true;
            CHECK(c.at("detail").size() > 0);
        }
    CHECK(saw_fail);
}
