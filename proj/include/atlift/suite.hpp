#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atlift/deformation.hpp"
#include "atlift/model_io.hpp"

namespace atlift {

struct CheckResult {
    std::string name;
    bool pass = true;
    std::map<std::string, std::int64_t> counts;
    std::vector<std::string> detail;  // failure residuals, capped
};

// Deterministic given (model, command, seed); timing is deliberately not part
// of the report so renderings stay byte-identical across runs.
struct Report {
    std::string command;
    std::string model;
    std::string model_hash;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    bool pass() const;
    nlohmann::json to_json() const;
    std::string to_text() const;
};

struct SuiteOptions {
    std::string model = "torus1";
    std::uint64_t seed = 1;
    int max_n = 5;   // linfty-check: verify conditions up to this arity
    int p = 2;       // semiregularity: verify components 1..p
    int order = 3;   // mc: extension order
    int trials = 5;  // mc: seeded starts
};

std::vector<std::string> suite_commands();

// Runs one verification suite. Returns nullopt with err set when the command
// is unknown or the model cannot be loaded or parsed (usage/input error);
// axiom violations in a loaded model are reported as failing checks instead.
std::optional<Report> run_suite(const std::string& command, const SuiteOptions& opt,
                                std::string& err);

}  // namespace atlift
