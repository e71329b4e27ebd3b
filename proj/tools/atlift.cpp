#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "atlift/suite.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exact verification workbench for connections, cocycles and lifted morphisms"};
    app.require_subcommand(1);

    atlift::SuiteOptions opt;
    std::string format = "text";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--model", opt.model, "canned model name or path to a model file")
            ->capture_default_str();
        sub->add_option("--seed", opt.seed, "seed for drawn complexes, connections and trials")
            ->capture_default_str();
        sub->add_option("--format", format, "report format")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
    };

    add_common(app.add_subcommand("validate", "check algebra, complex and connection axioms"));
    add_common(app.add_subcommand("atiyah",
                                  "verify cocycle identities and pairing compatibility"));
    auto* linfty =
        app.add_subcommand("linfty-check", "verify the morphism conditions arity by arity");
    add_common(linfty);
    linfty->add_option("--max-n", opt.max_n, "largest arity to verify")->capture_default_str();
    auto* semi =
        app.add_subcommand("semiregularity", "verify trace chain maps and closed cocycles");
    add_common(semi);
    semi->add_option("--p", opt.p, "largest cocycle power")->capture_default_str();
    auto* mc = app.add_subcommand("mc", "verify obstruction annihilation under pushforward");
    add_common(mc);
    mc->add_option("--order", opt.order, "deformation extension order")->capture_default_str();
    mc->add_option("--trials", opt.trials, "number of seeded starts")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // help text
        app.exit(e);
        return 2;
    }

    std::string command = app.get_subcommands().front()->get_name();
    auto t0 = std::chrono::steady_clock::now();
    std::string err;
    std::optional<atlift::Report> rep;
    try {
        rep = atlift::run_suite(command, opt, err);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (!rep) {
        std::cerr << "error: " << err << "\n";
        return 2;
    }
    if (format == "json")
        std::cout << rep->to_json().dump(2) << "\n";
    else
        std::cout << rep->to_text();
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    std::fprintf(stderr, "[time] %.3fs\n", dt.count());
    return rep->pass() ? 0 : 1;
}
