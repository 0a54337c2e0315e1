// crjc: simulate, sweep, wigner and verify from scenario files.

#include "crjc/runner.hpp"
#include "crjc/verify.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

std::filesystem::path output_dir(const std::string& flag)
{
    if (!flag.empty())
        return flag;
    if (const char* env = std::getenv("CRJC_OUTPUT_DIR"); env && *env)
        return env;
    return "crjc-out";
}

void report(const std::vector<std::filesystem::path>& files, const std::vector<std::string>& warnings)
{
    for (const auto& w : warnings)
        std::cerr << "warning: " << w << "\n";
    for (const auto& f : files)
        std::cout << f.string() << "\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Counter-rotating multiphoton Jaynes-Cummings dynamics"};
    app.set_version_flag("--version", CRJC_VERSION);
    app.require_subcommand(1);

    std::string out;
    app.add_option("--out", out, "Output directory (default: $CRJC_OUTPUT_DIR or ./crjc-out)");

    std::string scenario_path;
    auto* simulate = app.add_subcommand("simulate", "Run a scenario file");
    simulate->add_option("scenario", scenario_path)->required()->check(CLI::ExistingFile);

    std::string axis, values;
    auto* sweep = app.add_subcommand("sweep", "Run a scenario over one parameter axis");
    sweep->add_option("scenario", scenario_path)->required()->check(CLI::ExistingFile);
    sweep->add_option("--axis", axis, "delta, g, chi, k, gamma or cutoff")->required();
    sweep->add_option("--values", values, "Comma list; a:b:step expands to a range")->required();

    std::string times, grid;
    auto* wigner = app.add_subcommand("wigner", "Wigner snapshots of a scenario");
    wigner->add_option("scenario", scenario_path)->required()->check(CLI::ExistingFile);
    wigner->add_option("--times", times, "Comma list of times")->required();
    wigner->add_option("--grid", grid, "re_min:re_max:n_re,im_min:im_max:n_im")->required();

    bool full = false;
    std::string fault;
    std::string json_path;
    auto* verify = app.add_subcommand("verify", "Run the self-check suite");
    verify->add_flag("--full", full, "N = 128 and the full parameter grid");
    verify->add_option("--inject-fault", fault, "Mutation canary")->check(CLI::IsMember({"g-sign"}));
    verify->add_option("--json", json_path, "Also write the JSON report to this file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) {
            const auto sc = crjc::load_scenario(scenario_path);
            const auto r = crjc::run_scenario(sc, output_dir(out));
            report(r.files, r.warnings);
        } else if (*sweep) {
            const auto sc = crjc::load_scenario(scenario_path);
            const auto r = crjc::run_sweep(sc, axis, crjc::parse_value_list(values), output_dir(out));
            report(r.files, r.warnings);
        } else if (*wigner) {
            const auto sc = crjc::load_scenario(scenario_path);
            const auto r = crjc::run_wigner(sc, crjc::parse_value_list(times),
                                            crjc::parse_grid_spec(grid), output_dir(out));
            report(r.files, r.warnings);
        } else if (*verify) {
            crjc::VerifyOptions opts;
            opts.level = full ? crjc::VerifyLevel::full : crjc::VerifyLevel::fast;
            opts.flip_g_sign = fault == "g-sign";
            const auto r = crjc::run_verify(opts);
            const std::string json = r.to_json();
            std::cout << json << "\n";
            if (!json_path.empty()) {
                std::ofstream f(json_path);
                f << json << "\n";
            }
            for (const auto& c : r.checks)
                if (!c.pass)
                    std::cerr << "FAIL " << c.name << " [" << c.component << "] observed "
                              << c.observed << " tolerance " << c.tolerance << "\n";
            return r.ok() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
