// Batch driver: solver --config FILE [--case NAME --dt X --mg STR --level N
//                                     --integrator implicit|explicit --outdir DIR]
#include <CLI11.hpp>
#include <exception>
#include <iostream>
#include <map>
#include <string>

#include "dgmg/config.hpp"
#include "dgmg/run.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"DG solver for atmospheric test cases"};
    std::string config_path;
    std::map<std::string, std::string> overrides;
    std::string case_name, dt, mg, level, integrator, outdir;

    app.add_option("--config", config_path, "key = value configuration file")->required();
    app.add_option("--case", case_name, "inertia-gravity | rising-bubble | density-current");
    app.add_option("--dt", dt, "time step in seconds");
    app.add_option("--mg", mg, "multigrid key such as mg001111V, or none");
    app.add_option("--level", level, "refinement level of the DG mesh");
    app.add_option("--integrator", integrator, "implicit | explicit");
    app.add_option("--outdir", outdir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::pair<const char*, const std::string*> flags[] = {
        {"case", &case_name}, {"dt", &dt}, {"mg", &mg}, {"level", &level}, {"integrator", &integrator},
        {"outdir", &outdir}};
    for (const auto& [key, value] : flags)
        if (!value->empty()) overrides[key] = *value;

    dgmg::RunConfig cfg;
    try {
        cfg = dgmg::parse_config(config_path, overrides);
    } catch (const dgmg::ConfigError& e) {
        std::cerr << "config error";
        if (e.line() > 0) std::cerr << " (line " << e.line() << ")";
        std::cerr << ": " << e.what() << '\n';
        return 2;
    }

    try {
        const dgmg::RunSummary s = dgmg::run(cfg, std::cout);
        return s.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
