#include <string>

#include <CLI11.hpp>

#include "dp3/cli.hpp"
#include "dp3/kernels.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Pseudospectral simulator and verification harness for a 3-component "
                 "Degasperis-Procesi system"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    bool serial = false;
    app.add_flag("--serial", serial, "disable OpenMP kernel dispatch");

    auto add_common = [&](CLI::App* sc) {
        sc->add_option("-c,--config", config_path, "config JSON path")->required();
        sc->add_option("-o,--out", out_dir, "output directory");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "integrate and write run artifacts");
    CLI::App* certify = app.add_subcommand("certify", "evaluate the blow-up certificate");
    CLI::App* mollify = app.add_subcommand("mollify", "epsilon ladder for the mollified system");
    CLI::App* persist = app.add_subcommand("persist", "weighted persistence diagnostics");
    CLI::App* reductions = app.add_subcommand("check-reductions", "invariant-manifold residuals");
    for (CLI::App* sc : {simulate, certify, mollify, persist, reductions}) add_common(sc);

    CLI11_PARSE(app, argc, argv);
    dp3::kernels::set_parallel(!serial);

    if (simulate->parsed()) return dp3::cli::cmd_simulate(config_path, out_dir);
    if (certify->parsed()) return dp3::cli::cmd_certify(config_path, out_dir);
    if (mollify->parsed()) return dp3::cli::cmd_mollify(config_path, out_dir);
    if (persist->parsed()) return dp3::cli::cmd_persist(config_path, out_dir);
    if (reductions->parsed()) return dp3::cli::cmd_check_reductions(config_path, out_dir);
    return 1;
}
