#include <iostream>

#include "CLI11.hpp"
#include "finitezone/job.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Finite-zone Schrodinger potentials from spectral curves"};
    app.require_subcommand(1);
    std::string config, out_dir;
    double tol = 0.0;
    for (const char* name : {"curve", "potential", "verify", "dubrovin", "floquet", "bloch"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config, "JSON job description")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory (overrides output_dir)");
        sub->add_option("--tol", tol, "quadrature, ODE and root tolerance")->check(CLI::PositiveNumber);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : fz::kExitConfig;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    try {
        fz::JobConfig cfg = fz::load_config(config);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (tol > 0.0) cfg.tol.quad_tol = cfg.tol.ode_tol = cfg.tol.root_tol = tol;
        return fz::run_job(command, cfg, std::cout, std::cerr);
    } catch (const fz::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return fz::kExitConfig;
    }
}
