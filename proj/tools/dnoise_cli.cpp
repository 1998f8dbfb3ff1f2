#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dnoise/errors.hpp"
#include "dnoise/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"boundary-noise simulation harness"};
    app.require_subcommand(1);

    std::string experiment, domain, noise, config_path, out_dir;
    std::uint64_t seed = 0;
    int workers = 0;

    CLI::App* run = app.add_subcommand("run", "run one experiment, write csv + json");
    run->add_option("experiment", experiment, "experiment id (see list-experiments)");
    CLI::Option* domain_opt = run->add_option("--domain", domain, "domain id");
    CLI::Option* noise_opt = run->add_option("--noise", noise, "noise id");
    CLI::Option* config_opt = run->add_option("--config", config_path, "json config file");
    config_opt->excludes(domain_opt)->excludes(noise_opt);
    CLI::Option* seed_opt = run->add_option("--seed", seed, "monte carlo seed");
    CLI::Option* workers_opt = run->add_option("--workers", workers, "monte carlo threads");
    run->add_option("--out-dir", out_dir, "output directory (default 'out')")
        ->envname("DNOISE_OUT_DIR");

    CLI::App* list = app.add_subcommand("list-experiments", "print the experiment registry");
    CLI::App* self = app.add_subcommand("kernel-selftest", "cross-validate the kernel routes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (list->parsed()) {
            dnoise::list_experiments(std::cout);
            return 0;
        }
        if (self->parsed()) return dnoise::kernel_selftest(std::cout) ? 0 : 1;

        dnoise::ExperimentConfig cfg;
        if (!config_path.empty()) {
            cfg = dnoise::load_config(config_path);
            if (!experiment.empty() && experiment != cfg.experiment)
                throw dnoise::ConfigError("run: experiment '" + experiment +
                                          "' conflicts with config file '" + cfg.experiment + "'");
        } else {
            if (experiment.empty())
                throw dnoise::ConfigError("run: give an experiment id or --config");
            cfg = dnoise::default_config(experiment, domain, noise);
        }
        if (seed_opt->count() > 0) cfg.mc.seed = seed;
        if (workers_opt->count() > 0) cfg.mc.workers = workers;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        dnoise::validate_config(cfg);

        const dnoise::RunResult res = dnoise::run_experiment(cfg);
        std::cout << (res.pass ? "PASS" : "FAIL") << " " << cfg.experiment
                  << "  csv=" << res.csv_path << "  json=" << res.json_path << "\n";
        for (const std::string& f : res.failures) std::cout << "  - " << f << "\n";
        return res.pass ? 0 : 1;
    } catch (const dnoise::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
