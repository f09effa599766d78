#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "anisolp/config.hpp"
#include "anisolp/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"anisotropic Littlewood-Paley square-function laboratory"};
    app.require_subcommand(1);

    std::string config_path, output_dir;
    int threads = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON experiment configuration");
        sub->add_option("--output", output_dir, "output directory (overrides config)");
        sub->add_option("--threads", threads, "worker threads (or ANISO_LP_THREADS)");
    };
    CLI::App* verify = app.add_subcommand("verify", "run the cross-module invariant battery");
    CLI::App* sweep = app.add_subcommand("sweep", "run equivalence studies over the sweep grid");
    CLI::App* demo = app.add_subcommand("demo", "diag(1,2), Poisson and Marcinkiewicz showcases");
    add_common(verify);
    add_common(sweep);
    add_common(demo);

    CLI11_PARSE(app, argc, argv);

    anisolp::ExperimentConfig cfg;
    try {
        if (!config_path.empty()) cfg = anisolp::ExperimentConfig::from_file(config_path);
        if (!output_dir.empty()) cfg.output_dir = output_dir;
        if (threads > 0) cfg.threads = threads;
        cfg.validate();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }

    try {
        const std::string name = app.get_subcommands().front()->get_name();
        return anisolp::run_subcommand(name, cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
