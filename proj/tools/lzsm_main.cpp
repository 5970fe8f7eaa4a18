#include <CLI11.hpp>

#include "lzsm/selftest.hpp"
#include "lzsm/sweep.hpp"

#include <cstdio>
#include <exception>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Periodically modulated driven-dissipative Kerr resonator toolkit"};
    app.require_subcommand(1);

    std::string config, out;
    int jobs = 0;
    std::uint64_t seed = 0;
    bool force = false;
    app.add_option("--config", config, "JSON sweep configuration");
    app.add_option("--out", out, "output directory (overrides the config)");
    app.add_option("--jobs", jobs, "worker threads (0 = all cores)");
    auto* seed_opt = app.add_option("--seed", seed, "RNG seed (overrides the config)");
    app.add_flag("--force", force, "run past the Floquet-map cost guard");

    auto* sc_spectro =
        app.add_subcommand("spectro", "single-tone response sweeps (power x detuning)");
    auto* sc_lzsm =
        app.add_subcommand("lzsm", "interference sweeps (detuning x modulation)");
    auto* sc_chaos =
        app.add_subcommand("chaos", "spectral statistics of the one-period generator");
    auto* sc_validate =
        app.add_subcommand("validate", "run the built-in verification checks");
    for (auto* sc : {sc_spectro, sc_lzsm, sc_chaos, sc_validate}) sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    if (sc_validate->parsed()) {
        auto results = lzsm::run_checks(lzsm::fast_check_ids());
        for (const auto& r : results)
            if (!r.pass) return 1;
        return 0;
    }

    if (config.empty()) {
        std::fprintf(stderr, "error: --config is required for this subcommand\n");
        return 2;
    }

    try {
        lzsm::SweepConfig cfg = lzsm::load_config(config);
        if (sc_spectro->parsed()) cfg.task = "spectro";
        else if (sc_lzsm->parsed()) cfg.task = "lzsm";
        else if (sc_chaos->parsed()) cfg.task = "chaos";
        if (seed_opt->count() > 0) cfg.seed = seed;
        std::string out_dir = !out.empty() ? out
                              : !cfg.output.empty() ? cfg.output
                                                    : cfg.task + "_out";
        lzsm::RunResult res = sc_chaos->parsed()
                                  ? lzsm::chaos_run(cfg, out_dir, jobs, force)
                                  : lzsm::run(cfg, out_dir, jobs);
        std::printf("%s\n", res.message.c_str());
        if (res.exit_code == 0) std::printf("results in %s\n", out_dir.c_str());
        return res.exit_code;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
