#include "finsec/run.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Finite section stability analyzer"};
    app.set_version_flag("--version", FINSEC_VERSION);

    std::string mode, config;
    std::string out;
    int threads = 0;
    std::uint64_t seed = 0;
    app.add_option("mode", mode, "analyze | fsm | simulate | spectrum")
        ->required()
        ->check(CLI::IsMember({"analyze", "fsm", "simulate", "spectrum"}));
    app.add_option("--config", config, "configuration file (JSON)")->required();
    auto* out_opt = app.add_option("--out", out, "output directory (overrides the config)");
    auto* threads_opt = app.add_option("--threads", threads, "worker threads (default: FINSEC_THREADS or 1)")
                            ->check(CLI::PositiveNumber);
    auto* seed_opt = app.add_option("--seed", seed, "seed for randomized estimators (overrides the config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : finsec::kExitInputError;
    }

    finsec::RunOptions opt;
    if (*out_opt) opt.out = out;
    if (*seed_opt) opt.seed = seed;
    opt.threads = 1;
    if (*threads_opt) {
        opt.threads = threads;
    } else if (const char* env = std::getenv("FINSEC_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || n < 1) {
            std::cerr << "input error: FINSEC_THREADS must be a positive integer\n";
            return finsec::kExitInputError;
        }
        opt.threads = static_cast<int>(n);
    }
    return finsec::run_cli(mode, config, opt, std::cout, std::cerr);
}
