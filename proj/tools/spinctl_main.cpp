#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"spinctl: local quantum control of Heisenberg spin chains"};
    app.require_subcommand(1);

    struct Args {
        std::string config;
        std::optional<std::uint64_t> seed;
        std::optional<std::string> out;
        int threads = 0;
    };

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"optimize", "maximize gate fidelity over the pulse amplitudes"},
        {"min-time", "multistart fidelity scan over total evolution times"},
        {"sensitivity", "average fidelity under random amplitude errors"},
        {"spectrum", "power spectrum of a piecewise-constant control field"},
        {"filter", "fidelity after low-pass / Gaussian spectral filtering"},
        {"iterate-filter", "alternate filtering and re-optimization rounds"},
        {"lie-dim", "dimension of the dynamical Lie algebra"},
    };

    std::vector<std::shared_ptr<Args>> all_args;
    for (const auto& [name, desc] : commands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        auto args = std::make_shared<Args>();
        sub->add_option("--config", args->config, "run configuration (JSON)")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--seed", args->seed, "override the config seed");
        sub->add_option("--out", args->out, "output directory (overrides config)");
        sub->add_option("--threads", args->threads,
                        "worker threads (0 = hardware concurrency)");
        all_args.push_back(args);
    }

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < commands.size(); ++i) {
        CLI::App* sub = app.get_subcommand(commands[i].first);
        if (!sub->parsed()) continue;
        const Args& a = *all_args[i];
        int threads = a.threads;
        if (threads <= 0)
            threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads < 1) threads = 1;
        return spinctl::cli::run_command(commands[i].first, a.config, a.seed, a.out, threads);
    }
    return 2;
}
