// cubeavg: cubic ergodic averages, dual functions, and weighted averages
// over concrete dynamical systems, with oracle verification reports.
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "cubeavg/report.hpp"

namespace {

int run_command(cubeavg::Command command, const std::string& config_path,
                const std::string& out_prefix, int threads) {
    try {
        cubeavg::RunConfig cfg = cubeavg::parse_config_file(command, config_path);
        if (!out_prefix.empty()) cfg.output_prefix = out_prefix;
        cfg.threads = threads;
        cubeavg::RunReport report = cubeavg::run(cfg);
        for (const auto& row : report.rows) {
            if (row.type == "check")
                std::printf("[%s] %s: %s (threshold %s)\n",
                            row.status == "pass" ? "PASS" : "FAIL", row.name.c_str(),
                            row.value.c_str(), row.threshold.c_str());
        }
        for (const auto& file : report.files) std::printf("wrote %s\n", file.c_str());
        return report.exit_code;
    } catch (const cubeavg::ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cubic ergodic averages on concrete dynamical systems"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_prefix;
    int threads = 1;

    for (const char* name : {"cubic", "dual", "ww", "verify", "uniform", "continuity"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "path to the JSON run configuration")
            ->required();
        sub->add_option("--out", out_prefix, "output path prefix (overrides config)");
        sub->add_option("--threads", threads, "worker count (output is identical for any value)")
            ->check(CLI::PositiveNumber);
    }

    CLI11_PARSE(app, argc, argv);
    const std::string name = app.get_subcommands().front()->get_name();
    return run_command(cubeavg::command_from_name(name), config_path, out_prefix, threads);
}
