#include <iostream>
#include <optional>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "qres/commands.hpp"
#include "qres/config.hpp"

namespace {

int report_error(const char* kind, const std::string& message, int code) {
    std::cerr << nlohmann::json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Complex-scaled resonance solver: classical spectra, variational eigensolver emulation, "
                 "theta trajectories and QPE filtration."};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    bool exact = false;
    int threads = 0;
    std::string states_file;

    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "overrides vqa.base_seed and filter.seed");
    app.add_option("--out", out_dir, "output directory (overrides output.dir)");
    app.add_flag("--exact", exact, "exact expectation values, no shot sampling");
    app.add_option("--threads", threads, "OpenMP threads")->check(CLI::PositiveNumber);

    auto* classical = app.add_subcommand("spectrum-classical", "diagonalize H(theta) for each configured angle");
    auto* quantum = app.add_subcommand("spectrum-quantum", "variance-minimization scan over the encoded H(theta)");
    auto* traj = app.add_subcommand("trajectory", "follow one eigenvalue over the theta grid");
    auto* filter = app.add_subcommand("filter", "QPE particle-number filtration of saved states");
    filter->add_option("--states", states_file, "states.json written by spectrum-quantum");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error("usage", e.what(), 2);
    }

    try {
        auto cfg = config_path.empty() ? qres::config::parse_config(nlohmann::json::object())
                                       : qres::config::load_config(config_path);
        if (seed) {
            cfg.vqa.base_seed = *seed;
            cfg.filter.seed = *seed;
        }
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (exact) cfg.vqa.shots.reset();
        if (!states_file.empty()) cfg.filter.states_file = states_file;
        if (threads > 0) omp_set_num_threads(threads);

        qres::cli::CommandResult result;
        if (*classical) result = qres::cli::cmd_spectrum_classical(cfg);
        else if (*quantum) result = qres::cli::cmd_spectrum_quantum(cfg);
        else if (*traj) result = qres::cli::cmd_trajectory(cfg);
        else if (*filter) result = qres::cli::cmd_filter(cfg);

        result.summary["files"] = result.files;
        std::cout << result.summary.dump(2) << '\n';
        return 0;
    } catch (const qres::InputError& e) {
        return report_error("config", e.what(), 2);
    } catch (const qres::NumericalError& e) {
        return report_error("numerical", e.what(), 3);
    } catch (const std::exception& e) {
        return report_error("numerical", e.what(), 3);
    }
}
