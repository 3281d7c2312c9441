// Command-line front end: simulate single maneuvers, sweep the full
// maneuver grid, or just validate a configuration file.
//
// Exit codes: 0 success, 2 invalid configuration or maneuver setup,
// 3 filesystem failure, 4 diverged simulation. CLI11 reports its own usage
// errors with a nonzero code as well.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "aeqsim/config.hpp"
#include "aeqsim/io.hpp"

namespace {

using aeqsim::ControllerKind;

ControllerKind parse_controller(const std::string& name) {
    if (name == "continuous") {
        return ControllerKind::continuous;
    }
    if (name == "benchmark") {
        return ControllerKind::benchmark;
    }
    return ControllerKind::mps;
}

struct CommonOptions {
    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    int jobs = 1;
};

aeqsim::ExperimentConfig load_with_overrides(const CommonOptions& opts) {
    aeqsim::ExperimentConfig config = aeqsim::load_config(opts.config_path);
    if (opts.out_dir) {
        config.output_dir = *opts.out_dir;
    }
    if (opts.seed) {
        config.seed = *opts.seed;
    }
    if (opts.trials) {
        config.trials = *opts.trials;
        config.validate();
    }
    return config;
}

std::filesystem::path prepare_output_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw aeqsim::IoFailure("cannot create output directory " + dir + ": " + ec.message());
    }
    return dir;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw aeqsim::IoFailure("cannot open " + path.string() + " for writing");
    }
    os << contents;
    os.flush();
    if (!os) {
        throw aeqsim::IoFailure("short write to " + path.string());
    }
}

int cmd_run(const CommonOptions& opts, const std::string& maneuver_id,
            const std::string& controller_name) {
    const aeqsim::ExperimentConfig config = load_with_overrides(opts);
    const ControllerKind kind = parse_controller(controller_name);
    const std::size_t index = config.maneuver_index(maneuver_id);
    const aeqsim::ManeuverSpec spec = config.maneuver_specs()[index];

    const aeqsim::RunRecord record = aeqsim::run_maneuver(
        spec, kind, config.run_setup(), aeqsim::run_seed(config.seed, index, kind, 0));

    const std::filesystem::path out_dir = prepare_output_dir(config.output_dir);
    const std::filesystem::path csv_path =
        out_dir / ("run_" + maneuver_id + "_" + controller_name + ".csv");
    std::ostringstream csv;
    aeqsim::write_trajectory_csv(csv, record);
    write_file(csv_path, csv.str());

    std::cout << "maneuver=" << maneuver_id << " controller=" << controller_name
              << " gamma_exp=" << aeqsim::format_sig12(record.gamma_exp)
              << " switch_count=" << record.switch_count
              << " stage3_entry_t=" << aeqsim::format_sig12(aeqsim::stage3_entry_time(spec))
              << " csv=" << csv_path.string() << "\n";
    return 0;
}

int cmd_sweep(const CommonOptions& opts) {
    const aeqsim::ExperimentConfig config = load_with_overrides(opts);
    const aeqsim::SweepSummary summary = aeqsim::run_sweep(
        config.maneuver_specs(), config.trials, config.run_setup(), config.seed, opts.jobs);

    const std::filesystem::path out_dir = prepare_output_dir(config.output_dir);
    std::ostringstream csv;
    aeqsim::write_summary_csv(csv, summary);
    write_file(out_dir / "summary.csv", csv.str());

    std::cout << aeqsim::comparison_table(summary);
    std::cout << "summary_csv=" << (out_dir / "summary.csv").string() << "\n";
    return 0;
}

int cmd_validate(const CommonOptions& opts) {
    const aeqsim::ExperimentConfig config = aeqsim::load_config(opts.config_path);
    std::cout << "config ok: " << config.maneuvers.size() << " maneuvers, trials="
              << config.trials << ", seed=" << config.seed << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rigid-body attitude maneuver simulator and controller benchmark"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string maneuver_id;
    std::string controller_name = "mps";

    std::string out_dir_flag;
    std::uint64_t seed_flag = 0;
    int trials_flag = 0;

    auto add_common = [&](CLI::App* cmd, bool with_trials_jobs) {
        cmd->add_option("--config", opts.config_path, "configuration file (JSON)")
            ->required();
        cmd->add_option("--out", out_dir_flag, "override the configured output directory");
        cmd->add_option("--seed", seed_flag, "override the configured base seed");
        if (with_trials_jobs) {
            cmd->add_option("--trials", trials_flag, "override the configured trial count");
            cmd->add_option("--jobs", opts.jobs, "worker threads for independent runs")
                ->check(CLI::PositiveNumber);
        }
    };

    CLI::App* run = app.add_subcommand("run", "simulate one maneuver and write its trajectory CSV");
    add_common(run, false);
    run->add_option("--maneuver", maneuver_id, "maneuver id from the configuration")->required();
    run->add_option("--controller", controller_name, "continuous, benchmark, or mps")
        ->check(CLI::IsMember({"continuous", "benchmark", "mps"}));

    CLI::App* sweep =
        app.add_subcommand("sweep", "run the maneuver grid under both controllers and summarize");
    add_common(sweep, true);

    CLI::App* validate = app.add_subcommand("validate", "check a configuration file and exit");
    validate->add_option("--config", opts.config_path, "configuration file (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    const CLI::App* active = app.get_subcommands().front();
    auto flag_given = [&](const std::string& name) {
        const CLI::Option* opt = active->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    if (flag_given("--out")) {
        opts.out_dir = out_dir_flag;
    }
    if (flag_given("--seed")) {
        opts.seed = seed_flag;
    }
    if (flag_given("--trials")) {
        opts.trials = trials_flag;
    }

    try {
        if (active == run) {
            return cmd_run(opts, maneuver_id, controller_name);
        }
        if (active == sweep) {
            return cmd_sweep(opts);
        }
        return cmd_validate(opts);
    } catch (const aeqsim::IoFailure& e) {
        std::cerr << "error: IoFailure: " << e.what() << "\n";
        return 3;
    } catch (const aeqsim::DivergedState& e) {
        std::cerr << "error: DivergedState: " << e.what() << "\n";
        return 4;
    } catch (const aeqsim::StageNeverEntered& e) {
        std::cerr << "error: StageNeverEntered: " << e.what() << "\n";
        return 2;
    } catch (const aeqsim::ConfigInvalid& e) {
        std::cerr << "error: ConfigInvalid: " << e.what() << "\n";
        return 2;
    } catch (const aeqsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
}
