#include "cli/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "cli/table_io.hpp"
#include "spinctl/parallel.hpp"

namespace spinctl::cli {

namespace {

std::string out_path(const RunConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.output_dir) / name).string();
}

json report_envelope(const RunConfig& cfg, const char* command) {
    return json{
        {"schema_version", 1},
        {"tool", "spinctl"},
        {"command", command},
        {"seed", cfg.seed},
        {"config", cfg.document},
    };
}

json restarts_to_json(const OptimizationReport& rep) {
    json arr = json::array();
    for (const RestartResult& r : rep.per_restart)
        arr.push_back({{"final_fidelity", r.final_fidelity},
                       {"iterations", r.iterations},
                       {"converged", r.converged}});
    return arr;
}

json optimization_to_json(const OptimizationReport& rep) {
    return json{
        {"sequence", sequence_to_json(rep.best_sequence)},
        {"best_fidelity", rep.best_fidelity},
        {"best_restart", rep.best_restart},
        {"per_restart", restarts_to_json(rep)},
        {"fidelity_trace", rep.best_fidelity_trace},
    };
}

void require_section(bool present, const char* what) {
    if (!present)
        throw ConfigError(std::string("config: this command needs the '") + what + "' section");
}

} // namespace

void cmd_optimize(const RunConfig& cfg, int threads) {
    require_section(cfg.has_target, "target");
    const ControlSequence seq0 = cfg.sequence(false);
    const OptimizationReport rep = bfgs_maximize(seq0, cfg.target, cfg.optimizer, threads);

    json report = report_envelope(cfg, "optimize");
    report.update(optimization_to_json(rep));
    write_json_atomic(out_path(cfg, "optimize_report.json"), report);

    Table pulses;
    pulses.header = {"pulse", "axis", "amplitude"};
    for (int k = 0; k < rep.best_sequence.n_pulses; ++k)
        pulses.add_row({std::to_string(k + 1),
                        rep.best_sequence.pulse_axis(k) == ControlAxis::X ? "x" : "y",
                        format_number(rep.best_sequence.amplitudes[k])});
    write_atomic(out_path(cfg, "pulses.csv"), pulses.to_csv());

    std::printf("optimize: best fidelity %.12g (restart %d of %d, %s)\n", rep.best_fidelity,
                rep.best_restart, cfg.optimizer.n_restarts,
                rep.per_restart[rep.best_restart].converged ? "converged" : "not converged");
}

void cmd_min_time(const RunConfig& cfg, int threads) {
    require_section(cfg.has_target, "target");
    require_section(cfg.has_scan, "scan");
    require_section(cfg.has_control, "control");
    const std::vector<ScanPoint> points = minimal_time_scan(
        cfg.target, cfg.mode, cfg.n_pulses, cfg.tf_grid, cfg.chain, cfg.optimizer, threads);

    json rows = json::array();
    Table table;
    table.header = {"t_f", "best_fidelity"};
    for (const ScanPoint& p : points) {
        rows.push_back({{"t_f", p.t_f}, {"best_fidelity", p.best_fidelity}});
        table.add_row({format_number(p.t_f), format_number(p.best_fidelity)});
    }
    json report = report_envelope(cfg, "min-time");
    report["scan"] = std::move(rows);
    write_json_atomic(out_path(cfg, "min_time_report.json"), report);
    write_atomic(out_path(cfg, "min_time.csv"), table.to_csv());

    std::printf("min-time: %zu grid points written\n", points.size());
}

void cmd_sensitivity(const RunConfig& cfg, int threads) {
    require_section(cfg.has_target, "target");
    require_section(cfg.has_noise, "noise");
    const ControlSequence seq = cfg.sequence(true);

    Table table;
    table.header = {"delta", "mean_fidelity", "std_fidelity", "n_samples"};
    json report = report_envelope(cfg, "sensitivity");

    if (cfg.delta_grid) {
        const SensitivityReport sweep =
            sensitivity_sweep(seq, cfg.target, *cfg.delta_grid, cfg.noise, threads);
        for (std::size_t i = 0; i < sweep.delta_grid.size(); ++i)
            table.add_row({format_number(sweep.delta_grid[i]),
                           format_number(sweep.mean_fidelity[i]),
                           format_number(sweep.std_fidelity[i]),
                           std::to_string(sweep.n_samples)});
        report["delta_grid"] = sweep.delta_grid;
        report["mean_fidelity"] = sweep.mean_fidelity;
        report["std_fidelity"] = sweep.std_fidelity;
        report["n_samples"] = sweep.n_samples;
        report["sequence_fingerprint"] = sweep.sequence_fingerprint;
    } else {
        const NoiseStats stats = average_fidelity_under_noise(seq, cfg.target, cfg.noise, threads);
        table.add_row({format_number(cfg.noise.halfwidth), format_number(stats.mean_fidelity),
                       format_number(stats.std_fidelity), std::to_string(cfg.noise.n_samples)});
        report["delta_grid"] = json::array({cfg.noise.halfwidth});
        report["mean_fidelity"] = json::array({stats.mean_fidelity});
        report["std_fidelity"] = json::array({stats.std_fidelity});
        report["n_samples"] = cfg.noise.n_samples;
        report["sequence_fingerprint"] = sequence_fingerprint(seq);
    }

    write_json_atomic(out_path(cfg, "sensitivity_report.json"), report);
    write_atomic(out_path(cfg, "sensitivity.csv"), table.to_csv());
    std::printf("sensitivity: %zu delta rows written\n", table.rows.size());
}

void cmd_spectrum(const RunConfig& cfg, int /*threads*/) {
    const ControlSequence seq = cfg.sequence(true);
    const SpectrumConfig& sc = cfg.spectrum;  // defaults apply when absent

    std::vector<double> grid(sc.n_points);
    for (int i = 0; i < sc.n_points; ++i)
        grid[i] = sc.omega_max * i / (sc.n_points - 1);
    const PowerSpectrum ps = power_spectrum(seq, grid);

    Table table;
    table.header = {"omega", "power_x", "power_y"};
    for (std::size_t i = 0; i < ps.omega.size(); ++i)
        table.add_row({format_number(ps.omega[i]), format_number(ps.power_x[i]),
                       format_number(ps.power_y[i])});
    json report = report_envelope(cfg, "spectrum");
    report["omega"] = ps.omega;
    report["power_x"] = ps.power_x;
    report["power_y"] = ps.power_y;
    write_json_atomic(out_path(cfg, "spectrum_report.json"), report);
    write_atomic(out_path(cfg, "spectrum.csv"), table.to_csv());
    std::printf("spectrum: %zu omega rows written\n", ps.omega.size());
}

void cmd_filter(const RunConfig& cfg, int threads) {
    require_section(cfg.has_target, "target");
    require_section(cfg.has_filter, "filter");
    const ControlSequence seq = cfg.sequence(true);

    Table table;
    table.header = {cfg.filter.knob_name(), "fidelity"};
    json points = json::array();
    std::vector<FilterReport> reports(cfg.filter.knobs.size());
    run_indexed(static_cast<int>(cfg.filter.knobs.size()), threads, [&](int i) {
        reports[i] = filtered_fidelity(seq, cfg.filter.spec_for(cfg.filter.knobs[i]), cfg.target);
    });
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const FilterReport& r = reports[i];
        table.add_row({format_number(cfg.filter.knobs[i]), format_number(r.filtered_fidelity)});
        json trace = json::array();
        for (const auto& [tau, f] : r.convergence_trace)
            trace.push_back({{"tau", tau}, {"fidelity", f}});
        points.push_back({{cfg.filter.knob_name(), cfg.filter.knobs[i]},
                          {"filtered_fidelity", r.filtered_fidelity},
                          {"original_fidelity", r.original_fidelity},
                          {"tau_used", r.tau_used},
                          {"converged", r.converged},
                          {"convergence_trace", std::move(trace)}});
    }

    json report = report_envelope(cfg, "filter");
    report["points"] = std::move(points);
    report["avg_abs_amplitude"] = average_abs_amplitude(seq);
    report["var_abs_amplitude"] = variance_abs_amplitude(seq);
    write_json_atomic(out_path(cfg, "filter_report.json"), report);
    write_atomic(out_path(cfg, "filter.csv"), table.to_csv());
    std::printf("filter: %zu %s rows written\n", table.rows.size(), cfg.filter.knob_name());
}

void cmd_iterate_filter(const RunConfig& cfg, int threads) {
    require_section(cfg.has_target, "target");
    require_section(cfg.has_filter, "filter");
    require_section(cfg.has_iterate, "iterate");
    if (cfg.filter.knobs.size() != 1)
        throw ConfigError("iterate-filter: exactly one filter knob value expected");
    const ControlSequence seq = cfg.sequence(true);

    const std::vector<FilterIterationRound> rounds = iterate_filter_optimize(
        seq, cfg.target, cfg.filter.spec_for(cfg.filter.knobs[0]), cfg.iterate_rounds,
        cfg.optimizer, threads);

    Table table;
    table.header = {"round", "optimized_fidelity", "filtered_fidelity"};
    json jrounds = json::array();
    for (std::size_t i = 0; i < rounds.size(); ++i) {
        const FilterIterationRound& r = rounds[i];
        table.add_row({std::to_string(i + 1),
                       format_number(r.optimization.best_fidelity),
                       format_number(r.filter.filtered_fidelity)});
        jrounds.push_back({{"round", i + 1},
                           {"optimization", optimization_to_json(r.optimization)},
                           {"filtered_fidelity", r.filter.filtered_fidelity},
                           {"tau_used", r.filter.tau_used},
                           {"converged", r.filter.converged}});
    }
    json report = report_envelope(cfg, "iterate-filter");
    report["rounds"] = std::move(jrounds);
    write_json_atomic(out_path(cfg, "iterate_report.json"), report);
    write_atomic(out_path(cfg, "iterate.csv"), table.to_csv());
    std::printf("iterate-filter: %d rounds written\n", cfg.iterate_rounds);
}

void cmd_lie_dim(const RunConfig& cfg, int /*threads*/) {
    require_section(cfg.has_lie, "lie");
    const ControllabilityVerdict verdict = full_controllability_check(cfg.chain, cfg.lie_controls);

    json report = report_envelope(cfg, "lie-dim");
    report["controls"] = verdict.controls == ControlSet::XY ? "xy" : "x_only";
    report["n_spins"] = verdict.n_spins;
    report["hilbert_dim"] = verdict.hilbert_dim;
    report["algebra_dimension"] = verdict.algebra_dimension;
    report["fully_controllable"] = verdict.fully_controllable;
    write_json_atomic(out_path(cfg, "liedim_report.json"), report);
    std::printf("lie-dim: dimension %d of su(%d)%s\n", verdict.algebra_dimension,
                verdict.hilbert_dim, verdict.fully_controllable ? " (fully controllable)" : "");
}

int run_command(const std::string& name, const std::string& config_path,
                const std::optional<std::uint64_t>& seed_override,
                const std::optional<std::string>& out_override, int threads) {
    try {
        const RunConfig cfg = load_run_config(config_path, seed_override, out_override);
        if (name == "optimize")
            cmd_optimize(cfg, threads);
        else if (name == "min-time")
            cmd_min_time(cfg, threads);
        else if (name == "sensitivity")
            cmd_sensitivity(cfg, threads);
        else if (name == "spectrum")
            cmd_spectrum(cfg, threads);
        else if (name == "filter")
            cmd_filter(cfg, threads);
        else if (name == "iterate-filter")
            cmd_iterate_filter(cfg, threads);
        else if (name == "lie-dim")
            cmd_lie_dim(cfg, threads);
        else {
            std::cerr << "unknown command: " << name << "\n";
            return 2;
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace spinctl::cli
