#include "cli/run_config.hpp"

#include <filesystem>
#include <fstream>

namespace spinctl::cli {

namespace {

void reject_unknown(const json& j, const std::vector<std::string>& allowed,
                    const std::string& ctx) {
    if (!j.is_object())
        throw ConfigError(ctx + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const auto& k : allowed)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok)
            throw ConfigError(ctx + ": unknown key '" + it.key() + "'");
    }
}

const json& require(const json& j, const char* key, const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end())
        throw ConfigError(ctx + ": missing key '" + key + "'");
    return *it;
}

double as_number(const json& j, const std::string& ctx) {
    if (!j.is_number())
        throw ConfigError(ctx + ": expected a number");
    return j.get<double>();
}

int as_int(const json& j, const std::string& ctx) {
    if (!j.is_number_integer())
        throw ConfigError(ctx + ": expected an integer");
    return j.get<int>();
}

std::string as_string(const json& j, const std::string& ctx) {
    if (!j.is_string())
        throw ConfigError(ctx + ": expected a string");
    return j.get<std::string>();
}

std::vector<double> as_number_array(const json& j, const std::string& ctx) {
    if (!j.is_array())
        throw ConfigError(ctx + ": expected an array of numbers");
    std::vector<double> v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(as_number(e, ctx));
    return v;
}

CMat matrix_from_json(const json& j, const std::string& ctx) {
    if (!j.is_array() || j.empty())
        throw ConfigError(ctx + ": expected a non-empty array of rows");
    const int n = static_cast<int>(j.size());
    CMat m(n);
    for (int i = 0; i < n; ++i) {
        const json& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ConfigError(ctx + ": matrix must be square");
        for (int k = 0; k < n; ++k) {
            const json& cell = row[k];
            if (!cell.is_array() || cell.size() != 2)
                throw ConfigError(ctx + ": entries must be [re, im] pairs");
            m(i, k) = cxd{as_number(cell[0], ctx), as_number(cell[1], ctx)};
        }
    }
    return m;
}

json matrix_to_json(const CMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (int k = 0; k < m.dim(); ++k)
            row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

GateTarget parse_target(const json& j, int n_spins) {
    reject_unknown(j, {"kind", "matrix"}, "target");
    const std::string kind = as_string(require(j, "kind", "target"), "target.kind");
    if (kind == "x_end") return GateTarget::x_end(n_spins);
    if (kind == "cnot_end") return GateTarget::cnot_end(n_spins);
    if (kind == "sqrt_swap_end") return GateTarget::sqrt_swap_end(n_spins);
    if (kind == "custom")
        return GateTarget::custom_gate(
            n_spins, matrix_from_json(require(j, "matrix", "target"), "target.matrix"));
    throw ConfigError("target.kind: expected x_end | cnot_end | sqrt_swap_end | custom");
}

} // namespace

json sequence_to_json(const ControlSequence& seq) {
    return json{
        {"chain", {{"n_spins", seq.spec.n_spins}, {"coupling", seq.spec.coupling}}},
        {"mode", seq.mode == ControlMode::AlternatingXY ? "alternating_xy" : "x_only"},
        {"n_pulses", seq.n_pulses},
        {"pulse_duration", seq.pulse_duration},
        {"amplitudes", seq.amplitudes},
    };
}

ControlSequence sequence_from_json(const json& j) {
    reject_unknown(j, {"chain", "mode", "n_pulses", "pulse_duration", "amplitudes"}, "sequence");
    ControlSequence seq;
    const json& chain = require(j, "chain", "sequence");
    reject_unknown(chain, {"n_spins", "coupling"}, "sequence.chain");
    seq.spec.n_spins = as_int(require(chain, "n_spins", "sequence.chain"), "n_spins");
    if (chain.contains("coupling"))
        seq.spec.coupling = as_number(chain["coupling"], "sequence.chain.coupling");
    const std::string mode = as_string(require(j, "mode", "sequence"), "sequence.mode");
    if (mode == "alternating_xy")
        seq.mode = ControlMode::AlternatingXY;
    else if (mode == "x_only")
        seq.mode = ControlMode::XOnly;
    else
        throw ConfigError("sequence.mode: expected alternating_xy | x_only");
    seq.n_pulses = as_int(require(j, "n_pulses", "sequence"), "sequence.n_pulses");
    seq.pulse_duration = as_number(require(j, "pulse_duration", "sequence"), "sequence.pulse_duration");
    seq.amplitudes = as_number_array(require(j, "amplitudes", "sequence"), "sequence.amplitudes");
    try {
        seq.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("sequence: ") + e.what());
    }
    return seq;
}

ControlSequence RunConfig::sequence(bool need_amplitudes) const {
    if (!has_control)
        throw ConfigError("config: missing 'control' section (or a pulses_file providing it)");
    ControlSequence seq;
    seq.spec = chain;
    seq.mode = mode;
    seq.n_pulses = n_pulses;
    seq.pulse_duration = pulse_duration;
    if (amplitudes) {
        seq.amplitudes = *amplitudes;
    } else if (need_amplitudes) {
        throw ConfigError("config: this command needs 'amplitudes' or 'pulses_file'");
    } else {
        seq.amplitudes.assign(n_pulses, 0.0);
    }
    try {
        seq.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("control: ") + e.what());
    }
    return seq;
}

RunConfig load_run_config(const std::string& path,
                          const std::optional<std::uint64_t>& seed_override,
                          const std::optional<std::string>& out_override) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config parse failure: " + std::string(e.what()));
    }
    const std::string dir = std::filesystem::path(path).parent_path().string();
    return parse_run_config(std::move(j), seed_override, out_override, dir);
}

RunConfig parse_run_config(json j, const std::optional<std::uint64_t>& seed_override,
                           const std::optional<std::string>& out_override,
                           const std::string& config_dir) {
    RunConfig cfg;
    reject_unknown(j,
                   {"schema_version", "seed", "chain", "target", "control", "amplitudes",
                    "pulses_file", "optimizer", "noise", "filter", "spectrum", "scan", "iterate",
                    "lie", "output"},
                   "config");

    const int version = as_int(require(j, "schema_version", "config"), "schema_version");
    if (version != 1)
        throw ConfigError("config: unsupported schema_version " +
                          std::to_string(version) + " (expected 1)");

    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
            throw ConfigError("config.seed: expected an integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (seed_override) {
        cfg.seed = *seed_override;
        j["seed"] = *seed_override;
    }

    const json& chain = require(j, "chain", "config");
    reject_unknown(chain, {"n_spins", "coupling"}, "chain");
    cfg.chain.n_spins = as_int(require(chain, "n_spins", "chain"), "chain.n_spins");
    if (chain.contains("coupling"))
        cfg.chain.coupling = as_number(chain["coupling"], "chain.coupling");
    try {
        cfg.chain.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("chain: ") + e.what());
    }

    // A pulses_file is a previously written optimize report; its sequence
    // section is inlined so the echoed config is self-contained.
    if (j.contains("pulses_file")) {
        const std::string rel = as_string(j["pulses_file"], "pulses_file");
        std::filesystem::path p(rel);
        if (p.is_relative() && !config_dir.empty()) p = std::filesystem::path(config_dir) / p;
        std::ifstream in(p);
        if (!in)
            throw ConfigError("pulses_file: cannot open " + p.string());
        json rep;
        try {
            in >> rep;
        } catch (const json::exception& e) {
            throw ConfigError("pulses_file parse failure: " + std::string(e.what()));
        }
        if (!rep.contains("sequence"))
            throw ConfigError("pulses_file: no 'sequence' section in " + p.string());
        ControlSequence seq = sequence_from_json(rep["sequence"]);
        if (j.contains("control") || j.contains("amplitudes"))
            throw ConfigError("config: pulses_file conflicts with inline control/amplitudes");
        if (seq.spec.n_spins != cfg.chain.n_spins || seq.spec.coupling != cfg.chain.coupling)
            throw ConfigError("pulses_file: chain spec does not match config chain");
        cfg.pulses_file = rel;
        cfg.has_control = true;
        cfg.mode = seq.mode;
        cfg.n_pulses = seq.n_pulses;
        cfg.pulse_duration = seq.pulse_duration;
        cfg.amplitudes = seq.amplitudes;
        j.erase("pulses_file");
        j["control"] = {{"mode", seq.mode == ControlMode::AlternatingXY ? "alternating_xy" : "x_only"},
                        {"n_pulses", seq.n_pulses},
                        {"pulse_duration", seq.pulse_duration}};
        j["amplitudes"] = seq.amplitudes;
    } else if (j.contains("control")) {
        const json& control = j["control"];
        reject_unknown(control, {"mode", "n_pulses", "pulse_duration", "total_time"}, "control");
        const std::string mode = as_string(require(control, "mode", "control"), "control.mode");
        if (mode == "alternating_xy")
            cfg.mode = ControlMode::AlternatingXY;
        else if (mode == "x_only")
            cfg.mode = ControlMode::XOnly;
        else
            throw ConfigError("control.mode: expected alternating_xy | x_only");
        cfg.n_pulses = as_int(require(control, "n_pulses", "control"), "control.n_pulses");
        if (cfg.n_pulses < 1)
            throw ConfigError("control.n_pulses: must be >= 1");
        const bool has_t = control.contains("pulse_duration");
        const bool has_tf = control.contains("total_time");
        if (has_t && has_tf)
            throw ConfigError("control: give at most one of pulse_duration | total_time");
        // min-time scans only need mode + n_pulses; duration may stay unset
        cfg.pulse_duration =
            has_t ? as_number(control["pulse_duration"], "control.pulse_duration")
            : has_tf ? as_number(control["total_time"], "control.total_time") / cfg.n_pulses
                     : 0.0;
        if ((has_t || has_tf) && !(cfg.pulse_duration > 0.0))
            throw ConfigError("control: pulse duration must be > 0");
        cfg.has_control = true;
        if (j.contains("amplitudes"))
            cfg.amplitudes = as_number_array(j["amplitudes"], "amplitudes");
    } else if (j.contains("amplitudes")) {
        throw ConfigError("config: amplitudes given without a control section");
    }

    if (j.contains("target")) {
        cfg.target = parse_target(j["target"], cfg.chain.n_spins);
        cfg.has_target = true;
    }

    if (j.contains("optimizer")) {
        const json& o = j["optimizer"];
        reject_unknown(o,
                       {"max_iterations", "gradient_tolerance", "fidelity_goal", "n_restarts",
                        "initial_amplitude_halfwidth"},
                       "optimizer");
        if (o.contains("max_iterations"))
            cfg.optimizer.max_iterations = as_int(o["max_iterations"], "optimizer.max_iterations");
        if (o.contains("gradient_tolerance"))
            cfg.optimizer.gradient_tolerance =
                as_number(o["gradient_tolerance"], "optimizer.gradient_tolerance");
        if (o.contains("fidelity_goal"))
            cfg.optimizer.fidelity_goal = as_number(o["fidelity_goal"], "optimizer.fidelity_goal");
        if (o.contains("n_restarts"))
            cfg.optimizer.n_restarts = as_int(o["n_restarts"], "optimizer.n_restarts");
        if (o.contains("initial_amplitude_halfwidth"))
            cfg.optimizer.initial_amplitude_halfwidth =
                as_number(o["initial_amplitude_halfwidth"], "optimizer.initial_amplitude_halfwidth");
        cfg.has_optimizer = true;
    }
    cfg.optimizer.seed = cfg.seed;
    try {
        cfg.optimizer.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("optimizer: ") + e.what());
    }

    if (j.contains("noise")) {
        const json& n = j["noise"];
        reject_unknown(n, {"halfwidth", "n_samples", "delta_grid"}, "noise");
        if (n.contains("halfwidth"))
            cfg.noise.halfwidth = as_number(n["halfwidth"], "noise.halfwidth");
        if (n.contains("n_samples"))
            cfg.noise.n_samples = as_int(n["n_samples"], "noise.n_samples");
        if (n.contains("delta_grid"))
            cfg.delta_grid = as_number_array(n["delta_grid"], "noise.delta_grid");
        cfg.has_noise = true;
    }
    cfg.noise.seed = cfg.seed;
    try {
        cfg.noise.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("noise: ") + e.what());
    }

    if (j.contains("filter")) {
        const json& f = j["filter"];
        reject_unknown(f, {"kind", "cutoff", "cutoffs", "fwhm", "fwhms"}, "filter");
        const std::string kind = as_string(require(f, "kind", "filter"), "filter.kind");
        auto knob_values = [&](const char* single, const char* many) {
            std::vector<double> v;
            if (f.contains(single)) v.push_back(as_number(f[single], std::string("filter.") + single));
            if (f.contains(many)) {
                auto more = as_number_array(f[many], std::string("filter.") + many);
                v.insert(v.end(), more.begin(), more.end());
            }
            if (v.empty())
                throw ConfigError(std::string("filter: expected '") + single + "' or '" + many + "'");
            return v;
        };
        if (kind == "lowpass") {
            if (f.contains("fwhm") || f.contains("fwhms"))
                throw ConfigError("filter: fwhm applies to gaussian filters only");
            cfg.filter.kind = FilterSpec::Kind::IdealLowPass;
            cfg.filter.knobs = knob_values("cutoff", "cutoffs");
        } else if (kind == "gaussian") {
            if (f.contains("cutoff") || f.contains("cutoffs"))
                throw ConfigError("filter: cutoff applies to lowpass filters only");
            cfg.filter.kind = FilterSpec::Kind::Gaussian;
            cfg.filter.knobs = knob_values("fwhm", "fwhms");
        } else {
            throw ConfigError("filter.kind: expected lowpass | gaussian");
        }
        for (double k : cfg.filter.knobs) {
            try {
                cfg.filter.spec_for(k).validate();
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("filter: ") + e.what());
            }
        }
        cfg.has_filter = true;
    }

    if (j.contains("spectrum")) {
        const json& s = j["spectrum"];
        reject_unknown(s, {"omega_max", "n_points"}, "spectrum");
        if (s.contains("omega_max"))
            cfg.spectrum.omega_max = as_number(s["omega_max"], "spectrum.omega_max");
        if (s.contains("n_points"))
            cfg.spectrum.n_points = as_int(s["n_points"], "spectrum.n_points");
        if (!(cfg.spectrum.omega_max > 0.0) || cfg.spectrum.n_points < 2)
            throw ConfigError("spectrum: omega_max must be > 0 and n_points >= 2");
        cfg.has_spectrum = true;
    }

    if (j.contains("scan")) {
        const json& s = j["scan"];
        reject_unknown(s, {"t_f_grid"}, "scan");
        cfg.tf_grid = as_number_array(require(s, "t_f_grid", "scan"), "scan.t_f_grid");
        if (cfg.tf_grid.empty())
            throw ConfigError("scan.t_f_grid: must be non-empty");
        cfg.has_scan = true;
    }

    if (j.contains("iterate")) {
        const json& it = j["iterate"];
        reject_unknown(it, {"rounds"}, "iterate");
        cfg.iterate_rounds = as_int(require(it, "rounds", "iterate"), "iterate.rounds");
        if (cfg.iterate_rounds < 1)
            throw ConfigError("iterate.rounds: must be >= 1");
        cfg.has_iterate = true;
    }

    if (j.contains("lie")) {
        const json& l = j["lie"];
        reject_unknown(l, {"controls"}, "lie");
        const std::string c = as_string(require(l, "controls", "lie"), "lie.controls");
        if (c == "xy")
            cfg.lie_controls = ControlSet::XY;
        else if (c == "x_only")
            cfg.lie_controls = ControlSet::XOnly;
        else
            throw ConfigError("lie.controls: expected xy | x_only");
        cfg.has_lie = true;
    }

    if (j.contains("output")) {
        const json& o = j["output"];
        reject_unknown(o, {"dir"}, "output");
        if (o.contains("dir")) cfg.output_dir = as_string(o["dir"], "output.dir");
    }
    if (out_override) {
        cfg.output_dir = *out_override;
        j["output"] = {{"dir", *out_override}};
    }

    if (cfg.has_target && cfg.target.kind == GateTarget::Kind::Custom) {
        // round-trip the custom matrix through the echo for self-containment
        j["target"]["matrix"] = matrix_to_json(*cfg.target.custom);
    }

    cfg.document = std::move(j);
    return cfg;
}

} // namespace spinctl::cli
