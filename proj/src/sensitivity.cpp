#include "spinctl/sensitivity.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>

#include "spinctl/parallel.hpp"
#include "spinctl/rng.hpp"

namespace spinctl {

void NoiseModel::validate() const {
    if (halfwidth < 0.0)
        throw std::invalid_argument("NoiseModel: halfwidth must be >= 0");
    if (n_samples < 1)
        throw std::invalid_argument("NoiseModel: n_samples must be >= 1");
}

ControlSequence perturb_sequence(const ControlSequence& seq, double delta, std::uint64_t seed,
                                 std::uint64_t draw_index) {
    seq.validate();
    if (delta < 0.0)
        throw std::invalid_argument("perturb_sequence: delta must be >= 0");
    ControlSequence out = seq;
    Xoshiro256pp stream = Xoshiro256pp::substream(seed, draw_index);
    for (double& h : out.amplitudes) h += stream.uniform_symmetric(delta);
    return out;
}

namespace {

NoiseStats stats_for_delta(const ControlSequence& seq, const CMat& target, double delta,
                           const NoiseModel& noise, int threads) {
    const int n = noise.n_samples;
    std::vector<double> fids(n);
    run_indexed(n, threads, [&](int i) {
        thread_local std::unique_ptr<PulseEvolver> evolver;
        if (!evolver || evolver->spec().n_spins != seq.spec.n_spins ||
            evolver->spec().coupling != seq.spec.coupling)
            evolver = std::make_unique<PulseEvolver>(seq.spec);
        ControlSequence sample = perturb_sequence(seq, delta, noise.seed, i);
        fids[i] = evolver->fidelity(sample, target);
    });

    double mean = 0.0;
    for (double f : fids) mean += f;
    mean /= n;
    double var = 0.0;
    for (double f : fids) var += (f - mean) * (f - mean);
    const double stddev = n > 1 ? std::sqrt(var / (n - 1)) : 0.0;
    return {mean, stddev};
}

} // namespace

NoiseStats average_fidelity_under_noise(const ControlSequence& seq, const GateTarget& target,
                                        const NoiseModel& noise, int threads) {
    seq.validate();
    noise.validate();
    const CMat g = gate_target(target).mat();
    if (g.dim() != seq.spec.dim())
        throw std::invalid_argument("average_fidelity_under_noise: target dimension mismatch");
    return stats_for_delta(seq, g, noise.halfwidth, noise, threads);
}

SensitivityReport sensitivity_sweep(const ControlSequence& seq, const GateTarget& target,
                                    const std::vector<double>& delta_grid,
                                    const NoiseModel& noise_template, int threads) {
    seq.validate();
    noise_template.validate();
    if (delta_grid.empty() || delta_grid.front() != 0.0)
        throw std::invalid_argument("sensitivity_sweep: delta grid must start at 0");
    for (std::size_t i = 1; i < delta_grid.size(); ++i)
        if (!(delta_grid[i] > delta_grid[i - 1]))
            throw std::invalid_argument("sensitivity_sweep: delta grid must ascend");
    const CMat g = gate_target(target).mat();
    if (g.dim() != seq.spec.dim())
        throw std::invalid_argument("sensitivity_sweep: target dimension mismatch");

    SensitivityReport report;
    report.delta_grid = delta_grid;
    report.n_samples = noise_template.n_samples;
    report.seed = noise_template.seed;
    report.sequence_fingerprint = sequence_fingerprint(seq);
    report.mean_fidelity.reserve(delta_grid.size());
    report.std_fidelity.reserve(delta_grid.size());
    for (double delta : delta_grid) {
        const NoiseStats s = stats_for_delta(seq, g, delta, noise_template, threads);
        report.mean_fidelity.push_back(s.mean_fidelity);
        report.std_fidelity.push_back(s.std_fidelity);
    }
    return report;
}

double saturation_value(int dim) {
    if (dim < 2)
        throw std::invalid_argument("saturation_value: dimension must be >= 2");
    return 1.0 / dim;
}

std::vector<double> default_delta_grid() {
    std::vector<double> grid{0.0};
    const int points = 30;
    const double lo = std::log10(1e-3), hi = std::log10(10.0);
    for (int i = 0; i < points; ++i)
        grid.push_back(std::pow(10.0, lo + (hi - lo) * i / (points - 1)));
    return grid;
}

std::string sequence_fingerprint(const ControlSequence& seq) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    auto mix = [&h](const void* p, std::size_t len) {
        const unsigned char* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= b[i];
            h *= 0x100000001B3ULL;
        }
    };
    const std::int64_t ns = seq.spec.n_spins;
    const std::int64_t np = seq.n_pulses;
    const std::int64_t mode = seq.mode == ControlMode::AlternatingXY ? 0 : 1;
    mix(&ns, sizeof ns);
    mix(&np, sizeof np);
    mix(&mode, sizeof mode);
    mix(&seq.spec.coupling, sizeof seq.spec.coupling);
    mix(&seq.pulse_duration, sizeof seq.pulse_duration);
    mix(seq.amplitudes.data(), seq.amplitudes.size() * sizeof(double));
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace spinctl
