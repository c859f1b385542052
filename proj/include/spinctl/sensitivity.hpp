#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinctl/propagation.hpp"

namespace spinctl {

// Static per-pulse amplitude noise: one uniform draw per pulse per sample.
struct NoiseModel {
    double halfwidth = 0.0;  // delta, units of J
    int n_samples = 1000;
    std::uint64_t seed = 0;

    void validate() const;
};

struct NoiseStats {
    double mean_fidelity = 0.0;
    double std_fidelity = 0.0;  // sample standard deviation (N-1)
};

// h_k -> h_k + u_k with u_k i.i.d. uniform on [-delta, +delta), drawn from
// substream(seed, draw_index); structure (N_t, T, mode) unchanged.
ControlSequence perturb_sequence(const ControlSequence& seq, double delta, std::uint64_t seed,
                                 std::uint64_t draw_index);

// Mean and sample standard deviation of the gate fidelity over
// noise.n_samples perturbed copies of seq. Samples are independent
// substreams, accumulated in index order, so the result is deterministic
// for any thread count.
NoiseStats average_fidelity_under_noise(const ControlSequence& seq, const GateTarget& target,
                                        const NoiseModel& noise, int threads = 1);

struct SensitivityReport {
    std::vector<double> delta_grid;
    std::vector<double> mean_fidelity;
    std::vector<double> std_fidelity;
    int n_samples = 0;
    std::uint64_t seed = 0;
    std::string sequence_fingerprint;
};

// Full F-bar(delta) and sigma_F(delta) curves over an ascending grid that
// starts at 0.
SensitivityReport sensitivity_sweep(const ControlSequence& seq, const GateTarget& target,
                                    const std::vector<double>& delta_grid,
                                    const NoiseModel& noise_template, int threads = 1);

// Average gate fidelity of the fully randomizing channel: 1/d.
double saturation_value(int dim);

// 0 plus 30 log-spaced points in [1e-3, 10] (units of J).
std::vector<double> default_delta_grid();

// FNV-1a over the sequence structure and amplitude bytes, hex-encoded.
std::string sequence_fingerprint(const ControlSequence& seq);

} // namespace spinctl
