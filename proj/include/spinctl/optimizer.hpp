#pragma once

#include <cstdint>
#include <vector>

#include "spinctl/propagation.hpp"

namespace spinctl {

struct OptimizerConfig {
    int max_iterations = 2000;
    double gradient_tolerance = 1e-9;
    double fidelity_goal = 1.0 - 1e-9;
    int n_restarts = 20;
    double initial_amplitude_halfwidth = 2.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct RestartResult {
    double final_fidelity = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct OptimizationReport {
    ControlSequence best_sequence;
    double best_fidelity = 0.0;
    int best_restart = 0;
    std::vector<RestartResult> per_restart;
    // accepted-iterate fidelities of the winning restart (non-decreasing)
    std::vector<double> best_fidelity_trace;
    OptimizerConfig config;
    std::uint64_t seed = 0;
};

// F(t_f) of the sequence against the realized target gate.
double objective(const ControlSequence& seq, const GateTarget& target);

// dF/dh_k, analytic: eigenbasis divided differences of each pulse
// exponential chained through the ordered product. Throws std::domain_error
// when F = 0 (phase of the trace undefined).
std::vector<double> fidelity_gradient(const ControlSequence& seq, const GateTarget& target);

// Fidelity maximization over the pulse amplitudes: BFGS with an Armijo
// backtracking line search, multistart from uniform random amplitudes.
// Restart 0 starts from seq0 as given; restarts r >= 1 draw from
// [-halfwidth, +halfwidth) using substream(seed, r). Deterministic for a
// fixed (seed, config, inputs); restarts may run on several threads.
OptimizationReport bfgs_maximize(const ControlSequence& seq0, const GateTarget& target,
                                 const OptimizerConfig& cfg, int threads = 1);

struct ScanPoint {
    double t_f = 0.0;
    double best_fidelity = 0.0;
};

// Best multistart fidelity per total time t_f, pulse count fixed
// (T = t_f / N_t). No monotonicity in t_f is implied.
std::vector<ScanPoint> minimal_time_scan(const GateTarget& target, ControlMode mode,
                                         int n_pulses, const std::vector<double>& tf_grid,
                                         const ChainSpec& spec, const OptimizerConfig& cfg,
                                         int threads = 1);

namespace detail {

// Single value+gradient evaluation sharing the per-pulse eigensystems.
// Returns F; grad may be null. grad_defined=false signals F = 0.
double fidelity_value_gradient(PulseEvolver& evolver, const ControlSequence& seq,
                               const CMat& target, std::vector<double>* grad,
                               bool* grad_defined);

} // namespace detail

} // namespace spinctl
