#pragma once

#include <vector>

#include "spinctl/optimizer.hpp"
#include "spinctl/propagation.hpp"
#include "spinctl/special_functions.hpp"

namespace spinctl {

struct FilterSpec {
    enum class Kind { IdealLowPass, Gaussian };

    Kind kind = Kind::IdealLowPass;
    double cutoff = 0.0;  // omega_0, units of J (low-pass)
    double gamma = 0.0;   // Gaussian width parameter
    double center = 0.0;  // omega_c, fixed at 0

    static FilterSpec lowpass(double omega0);
    static FilterSpec gaussian_gamma(double gamma);
    static FilterSpec gaussian_fwhm(double fwhm);

    // FWHM = 2 sqrt(ln 2 / gamma), derived
    double fwhm() const;
    void validate() const;
};

struct PowerSpectrum {
    std::vector<double> omega;
    std::vector<double> power_x;  // |F[h_x]|^2
    std::vector<double> power_y;
};

// Closed-form Fourier transform of the piecewise-constant field per axis,
// squared modulus on the given grid.
PowerSpectrum power_spectrum(const ControlSequence& seq, const std::vector<double>& omega_grid);

// Ideal low-pass filtered field: sine-integral closed form, window
// [-omega0, omega0]. The field is treated as zero outside [0, t_f].
SampledField lowpass_filtered_field(const ControlSequence& seq, double omega0);

// Gaussian filtered field (center frequency 0): error-function closed form
// with unit DC gain.
SampledField gaussian_filtered_field(const ControlSequence& seq, double gamma);

SampledField filtered_field(const ControlSequence& seq, const FilterSpec& filter);

struct FilterReport {
    FilterSpec filter;
    double original_fidelity = 0.0;
    double filtered_fidelity = 0.0;
    double tau_used = 0.0;
    // (tau, fidelity) pairs from the step-halving loop
    std::vector<std::pair<double, double>> convergence_trace;
    bool converged = false;
};

// Evolves the filtered field with the product formula, halving the step
// from T/20 until the fidelity moves < 1e-6 (cap T/320); a report that hits
// the cap without settling is flagged, not an error.
FilterReport filtered_fidelity(const ControlSequence& seq, const FilterSpec& filter,
                               const GateTarget& target);

struct CutoffPoint {
    double cutoff = 0.0;
    double fidelity = 0.0;
};

struct CutoffCurve {
    std::vector<CutoffPoint> points;
    // time-average of |h| over t_f and the variance of the |h_k| about it
    double avg_abs_amplitude = 0.0;
    double var_abs_amplitude = 0.0;
};

CutoffCurve fidelity_vs_cutoff(const ControlSequence& seq, const GateTarget& target,
                               const std::vector<double>& cutoff_grid, int threads = 1);

struct FilterIterationRound {
    OptimizationReport optimization;
    FilterReport filter;
};

// Filter -> resample to the piecewise grid (interval averages) -> reoptimize
// from that start -> filter again, `rounds` times.
std::vector<FilterIterationRound> iterate_filter_optimize(const ControlSequence& seq,
                                                          const GateTarget& target,
                                                          const FilterSpec& filter, int rounds,
                                                          const OptimizerConfig& cfg,
                                                          int threads = 1);

// Interval-averaged amplitudes of a continuous field on the sequence's
// piecewise grid (16-point Gauss-Legendre per interval).
std::vector<double> resample_to_sequence(const SampledField& field, const ControlSequence& shape);

double average_abs_amplitude(const ControlSequence& seq);
double variance_abs_amplitude(const ControlSequence& seq);

} // namespace spinctl
