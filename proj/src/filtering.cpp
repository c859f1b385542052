#include "spinctl/filtering.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spinctl/kernels.hpp"
#include "spinctl/parallel.hpp"

namespace spinctl {

namespace {

constexpr int kTauDivisorStart = 20;
constexpr int kTauDivisorCap = 320;
constexpr double kTauFidelityTol = 1e-6;

struct Interval {
    double t0, t1, amp;
};

std::vector<Interval> axis_intervals(const ControlSequence& seq, ControlAxis axis) {
    std::vector<Interval> iv;
    const double t = seq.pulse_duration;
    for (int k = 0; k < seq.n_pulses; ++k) {
        if (seq.pulse_axis(k) != axis) continue;
        iv.push_back({k * t, (k + 1) * t, seq.amplitudes[k]});
    }
    return iv;
}

double box_sinc(double x) {
    if (std::abs(x) < 1e-6) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// 16-point Gauss-Legendre rule on [-1, 1]
constexpr double kGlNode[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499,
};
constexpr double kGlWeight[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541,
};

} // namespace

FilterSpec FilterSpec::lowpass(double omega0) {
    FilterSpec f;
    f.kind = Kind::IdealLowPass;
    f.cutoff = omega0;
    f.validate();
    return f;
}

FilterSpec FilterSpec::gaussian_gamma(double gamma) {
    FilterSpec f;
    f.kind = Kind::Gaussian;
    f.gamma = gamma;
    f.validate();
    return f;
}

FilterSpec FilterSpec::gaussian_fwhm(double fwhm) {
    if (!(fwhm > 0.0))
        throw std::invalid_argument("FilterSpec: FWHM must be > 0");
    return gaussian_gamma(4.0 * std::numbers::ln2 / (fwhm * fwhm));
}

double FilterSpec::fwhm() const {
    if (kind != Kind::Gaussian)
        throw std::invalid_argument("FilterSpec: FWHM only defined for Gaussian filters");
    return 2.0 * std::sqrt(std::numbers::ln2 / gamma);
}

void FilterSpec::validate() const {
    if (kind == Kind::IdealLowPass && cutoff < 0.0)
        throw std::invalid_argument("FilterSpec: cutoff must be >= 0");
    if (kind == Kind::Gaussian && !(gamma > 0.0))
        throw std::invalid_argument("FilterSpec: gamma must be > 0");
    if (center != 0.0)
        throw std::invalid_argument("FilterSpec: only center frequency 0 is supported");
}

PowerSpectrum power_spectrum(const ControlSequence& seq, const std::vector<double>& omega_grid) {
    seq.validate();
    for (double w : omega_grid)
        if (!std::isfinite(w))
            throw std::invalid_argument("power_spectrum: omega grid must be finite");

    PowerSpectrum ps;
    ps.omega = omega_grid;
    auto spectrum_for = [&](ControlAxis axis) {
        const std::vector<Interval> iv = axis_intervals(seq, axis);
        std::vector<double> power(omega_grid.size(), 0.0);
        for (std::size_t g = 0; g < omega_grid.size(); ++g) {
            const double w = omega_grid[g];
            cxd f{0.0, 0.0};
            for (const Interval& s : iv) {
                const double mid = 0.5 * (s.t0 + s.t1);
                const double len = s.t1 - s.t0;
                const double phase = -w * mid;
                f += s.amp * len * box_sinc(0.5 * w * len) * cxd{std::cos(phase), std::sin(phase)};
            }
            power[g] = std::norm(f);
        }
        return power;
    };
    ps.power_x = spectrum_for(ControlAxis::X);
    ps.power_y = spectrum_for(ControlAxis::Y);
    return ps;
}

SampledField lowpass_filtered_field(const ControlSequence& seq, double omega0) {
    seq.validate();
    if (omega0 < 0.0)
        throw std::invalid_argument("lowpass_filtered_field: omega0 must be >= 0");

    auto component = [omega0](std::vector<Interval> iv) {
        return [omega0, iv = std::move(iv)](double t) {
            double acc = 0.0;
            for (const Interval& s : iv)
                acc += s.amp *
                       (special::si(omega0 * (s.t1 - t)) - special::si(omega0 * (s.t0 - t)));
            return acc / std::numbers::pi;
        };
    };

    SampledField field;
    field.hx = component(axis_intervals(seq, ControlAxis::X));
    field.hy = component(axis_intervals(seq, ControlAxis::Y));
    field.total_time = seq.total_time();
    field.pulse_duration = seq.pulse_duration;
    field.step = seq.pulse_duration / kTauDivisorStart;
    return field;
}

SampledField gaussian_filtered_field(const ControlSequence& seq, double gamma) {
    seq.validate();
    if (!(gamma > 0.0))
        throw std::invalid_argument("gaussian_filtered_field: gamma must be > 0");
    const double scale = 1.0 / (2.0 * std::sqrt(gamma));

    auto component = [scale](std::vector<Interval> iv) {
        return [scale, iv = std::move(iv)](double t) {
            double acc = 0.0;
            for (const Interval& s : iv)
                acc += s.amp *
                       (special::erf(scale * (s.t1 - t)) - special::erf(scale * (s.t0 - t)));
            return 0.5 * acc;
        };
    };

    SampledField field;
    field.hx = component(axis_intervals(seq, ControlAxis::X));
    field.hy = component(axis_intervals(seq, ControlAxis::Y));
    field.total_time = seq.total_time();
    field.pulse_duration = seq.pulse_duration;
    field.step = seq.pulse_duration / kTauDivisorStart;
    return field;
}

SampledField filtered_field(const ControlSequence& seq, const FilterSpec& filter) {
    filter.validate();
    return filter.kind == FilterSpec::Kind::IdealLowPass
               ? lowpass_filtered_field(seq, filter.cutoff)
               : gaussian_filtered_field(seq, filter.gamma);
}

FilterReport filtered_fidelity(const ControlSequence& seq, const FilterSpec& filter,
                               const GateTarget& target) {
    seq.validate();
    filter.validate();
    const CMat g = gate_target(target).mat();
    if (g.dim() != seq.spec.dim())
        throw std::invalid_argument("filtered_fidelity: target dimension mismatch");

    PulseEvolver evolver(seq.spec);
    FilterReport report;
    report.filter = filter;
    report.original_fidelity = evolver.fidelity(seq, g);

    SampledField field = filtered_field(seq, filter);
    CMat u(seq.spec.dim());
    double prev = -1.0;
    for (int divisor = kTauDivisorStart; divisor <= kTauDivisorCap; divisor *= 2) {
        field.step = seq.pulse_duration / divisor;
        evolver.product_formula(field, u);
        const double f = fidelity_raw(u, g);
        report.convergence_trace.emplace_back(field.step, f);
        report.tau_used = field.step;
        report.filtered_fidelity = f;
        if (prev >= 0.0 && std::abs(f - prev) < kTauFidelityTol) {
            report.converged = true;
            break;
        }
        prev = f;
    }
    return report;
}

CutoffCurve fidelity_vs_cutoff(const ControlSequence& seq, const GateTarget& target,
                               const std::vector<double>& cutoff_grid, int threads) {
    seq.validate();
    for (std::size_t i = 1; i < cutoff_grid.size(); ++i)
        if (!(cutoff_grid[i] > cutoff_grid[i - 1]))
            throw std::invalid_argument("fidelity_vs_cutoff: cutoff grid must ascend");

    CutoffCurve curve;
    curve.avg_abs_amplitude = average_abs_amplitude(seq);
    curve.var_abs_amplitude = variance_abs_amplitude(seq);
    curve.points.resize(cutoff_grid.size());
    run_indexed(static_cast<int>(cutoff_grid.size()), threads, [&](int i) {
        const FilterReport rep = filtered_fidelity(seq, FilterSpec::lowpass(cutoff_grid[i]), target);
        curve.points[i] = {cutoff_grid[i], rep.filtered_fidelity};
    });
    return curve;
}

std::vector<double> resample_to_sequence(const SampledField& field, const ControlSequence& shape) {
    shape.validate();
    const double t = shape.pulse_duration;
    std::vector<double> amps(shape.n_pulses, 0.0);
    for (int k = 0; k < shape.n_pulses; ++k) {
        const auto& component = shape.pulse_axis(k) == ControlAxis::X ? field.hx : field.hy;
        const double mid = (k + 0.5) * t;
        const double half = 0.5 * t;
        double acc = 0.0;
        for (int q = 0; q < 8; ++q) {
            acc += kGlWeight[q] *
                   (component(mid + half * kGlNode[q]) + component(mid - half * kGlNode[q]));
        }
        amps[k] = 0.5 * acc;  // interval average: (1/T) * integral
    }
    return amps;
}

std::vector<FilterIterationRound> iterate_filter_optimize(const ControlSequence& seq,
                                                          const GateTarget& target,
                                                          const FilterSpec& filter, int rounds,
                                                          const OptimizerConfig& cfg,
                                                          int threads) {
    if (rounds < 1)
        throw std::invalid_argument("iterate_filter_optimize: rounds must be >= 1");
    seq.validate();
    filter.validate();

    std::vector<FilterIterationRound> result;
    result.reserve(rounds);
    ControlSequence current = seq;
    for (int r = 0; r < rounds; ++r) {
        const SampledField field = filtered_field(current, filter);
        ControlSequence start = current;
        start.amplitudes = resample_to_sequence(field, current);
        FilterIterationRound round;
        round.optimization = bfgs_maximize(start, target, cfg, threads);
        round.filter = filtered_fidelity(round.optimization.best_sequence, filter, target);
        current = round.optimization.best_sequence;
        result.push_back(std::move(round));
    }
    return result;
}

double average_abs_amplitude(const ControlSequence& seq) {
    seq.validate();
    double acc = 0.0;
    for (double h : seq.amplitudes) acc += std::abs(h);
    return acc / seq.n_pulses;
}

double variance_abs_amplitude(const ControlSequence& seq) {
    seq.validate();
    const double avg = average_abs_amplitude(seq);
    double acc = 0.0;
    for (double h : seq.amplitudes) acc += (std::abs(h) - avg) * (std::abs(h) - avg);
    return acc / seq.n_pulses;
}

} // namespace spinctl
