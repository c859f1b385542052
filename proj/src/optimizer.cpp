#include "spinctl/optimizer.hpp"

#include <cmath>
#include <stdexcept>

#include "spinctl/kernels.hpp"
#include "spinctl/parallel.hpp"
#include "spinctl/rng.hpp"

namespace spinctl {

void OptimizerConfig::validate() const {
    if (max_iterations < 0)
        throw std::invalid_argument("OptimizerConfig: max_iterations must be >= 0");
    if (!(gradient_tolerance > 0.0))
        throw std::invalid_argument("OptimizerConfig: gradient_tolerance must be > 0");
    if (!(fidelity_goal > 0.0) || fidelity_goal > 1.0)
        throw std::invalid_argument("OptimizerConfig: fidelity_goal must be in (0, 1]");
    if (n_restarts < 1)
        throw std::invalid_argument("OptimizerConfig: n_restarts must be >= 1");
    if (!(initial_amplitude_halfwidth > 0.0))
        throw std::invalid_argument("OptimizerConfig: initial_amplitude_halfwidth must be > 0");
}

namespace {

double stable_sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

struct EvalWorkspace {
    int n_pulses = -1, d = -1;
    std::vector<double> eigvals;     // n_pulses x d
    std::vector<CMat> v, u, prefix;  // eigenvectors, step unitaries, R_k
    CMat p, gk, tmp, btilde, dstep;

    void resize(int np, int dim) {
        if (np == n_pulses && dim == d) return;
        n_pulses = np;
        d = dim;
        eigvals.assign(static_cast<std::size_t>(np) * dim, 0.0);
        v.assign(np, CMat(dim));
        u.assign(np, CMat(dim));
        prefix.assign(np + 1, CMat(dim));
        p = CMat(dim);
        gk = CMat(dim);
        tmp = CMat(dim);
        btilde = CMat(dim);
        dstep = CMat(dim);
    }
};

// F and optionally dF/dh. The per-pulse eigensystems feed both the ordered
// product and the divided-difference derivative of each factor.
double eval_fidelity(PulseEvolver& evolver, const ControlSequence& seq, const CMat& target,
                     std::vector<double>* grad, bool* grad_defined, EvalWorkspace& ws) {
    const int np = seq.n_pulses;
    const int d = evolver.dim();
    const double T = seq.pulse_duration;
    ws.resize(np, d);
    if (grad_defined) *grad_defined = true;

    ws.prefix[0].set_identity();
    for (int k = 0; k < np; ++k) {
        double* w = ws.eigvals.data() + static_cast<std::size_t>(k) * d;
        evolver.decompose_pulse(seq.pulse_axis(k), seq.amplitudes[k], w, ws.v[k]);
        evolver.step_from_eigensystem(w, ws.v[k], T, ws.u[k]);
        kernels::cmatmul(ws.prefix[k + 1].data(), ws.u[k].data(), ws.prefix[k].data(), d);
    }
    const cxd s = kernels::cdotc(ws.prefix[np].data(), target.data(), d * d);
    const double abs_s = std::abs(s);
    const double f = std::min(1.0, abs_s / d);
    if (!grad) return f;

    if (abs_s < 1e-14 * d) {
        if (grad_defined) *grad_defined = false;
        return f;
    }

    grad->assign(np, 0.0);
    ws.p = target;  // P_k = L_k^dag * target, L_{np-1} = I
    for (int k = np - 1; k >= 0; --k) {
        kernels::cmatmul_adj_b(ws.gk.data(), ws.p.data(), ws.prefix[k].data(), d);

        const CMat& ctrl = evolver.control_op(seq.pulse_axis(k));
        kernels::cmatmul_adj_a(ws.tmp.data(), ws.v[k].data(), ctrl.data(), d);
        kernels::cmatmul(ws.btilde.data(), ws.tmp.data(), ws.v[k].data(), d);

        const double* w = ws.eigvals.data() + static_cast<std::size_t>(k) * d;
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                const double mean = 0.5 * (w[i] + w[j]) * T;
                const double half_gap = 0.5 * (w[i] - w[j]) * T;
                const cxd phi = cxd{0.0, -T} * cxd{std::cos(mean), -std::sin(mean)} *
                                stable_sinc(half_gap);
                ws.tmp(i, j) = ws.btilde(i, j) * phi;
            }
        }
        kernels::cmatmul(ws.dstep.data(), ws.v[k].data(), ws.tmp.data(), d);
        kernels::cmatmul_adj_b(ws.tmp.data(), ws.dstep.data(), ws.v[k].data(), d);

        const cxd ds = kernels::cdotc(ws.tmp.data(), ws.gk.data(), d * d);
        (*grad)[k] = (std::conj(s) * ds).real() / (d * abs_s);

        if (k > 0) {
            kernels::cmatmul_adj_a(ws.tmp.data(), ws.u[k].data(), ws.p.data(), d);
            std::swap(ws.tmp, ws.p);
        }
    }
    return f;
}

struct BfgsOutcome {
    std::vector<double> amplitudes;
    std::vector<double> trace;
    RestartResult result;
};

double max_abs_entry(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Minimizes 1 - F with a dense inverse-Hessian BFGS update and Armijo
// backtracking (sufficient increase in F). Resets the inverse Hessian on
// non-ascent curvature pairs.
BfgsOutcome run_restart(PulseEvolver& evolver, const ControlSequence& shape, const CMat& target,
                        const OptimizerConfig& cfg, std::vector<double> x, Xoshiro256pp stream) {
    constexpr double kArmijoC1 = 1e-4;
    constexpr double kContraction = 0.5;
    constexpr int kMaxBacktracks = 60;

    const int n = shape.n_pulses;
    EvalWorkspace ws;
    ControlSequence seq = shape;
    seq.amplitudes = x;

    std::vector<double> g(n);
    bool grad_ok = false;
    double f = eval_fidelity(evolver, seq, target, &g, &grad_ok, ws);
    for (int tries = 0; !grad_ok && tries < 5; ++tries) {
        for (double& a : seq.amplitudes) a += stream.uniform_symmetric(1e-3);
        f = eval_fidelity(evolver, seq, target, &g, &grad_ok, ws);
    }

    BfgsOutcome out;
    out.trace.push_back(f);
    if (!grad_ok) {
        out.amplitudes = seq.amplitudes;
        out.result = {f, 0, false};
        return out;
    }

    std::vector<double> hinv(static_cast<std::size_t>(n) * n, 0.0);
    auto reset_hinv = [&] {
        std::fill(hinv.begin(), hinv.end(), 0.0);
        for (int i = 0; i < n; ++i) hinv[static_cast<std::size_t>(i) * n + i] = 1.0;
    };
    reset_hinv();

    std::vector<double> dir(n), xnew(n), gnew(n), svec(n), yvec(n), hy(n);
    int it = 0;
    bool converged = false;
    for (; it < cfg.max_iterations; ++it) {
        if (f >= cfg.fidelity_goal || max_abs_entry(g) < cfg.gradient_tolerance) {
            converged = true;
            break;
        }

        // ascent direction p = H_inv * gradF; fall back to steepest ascent
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += hinv[static_cast<std::size_t>(i) * n + j] * g[j];
            dir[i] = acc;
        }
        double slope = 0.0;  // directional derivative of (1-F): -g . dir
        for (int i = 0; i < n; ++i) slope -= g[i] * dir[i];
        if (slope >= 0.0) {
            reset_hinv();
            dir = g;
            slope = 0.0;
            for (int i = 0; i < n; ++i) slope -= g[i] * g[i];
            if (slope == 0.0) break;
        }

        const double f0 = f;
        double alpha = 1.0;
        double fnew = f0;
        bool accepted = false;
        for (int bt = 0; bt < kMaxBacktracks; ++bt) {
            for (int i = 0; i < n; ++i) xnew[i] = seq.amplitudes[i] + alpha * dir[i];
            ControlSequence trial = seq;
            trial.amplitudes = xnew;
            fnew = eval_fidelity(evolver, trial, target, nullptr, nullptr, ws);
            if ((1.0 - fnew) <= (1.0 - f0) + kArmijoC1 * alpha * slope) {
                accepted = true;
                break;
            }
            alpha *= kContraction;
        }
        if (!accepted) break;  // stalled line search: report unconverged state

        bool ok = true;
        const double ftest = eval_fidelity(
            evolver,
            [&] {
                ControlSequence t = seq;
                t.amplitudes = xnew;
                return t;
            }(),
            target, &gnew, &ok, ws);
        if (!ok) break;  // stepped onto the |trace| = 0 cone

        for (int i = 0; i < n; ++i) {
            svec[i] = xnew[i] - seq.amplitudes[i];
            yvec[i] = g[i] - gnew[i];  // grad(1-F) difference
        }
        seq.amplitudes = xnew;
        f = ftest;
        g = gnew;
        out.trace.push_back(f);

        double sy = 0.0, snorm = 0.0, ynorm = 0.0;
        for (int i = 0; i < n; ++i) {
            sy += svec[i] * yvec[i];
            snorm += svec[i] * svec[i];
            ynorm += yvec[i] * yvec[i];
        }
        if (sy > 1e-12 * std::sqrt(snorm * ynorm)) {
            const double rho = 1.0 / sy;
            for (int i = 0; i < n; ++i) {
                double acc = 0.0;
                for (int j = 0; j < n; ++j) acc += hinv[static_cast<std::size_t>(i) * n + j] * yvec[j];
                hy[i] = acc;
            }
            double yhy = 0.0;
            for (int i = 0; i < n; ++i) yhy += yvec[i] * hy[i];
            const double c = rho * rho * yhy + rho;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    hinv[static_cast<std::size_t>(i) * n + j] +=
                        c * svec[i] * svec[j] - rho * (svec[i] * hy[j] + hy[i] * svec[j]);
                }
            }
        } else {
            reset_hinv();
        }

        (void)fnew;
    }
    if (!converged && it < cfg.max_iterations) {
        // left the loop through a stall; fall through with converged=false
    } else if (!converged) {
        converged = f >= cfg.fidelity_goal || max_abs_entry(g) < cfg.gradient_tolerance;
    }

    out.amplitudes = seq.amplitudes;
    out.result = {f, it, converged};
    return out;
}

} // namespace

double objective(const ControlSequence& seq, const GateTarget& target) {
    seq.validate();
    const CMat g = gate_target(target).mat();
    if (g.dim() != seq.spec.dim())
        throw std::invalid_argument("objective: target dimension mismatch");
    PulseEvolver evolver(seq.spec);
    return evolver.fidelity(seq, g);
}

std::vector<double> fidelity_gradient(const ControlSequence& seq, const GateTarget& target) {
    seq.validate();
    const CMat g = gate_target(target).mat();
    if (g.dim() != seq.spec.dim())
        throw std::invalid_argument("fidelity_gradient: target dimension mismatch");
    PulseEvolver evolver(seq.spec);
    EvalWorkspace ws;
    std::vector<double> grad;
    bool ok = true;
    eval_fidelity(evolver, seq, g, &grad, &ok, ws);
    if (!ok)
        throw std::domain_error("fidelity_gradient: undefined at F = 0 (trace phase ill-defined)");
    return grad;
}

OptimizationReport bfgs_maximize(const ControlSequence& seq0, const GateTarget& target,
                                 const OptimizerConfig& cfg, int threads) {
    seq0.validate();
    cfg.validate();
    const CMat target_mat = gate_target(target).mat();
    if (target_mat.dim() != seq0.spec.dim())
        throw std::invalid_argument("bfgs_maximize: target dimension mismatch");

    std::vector<BfgsOutcome> outcomes(cfg.n_restarts);
    run_indexed(cfg.n_restarts, threads, [&](int r) {
        PulseEvolver evolver(seq0.spec);
        Xoshiro256pp stream = Xoshiro256pp::substream(cfg.seed, static_cast<std::uint64_t>(r));
        std::vector<double> x0;
        if (r == 0) {
            x0 = seq0.amplitudes;
        } else {
            x0.resize(seq0.n_pulses);
            for (double& a : x0) a = stream.uniform_symmetric(cfg.initial_amplitude_halfwidth);
        }
        outcomes[r] = run_restart(evolver, seq0, target_mat, cfg, std::move(x0), stream);
    });

    OptimizationReport report;
    report.config = cfg;
    report.seed = cfg.seed;
    report.per_restart.reserve(cfg.n_restarts);
    int best = 0;
    for (int r = 0; r < cfg.n_restarts; ++r) {
        report.per_restart.push_back(outcomes[r].result);
        if (outcomes[r].result.final_fidelity > outcomes[best].result.final_fidelity) best = r;
    }
    report.best_restart = best;
    report.best_fidelity = outcomes[best].result.final_fidelity;
    report.best_fidelity_trace = outcomes[best].trace;
    report.best_sequence = seq0;
    report.best_sequence.amplitudes = outcomes[best].amplitudes;
    return report;
}

std::vector<ScanPoint> minimal_time_scan(const GateTarget& target, ControlMode mode, int n_pulses,
                                         const std::vector<double>& tf_grid, const ChainSpec& spec,
                                         const OptimizerConfig& cfg, int threads) {
    for (std::size_t i = 1; i < tf_grid.size(); ++i)
        if (!(tf_grid[i] > tf_grid[i - 1]))
            throw std::invalid_argument("minimal_time_scan: t_f grid must ascend");
    std::vector<ScanPoint> points;
    points.reserve(tf_grid.size());
    for (double tf : tf_grid) {
        ControlSequence seq0;
        seq0.spec = spec;
        seq0.mode = mode;
        seq0.n_pulses = n_pulses;
        seq0.pulse_duration = tf / n_pulses;
        seq0.amplitudes.assign(n_pulses, 0.0);
        OptimizationReport rep = bfgs_maximize(seq0, target, cfg, threads);
        points.push_back({tf, rep.best_fidelity});
    }
    return points;
}

namespace detail {

double fidelity_value_gradient(PulseEvolver& evolver, const ControlSequence& seq,
                               const CMat& target, std::vector<double>* grad,
                               bool* grad_defined) {
    EvalWorkspace ws;
    return eval_fidelity(evolver, seq, target, grad, grad_defined, ws);
}

} // namespace detail

} // namespace spinctl
