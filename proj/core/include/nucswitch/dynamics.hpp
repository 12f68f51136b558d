#pragma once

#include <vector>

#include "nucswitch/errors.hpp"
#include "nucswitch/model.hpp"

namespace nucswitch {

struct Trajectory {
    std::vector<double> times;   ///< s, strictly increasing
    std::vector<double> values;  ///< B_N, T
    bool converged = false;
    double final_overhauser = 0.0;
};

struct IntegrationOptions {
    int conv_count = 10;           ///< consecutive quiet steps needed to stop early
    double conv_eps_rel = 1e-9;    ///< quiet means |dB_N/dt| < conv_eps_rel * Gamma_d * B_sat
    int record_every = 1;          ///< keep every n-th step in the trajectory (final state always kept)
};

class IntegrationDiverged : public Error {
public:
    explicit IntegrationDiverged(double last_finite)
        : Error("integration diverged"), last_finite_(last_finite) {}
    double last_finite() const noexcept { return last_finite_; }

private:
    double last_finite_;
};

class RelaxationFailed : public Error {
public:
    explicit RelaxationFailed(Trajectory partial)
        : Error("relaxation did not converge"), partial_(std::move(partial)) {}
    const Trajectory& partial() const noexcept { return partial_; }

private:
    Trajectory partial_;
};

/// Convergence threshold on |dB_N/dt| in T/s.
double convergence_threshold(const ModelParams& p, const IntegrationOptions& opt = {});

/// Fixed-step classical RK4 on dB_N/dt, clamping to [-B_sat, B_sat] after
/// every step. Stops early once the rate stays below the convergence
/// threshold for conv_count consecutive steps.
Trajectory integrate(const ModelParams& p, const DriveConditions& d, double initial,
                     double t_max, double dt, const IntegrationOptions& opt = {});

struct RelaxSchedule {
    double dt = 0.0;
    double t_max = 0.0;
};

/// dt = 0.1 / max(resonant flip-flop rate, Gamma_d), t_max = 5000 / Gamma_d.
/// The horizon is long because the low branch relaxes well below Gamma_d
/// near a switch (the feedback cancels most of the loss).
RelaxSchedule relax_schedule(const ModelParams& p, const DriveConditions& d);

/// Integrates from `initial` until converged and returns the final B_N.
/// Throws RelaxationFailed (with the partial trajectory) otherwise.
double relax(const ModelParams& p, const DriveConditions& d, double initial);

}  // namespace nucswitch
