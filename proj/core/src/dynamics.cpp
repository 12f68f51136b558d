#include "nucswitch/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace nucswitch {

double convergence_threshold(const ModelParams& p, const IntegrationOptions& opt) {
    return opt.conv_eps_rel * p.depolarization_rate * p.saturation_field;
}

Trajectory integrate(const ModelParams& p, const DriveConditions& d, double initial,
                     double t_max, double dt, const IntegrationOptions& opt) {
    if (!(std::abs(initial) <= p.saturation_field)) throw DomainError("polarization out of range");
    if (!(dt > 0.0)) throw InvariantError("violates invariant dt > 0");
    if (!(t_max > dt)) throw InvariantError("violates invariant t_max > dt");

    const RateEquation f(p, d);
    const double bound = p.saturation_field;
    const double eps = convergence_threshold(p, opt);
    const long steps = static_cast<long>(std::ceil(t_max / dt));
    const int stride = std::max(1, opt.record_every);

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.values.push_back(initial);

    double b = initial;
    int quiet = 0;
    for (long i = 1; i <= steps; ++i) {
        const double k1 = f(b);
        const double k2 = f(b + 0.5 * dt * k1);
        const double k3 = f(b + 0.5 * dt * k2);
        const double k4 = f(b + dt * k3);
        const double next = b + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(next)) throw IntegrationDiverged(b);
        b = std::clamp(next, -bound, bound);

        quiet = std::abs(f(b)) < eps ? quiet + 1 : 0;
        const bool done = quiet >= opt.conv_count;
        if (done || i == steps || i % stride == 0) {
            traj.times.push_back(static_cast<double>(i) * dt);
            traj.values.push_back(b);
        }
        if (done) {
            traj.converged = true;
            break;
        }
    }
    traj.final_overhauser = b;
    return traj;
}

RelaxSchedule relax_schedule(const ModelParams& p, const DriveConditions& d) {
    const RateEquation f(p, d);
    return {0.1 / f.rate_scale(), 5000.0 / p.depolarization_rate};
}

double relax(const ModelParams& p, const DriveConditions& d, double initial) {
    const auto sched = relax_schedule(p, d);
    IntegrationOptions opt;
    opt.record_every = 1000;
    Trajectory traj = integrate(p, d, initial, sched.t_max, sched.dt, opt);
    if (!traj.converged) throw RelaxationFailed(std::move(traj));
    return traj.final_overhauser;
}

}  // namespace nucswitch
