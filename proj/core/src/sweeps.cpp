#include "nucswitch/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nucswitch/dynamics.hpp"
#include "parallel.hpp"

namespace nucswitch {

namespace {

double linspace_at(double start, double stop, int points, int i) {
    if (i == points - 1) return stop;
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
}

void check_axis_range(Axis axis, double lo, double hi) {
    if ((axis == Axis::power || axis == Axis::field) && std::min(lo, hi) < 0.0)
        throw InvariantError(std::string("violates invariant ") +
                             (axis == Axis::power ? "P >= 0" : "B_z >= 0"));
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw InvariantError("axis range must be finite");
}

double relax_at(const ModelParams& p, const DriveConditions& d, double from, double axis_val) {
    try {
        return relax(p, d, from);
    } catch (const Error& e) {
        throw SweepFailed(axis_val, e.what());
    }
}

SweepResult follow_branch(const ModelParams& p, const DriveConditions& base, Axis axis,
                          const std::vector<double>& values, double initial,
                          const SweepOptions& opt) {
    SweepResult out;
    out.axis = axis;
    out.axis_values = values;
    out.overhauser.reserve(values.size());
    out.zeeman.reserve(values.size());
    out.exciton_splitting.reserve(values.size());

    double b = initial;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const DriveConditions d = with_axis(base, axis, values[i]);
        b = relax_at(p, d, b, values[i]);
        out.overhauser.push_back(b);
        out.zeeman.push_back(electron_zeeman(p, d.field, b));
        out.exciton_splitting.push_back(emit_observable(p, d.field, b));
        if (i > 0) {
            const double jump = b - out.overhauser[i - 1];
            if (std::abs(jump) > opt.jump_tol) out.thresholds.push_back({values[i], jump, i});
        }
    }
    return out;
}

}  // namespace

std::string_view to_string(Axis a) noexcept {
    switch (a) {
        case Axis::power: return "power";
        case Axis::bias: return "bias";
        case Axis::field: return "field";
    }
    return "power";
}

std::optional<Axis> parse_axis(std::string_view name) noexcept {
    if (name == "power") return Axis::power;
    if (name == "bias") return Axis::bias;
    if (name == "field") return Axis::field;
    return std::nullopt;
}

DriveConditions with_axis(DriveConditions base, Axis axis, double value) {
    switch (axis) {
        case Axis::power: base.power = value; break;
        case Axis::bias: base.bias = value; break;
        case Axis::field: base.field = value; break;
    }
    return base;
}

double axis_value(const DriveConditions& d, Axis axis) {
    switch (axis) {
        case Axis::power: return d.power;
        case Axis::bias: return d.bias;
        case Axis::field: return d.field;
    }
    return d.power;
}

void SweepSpec::validate() const {
    if (steps < 2) throw InvariantError("steps must be >= 2");
    if (start == stop) throw InvariantError("start must differ from stop");
    check_axis_range(axis, start, stop);
    fixed.validate();
}

std::vector<double> SweepSpec::grid() const {
    std::vector<double> g(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) g[static_cast<std::size_t>(i)] = linspace_at(start, stop, steps, i);
    return g;
}

bool SweepResult::is_threshold(std::size_t i) const {
    return std::any_of(thresholds.begin(), thresholds.end(),
                       [i](const Threshold& t) { return t.index == i; });
}

SweepFailed::SweepFailed(double axis_value, const std::string& cause)
    : Error(cause + " at axis value " + std::to_string(axis_value)), axis_value_(axis_value) {}

SweepResult run_sweep(const ModelParams& p, const SweepSpec& spec, const SweepOptions& opt) {
    spec.validate();
    if (!(std::abs(spec.initial) <= p.saturation_field))
        throw DomainError("polarization out of range");
    return follow_branch(p, spec.fixed, spec.axis, spec.grid(), spec.initial, opt);
}

double loop_area(const SweepResult& up, const SweepResult& down) {
    const std::size_t n = up.axis_values.size();
    if (down.axis_values.size() != n) throw DomainError("branches have different grids");
    double area = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double g0 = std::abs(up.overhauser[i] - down.overhauser[n - 1 - i]);
        const double g1 = std::abs(up.overhauser[i + 1] - down.overhauser[n - 2 - i]);
        area += 0.5 * (g0 + g1) * std::abs(up.axis_values[i + 1] - up.axis_values[i]);
    }
    return area;
}

HysteresisResult run_hysteresis(const ModelParams& p, const SweepSpec& spec,
                                const SweepOptions& opt) {
    HysteresisResult out;
    out.up = run_sweep(p, spec, opt);
    std::vector<double> reversed(out.up.axis_values.rbegin(), out.up.axis_values.rend());
    out.down = follow_branch(p, spec.fixed, spec.axis, reversed, out.up.overhauser.back(), opt);
    out.loop_area = loop_area(out.up, out.down);
    return out;
}

std::optional<double> threshold_power(const ModelParams& p, double field, double bias,
                                      double p_max, double resolution, Helicity helicity,
                                      const ThresholdSearch& search) {
    if (!(p_max > 0.0)) throw InvariantError("violates invariant p_max > 0");
    if (!(resolution > 0.0)) throw InvariantError("violates invariant resolution > 0");
    if (!(search.growth > 1.0)) throw InvariantError("violates invariant growth > 1");
    if (!(search.floor_fraction > 0.0 && search.floor_fraction < 1.0))
        throw InvariantError("violates invariant 0 < floor_fraction < 1");

    DriveConditions d{field, 0.0, bias, helicity};
    const double tol = search.sweep.jump_tol;

    // Geometric grid: the low branch drifts by a bounded amount per relative
    // power step, so a jump is never confused with drift.
    const int points = static_cast<int>(
        std::ceil(std::log(1.0 / search.floor_fraction) / std::log(search.growth)));
    double lo = 0.0;
    double b_lo = relax_at(p, d, 0.0, 0.0);
    std::optional<double> hi;
    for (int i = 0; i <= points; ++i) {
        const double power =
            i == points ? p_max : p_max * search.floor_fraction * std::pow(search.growth, i);
        d.power = power;
        const double b = relax_at(p, d, b_lo, power);
        if (std::abs(b - b_lo) > tol) {
            hi = power;
            break;
        }
        lo = power;
        b_lo = b;
    }
    if (!hi) return std::nullopt;

    while (*hi - lo > resolution) {
        const double mid = 0.5 * (lo + *hi);
        d.power = mid;
        // Bisection homes in on a saddle-node, where relaxation slows without
        // bound. A run that exhausts its horizon is judged by where it got to:
        // still near the old branch means the fold lies closer than the
        // bracket can resolve.
        double b;
        try {
            b = relax(p, d, b_lo);
        } catch (const RelaxationFailed& e) {
            b = e.partial().final_overhauser;
        } catch (const Error& e) {
            throw SweepFailed(mid, e.what());
        }
        if (std::abs(b - b_lo) > tol) {
            hi = mid;
        } else {
            lo = mid;
            b_lo = b;
        }
    }
    return hi;
}

std::vector<std::optional<double>> threshold_power_curve(const ModelParams& p, double field,
                                                         const std::vector<double>& biases,
                                                         double p_max, double resolution,
                                                         Helicity helicity,
                                                         const ThresholdSearch& search) {
    std::vector<std::optional<double>> out(biases.size());
    detail::parallel_for(biases.size(), [&](std::size_t i) {
        out[i] = threshold_power(p, field, biases[i], p_max, resolution, helicity, search);
    });
    return out;
}

void AxisGrid::validate() const {
    if (points < 2) throw InvariantError("grid points must be >= 2");
    if (start == stop) throw InvariantError("start must differ from stop");
    check_axis_range(axis, start, stop);
}

double AxisGrid::value(int i) const { return linspace_at(start, stop, points, i); }

AtlasResult bistability_atlas(const ModelParams& p, const DriveConditions& base,
                              const AxisGrid& x, const AxisGrid& y, const RootSearch& search) {
    x.validate();
    y.validate();
    if (x.axis == y.axis) throw InvariantError("atlas axes must differ");

    AtlasResult out{x, y, std::vector<int>(static_cast<std::size_t>(x.points) * y.points, 0)};
    detail::parallel_for(static_cast<std::size_t>(y.points), [&](std::size_t iy) {
        const DriveConditions row = with_axis(base, y.axis, y.value(static_cast<int>(iy)));
        for (int ix = 0; ix < x.points; ++ix) {
            const DriveConditions cell = with_axis(row, x.axis, x.value(ix));
            int count;
            try {
                count = static_cast<int>(count_stable(find_fixed_points(p, cell, search)));
            } catch (const MarginalFixedPoint&) {
                count = AtlasResult::kMarginal;
            }
            out.counts[iy * static_cast<std::size_t>(x.points) + static_cast<std::size_t>(ix)] = count;
        }
    });
    return out;
}

double emit_observable(const ModelParams& p, double field, double overhauser) {
    return std::abs(p.g_x) * kBohrMagneton * field - p.g_e * kBohrMagneton * std::abs(overhauser);
}

}  // namespace nucswitch
