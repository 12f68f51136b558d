#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "nucswitch/errors.hpp"
#include "nucswitch/model.hpp"
#include "nucswitch/steadystate.hpp"

namespace nucswitch {

enum class Axis { power, bias, field };

std::string_view to_string(Axis a) noexcept;
std::optional<Axis> parse_axis(std::string_view name) noexcept;

/// Copy of `base` with the swept quantity replaced.
DriveConditions with_axis(DriveConditions base, Axis axis, double value);
double axis_value(const DriveConditions& d, Axis axis);

struct SweepSpec {
    Axis axis = Axis::power;
    double start = 0.0;
    double stop = 1.0;
    int steps = 2;                 ///< number of points, >= 2
    DriveConditions fixed{};       ///< non-swept values and helicity
    double initial = 0.0;          ///< B_N seed for the first point, T

    void validate() const;
    std::vector<double> grid() const;
};

struct SweepOptions {
    double jump_tol = 0.5;  ///< T; consecutive |dB_N| above this is a switch
};

struct Threshold {
    double axis_value = 0.0;  ///< first point on the new branch
    double jump = 0.0;        ///< B_N(after) - B_N(before), T
    std::size_t index = 0;
};

struct SweepResult {
    Axis axis = Axis::power;
    std::vector<double> axis_values;
    std::vector<double> overhauser;         ///< T
    std::vector<double> zeeman;             ///< electron splitting, ueV
    std::vector<double> exciton_splitting;  ///< observable, ueV
    std::vector<Threshold> thresholds;

    bool is_threshold(std::size_t i) const;
};

struct HysteresisResult {
    SweepResult up;
    SweepResult down;
    double loop_area = 0.0;  ///< T x axis units
};

/// A relaxation failed partway through a sweep.
class SweepFailed : public Error {
public:
    SweepFailed(double axis_value, const std::string& cause);
    double axis_value() const noexcept { return axis_value_; }

private:
    double axis_value_;
};

/// Quasi-static branch following: each point relaxes from the previous
/// point's B_N, so the result depends on sweep direction.
SweepResult run_sweep(const ModelParams& p, const SweepSpec& spec, const SweepOptions& opt = {});

/// Forward sweep start->stop, then the reverse sweep over the identical
/// grid seeded with the forward sweep's last B_N.
HysteresisResult run_hysteresis(const ModelParams& p, const SweepSpec& spec,
                                const SweepOptions& opt = {});

/// Trapezoid integral of |up - down| over the shared grid.
double loop_area(const SweepResult& up, const SweepResult& down);

struct ThresholdSearch {
    double growth = 1.05;          ///< ratio between consecutive coarse powers
    double floor_fraction = 1e-4;  ///< first nonzero coarse power, as a fraction of p_max
    SweepOptions sweep{};
};

/// Power of the first switch in an upward power sweep from zero, refined by
/// bisection on sweep restarts until the bracket is below `resolution`.
/// The coarse sweep visits 0 and then a geometric grid from
/// floor_fraction * p_max up to p_max.
/// Returns the upper bracket end (the first power seen on the new branch),
/// or nullopt when nothing switches up to p_max.
std::optional<double> threshold_power(const ModelParams& p, double field, double bias,
                                      double p_max, double resolution,
                                      Helicity helicity = Helicity::sigma_minus,
                                      const ThresholdSearch& search = {});

/// threshold_power over a list of biases; rows are independent and run
/// concurrently.
std::vector<std::optional<double>> threshold_power_curve(
    const ModelParams& p, double field, const std::vector<double>& biases, double p_max,
    double resolution, Helicity helicity = Helicity::sigma_minus,
    const ThresholdSearch& search = {});

struct AxisGrid {
    Axis axis = Axis::power;
    double start = 0.0;
    double stop = 1.0;
    int points = 2;

    void validate() const;
    double value(int i) const;
};

struct AtlasResult {
    static constexpr int kMarginal = -1;

    AxisGrid x;
    AxisGrid y;
    std::vector<int> counts;  ///< row-major, counts[iy * x.points + ix]

    int at(int ix, int iy) const { return counts[static_cast<std::size_t>(iy) * x.points + ix]; }
};

/// Stable-root count at every (x, y) cell; cells sitting on a saddle-node
/// hold kMarginal. No path dependence.
AtlasResult bistability_atlas(const ModelParams& p, const DriveConditions& base, const AxisGrid& x,
                              const AxisGrid& y, const RootSearch& search = {});

/// Model X+ splitting: |g_x| mu_B B_z - g_e mu_B |B_N|, ueV.
double emit_observable(const ModelParams& p, double field, double overhauser);

}  // namespace nucswitch
