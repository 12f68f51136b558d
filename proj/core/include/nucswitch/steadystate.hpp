#pragma once

#include <vector>

#include "nucswitch/model.hpp"

namespace nucswitch {

enum class Stability { stable, unstable };

const char* to_string(Stability s) noexcept;

struct FixedPoint {
    double overhauser = 0.0;  ///< T
    Stability stability = Stability::stable;
    double slope = 0.0;       ///< d(dB_N/dt)/dB_N at the root, 1/s
};

struct RootSearch {
    int grid_n = 10000;        ///< scan intervals; at least kMinGrid
    double tol_B = 1e-6;       ///< bisection bracket width, T
    double fd_step = 1e-5;     ///< finite-difference step for classify, T

    static constexpr int kMinGrid = 1000;
};

/// All fixed points of dB_N/dt on [-B_sat, B_sat], sorted ascending.
///
/// Sign changes on a uniform grid are bracketed and bisected; roots within
/// 2*tol_B of each other are merged. Each root is classified, so a
/// saddle-node drive point raises MarginalFixedPoint.
std::vector<FixedPoint> find_fixed_points(const ModelParams& p, const DriveConditions& d,
                                          const RootSearch& search = {});

/// Stability of a root from a central difference of step h (one-sided when
/// the stencil would leave [-B_sat, B_sat]).
FixedPoint classify(const ModelParams& p, const DriveConditions& d, double root,
                    double h = RootSearch{}.fd_step);

std::size_t count_stable(const std::vector<FixedPoint>& roots);

bool is_bistable(const ModelParams& p, const DriveConditions& d, const RootSearch& search = {});

}  // namespace nucswitch
