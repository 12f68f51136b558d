#include "nucswitch/steadystate.hpp"

#include <algorithm>
#include <cmath>

#include "nucswitch/errors.hpp"

namespace nucswitch {

namespace {

double bisect(const RateEquation& eq, double lo, double hi, double f_lo, double tol) {
    while (hi - lo >= tol) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = eq(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

FixedPoint classify_with(const RateEquation& eq, double root, double h) {
    const double bound = eq.saturation();
    double slope;
    if (root - h >= -bound && root + h <= bound)
        slope = (eq(root + h) - eq(root - h)) / (2.0 * h);
    else if (root + h <= bound)
        slope = (eq(root + h) - eq(root)) / h;
    else
        slope = (eq(root) - eq(root - h)) / h;

    if (!(std::abs(slope) >= 1e-9 * eq.rate_scale())) throw MarginalFixedPoint(root, slope);
    return {root, slope < 0.0 ? Stability::stable : Stability::unstable, slope};
}

}  // namespace

const char* to_string(Stability s) noexcept {
    return s == Stability::stable ? "stable" : "unstable";
}

std::vector<FixedPoint> find_fixed_points(const ModelParams& p, const DriveConditions& d,
                                          const RootSearch& search) {
    if (search.grid_n < RootSearch::kMinGrid)
        throw InvariantError("violates invariant grid_n >= 1000");
    if (!(search.tol_B > 0.0)) throw InvariantError("violates invariant tol_B > 0");

    const RateEquation eq(p, d);
    const double lo = -p.saturation_field;
    const double width = 2.0 * p.saturation_field;
    const int n = search.grid_n;

    std::vector<double> roots;
    double x_prev = lo;
    double f_prev = eq(x_prev);
    if (f_prev == 0.0) roots.push_back(x_prev);
    for (int i = 1; i <= n; ++i) {
        const double x = i == n ? p.saturation_field : lo + width * i / n;
        const double f = eq(x);
        if (f == 0.0)
            roots.push_back(x);
        else if (f_prev != 0.0 && (f < 0.0) != (f_prev < 0.0))
            roots.push_back(bisect(eq, x_prev, x, f_prev, search.tol_B));
        x_prev = x;
        f_prev = f;
    }

    std::vector<FixedPoint> out;
    for (double r : roots) {
        if (!out.empty() && r - out.back().overhauser < 2.0 * search.tol_B) continue;
        out.push_back(classify_with(eq, r, search.fd_step));
    }
    return out;
}

FixedPoint classify(const ModelParams& p, const DriveConditions& d, double root, double h) {
    if (!(h > 0.0)) throw InvariantError("violates invariant h > 0");
    if (!(std::abs(root) <= p.saturation_field)) throw DomainError("polarization out of range");
    return classify_with(RateEquation(p, d), root, h);
}

std::size_t count_stable(const std::vector<FixedPoint>& roots) {
    return static_cast<std::size_t>(std::count_if(roots.begin(), roots.end(), [](const auto& r) {
        return r.stability == Stability::stable;
    }));
}

bool is_bistable(const ModelParams& p, const DriveConditions& d, const RootSearch& search) {
    return count_stable(find_fixed_points(p, d, search)) >= 2;
}

}  // namespace nucswitch
