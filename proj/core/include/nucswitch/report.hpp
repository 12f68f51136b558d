#pragma once

// CSV and JSON serialization of results. CSV numbers use 9 significant
// digits, columns are fixed, and every row (including the last) ends in
// '\n', so repeated runs diff cleanly.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nucswitch/config.hpp"
#include "nucswitch/steadystate.hpp"
#include "nucswitch/sweeps.hpp"

namespace nucswitch {

std::string format_number(double x);

void write_fixed_points_csv(std::ostream& os, const std::vector<FixedPoint>& roots);

struct LabeledSweep {
    std::string direction;  ///< "up" or "down"
    const SweepResult* sweep;
};

/// Header: axis_value,B_N_tesla,E_e_ueV,E_X_ueV,threshold_flag,direction
void write_sweep_csv(std::ostream& os, const std::vector<LabeledSweep>& sweeps);

/// First row: "<y axis>\<x axis>" then the x grid; each further row is a y
/// value followed by the stable-root counts (-1 marks a marginal cell).
void write_atlas_csv(std::ostream& os, const AtlasResult& atlas);

/// Header: bias_V,P_thr_mW. Empty P_thr cell when nothing switched.
void write_pthr_csv(std::ostream& os, const std::vector<double>& biases,
                    const std::vector<std::optional<double>>& thresholds);

/// Interior local maxima of a threshold curve (all three neighbours defined,
/// strictly greater than both sides).
std::vector<std::size_t> local_maxima(const std::vector<std::optional<double>>& curve);

struct BoundingBox {
    double x_min, x_max, y_min, y_max;
};

/// Extent of the cells holding >= 2 stable roots.
std::optional<BoundingBox> bistable_region(const AtlasResult& atlas);

using json = nlohmann::ordered_json;

json to_json(const Config& cfg);
json to_json(const std::vector<FixedPoint>& roots);
json to_json(const std::vector<Threshold>& thresholds);

/// Single JSON document summarizing one command run.
struct RunReport {
    std::string command;
    Config config;
    json results = json::object();
    int exit_status = 0;
    std::string timestamp;  ///< the only field allowed to differ between identical runs

    std::string dump() const;
};

/// UTC time, ISO 8601.
std::string utc_timestamp();

}  // namespace nucswitch
