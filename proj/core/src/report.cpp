#include "nucswitch/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>

namespace nucswitch {

std::string format_number(double x) {
    if (x == 0.0) x = 0.0;  // drop the sign of negative zero
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

void write_fixed_points_csv(std::ostream& os, const std::vector<FixedPoint>& roots) {
    os << "B_N,stability,slope\n";
    for (const auto& r : roots)
        os << format_number(r.overhauser) << ',' << to_string(r.stability) << ','
           << format_number(r.slope) << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<LabeledSweep>& sweeps) {
    os << "axis_value,B_N_tesla,E_e_ueV,E_X_ueV,threshold_flag,direction\n";
    for (const auto& [direction, s] : sweeps) {
        for (std::size_t i = 0; i < s->axis_values.size(); ++i)
            os << format_number(s->axis_values[i]) << ',' << format_number(s->overhauser[i]) << ','
               << format_number(s->zeeman[i]) << ',' << format_number(s->exciton_splitting[i])
               << ',' << (s->is_threshold(i) ? 1 : 0) << ',' << direction << '\n';
    }
}

void write_atlas_csv(std::ostream& os, const AtlasResult& atlas) {
    os << to_string(atlas.y.axis) << '\\' << to_string(atlas.x.axis);
    for (int ix = 0; ix < atlas.x.points; ++ix) os << ',' << format_number(atlas.x.value(ix));
    os << '\n';
    for (int iy = 0; iy < atlas.y.points; ++iy) {
        os << format_number(atlas.y.value(iy));
        for (int ix = 0; ix < atlas.x.points; ++ix) os << ',' << atlas.at(ix, iy);
        os << '\n';
    }
}

void write_pthr_csv(std::ostream& os, const std::vector<double>& biases,
                    const std::vector<std::optional<double>>& thresholds) {
    os << "bias_V,P_thr_mW\n";
    for (std::size_t i = 0; i < biases.size(); ++i) {
        os << format_number(biases[i]) << ',';
        if (thresholds[i]) os << format_number(*thresholds[i]);
        os << '\n';
    }
}

std::vector<std::size_t> local_maxima(const std::vector<std::optional<double>>& curve) {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
        if (curve[i - 1] && curve[i] && curve[i + 1] && *curve[i] > *curve[i - 1] &&
            *curve[i] > *curve[i + 1])
            out.push_back(i);
    }
    return out;
}

std::optional<BoundingBox> bistable_region(const AtlasResult& atlas) {
    std::optional<BoundingBox> box;
    for (int iy = 0; iy < atlas.y.points; ++iy) {
        for (int ix = 0; ix < atlas.x.points; ++ix) {
            if (atlas.at(ix, iy) < 2) continue;
            const double x = atlas.x.value(ix);
            const double y = atlas.y.value(iy);
            if (!box) {
                box = BoundingBox{x, x, y, y};
            } else {
                box->x_min = std::min(box->x_min, x);
                box->x_max = std::max(box->x_max, x);
                box->y_min = std::min(box->y_min, y);
                box->y_max = std::max(box->y_max, y);
            }
        }
    }
    return box;
}

json to_json(const Config& cfg) {
    const auto& m = cfg.model;
    const auto& g = m.geometry;
    const auto& d = cfg.drive;
    return json{
        {"model",
         {{"g_e", m.g_e}, {"gamma", m.broadening}, {"A_hf", m.hyperfine},
          {"k_pump", m.pump_coeff}, {"B_sat", m.saturation_field},
          {"Gamma_d", m.depolarization_rate}, {"Gamma_r", m.radiative_rate},
          {"Gamma_t0", m.tunnel_rate0}, {"V_onset", m.tunnel_onset}, {"V_slope", m.tunnel_slope},
          {"Gamma_cot0", m.cotunnel_rate0}, {"W_cot", m.cotunnel_width},
          {"eta_tunnel", m.tunnel_gain}, {"C_rate", m.rate_scale}, {"g_x", m.g_x}}},
        {"geometry",
         {{"d_bar", g.barrier_nm}, {"d_tot", g.intrinsic_nm}, {"E_LO", g.phonon_meV},
          {"V_charging", g.charging_bias}}},
        {"drive",
         {{"B_z", d.field}, {"P", d.power}, {"V_app", d.bias}, {"helicity", sign(d.helicity)}}},
    };
}

json to_json(const std::vector<FixedPoint>& roots) {
    json out = json::array();
    for (const auto& r : roots)
        out.push_back({{"B_N", r.overhauser}, {"stability", to_string(r.stability)},
                       {"slope", r.slope}});
    return out;
}

json to_json(const std::vector<Threshold>& thresholds) {
    json out = json::array();
    for (const auto& t : thresholds)
        out.push_back({{"axis_value", t.axis_value}, {"jump_tesla", t.jump}, {"index", t.index}});
    return out;
}

std::string RunReport::dump() const {
    json doc{
        {"command", command},
        {"timestamp", timestamp},
        {"parameters", to_json(config)},
        {"results", results},
        {"exit_status", exit_status},
    };
    return doc.dump(2) + "\n";
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace nucswitch
