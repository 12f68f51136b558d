#include "nucswitch/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace nucswitch {

namespace {

struct KeyDef {
    std::string_view name;
    std::string_view section;
    double& (*ref)(Config&);
};

// helicity is handled separately; every other key is a double.
constexpr std::array<KeyDef, 22> kKeys{{
    {"g_e", "model", [](Config& c) -> double& { return c.model.g_e; }},
    {"gamma", "model", [](Config& c) -> double& { return c.model.broadening; }},
    {"A_hf", "model", [](Config& c) -> double& { return c.model.hyperfine; }},
    {"k_pump", "model", [](Config& c) -> double& { return c.model.pump_coeff; }},
    {"B_sat", "model", [](Config& c) -> double& { return c.model.saturation_field; }},
    {"Gamma_d", "model", [](Config& c) -> double& { return c.model.depolarization_rate; }},
    {"Gamma_r", "model", [](Config& c) -> double& { return c.model.radiative_rate; }},
    {"Gamma_t0", "model", [](Config& c) -> double& { return c.model.tunnel_rate0; }},
    {"V_onset", "model", [](Config& c) -> double& { return c.model.tunnel_onset; }},
    {"V_slope", "model", [](Config& c) -> double& { return c.model.tunnel_slope; }},
    {"Gamma_cot0", "model", [](Config& c) -> double& { return c.model.cotunnel_rate0; }},
    {"W_cot", "model", [](Config& c) -> double& { return c.model.cotunnel_width; }},
    {"eta_tunnel", "model", [](Config& c) -> double& { return c.model.tunnel_gain; }},
    {"C_rate", "model", [](Config& c) -> double& { return c.model.rate_scale; }},
    {"g_x", "model", [](Config& c) -> double& { return c.model.g_x; }},
    {"d_bar", "geometry", [](Config& c) -> double& { return c.model.geometry.barrier_nm; }},
    {"d_tot", "geometry", [](Config& c) -> double& { return c.model.geometry.intrinsic_nm; }},
    {"E_LO", "geometry", [](Config& c) -> double& { return c.model.geometry.phonon_meV; }},
    {"V_charging", "geometry", [](Config& c) -> double& { return c.model.geometry.charging_bias; }},
    {"B_z", "drive", [](Config& c) -> double& { return c.drive.field; }},
    {"P", "drive", [](Config& c) -> double& { return c.drive.power; }},
    {"V_app", "drive", [](Config& c) -> double& { return c.drive.bias; }},
}};

constexpr std::string_view kHelicityKey = "helicity";

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view s, double& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

bool parse_helicity(std::string_view s, Helicity& out) {
    if (s == "-1" || s == "sigma-") {
        out = Helicity::sigma_minus;
        return true;
    }
    if (s == "+1" || s == "1" || s == "sigma+") {
        out = Helicity::sigma_plus;
        return true;
    }
    return false;
}

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

}  // namespace

ConfigError::ConfigError(int line, const std::string& what)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

Config reference_config() { return Config{}; }

Config parse_config_text(std::string_view text) {
    Config cfg = reference_config();
    std::map<std::string, int, std::less<>> seen;
    std::string_view section;

    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(line_no, "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "model" && section != "geometry" && section != "drive")
                throw ConfigError(line_no, "unknown section " + quoted(section));
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line_no, "expected key = value");
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));

        if (seen.count(key)) throw ConfigError(line_no, "duplicate key " + quoted(key));

        if (key == kHelicityKey) {
            if (!section.empty() && section != "drive")
                throw ConfigError(line_no, "unknown key " + quoted(key));
            if (!parse_helicity(value, cfg.drive.helicity))
                throw ConfigError(line_no, "invalid value for " + std::string(key));
            seen.emplace(key, line_no);
            continue;
        }

        const KeyDef* def = nullptr;
        for (const auto& k : kKeys)
            if (k.name == key) def = &k;
        if (def == nullptr || (!section.empty() && def->section != section))
            throw ConfigError(line_no, "unknown key " + quoted(key));
        if (!parse_double(value, def->ref(cfg)))
            throw ConfigError(line_no, "invalid value for " + std::string(key));
        seen.emplace(key, line_no);
    }

    try {
        cfg.model.validate();
        cfg.drive.validate();
    } catch (const InvariantError& e) {
        // Attribute the violation to the first named key that appears in the file.
        const std::string msg = e.what();
        int line = 0;
        std::size_t best = std::string::npos;
        for (const auto& [key, at] : seen) {
            const auto pos = msg.find(key);
            if (pos != std::string::npos && pos < best) {
                best = pos;
                line = at;
            }
        }
        throw ConfigError(line, msg);
    }
    return cfg;
}

Config parse_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(0, "cannot open config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string format_config(const Config& cfg) {
    Config copy = cfg;
    std::string out;
    std::string_view section;
    char num[64];
    for (const auto& k : kKeys) {
        if (k.section != section) {
            if (!section.empty()) out += '\n';
            section = k.section;
            out += "[" + std::string(section) + "]\n";
        }
        std::snprintf(num, sizeof num, "%.17g", k.ref(copy));
        out += std::string(k.name) + " = " + num + "\n";
    }
    out += "helicity = " + std::string(sign(cfg.drive.helicity) > 0 ? "+1" : "-1") + "\n";
    return out;
}

}  // namespace nucswitch
