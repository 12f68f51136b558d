#pragma once

// Plain-text configuration: one `key = value` per line, '#' starts a
// comment, optional [model], [geometry] and [drive] section headers. Keys
// are the parameter names used throughout the documentation (g_e, gamma,
// A_hf, ..., d_bar, d_tot, E_LO, V_charging, B_z, P, V_app, helicity).
// Keys left out keep their calibrated reference values.

#include <filesystem>
#include <string>
#include <string_view>

#include "nucswitch/errors.hpp"
#include "nucswitch/model.hpp"

namespace nucswitch {

struct Config {
    ModelParams model{};
    DriveConditions drive{};
};

class ConfigError : public Error {
public:
    ConfigError(int line, const std::string& what);
    /// 1-based line the error refers to; 0 when not tied to a line.
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Calibrated reference parameters and drive defaults.
Config reference_config();

Config parse_config_text(std::string_view text);
Config parse_config(const std::filesystem::path& path);

/// Every key with its current value, in section order; parses back to an
/// identical Config.
std::string format_config(const Config& cfg);

}  // namespace nucswitch
