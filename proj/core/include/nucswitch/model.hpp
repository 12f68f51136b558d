#pragma once

// Rate model for optically pumped nuclear polarization in a quantum dot
// embedded in a Schottky diode.
//
// Units are fixed throughout: tesla, microelectronvolt (Zeeman energies,
// broadening, hyperfine scale), millielectronvolt (dot level detuning,
// phonon energy, co-tunneling width), milliwatt, volt, second, nanometer.
//
// The Overhauser field B_N is signed along the external field. sigma-
// pumping drives B_N negative, so the electron splitting
// g_e*mu_B*(B_z + B_N) can be cancelled when B_N ~ -B_z.

#include <string_view>

namespace nucswitch {

/// Bohr magneton, microelectronvolt per tesla.
inline constexpr double kBohrMagneton = 57.883;

enum class Helicity : int { sigma_minus = -1, sigma_plus = +1 };

constexpr int sign(Helicity h) noexcept { return static_cast<int>(h); }
std::string_view to_string(Helicity h) noexcept;

struct DeviceGeometry {
    double barrier_nm = 25.0;     ///< tunnel barrier between dot and back contact
    double intrinsic_nm = 230.0;  ///< total intrinsic region
    double phonon_meV = 32.6;     ///< optical phonon energy driving co-tunneling
    double charging_bias = 0.0;   ///< bias (V) where the dot level meets the Fermi edge

    void validate() const;
};

/// Physical parameters of the dot and device. Defaults are the calibrated
/// reference set shipped in config/reference.conf.
struct ModelParams {
    double g_e = 0.6;                      ///< electron g-factor (signed)
    double broadening = 5.0;               ///< electron level broadening, ueV
    double hyperfine = 1.0;                ///< hyperfine coupling scale |A|, ueV
    double pump_coeff = 1.0e9;             ///< optical pump rate per mW, 1/s/mW
    double saturation_field = 3.2;         ///< |B_N| at full polarization, T
    double depolarization_rate = 1.0;      ///< nuclear spin loss, 1/s
    double radiative_rate = 1.0e9;         ///< 1/s
    double tunnel_rate0 = 1.0e9;           ///< tunneling prefactor, 1/s
    double tunnel_onset = -0.4;            ///< V
    double tunnel_slope = 0.05;            ///< V
    double cotunnel_rate0 = 2.3e10;        ///< peak co-tunneling rate, 1/s
    double cotunnel_width = 5.5;           ///< resonance FWHM, meV
    double tunnel_gain = 240.0;            ///< pumping enhancement from tunneling escape
    double rate_scale = 2.5523e-8;         ///< converts the flip-flop proportionality into a rate
    double g_x = 240.0 / (kBohrMagneton * 2.1);  ///< exciton g-factor for the splitting observable
    DeviceGeometry geometry{};

    void validate() const;
};

struct DriveConditions {
    double field = 2.0;   ///< B_z, T
    double power = 0.3;   ///< mW
    double bias = -0.45;  ///< V_app, V (reverse bias negative)
    Helicity helicity = Helicity::sigma_minus;

    void validate() const;
};

/// Every intermediate rate of the model at one (drive, B_N) state.
struct RateBreakdown {
    double zeeman = 0.0;            ///< electron splitting, ueV (signed)
    double pump_rate = 0.0;         ///< effective spin-polarized pumping rate, 1/s
    double flip_flop = 0.0;         ///< w_s, 1/s
    double tunneling = 0.0;         ///< 1/s
    double cotunneling = 0.0;       ///< 1/s
    double retention = 1.0;         ///< electron spin retention in [0, 1]
    double dBN_dt = 0.0;            ///< T/s
};

double electron_zeeman(const ModelParams& p, double field, double overhauser);

/// Fully pumped Overhauser field for the given helicity: +B_sat for sigma+,
/// -B_sat for sigma-.
double overhauser_target(const ModelParams& p, Helicity h);

/// Height of the dot ground state above the contact Fermi edge, meV.
/// Zero at and above the charging bias; linear in reverse bias below it.
double ground_state_detuning(const DeviceGeometry& g, double bias);

/// Sigmoid onset of electron tunneling to the back contact; non-increasing in bias.
double tunneling_rate(const ModelParams& p, double bias);

/// Phonon-assisted resonant co-tunneling. Unit-peak Lorentzian in
/// (detuning - phonon energy), scaled by cotunnel_rate0.
double cotunneling_rate(const ModelParams& p, double bias);

/// Probability that the photo-created electron keeps its spin until it
/// leaves the dot. Throws DomainError("no escape channel") when
/// radiative + tunneling == 0.
double spin_retention(double radiative, double tunneling, double cotunneling);

double effective_pump_rate(const ModelParams& p, const DriveConditions& d);

/// Flip-flop rate: rate_scale * pump_rate * A^2 / (zeeman^2 + broadening^2/4).
double flip_flop_rate(const ModelParams& p, double pump_rate, double zeeman);

/// Full breakdown at B_N; throws DomainError("polarization out of range")
/// when |B_N| > B_sat.
RateBreakdown polarization_rate(const ModelParams& p, const DriveConditions& d, double overhauser);

/// Precomputed evaluator of dB_N/dt for one drive point. The drive-only
/// factors (escape rates, pump rate) are folded in at construction so the
/// call operator is a handful of flops. polarization_rate uses the same
/// arithmetic, so both paths agree bit for bit.
class RateEquation {
public:
    RateEquation(const ModelParams& p, const DriveConditions& d);

    /// dB_N/dt without the range check; defined for any finite B_N.
    double operator()(double overhauser) const noexcept;

    double flip_flop(double overhauser) const noexcept;
    double zeeman(double overhauser) const noexcept;

    /// Flip-flop rate at zero electron splitting.
    double resonant_rate() const noexcept;
    /// max(resonant_rate, depolarization rate): the stiffest linear scale.
    double rate_scale() const noexcept;

    double target() const noexcept { return target_; }
    double saturation() const noexcept { return saturation_; }
    double depolarization() const noexcept { return depolarization_; }

private:
    double zeeman_per_tesla_;
    double field_;
    double flip_flop_numerator_;
    double half_width_sq_;
    double target_;
    double saturation_;
    double depolarization_;
};

}  // namespace nucswitch
