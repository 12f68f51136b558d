#include "nucswitch/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nucswitch/errors.hpp"

namespace nucswitch {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw InvariantError(std::string("violates invariant ") + what);
}

bool finite_all(std::initializer_list<double> xs) {
    for (double x : xs)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace

std::string_view to_string(Helicity h) noexcept {
    return h == Helicity::sigma_plus ? "sigma+" : "sigma-";
}

void DeviceGeometry::validate() const {
    require(finite_all({barrier_nm, intrinsic_nm, phonon_meV, charging_bias}),
            "geometry values finite");
    require(barrier_nm > 0.0, "d_bar > 0");
    require(barrier_nm < intrinsic_nm, "d_bar < d_tot");
    require(phonon_meV > 0.0, "E_LO > 0");
}

void ModelParams::validate() const {
    require(finite_all({g_e, broadening, hyperfine, pump_coeff, saturation_field,
                        depolarization_rate, radiative_rate, tunnel_rate0, tunnel_onset,
                        tunnel_slope, cotunnel_rate0, cotunnel_width, tunnel_gain, rate_scale,
                        g_x}),
            "model values finite");
    require(broadening > 0.0, "gamma > 0");
    require(hyperfine > 0.0, "A_hf > 0");
    require(saturation_field > 0.0, "B_sat > 0");
    require(depolarization_rate > 0.0, "Gamma_d > 0");
    require(radiative_rate > 0.0, "Gamma_r > 0");
    require(pump_coeff >= 0.0, "k_pump >= 0");
    require(cotunnel_width > 0.0, "W_cot > 0");
    require(rate_scale > 0.0, "C_rate > 0");
    require(tunnel_rate0 >= 0.0, "Gamma_t0 >= 0");
    require(cotunnel_rate0 >= 0.0, "Gamma_cot0 >= 0");
    require(tunnel_gain >= 0.0, "eta_tunnel >= 0");
    require(tunnel_slope > 0.0, "V_slope > 0");
    geometry.validate();
}

void DriveConditions::validate() const {
    require(finite_all({field, power, bias}), "drive values finite");
    require(field >= 0.0, "B_z >= 0");
    require(power >= 0.0, "P >= 0");
    require(helicity == Helicity::sigma_minus || helicity == Helicity::sigma_plus,
            "helicity in {+1, -1}");
}

double electron_zeeman(const ModelParams& p, double field, double overhauser) {
    return p.g_e * kBohrMagneton * (field + overhauser);
}

double overhauser_target(const ModelParams& p, Helicity h) {
    return sign(h) * p.saturation_field;
}

double ground_state_detuning(const DeviceGeometry& g, double bias) {
    if (bias >= g.charging_bias) return 0.0;
    return 1000.0 * (g.charging_bias - bias) * g.barrier_nm / g.intrinsic_nm;
}

double tunneling_rate(const ModelParams& p, double bias) {
    if (p.tunnel_rate0 == 0.0) return 0.0;
    return p.tunnel_rate0 / (1.0 + std::exp((bias - p.tunnel_onset) / p.tunnel_slope));
}

double cotunneling_rate(const ModelParams& p, double bias) {
    if (p.cotunnel_rate0 == 0.0) return 0.0;
    const double x = ground_state_detuning(p.geometry, bias) - p.geometry.phonon_meV;
    const double hw = 0.5 * p.cotunnel_width;
    return p.cotunnel_rate0 * (hw * hw) / (x * x + hw * hw);
}

double spin_retention(double radiative, double tunneling, double cotunneling) {
    const double escape = radiative + tunneling;
    if (!(escape > 0.0)) throw DomainError("no escape channel");
    return escape / (escape + cotunneling);
}

double effective_pump_rate(const ModelParams& p, const DriveConditions& d) {
    const double tunneling = tunneling_rate(p, d.bias);
    const double retention =
        spin_retention(p.radiative_rate, tunneling, cotunneling_rate(p, d.bias));
    const double tunnel_fraction = tunneling / (p.radiative_rate + tunneling);
    return p.pump_coeff * d.power * retention * (1.0 + p.tunnel_gain * tunnel_fraction);
}

double flip_flop_rate(const ModelParams& p, double pump_rate, double zeeman) {
    const double hw = 0.5 * p.broadening;
    return p.rate_scale * pump_rate * p.hyperfine * p.hyperfine / (zeeman * zeeman + hw * hw);
}

RateEquation::RateEquation(const ModelParams& p, const DriveConditions& d)
    : zeeman_per_tesla_(p.g_e * kBohrMagneton),
      field_(d.field),
      flip_flop_numerator_(p.rate_scale * effective_pump_rate(p, d) * p.hyperfine * p.hyperfine),
      half_width_sq_(0.25 * p.broadening * p.broadening),
      target_(overhauser_target(p, d.helicity)),
      saturation_(p.saturation_field),
      depolarization_(p.depolarization_rate) {
    p.validate();
    d.validate();
}

double RateEquation::zeeman(double overhauser) const noexcept {
    return zeeman_per_tesla_ * (field_ + overhauser);
}

double RateEquation::flip_flop(double overhauser) const noexcept {
    const double e = zeeman(overhauser);
    return flip_flop_numerator_ / (e * e + half_width_sq_);
}

double RateEquation::operator()(double overhauser) const noexcept {
    return flip_flop(overhauser) * (target_ - overhauser) - depolarization_ * overhauser;
}

double RateEquation::resonant_rate() const noexcept {
    return flip_flop_numerator_ / half_width_sq_;
}

double RateEquation::rate_scale() const noexcept {
    return std::max(resonant_rate(), depolarization_);
}

RateBreakdown polarization_rate(const ModelParams& p, const DriveConditions& d,
                                double overhauser) {
    if (!(std::abs(overhauser) <= p.saturation_field))
        throw DomainError("polarization out of range");
    const RateEquation eq(p, d);
    RateBreakdown out;
    out.zeeman = eq.zeeman(overhauser);
    out.tunneling = tunneling_rate(p, d.bias);
    out.cotunneling = cotunneling_rate(p, d.bias);
    out.retention = spin_retention(p.radiative_rate, out.tunneling, out.cotunneling);
    out.pump_rate = effective_pump_rate(p, d);
    out.flip_flop = eq.flip_flop(overhauser);
    out.dBN_dt = eq(overhauser);
    return out;
}

}  // namespace nucswitch
