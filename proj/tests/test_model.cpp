#include <doctest.h>

#include <cmath>
#include <cstring>

#include "nucswitch/errors.hpp"
#include "nucswitch/model.hpp"
#include "oracle.hpp"
#include "random_params.hpp"

using namespace nucswitch;
using doctest::Approx;

TEST_CASE("electron_zeeman") {
    ModelParams p;
    p.g_e = 0.6;
    CHECK(electron_zeeman(p, 2.0, -2.0) == 0.0);
    CHECK(electron_zeeman(p, 0.0, 0.0) == 0.0);
    CHECK(electron_zeeman(p, 2.0, 0.0) == Approx(69.4596).epsilon(1e-9));
}

TEST_CASE("overhauser_target follows helicity") {
    ModelParams p;
    p.saturation_field = 2.5;
    CHECK(overhauser_target(p, Helicity::sigma_minus) == -2.5);
    CHECK(overhauser_target(p, Helicity::sigma_plus) == 2.5);
    p.saturation_field = 0.0;
    CHECK(overhauser_target(p, Helicity::sigma_minus) == 0.0);
    CHECK(overhauser_target(p, Helicity::sigma_plus) == 0.0);
}

TEST_CASE("ground_state_detuning") {
    DeviceGeometry g;
    g.barrier_nm = 25.0;
    g.intrinsic_nm = 230.0;
    g.charging_bias = 0.0;
    CHECK(ground_state_detuning(g, -0.3) == Approx(32.61).epsilon(0.01 / 32.61));
    CHECK(ground_state_detuning(g, 0.0) == 0.0);
    CHECK(ground_state_detuning(g, 0.15) == 0.0);
    CHECK(ground_state_detuning(g, -0.46) == Approx(50.0).epsilon(1e-12));

    SUBCASE("continuous and piecewise linear") {
        g.charging_bias = -0.05;
        CHECK(ground_state_detuning(g, -0.05) == 0.0);
        CHECK(ground_state_detuning(g, -0.05 - 1e-12) == Approx(0.0).epsilon(1e-9));
        const double slope = 1000.0 * 25.0 / 230.0;
        for (double v = -0.6; v < -0.06; v += 0.05) {
            const double d1 = ground_state_detuning(g, v);
            const double d2 = ground_state_detuning(g, v - 0.01);
            CHECK((d2 - d1) / 0.01 == Approx(slope).epsilon(1e-9));
        }
    }
}

TEST_CASE("tunneling_rate") {
    ModelParams p;
    p.tunnel_rate0 = 1e9;
    p.tunnel_onset = -0.4;
    p.tunnel_slope = 0.05;
    CHECK(tunneling_rate(p, -0.4) == Approx(5e8).epsilon(1e-12));
    CHECK(tunneling_rate(p, 0.2) == Approx(1e9 / (1.0 + std::exp(12.0))).epsilon(1e-12));
    CHECK(tunneling_rate(p, 0.2) == Approx(6.1e3).epsilon(0.01));
    p.tunnel_rate0 = 0.0;
    CHECK(tunneling_rate(p, -0.5) == 0.0);
    CHECK(tunneling_rate(p, 0.3) == 0.0);
}

TEST_CASE("tunneling_rate is non-increasing in bias") {
    const ModelParams p;
    double prev = tunneling_rate(p, -1.0);
    for (double v = -1.0; v <= 0.5; v += 0.001) {
        const double r = tunneling_rate(p, v);
        CHECK(r <= prev);
        CHECK(r >= 0.0);
        prev = r;
    }
}

TEST_CASE("cotunneling_rate lineshape") {
    ModelParams p;
    const auto& g = p.geometry;
    const double resonance = g.charging_bias - g.phonon_meV * g.intrinsic_nm / (1000.0 * g.barrier_nm);
    CHECK(cotunneling_rate(p, resonance) == Approx(p.cotunnel_rate0).epsilon(1e-12));

    const double half_width_bias = 0.5 * p.cotunnel_width * g.intrinsic_nm / (1000.0 * g.barrier_nm);
    CHECK(cotunneling_rate(p, resonance - half_width_bias) ==
          Approx(0.5 * p.cotunnel_rate0).epsilon(1e-9));
    CHECK(cotunneling_rate(p, resonance + half_width_bias) ==
          Approx(0.5 * p.cotunnel_rate0).epsilon(1e-9));

    p.cotunnel_rate0 = 0.0;
    CHECK(cotunneling_rate(p, resonance) == 0.0);
}

TEST_CASE("cotunneling_rate has a unique maximum at the phonon resonance") {
    const ModelParams p;
    const auto& g = p.geometry;
    const double resonance = -g.phonon_meV * g.intrinsic_nm / (1000.0 * g.barrier_nm);
    for (double v = -1.0; v <= 0.3; v += 0.0005) {
        if (std::abs(v - resonance) < 1e-6) continue;
        CHECK(cotunneling_rate(p, v) < p.cotunnel_rate0);
        // increasing towards the resonance from either side
        const double toward = v < resonance ? v + 1e-4 : v - 1e-4;
        if (std::abs(toward - resonance) > 1e-4 && v < g.charging_bias)
            CHECK(cotunneling_rate(p, toward) > cotunneling_rate(p, v));
    }
}

TEST_CASE("spin_retention") {
    CHECK(spin_retention(1e9, 2e8, 0.0) == 1.0);
    CHECK(spin_retention(1e9, 2e8, 1.2e9) == 0.5);
    CHECK(spin_retention(1e9, 0.0, 3e9) == 0.25);
    CHECK_THROWS_WITH_AS(spin_retention(0.0, 0.0, 1e9), "no escape channel", DomainError);
}

TEST_CASE("effective_pump_rate") {
    ModelParams p;
    DriveConditions d;
    d.power = 0.0;
    CHECK(effective_pump_rate(p, d) == 0.0);

    p.tunnel_rate0 = 0.0;
    p.cotunnel_rate0 = 0.0;
    d.power = 0.3;
    CHECK(effective_pump_rate(p, d) == Approx(0.3 * p.pump_coeff).epsilon(1e-15));

    SUBCASE("saturated tunneling enhancement") {
        p.tunnel_rate0 = 1e30;
        d.bias = -2.0;
        CHECK(effective_pump_rate(p, d) ==
              Approx(p.pump_coeff * 0.3 * (1.0 + p.tunnel_gain)).epsilon(1e-12));
    }

    SUBCASE("escape channels must exist") {
        p.radiative_rate = 0.0;
        CHECK_THROWS_AS(effective_pump_rate(p, d), DomainError);
    }
}

TEST_CASE("flip_flop_rate") {
    const ModelParams p;
    const double w = 3e8;
    const double peak = p.rate_scale * w * 4.0 * p.hyperfine * p.hyperfine /
                        (p.broadening * p.broadening);
    CHECK(flip_flop_rate(p, w, 0.0) == Approx(peak).epsilon(1e-14));
    CHECK(flip_flop_rate(p, w, 0.5 * p.broadening) == Approx(0.5 * peak).epsilon(1e-14));
    CHECK(flip_flop_rate(p, 0.0, 12.0) == 0.0);
}

TEST_CASE("flip_flop_rate is even and decreasing in |zeeman|") {
    testing::ParamGenerator gen(11);
    for (int trial = 0; trial < 200; ++trial) {
        const ModelParams p = gen.params();
        const double w = gen.log_uniform(1e6, 1e11);
        const double x = gen.uniform(0.0, 300.0);
        const double y = x + gen.log_uniform(1e-6, 50.0);
        CHECK(flip_flop_rate(p, w, x) == flip_flop_rate(p, w, -x));
        CHECK(flip_flop_rate(p, w, y) < flip_flop_rate(p, w, x));
        CHECK(flip_flop_rate(p, w, x) >= 0.0);
    }
}

TEST_CASE("polarization_rate") {
    ModelParams p;
    DriveConditions d;
    d.power = 0.0;

    SUBCASE("dark unpolarized dot is stationary") {
        CHECK(polarization_rate(p, d, 0.0).dBN_dt == 0.0);
    }
    SUBCASE("dark dot decays exponentially") {
        for (double b : {-2.0, -0.3, 0.7, 3.1})
            CHECK(polarization_rate(p, d, b).dBN_dt ==
                  Approx(-p.depolarization_rate * b).epsilon(1e-15));
    }
    SUBCASE("out of range") {
        CHECK_THROWS_WITH_AS(polarization_rate(p, d, 3.3), "polarization out of range", DomainError);
        CHECK_THROWS_AS(polarization_rate(p, d, -3.2000001), DomainError);
        CHECK_NOTHROW(polarization_rate(p, d, -3.2));
    }
    SUBCASE("vanishes at oracle roots") {
        d = DriveConditions{2.0, 0.28, -0.45, Helicity::sigma_minus};
        const auto roots = testing::brute_force_roots(p, d);
        REQUIRE(roots.size() == 3);
        for (const auto& r : roots) {
            const auto rb = polarization_rate(p, d, r.overhauser);
            const double term_scale = rb.flip_flop * std::abs(overhauser_target(p, d.helicity) -
                                                              r.overhauser);
            // Linear interpolation in a 6.4 uT cell leaves a residual of order slope * cell^2.
            CHECK(std::abs(rb.dBN_dt) < 1e-6 * term_scale);
        }
    }
    SUBCASE("breakdown is consistent") {
        d = DriveConditions{2.1, 0.4, -0.3, Helicity::sigma_minus};
        const auto rb = polarization_rate(p, d, -1.0);
        CHECK(rb.zeeman == electron_zeeman(p, 2.1, -1.0));
        CHECK(rb.tunneling == tunneling_rate(p, -0.3));
        CHECK(rb.cotunneling == cotunneling_rate(p, -0.3));
        CHECK(rb.pump_rate == effective_pump_rate(p, d));
        CHECK(rb.flip_flop == Approx(flip_flop_rate(p, rb.pump_rate, rb.zeeman)).epsilon(1e-14));
        CHECK(rb.dBN_dt == Approx(rb.flip_flop * (-p.saturation_field + 1.0) -
                                  p.depolarization_rate * -1.0).epsilon(1e-14));
    }
    SUBCASE("deterministic") {
        d = DriveConditions{2.0, 0.3, -0.45, Helicity::sigma_minus};
        const auto a = polarization_rate(p, d, -0.812345);
        const auto b = polarization_rate(p, d, -0.812345);
        CHECK(std::memcmp(&a, &b, sizeof a) == 0);
        CHECK(RateEquation(p, d)(-0.812345) == a.dBN_dt);
    }
}

TEST_CASE("rates stay in range and the boundary pulls inward") {
    testing::ParamGenerator gen(23);
    for (int trial = 0; trial < 300; ++trial) {
        const ModelParams p = gen.params();
        const DriveConditions d = gen.drive();
        const double b = gen.uniform(-p.saturation_field, p.saturation_field);
        const auto rb = polarization_rate(p, d, b);
        CHECK(rb.flip_flop >= 0.0);
        CHECK(rb.tunneling >= 0.0);
        CHECK(rb.cotunneling >= 0.0);
        CHECK(rb.retention >= 0.0);
        CHECK(rb.retention <= 1.0);
        CHECK(polarization_rate(p, d, -p.saturation_field).dBN_dt >= 0.0);
        CHECK(polarization_rate(p, d, p.saturation_field).dBN_dt <= 0.0);
    }
}

TEST_CASE("sigma+ pumping gives a strictly decreasing rate on [0, B_sat]") {
    testing::ParamGenerator gen(5);
    for (int trial = 0; trial < 100; ++trial) {
        const ModelParams p = gen.params();
        const DriveConditions d = gen.drive(Helicity::sigma_plus);
        const RateEquation f(p, d);
        double prev = f(0.0);
        for (int i = 1; i <= 2000; ++i) {
            const double v = f(p.saturation_field * i / 2000.0);
            CHECK(v < prev);
            prev = v;
        }
    }
}

TEST_CASE("parameter validation") {
    ModelParams p;
    CHECK_NOTHROW(p.validate());
    p.broadening = -1.0;
    CHECK_THROWS_WITH_AS(p.validate(), "violates invariant gamma > 0", InvariantError);
    p = ModelParams{};
    p.geometry.barrier_nm = 300.0;
    CHECK_THROWS_WITH_AS(p.validate(), "violates invariant d_bar < d_tot", InvariantError);
    p = ModelParams{};
    p.tunnel_gain = 0.0;
    p.tunnel_rate0 = 0.0;
    p.cotunnel_rate0 = 0.0;
    p.pump_coeff = 0.0;
    CHECK_NOTHROW(p.validate());

    DriveConditions d;
    d.power = -0.1;
    CHECK_THROWS_WITH_AS(d.validate(), "violates invariant P >= 0", InvariantError);
    d = DriveConditions{};
    d.field = -1.0;
    CHECK_THROWS_AS(d.validate(), InvariantError);
    d = DriveConditions{};
    d.helicity = static_cast<Helicity>(0);
    CHECK_THROWS_AS(d.validate(), InvariantError);
}
