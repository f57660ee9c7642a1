#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "outage/errors.hpp"
#include "outage/thermal.hpp"

using namespace outage;

namespace {

oracle::Plant plant_of(const ConductionPath& p, double t_env) { return {p.z, p.cm, p.hA, t_env}; }

} // namespace

TEST_CASE("conduction path of the reference stack")
{
    const ConductionPath p = conduction_path(defaults::thermal());
    CHECK(p.z == doctest::Approx(2.6291232e-3).epsilon(1e-7));
    CHECK(p.hA == doctest::Approx(2.63e-3).epsilon(1e-12));
    CHECK(p.cm == doctest::Approx(2.06).epsilon(1e-12));
    CHECK(p.time_constant() == doctest::Approx(783.53).epsilon(1e-4));
    CHECK(p.z < p.hA);
}

TEST_CASE("surface temperature examples")
{
    const ConductionPath p = conduction_path(defaults::thermal());
    const double env = defaults::kTEnv;
    CHECK(surface_temperature(0.0, 4.2, 303.15, p, env) == doctest::Approx(303.15).epsilon(1e-15));
    // Idle heat at T_sur0 is an equilibrium.
    const double q_idle = p.hA * (303.15 - env);
    CHECK(surface_temperature(1000.0, q_idle, 303.15, p, env) == doctest::Approx(303.15).epsilon(1e-12));
    CHECK(steady_surface_temperature(0.0, p, env) == env);
    CHECK(steady_surface_temperature(4.2, p, env) == doctest::Approx(env + 4.2 / p.hA).epsilon(1e-12));
}

TEST_CASE("chip and surface coupling")
{
    const ConductionPath p = conduction_path(defaults::thermal());
    const double env = defaults::kTEnv;
    CHECK(chip_from_surface(env + 20.0, p, env) - env == doctest::Approx(20.0066696).epsilon(1e-8));
    for (double s = env; s < env + 40.0; s += 1.7) {
        CHECK(surface_from_chip(chip_from_surface(s, p, env), p, env) == doctest::Approx(s).epsilon(1e-14));
        const ThermalState st = state_from_surface(s, p, env);
        CHECK(st.t_chip >= st.t_sur);
    }
}

TEST_CASE("phase duration matches an independent integrator")
{
    const ConductionPath p = conduction_path(defaults::thermal());
    const double env = defaults::kTEnv;
    const oracle::Plant plant = plant_of(p, env);
    const double q = 4.210622879;
    const double t1 = phase_duration(303.15, 318.15, q, p, env);
    CHECK(t1 == doctest::Approx(7.398851033).epsilon(1e-8));
    CHECK(t1 == doctest::Approx(oracle::crossing_time(plant, q, 303.15, 318.15)).epsilon(1e-6));

    const double tw = phase_duration(318.15, 317.15, 0.01315, p, env);
    CHECK(tw == doctest::Approx(54.058065087).epsilon(1e-8));
    CHECK(tw == doctest::Approx(oracle::crossing_time(plant, 0.01315, 318.15, 317.15)).epsilon(1e-6));

    CHECK(phase_duration(317.15, 318.15, q, p, env) == doctest::Approx(0.495436316).epsilon(1e-8));
    CHECK(phase_duration(310.0, 310.0, q, p, env) == 0.0);
}

TEST_CASE("unreachable targets report the steady state")
{
    const ConductionPath p = conduction_path(defaults::thermal());
    const double env = defaults::kTEnv;
    try {
        phase_duration(303.15, 318.15, 0.02, p, env);
        FAIL("expected unreachable");
    } catch (const UnreachableError& e) {
        CHECK(e.steady_state() == doctest::Approx(steady_surface_temperature(0.02, p, env)));
    }
    // Exactly at the steady state is also unreachable in finite time.
    const double q_edge = p.hA * (318.15 - env);
    CHECK_THROWS_AS(phase_duration(303.15, 318.15, q_edge, p, env), UnreachableError);
    // Cooling below ambient cannot happen.
    CHECK_THROWS_AS(phase_duration(318.15, env - 1.0, 0.0, p, env), UnreachableError);
}

TEST_CASE("phase duration inverts surface temperature")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double env = defaults::kTEnv;
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        ThermalParams th = defaults::thermal();
        th.chip_mass *= 0.2 + 5 * u(rng);
        th.sink_area *= 0.5 + 2 * u(rng);
        th.air_convection_coeff *= 0.5 + 2 * u(rng);
        const ConductionPath p = conduction_path(th);
        const double start = env + 40 * u(rng);
        const double target = env + 40 * u(rng);
        const double q = p.hA * 60 * u(rng);
        double d = 0.0;
        try {
            d = phase_duration(start, target, q, p, env);
        } catch (const UnreachableError&) {
            continue;
        }
        CHECK(d >= 0.0);
        CHECK(std::abs(surface_temperature(d, q, start, p, env) - target) <= 1e-9);
        ++checked;
    }
    CHECK(checked > 500);
}

TEST_CASE("surface temperature is monotone toward the steady state")
{
    const ConductionPath p = conduction_path(defaults::thermal());
    const double env = defaults::kTEnv;
    for (double q : {0.0, 0.01315, 1.0, 4.2}) {
        for (double start : {env, 303.15, 318.15, 340.0}) {
            const double ss = steady_surface_temperature(q, p, env);
            double prev = start;
            for (double t = 1.0; t < 5000.0; t *= 1.5) {
                const double now = surface_temperature(t, q, start, p, env);
                if (ss > start) {
                    CHECK(now >= prev);
                    CHECK(now <= ss);
                } else {
                    CHECK(now <= prev);
                    CHECK(now >= ss);
                }
                prev = now;
            }
        }
    }
}

TEST_CASE("mode-specific wrappers use the right heat and endpoints")
{
    const Scenario s = reference_scenario();
    const HeatBudget b = heat_budget(s);
    const ConductionPath p = conduction_path(s.thermal());
    const TemperatureSet& t = s.temps();
    CHECK(first_transmit_duration(b, p, t) == phase_duration(t.t_sur0, t.t_safe, b.q_total_comm, p, t.t_env));
    CHECK(outage_duration(b, p, t) == phase_duration(t.t_safe, t.t_wait, b.q_total_outage, p, t.t_env));
    CHECK(restart_duration(b, p, t) == phase_duration(t.t_wait, t.t_safe, b.q_total_comm, p, t.t_env));
}
