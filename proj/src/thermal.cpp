#include "outage/thermal.hpp"

#include <cmath>

#include <fmt/format.h>

#include "outage/errors.hpp"

namespace outage {

ConductionPath conduction_path(const ThermalParams& p)
{
    const double area = p.sink_area;
    const double hA = p.air_convection_coeff * area;
    const double resistance = p.sink_length / (p.sink_conductivity * area)
                              + p.plate_thickness / (p.plate_conductivity * area) + 1.0 / hA;
    return ConductionPath{1.0 / resistance, p.chip_specific_heat * p.chip_mass, hA};
}

double surface_temperature(double t, double q_total, double t_start, const ConductionPath& path,
                           double t_env)
{
    const double x = -path.z * t / path.cm;
    const double decay = std::exp(x);
    const double rise = -std::expm1(x); // 1 - decay without cancellation
    return q_total / path.hA * rise + (t_start - t_env) * decay + t_env;
}

double steady_surface_temperature(double q_total, const ConductionPath& path, double t_env)
{
    return q_total / path.hA + t_env;
}

double chip_from_surface(double t_sur, const ConductionPath& path, double t_env)
{
    return path.hA / path.z * (t_sur - t_env) + t_env;
}

double surface_from_chip(double t_chip, const ConductionPath& path, double t_env)
{
    return path.z / path.hA * (t_chip - t_env) + t_env;
}

ThermalState state_from_surface(double t_sur, const ConductionPath& path, double t_env)
{
    return ThermalState{chip_from_surface(t_sur, path, t_env), t_sur};
}

double phase_duration(double t_start, double t_target, double q_total, const ConductionPath& path,
                      double t_env)
{
    if (t_start == t_target) {
        return 0.0;
    }
    // (cm/z) ln[(Q - hA(Ts - Te)) / (Q - hA(Tt - Te))], written as log1p of the
    // gap so short phases keep full precision.
    const double remaining = q_total - path.hA * (t_target - t_env);
    const bool heating = t_target > t_start;
    if (heating ? !(remaining > 0.0) : !(remaining < 0.0)) {
        const double steady = steady_surface_temperature(q_total, path, t_env);
        throw UnreachableError(
            fmt::format("target temperature unreachable: {:.6g} K from {:.6g} K with steady state "
                        "{:.6g} K",
                        t_target, t_start, steady),
            steady);
    }
    return path.time_constant() * std::log1p(path.hA * (t_target - t_start) / remaining);
}

double first_transmit_duration(const HeatBudget& heat, const ConductionPath& path,
                               const TemperatureSet& temps)
{
    return phase_duration(temps.t_sur0, temps.t_safe, heat.q_total_comm, path, temps.t_env);
}

double outage_duration(const HeatBudget& heat, const ConductionPath& path,
                       const TemperatureSet& temps)
{
    return phase_duration(temps.t_safe, temps.t_wait, heat.q_total_outage, path, temps.t_env);
}

double restart_duration(const HeatBudget& heat, const ConductionPath& path,
                        const TemperatureSet& temps)
{
    return phase_duration(temps.t_wait, temps.t_safe, heat.q_total_comm, path, temps.t_env);
}

} // namespace outage
