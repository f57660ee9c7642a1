#pragma once

#include "outage/params.hpp"
#include "outage/power.hpp"

namespace outage {

// Lumped heat path from the chip to ambient air.
struct ConductionPath {
    double z;  // W/K, sink + plate + convection resistances in series
    double cm; // J/K, chip heat capacity
    double hA; // W/K, convection leg alone

    // Seconds; the e-folding time of every phase.
    double time_constant() const noexcept { return cm / z; }
};

struct ThermalState {
    double t_chip; // K
    double t_sur;  // K
};

ConductionPath conduction_path(const ThermalParams& thermal);

// Back-plate temperature `t` seconds into a phase that started at `t_start`
// under constant heat `q_total`.
double surface_temperature(double t, double q_total, double t_start, const ConductionPath& path,
                           double t_env);

// Limit of surface_temperature as t grows.
double steady_surface_temperature(double q_total, const ConductionPath& path, double t_env);

// Steady-conduction coupling between chip and back plate.
double chip_from_surface(double t_sur, const ConductionPath& path, double t_env);
double surface_from_chip(double t_chip, const ConductionPath& path, double t_env);
ThermalState state_from_surface(double t_sur, const ConductionPath& path, double t_env);

// Time for the back plate to move from t_start to t_target under q_total.
// Throws UnreachableError if the steady state does not lie strictly beyond
// t_target in the direction of travel.
double phase_duration(double t_start, double t_target, double q_total, const ConductionPath& path,
                      double t_env);

// T_sur0 -> T_safe while receiving.
double first_transmit_duration(const HeatBudget& heat, const ConductionPath& path,
                               const TemperatureSet& temps);
// T_safe -> T_wait with the radio off.
double outage_duration(const HeatBudget& heat, const ConductionPath& path,
                       const TemperatureSet& temps);
// T_wait -> T_safe while receiving.
double restart_duration(const HeatBudget& heat, const ConductionPath& path,
                        const TemperatureSet& temps);

} // namespace outage
