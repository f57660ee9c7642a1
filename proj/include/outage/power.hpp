#pragma once

#include "outage/link.hpp"
#include "outage/params.hpp"

namespace outage {

// Chip heat generation in the two operating modes, all in W except e_switch.
struct HeatBudget {
    double q_total_comm;   // while receiving
    double q_total_outage; // radio off; equals p_system
    double p_bb;
    double p_system;
    double q_lna;
    double e_switch; // J per transistor switch
};

// M_R * P_LNA * (1 - eta).
double lna_heat(const RadioLinkParams& link, const PowerModel& power);

// G * k_B * T_env * ln 2.
double switch_energy(const PowerModel& power, double t_env);

// Baseband processing power: rate * logic_activity_product * E_t.
double baseband_power(DownlinkRate rate, const PowerModel& power, double t_env);

// Idle power that holds the back plate at T_sur0 in still air.
// Throws ValidationError if t_sur0 < t_env.
double system_power(const ThermalParams& thermal, const TemperatureSet& temps);

HeatBudget heat_budget(const Scenario& scenario);

} // namespace outage
