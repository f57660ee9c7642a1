#include "outage/power.hpp"

#include <numbers>

#include "outage/errors.hpp"

namespace outage {

double lna_heat(const RadioLinkParams& link, const PowerModel& power)
{
    return link.ue_antennas * power.lna_power * (1.0 - power.lna_efficiency);
}

double switch_energy(const PowerModel& power, double t_env)
{
    return power.landauer_gap * power.boltzmann * t_env * std::numbers::ln2;
}

double baseband_power(DownlinkRate rate, const PowerModel& power, double t_env)
{
    return rate.bits_per_second * power.logic_activity_product * switch_energy(power, t_env);
}

double system_power(const ThermalParams& thermal, const TemperatureSet& temps)
{
    if (temps.t_sur0 < temps.t_env) {
        throw ValidationError("t_sur0", "initial surface temperature below ambient breaks the "
                                        "equilibrium assumption");
    }
    return thermal.air_convection_coeff * thermal.sink_area * (temps.t_sur0 - temps.t_env);
}

HeatBudget heat_budget(const Scenario& scenario)
{
    const auto& power = scenario.power();
    const double t_env = scenario.temps().t_env;

    HeatBudget b{};
    b.e_switch = switch_energy(power, t_env);
    b.p_bb = baseband_power(downlink_rate(scenario.link()), power, t_env);
    b.p_system = system_power(scenario.thermal(), scenario.temps());
    b.q_lna = lna_heat(scenario.link(), power);
    b.q_total_comm = b.p_bb + b.p_system + power.lna_heat_fraction * b.q_lna;
    b.q_total_outage = b.p_system;
    return b;
}

} // namespace outage
