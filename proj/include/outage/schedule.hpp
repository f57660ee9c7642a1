#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "outage/link.hpp"
#include "outage/params.hpp"
#include "outage/power.hpp"
#include "outage/thermal.hpp"

namespace outage {

enum class PhaseKind { FirstTransmit, Outage, Restart, LastTransmit };

// Ceiling: the last transmission is whatever remains (0 < t_T3 <= t_T2).
// ExactWait: T_wait has been tuned so the restarted phases divide the
// remaining time exactly and the last transmission is a full restart.
enum class ScheduleMode { Ceiling, ExactWait };

std::string_view to_string(PhaseKind kind);
std::string_view to_string(ScheduleMode mode);

struct Phase {
    PhaseKind kind;
    double duration;       // s
    double t_start;        // K, back plate
    double t_end;          // K, back plate
    double q_total;        // W
    double bits_delivered; // 0 during an outage

    bool transmitting() const noexcept { return kind != PhaseKind::Outage; }
};

struct TransmissionReport {
    std::vector<Phase> phases;
    std::int64_t n_t = 1;
    std::int64_t n_w = 0;
    double t_ideal = 0.0;
    double t_total = 0.0;
    double r_average = 0.0;
    double r_downlink = 0.0;
    std::optional<double> gamma; // t_W - t_T2
    std::optional<double> phi;   // t_T1 - t_T2
    ScheduleMode mode = ScheduleMode::Ceiling;
    // Steady state under communication heat stays below T_safe.
    bool never_overheats = false;
    // Second closed form for the total time; ExactWait only.
    std::optional<double> t_total_alternate;
};

// The three phase lengths of a scenario that can overheat.
struct PhaseDurations {
    double first;   // t_T1
    double outage;  // t_W
    double restart; // t_T2
};

struct GammaPhi {
    double gamma;
    double phi;
};

struct TransmissionCount {
    std::int64_t n_t;
    double t_last; // t_T3, 0 for a single transmission
};

struct Calibration {
    double q_total_comm;
    double logic_activity_product;
    double first_transmit_time; // threshold / R
    double rate;                // bits/s
};

// Outage count with the integer constraint relaxed: the smooth
// analytical curve N_W = (t_ideal - t_T1)/t_T2, t_total = t_ideal + N_W t_W.
struct RelaxedSchedule {
    double n_w;
    double t_total;
};

// Upper bound on enumerated phases; beyond it build_schedule refuses.
inline constexpr std::int64_t kMaxOutages = 10'000'000;

// True when the steady state under communication heat reaches T_safe.
bool can_overheat(const Scenario& scenario);

// Throws UnreachableError when the scenario never overheats.
PhaseDurations phase_durations(const Scenario& scenario);

GammaPhi gamma_phi(const Scenario& scenario);

TransmissionCount transmission_count(const Scenario& scenario, ScheduleMode mode);

TransmissionReport build_schedule(const Scenario& scenario,
                                  ScheduleMode mode = ScheduleMode::Ceiling);

RelaxedSchedule relaxed_schedule(const Scenario& scenario);

// Bisects T_wait in (T_sur0, T_safe) so that the restarted phases divide
// the remaining time into exactly `target_n_w` pieces.
double select_wait_temperature(const Scenario& scenario, std::int64_t target_n_w);

// Inverts the first-transmission duration so that a payload of
// `threshold_bits` finishes exactly as the back plate reaches T_safe, then
// backs out the logic activity product that yields that heat.
Calibration calibrate_chip_power(const ThermalParams& thermal, const TemperatureSet& temps,
                                 const RadioLinkParams& link, const PowerModel& power,
                                 double threshold_bits);

} // namespace outage
