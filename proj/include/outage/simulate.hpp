#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "outage/params.hpp"
#include "outage/schedule.hpp"

namespace outage {

struct TraceSample {
    double time;           // s
    double t_chip;         // K
    double t_sur;          // K
    double q_total;        // W
    double bits_delivered; // bits
};

enum class TraceEventKind { OutageStart, OutageEnd, Done };

std::string_view to_string(TraceEventKind kind);

struct TraceEvent {
    double time;
    TraceEventKind kind;
};

// Samples sit on the grid k*dt (every `sample_stride`-th point) plus one
// final sample at completion. Events carry exact refined times.
struct TemperatureTrace {
    std::vector<TraceSample> samples;
    std::vector<TraceEvent> events;
};

struct SimulationOptions {
    bool record_samples = true;
    std::int64_t sample_stride = 1;
    // Width of the bisection bracket that locates a threshold crossing.
    double event_tolerance = 1e-6;
    // When false the heat never switches and the run ends once the payload
    // is delivered.
    bool switching = true;
    // Overrides the communication-mode heat.
    std::optional<double> fixed_heat;
};

struct SimulationResult {
    TemperatureTrace trace;
    // Counts, durations and temperatures are measured from the run; gamma
    // and phi are left empty.
    TransmissionReport report;
};

// Integrates c*m dT_chip/dt = Q - z (T_chip - T_env) with classical RK4 on a
// fixed grid, switching heat at T_safe/T_wait crossings and accruing bits at
// the downlink rate while receiving.
//
// Throws ValidationError for dt <= 0 and NumericError when dt is too coarse
// for the shortest closed-form phase (fewer than 10 steps per phase).
SimulationResult simulate(const Scenario& scenario, double dt, const SimulationOptions& options = {});

// Writes `path` with header time_s,t_chip_K,t_sur_K,q_total_W,bits_delivered
// and the events next to it (see events_path). Throws IoError.
void export_trace(const TemperatureTrace& trace, const std::filesystem::path& path);

// `<stem>.events.csv` beside `path`, header time_s,event.
std::filesystem::path events_path(const std::filesystem::path& path);

} // namespace outage
