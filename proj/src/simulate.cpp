#include "outage/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>
#include <fmt/os.h>

#include "outage/errors.hpp"

namespace outage {

std::string_view to_string(TraceEventKind kind)
{
    switch (kind) {
    case TraceEventKind::OutageStart: return "outage_start";
    case TraceEventKind::OutageEnd: return "outage_end";
    case TraceEventKind::Done: return "done";
    }
    return "?";
}

namespace {

// Chip excess temperature over ambient, theta = T_chip - T_env, obeys
// cm dtheta/dt = Q - z theta.
class ChipIntegrator {
public:
    ChipIntegrator(const ConductionPath& path, double t_env) : path_(path), t_env_(t_env) {}

    double step(double theta, double q, double h) const
    {
        const double k1 = slope(theta, q);
        const double k2 = slope(theta + 0.5 * h * k1, q);
        const double k3 = slope(theta + 0.5 * h * k2, q);
        const double k4 = slope(theta + h * k3, q);
        return theta + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

    double surface(double theta) const { return t_env_ + path_.z / path_.hA * theta; }
    double chip(double theta) const { return t_env_ + theta; }

    // First h in (0, span] where the surface reaches `threshold`, given that
    // it does by the end of the span. Returns the upper end of the final
    // bracket so the crossing has always happened at the returned time.
    double crossing(double theta, double q, double span, double threshold, bool rising,
                    double tolerance) const
    {
        const auto past = [&](double h) {
            const double s = surface(step(theta, q, h));
            return rising ? s >= threshold : s <= threshold;
        };
        double lo = 0.0;
        double hi = span;
        while (hi - lo > tolerance) {
            const double mid = lo + 0.5 * (hi - lo);
            if (mid <= lo || mid >= hi) {
                break;
            }
            (past(mid) ? hi : lo) = mid;
        }
        return hi;
    }

private:
    double slope(double theta, double q) const { return (q - path_.z * theta) / path_.cm; }

    ConductionPath path_;
    double t_env_;
};

void check_step(const Scenario& scenario, double dt, const SimulationOptions& options)
{
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ValidationError("dt", "must be a finite value > 0");
    }
    if (!options.switching || options.fixed_heat || !can_overheat(scenario)) {
        return;
    }
    if (transmission_count(scenario, ScheduleMode::Ceiling).n_t == 1) {
        return;
    }
    const PhaseDurations d = phase_durations(scenario);
    const double shortest = std::min({d.first, d.outage, d.restart});
    if (shortest / dt < 10.0) {
        throw NumericError(fmt::format("step too coarse: shortest phase lasts {:.6g} s; use dt <= "
                                       "{:.3g} s",
                                       shortest, shortest / 10.0));
    }
}

} // namespace

SimulationResult simulate(const Scenario& scenario, double dt, const SimulationOptions& options)
{
    check_step(scenario, dt, options);

    const auto& temps = scenario.temps();
    const ConductionPath path = conduction_path(scenario.thermal());
    const HeatBudget heat = heat_budget(scenario);
    const double rate = downlink_rate(scenario.link()).bits_per_second;
    const double payload = scenario.payload_bits();
    const double q_comm = options.fixed_heat.value_or(heat.q_total_comm);
    const double q_idle = heat.q_total_outage;
    const double tol = options.event_tolerance;
    const std::int64_t stride = std::max<std::int64_t>(1, options.sample_stride);

    // Fail fast instead of spinning forever on an empty link.
    ideal_time(payload, DownlinkRate{rate});

    const ChipIntegrator ode(path, temps.t_env);

    SimulationResult result;
    TemperatureTrace& trace = result.trace;
    TransmissionReport& rep = result.report;
    rep.mode = ScheduleMode::Ceiling;
    rep.r_downlink = rate;
    rep.t_ideal = payload / rate;

    double theta = chip_from_surface(temps.t_sur0, path, temps.t_env) - temps.t_env;
    double bits = 0.0;
    bool receiving = true;
    bool done = false;

    double phase_start_time = 0.0;
    double phase_start_sur = temps.t_sur0;
    double phase_start_bits = 0.0;

    const auto heat_now = [&] { return receiving ? q_comm : q_idle; };
    const auto sample = [&](double time) {
        if (options.record_samples) {
            trace.samples.push_back(
                {time, ode.chip(theta), ode.surface(theta), heat_now(), bits});
        }
    };
    const auto close_phase = [&](double time, TraceEventKind ending) {
        PhaseKind kind = PhaseKind::Outage;
        if (receiving) {
            const bool first = rep.phases.empty();
            if (ending == TraceEventKind::Done) {
                kind = first ? PhaseKind::FirstTransmit : PhaseKind::LastTransmit;
            } else {
                kind = first ? PhaseKind::FirstTransmit : PhaseKind::Restart;
            }
        }
        rep.phases.push_back(Phase{kind, time - phase_start_time, phase_start_sur,
                                   ode.surface(theta), heat_now(), bits - phase_start_bits});
        trace.events.push_back({time, ending});
        phase_start_time = time;
        phase_start_sur = ode.surface(theta);
        phase_start_bits = bits;
    };

    sample(0.0);

    for (std::int64_t k = 0; !done; ++k) {
        const double grid_time = static_cast<double>(k) * dt;
        double used = 0.0;
        while (used < dt && !done) {
            const double span = dt - used;
            if (receiving) {
                const double to_finish = (payload - bits) / rate;
                const bool finishes = to_finish <= span;
                const double h = finishes ? to_finish : span;
                const double next = ode.step(theta, q_comm, h);
                const double sur = ode.surface(next);
                const bool crosses = options.switching
                                     && (finishes ? sur > temps.t_safe : sur >= temps.t_safe);
                if (crosses) {
                    const double s = ode.crossing(theta, q_comm, h, temps.t_safe, true, tol);
                    theta = ode.step(theta, q_comm, s);
                    bits += rate * s;
                    used += s;
                    close_phase(grid_time + used, TraceEventKind::OutageStart);
                    receiving = false;
                    ++rep.n_w;
                } else if (finishes) {
                    theta = next;
                    bits = payload;
                    used += h;
                    close_phase(grid_time + used, TraceEventKind::Done);
                    done = true;
                } else {
                    theta = next;
                    bits += rate * h;
                    used = dt;
                }
            } else {
                const double next = ode.step(theta, q_idle, span);
                if (ode.surface(next) <= temps.t_wait) {
                    const double s = ode.crossing(theta, q_idle, span, temps.t_wait, false, tol);
                    theta = ode.step(theta, q_idle, s);
                    used += s;
                    close_phase(grid_time + used, TraceEventKind::OutageEnd);
                    receiving = true;
                } else {
                    theta = next;
                    used = dt;
                }
            }
        }
        const double end_time = done ? grid_time + used : static_cast<double>(k + 1) * dt;
        if (done || (k + 1) % stride == 0) {
            sample(end_time);
        }
        if (done) {
            rep.t_total = end_time;
        }
    }

    rep.n_t = rep.n_w + 1;
    rep.r_average = payload / rep.t_total;
    return result;
}

std::filesystem::path events_path(const std::filesystem::path& path)
{
    auto out = path;
    out.replace_filename(path.stem().string() + ".events.csv");
    return out;
}

void export_trace(const TemperatureTrace& trace, const std::filesystem::path& path)
{
    const auto write = [](const std::filesystem::path& p, auto&& body) {
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError(p.string(), "cannot open for writing");
        }
        body(out);
        out.flush();
        if (!out) {
            throw IoError(p.string(), "write failed");
        }
    };

    write(path, [&](std::ofstream& out) {
        out << "time_s,t_chip_K,t_sur_K,q_total_W,bits_delivered\n";
        fmt::memory_buffer buf;
        for (const auto& s : trace.samples) {
            buf.clear();
            fmt::format_to(std::back_inserter(buf), "{:.9f},{:.9f},{:.9f},{:.9g},{:.17g}\n", s.time,
                           s.t_chip, s.t_sur, s.q_total, s.bits_delivered);
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        }
    });
    write(events_path(path), [&](std::ofstream& out) {
        out << "time_s,event\n";
        for (const auto& e : trace.events) {
            out << fmt::format("{:.9f},{}\n", e.time, to_string(e.kind));
        }
    });
}

} // namespace outage
