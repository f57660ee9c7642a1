#include "outage/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "outage/errors.hpp"

namespace outage {

std::string_view to_string(PhaseKind kind)
{
    switch (kind) {
    case PhaseKind::FirstTransmit: return "first_transmit";
    case PhaseKind::Outage: return "outage";
    case PhaseKind::Restart: return "restart";
    case PhaseKind::LastTransmit: return "last_transmit";
    }
    return "?";
}

std::string_view to_string(ScheduleMode mode)
{
    return mode == ScheduleMode::Ceiling ? "ceiling" : "exact";
}

namespace {

// Residual tolerance for "exactly divisible", in seconds.
double divisibility_tolerance(double t_ideal)
{
    return 1e-9 * std::max(1.0, t_ideal);
}

struct Model {
    HeatBudget heat;
    ConductionPath path;
    double rate;
    double t_ideal;
};

Model model_of(const Scenario& s)
{
    const DownlinkRate rate = downlink_rate(s.link());
    return Model{heat_budget(s), conduction_path(s.thermal()), rate.bits_per_second,
                 ideal_time(s.payload_bits(), rate)};
}

bool overheats(const Model& m, const TemperatureSet& temps)
{
    return m.heat.q_total_comm > m.path.hA * (temps.t_safe - temps.t_env);
}

TransmissionCount count_of(const Model& m, const TemperatureSet& temps, ScheduleMode mode)
{
    if (!overheats(m, temps)) {
        return {1, 0.0};
    }
    const double t1 = first_transmit_duration(m.heat, m.path, temps);
    if (t1 >= m.t_ideal) {
        return {1, 0.0};
    }
    const double t2 = restart_duration(m.heat, m.path, temps);
    const double remaining = m.t_ideal - t1;
    const double quotient = remaining / t2;
    if (!(quotient < static_cast<double>(kMaxOutages))) {
        throw NumericError(fmt::format("{:.6g} outages exceed the supported maximum of {}",
                                       quotient, kMaxOutages));
    }

    if (mode == ScheduleMode::Ceiling) {
        const auto k = static_cast<std::int64_t>(std::ceil(quotient));
        const double t_last = remaining - static_cast<double>(k - 1) * t2;
        return {k + 1, std::clamp(t_last, 0.0, t2)};
    }

    const auto k = static_cast<std::int64_t>(std::llround(quotient));
    const double residual = remaining - static_cast<double>(k) * t2;
    if (k < 1 || std::abs(residual) > divisibility_tolerance(m.t_ideal)) {
        throw NumericError(fmt::format(
            "wait temperature not calibrated for exact divisibility: (t_ideal - t_T1)/t_T2 = "
            "{:.12g}",
            quotient));
    }
    return {k + 1, t2};
}

} // namespace

bool can_overheat(const Scenario& scenario)
{
    return overheats(model_of(scenario), scenario.temps());
}

PhaseDurations phase_durations(const Scenario& scenario)
{
    const Model m = model_of(scenario);
    const auto& temps = scenario.temps();
    return PhaseDurations{first_transmit_duration(m.heat, m.path, temps),
                          outage_duration(m.heat, m.path, temps),
                          restart_duration(m.heat, m.path, temps)};
}

GammaPhi gamma_phi(const Scenario& scenario)
{
    const PhaseDurations d = phase_durations(scenario);
    return GammaPhi{d.outage - d.restart, d.first - d.restart};
}

TransmissionCount transmission_count(const Scenario& scenario, ScheduleMode mode)
{
    return count_of(model_of(scenario), scenario.temps(), mode);
}

TransmissionReport build_schedule(const Scenario& scenario, ScheduleMode mode)
{
    const Model m = model_of(scenario);
    const auto& temps = scenario.temps();
    const double q_comm = m.heat.q_total_comm;
    const double q_idle = m.heat.q_total_outage;

    TransmissionReport rep;
    rep.mode = mode;
    rep.t_ideal = m.t_ideal;
    rep.r_downlink = m.rate;
    rep.never_overheats = !overheats(m, temps);

    const TransmissionCount count = count_of(m, temps, mode);
    rep.n_t = count.n_t;
    rep.n_w = count.n_t - 1;

    if (rep.n_w == 0) {
        const double end = surface_temperature(m.t_ideal, q_comm, temps.t_sur0, m.path, temps.t_env);
        rep.phases.push_back(
            {PhaseKind::FirstTransmit, m.t_ideal, temps.t_sur0, end, q_comm, scenario.payload_bits()});
        if (!rep.never_overheats) {
            const GammaPhi gp = gamma_phi(scenario);
            rep.gamma = gp.gamma;
            rep.phi = gp.phi;
        }
        rep.t_total = m.t_ideal;
        rep.r_average = scenario.payload_bits() / rep.t_total;
        return rep;
    }

    const PhaseDurations d{first_transmit_duration(m.heat, m.path, temps),
                           outage_duration(m.heat, m.path, temps),
                           restart_duration(m.heat, m.path, temps)};
    rep.gamma = d.outage - d.restart;
    rep.phi = d.first - d.restart;

    const auto transmit = [&](PhaseKind kind, double duration, double from) {
        const double to = surface_temperature(duration, q_comm, from, m.path, temps.t_env);
        return Phase{kind, duration, from, to, q_comm, duration * m.rate};
    };
    const Phase outage{PhaseKind::Outage, d.outage, temps.t_safe, temps.t_wait, q_idle, 0.0};

    rep.phases.reserve(static_cast<std::size_t>(2 * rep.n_w + 1));
    rep.phases.push_back(transmit(PhaseKind::FirstTransmit, d.first, temps.t_sur0));
    rep.phases.back().t_end = temps.t_safe;
    for (std::int64_t i = 0; i + 1 < rep.n_w; ++i) {
        rep.phases.push_back(outage);
        rep.phases.push_back(transmit(PhaseKind::Restart, d.restart, temps.t_wait));
        rep.phases.back().t_end = temps.t_safe;
    }
    rep.phases.push_back(outage);
    rep.phases.push_back(transmit(PhaseKind::LastTransmit, count.t_last, temps.t_wait));

    const double n_w = static_cast<double>(rep.n_w);
    rep.t_total = m.t_ideal + n_w * d.outage;

    if (mode == ScheduleMode::ExactWait) {
        const double alt = m.t_ideal + n_w / (n_w + 1.0) * (m.t_ideal - *rep.phi) + *rep.gamma * n_w;
        if (std::abs(alt - rep.t_total) > 1e-9 * rep.t_total) {
            throw NumericError(fmt::format(
                "total-time closed forms disagree: {:.15g} s vs {:.15g} s", rep.t_total, alt));
        }
        rep.t_total_alternate = alt;
    }

    rep.r_average = scenario.payload_bits() / rep.t_total;
    return rep;
}

RelaxedSchedule relaxed_schedule(const Scenario& scenario)
{
    const Model m = model_of(scenario);
    const auto& temps = scenario.temps();
    if (!overheats(m, temps)) {
        return {0.0, m.t_ideal};
    }
    const double t1 = first_transmit_duration(m.heat, m.path, temps);
    if (t1 >= m.t_ideal) {
        return {0.0, m.t_ideal};
    }
    const double n_w = (m.t_ideal - t1) / restart_duration(m.heat, m.path, temps);
    return {n_w, m.t_ideal + n_w * outage_duration(m.heat, m.path, temps)};
}

double select_wait_temperature(const Scenario& scenario, std::int64_t target_n_w)
{
    if (target_n_w < 1) {
        throw ValidationError("target_n_w", "must be >= 1");
    }
    const Model m = model_of(scenario);
    const auto& temps = scenario.temps();
    if (!overheats(m, temps)) {
        throw NumericError("N_W unreachable: the back plate never reaches T_safe");
    }
    const double t1 = first_transmit_duration(m.heat, m.path, temps);
    if (t1 >= m.t_ideal) {
        throw NumericError(fmt::format(
            "N_W unreachable: payload completes within the first transmission ({:.6g} s <= {:.6g} "
            "s)",
            m.t_ideal, t1));
    }

    const double remaining = m.t_ideal - t1;
    const double target = static_cast<double>(target_n_w);
    // At T_wait -> T_sur0 the restart lasts as long as the first phase; the
    // quotient grows without bound as T_wait -> T_safe.
    const double lowest = remaining / t1;
    if (!(target > lowest)) {
        throw NumericError(fmt::format("N_W unreachable: attainable range is ({:.6g}, inf), "
                                       "requested {}",
                                       lowest, target_n_w));
    }

    // Increasing in T_wait: the restart shortens as T_wait approaches T_safe.
    const auto residual = [&](double t_wait) {
        return remaining - target * phase_duration(t_wait, temps.t_safe, m.heat.q_total_comm,
                                                   m.path, temps.t_env);
    };

    double lo = temps.t_sur0; // residual < 0
    double hi = temps.t_safe; // residual = remaining > 0
    while (true) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) {
            break;
        }
        (residual(mid) < 0.0 ? lo : hi) = mid;
    }

    double best = hi;
    if (lo > temps.t_sur0 && std::abs(residual(lo)) < std::abs(residual(hi))) {
        best = lo;
    }
    if (!(best < temps.t_safe)) {
        throw NumericError(fmt::format("N_W unreachable: {} outages need T_wait at T_safe",
                                       target_n_w));
    }
    const double err = std::abs(residual(best));
    if (err > divisibility_tolerance(m.t_ideal)) {
        throw NumericError(fmt::format(
            "N_W unreachable in double precision: best residual {:.3g} s for {} outages", err,
            target_n_w));
    }
    return best;
}

Calibration calibrate_chip_power(const ThermalParams& thermal, const TemperatureSet& temps,
                                 const RadioLinkParams& link, const PowerModel& power,
                                 double threshold_bits)
{
    if (!(threshold_bits > 0.0) || !std::isfinite(threshold_bits)) {
        throw ValidationError("threshold_bits", "must be a finite value > 0");
    }
    const double rate = downlink_rate(link).bits_per_second;
    if (!(rate > 0.0)) {
        throw NumericError("link cannot carry payload: downlink rate is zero");
    }

    const ConductionPath path = conduction_path(thermal);
    const double t1 = threshold_bits / rate;
    const double start = path.hA * (temps.t_sur0 - temps.t_env);
    const double limit = path.hA * (temps.t_safe - temps.t_env);
    // Q = (r*limit - start)/(r - 1) with r = exp(z t1 / cm).
    const double q_comm = limit + (limit - start) / std::expm1(path.z * t1 / path.cm);
    if (!(q_comm > limit)) {
        throw NumericError("threshold implies no overheating");
    }

    const double p_system = system_power(thermal, temps);
    const double q_lna = lna_heat(link, power);
    const double e_switch = switch_energy(power, temps.t_env);
    const double product = (q_comm - p_system - power.lna_heat_fraction * q_lna) / (rate * e_switch);
    if (!(product > 0.0)) {
        throw NumericError(fmt::format(
            "power model cannot explain threshold: backed-out logic activity product {:.6g}",
            product));
    }
    return Calibration{q_comm, product, t1, rate};
}

} // namespace outage
