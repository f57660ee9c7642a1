#include "outage/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "outage/errors.hpp"
#include "outage/schedule.hpp"
#include "outage/simulate.hpp"
#include "outage/sweep.hpp"

namespace outage::cli {

namespace {

struct Streams {
    std::ostream& out;
    std::ostream& err;
};

Scenario scenario_from(const std::string& config)
{
    return config.empty() ? reference_scenario() : load_scenario(config);
}

ScheduleMode schedule_mode(const std::string& name)
{
    if (name == "ceiling") return ScheduleMode::Ceiling;
    if (name == "exact") return ScheduleMode::ExactWait;
    throw ValidationError("mode", fmt::format("'{}' is not one of ceiling|exact", name));
}

std::ofstream open_output(const std::string& path)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError(path, "cannot open for writing");
    }
    return f;
}

void finish_output(std::ofstream& f, const std::string& path)
{
    f.flush();
    if (!f) {
        throw IoError(path, "write failed");
    }
}

// --- schedule --------------------------------------------------------------

struct ScheduleArgs {
    std::string config;
    std::string mode = "ceiling";
    std::string out;
};

void print_report(const TransmissionReport& rep, std::ostream& o)
{
    fmt::print(o, "mode: {}\n", to_string(rep.mode));
    fmt::print(o, "downlink_rate_bps: {:.6e}\n", rep.r_downlink);
    fmt::print(o, "N_T: {}\n", rep.n_t);
    fmt::print(o, "N_W: {}\n", rep.n_w);
    fmt::print(o, "t_ideal_s: {:.6f}\n", rep.t_ideal);
    fmt::print(o, "t_total_s: {:.6f}\n", rep.t_total);
    if (rep.t_total_alternate) {
        fmt::print(o, "t_total_alternate_s: {:.6f}\n", *rep.t_total_alternate);
    }
    fmt::print(o, "r_average_bps: {:.6e}\n", rep.r_average);
    fmt::print(o, "gamma_s: {}\n", rep.gamma ? fmt::format("{:.6f}", *rep.gamma) : "NA");
    fmt::print(o, "phi_s: {}\n", rep.phi ? fmt::format("{:.6f}", *rep.phi) : "NA");
    if (rep.n_w == 0) {
        fmt::print(o, "single transmission, no outage{}\n",
                   rep.never_overheats ? " (back plate never reaches T_safe)" : "");
    }
    fmt::print(o, "phases:\n");
    fmt::print(o, "{:>6}  {:<14} {:>14} {:>10} {:>10} {:>10} {:>16}\n", "index", "kind",
               "duration_s", "t_start_C", "t_end_C", "q_total_W", "bits");
    for (std::size_t i = 0; i < rep.phases.size(); ++i) {
        const Phase& p = rep.phases[i];
        fmt::print(o, "{:>6}  {:<14} {:>14.6f} {:>10.4f} {:>10.4f} {:>10.6f} {:>16.6e}\n", i,
                   to_string(p.kind), p.duration, kelvin_to_celsius(p.t_start),
                   kelvin_to_celsius(p.t_end), p.q_total, p.bits_delivered);
    }
}

void write_phases_csv(const TransmissionReport& rep, const std::string& path)
{
    auto f = open_output(path);
    f << "index,kind,duration_s,t_start_C,t_end_C,q_total_W,bits_delivered\n";
    for (std::size_t i = 0; i < rep.phases.size(); ++i) {
        const Phase& p = rep.phases[i];
        f << fmt::format("{},{},{},{},{},{},{}\n", i, to_string(p.kind), p.duration,
                         kelvin_to_celsius(p.t_start), kelvin_to_celsius(p.t_end), p.q_total,
                         p.bits_delivered);
    }
    finish_output(f, path);
}

void cmd_schedule(const ScheduleArgs& a, Streams io)
{
    const Scenario s = scenario_from(a.config);
    const TransmissionReport rep = build_schedule(s, schedule_mode(a.mode));
    print_report(rep, io.out);
    if (!a.out.empty()) {
        write_phases_csv(rep, a.out);
    }
}

// --- simulate --------------------------------------------------------------

struct SimulateArgs {
    std::string config;
    double dt = 1e-3;
    std::string out;
    std::int64_t stride = 1;
    double event_tolerance = 1e-6;
};

void cmd_simulate(const SimulateArgs& a, Streams io)
{
    const Scenario s = scenario_from(a.config);
    SimulationOptions opts;
    opts.record_samples = !a.out.empty();
    opts.sample_stride = a.stride;
    opts.event_tolerance = a.event_tolerance;
    const SimulationResult sim = simulate(s, a.dt, opts);
    const TransmissionReport closed = build_schedule(s, ScheduleMode::Ceiling);

    const double rel = (sim.report.t_total - closed.t_total) / closed.t_total;
    fmt::print(io.out, "dt_s: {}\n", a.dt);
    fmt::print(io.out, "closed_form_t_total_s: {:.9f}\n", closed.t_total);
    fmt::print(io.out, "measured_t_total_s: {:.9f}\n", sim.report.t_total);
    fmt::print(io.out, "t_total_rel_error: {:.3e}\n", rel);
    fmt::print(io.out, "closed_form_n_w: {}\n", closed.n_w);
    fmt::print(io.out, "measured_n_w: {}\n", sim.report.n_w);
    fmt::print(io.out, "measured_r_average_bps: {:.6e}\n", sim.report.r_average);
    if (!a.out.empty()) {
        export_trace(sim.trace, a.out);
        fmt::print(io.out, "trace: {} ({} samples), events: {}\n", a.out, sim.trace.samples.size(),
                   events_path(a.out).string());
    }
}

// --- sweep -----------------------------------------------------------------

struct SweepArgs {
    std::string figure;
    std::string config;
    std::string out;
    std::string mode = "ceiling";
    unsigned threads = 0;
    std::map<SweepAxis, std::vector<double>> grids;
};

void cmd_sweep(const SweepArgs& a, Streams io)
{
    const auto figure = parse_figure(a.figure);
    if (!figure) {
        throw ValidationError("figure", fmt::format("'{}' is not one of fig3|fig4|fig5|fig6", a.figure));
    }
    const auto mode = parse_sweep_mode(a.mode);
    if (!mode) {
        throw ValidationError("mode", fmt::format("'{}' is not one of ceiling|exact|relaxed", a.mode));
    }
    SweepSpec spec = default_sweep(*figure);
    spec.mode = *mode;
    for (const auto& [axis, values] : a.grids) {
        if (spec.outer.axis == axis) {
            spec.outer.values = values;
        } else if (spec.inner.axis == axis) {
            spec.inner.values = values;
        } else {
            throw ValidationError(std::string(to_string(axis)),
                                  fmt::format("axis is not part of {}", a.figure));
        }
    }

    const Scenario s = scenario_from(a.config);
    const SweepTable table = run_sweep(s, spec, a.threads);
    for (const auto& w : table.warnings) {
        fmt::print(io.err, "warning: {}\n", w);
    }
    if (a.out.empty()) {
        write_csv(table, io.out);
    } else {
        auto f = open_output(a.out);
        write_csv(table, f);
        finish_output(f, a.out);
        fmt::print(io.out, "wrote {} rows to {}\n", table.rows.size(), a.out);
    }
}

// --- calibrate -------------------------------------------------------------

struct CalibrateArgs {
    std::string config;
    double threshold_bits = 0.0;
    std::optional<double> target_ttotal;
    std::string target_twait;
};

void cmd_calibrate(const CalibrateArgs& a, Streams io)
{
    if (a.target_ttotal.has_value() != !a.target_twait.empty()) {
        throw ValidationError("target", "--target-ttotal and --target-twait go together");
    }
    std::optional<double> t_wait;
    if (a.target_ttotal) {
        t_wait = parse_temperature(a.target_twait);
        if (!t_wait) {
            throw ValidationError("target_twait", fmt::format("cannot parse '{}'", a.target_twait));
        }
    }
    const Scenario s = scenario_from(a.config);
    const Calibration cal =
        calibrate_chip_power(s.thermal(), s.temps(), s.link(), s.power(), a.threshold_bits);

    fmt::print(io.out, "threshold_bits: {:.6e}\n", a.threshold_bits);
    fmt::print(io.out, "downlink_rate_bps: {:.6e}\n", cal.rate);
    fmt::print(io.out, "first_transmit_s: {:.9f}\n", cal.first_transmit_time);
    fmt::print(io.out, "q_total_comm_W: {:.9f}\n", cal.q_total_comm);
    fmt::print(io.out, "logic_activity_product: {:.9e}\n", cal.logic_activity_product);
    fmt::print(io.out, "config_line: logic_activity_product = {}\n", cal.logic_activity_product);

    if (!a.target_ttotal) {
        return;
    }
    PowerModel power = s.power();
    power.logic_activity_product = cal.logic_activity_product;
    const Scenario fitted = s.with_power(power).with_wait_temperature(*t_wait);
    const TransmissionReport rep = build_schedule(fitted, ScheduleMode::Ceiling);
    const RelaxedSchedule relaxed = relaxed_schedule(fitted);
    const double residual = rep.t_total - *a.target_ttotal;

    fmt::print(io.out, "target_t_wait_C: {:.4f}\n", kelvin_to_celsius(*t_wait));
    fmt::print(io.out, "predicted_t_total_s: {:.6f}\n", rep.t_total);
    fmt::print(io.out, "predicted_n_w: {}\n", rep.n_w);
    fmt::print(io.out, "predicted_t_total_relaxed_s: {:.6f}\n", relaxed.t_total);
    fmt::print(io.out, "target_t_total_s: {:.6f}\n", *a.target_ttotal);
    fmt::print(io.out, "residual_s: {:.6f}\n", residual);
    fmt::print(io.out, "relative_residual: {:.6f}\n", residual / *a.target_ttotal);
}

int guarded(const std::function<void()>& body, Streams io)
{
    try {
        body();
        return kOk;
    } catch (const ConfigError& e) {
        fmt::print(io.err, "config error: {}\n", e.what());
        return kValidation;
    } catch (const ValidationError& e) {
        fmt::print(io.err, "validation error: {}\n", e.what());
        return kValidation;
    } catch (const NumericError& e) {
        fmt::print(io.err, "numeric error: {}\n", e.what());
        return kNumeric;
    } catch (const IoError& e) {
        fmt::print(io.err, "I/O error: {}\n", e.what());
        return kIo;
    }
}

} // namespace

std::optional<double> parse_temperature(std::string_view text)
{
    if (text.empty()) {
        return std::nullopt;
    }
    bool kelvin = false;
    const char last = text.back();
    if (last == 'C' || last == 'c') {
        text.remove_suffix(1);
    } else if (last == 'K' || last == 'k') {
        kelvin = true;
        text.remove_suffix(1);
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return kelvin ? v : celsius_to_kelvin(v);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    const Streams io{out, err};

    CLI::App app{"Power-consumption outage scheduler and thermal simulator"};
    app.require_subcommand(1);

    ScheduleArgs sched;
    auto* c_sched = app.add_subcommand("schedule", "Closed-form transmission schedule");
    c_sched->add_option("--config", sched.config, "Scenario config (key = value)");
    c_sched->add_option("--mode", sched.mode, "ceiling|exact")->check(CLI::IsMember({"ceiling", "exact"}));
    c_sched->add_option("--out", sched.out, "Write the phase table as CSV");

    SimulateArgs sim;
    auto* c_sim = app.add_subcommand("simulate", "Time-stepped thermal simulation");
    c_sim->add_option("--config", sim.config, "Scenario config (key = value)");
    c_sim->add_option("--dt", sim.dt, "Integration step in seconds");
    c_sim->add_option("--out", sim.out, "Trace CSV; events go to <stem>.events.csv");
    c_sim->add_option("--stride", sim.stride, "Record every n-th grid sample")->check(CLI::PositiveNumber);
    c_sim->add_option("--event-tol", sim.event_tolerance, "Bisection bracket for crossings, s")
        ->check(CLI::PositiveNumber);

    SweepArgs sweep;
    std::vector<double> omega, t_wait, snr, n_w;
    auto* c_sweep = app.add_subcommand("sweep", "Figure-reproduction parameter sweeps");
    c_sweep->add_option("figure", sweep.figure, "fig3|fig4|fig5|fig6")->required();
    c_sweep->add_option("--config", sweep.config, "Scenario config (key = value)");
    c_sweep->add_option("--out", sweep.out, "CSV output (stdout if omitted)");
    c_sweep->add_option("--mode", sweep.mode, "ceiling|exact|relaxed");
    c_sweep->add_option("--threads", sweep.threads, "Worker threads (0 = hardware)");
    auto* o_omega = c_sweep->add_option("--omega", omega, "Payload grid, bits")->delimiter(',');
    auto* o_twait = c_sweep->add_option("--t-wait-c", t_wait, "Wait temperature grid, C")->delimiter(',');
    auto* o_snr = c_sweep->add_option("--snr-db", snr, "SNR grid, dB")->delimiter(',');
    auto* o_nw = c_sweep->add_option("--n-w", n_w, "Outage count grid")->delimiter(',');

    CalibrateArgs cal;
    double target_ttotal = 0.0;
    auto* c_cal = app.add_subcommand("calibrate", "Fit chip power to a one-transmission threshold");
    c_cal->add_option("--config", cal.config, "Scenario config (key = value)");
    c_cal->add_option("--threshold-bits", cal.threshold_bits, "Largest payload finishing in one "
                                                               "transmission")
        ->required();
    auto* o_ttotal = c_cal->add_option("--target-ttotal", target_ttotal, "Observed total time, s");
    c_cal->add_option("--target-twait", cal.target_twait, "Wait temperature of the observation, "
                                                          "e.g. 44C");

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("outage");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kValidation;
    }

    if (c_sched->parsed()) {
        return guarded([&] { cmd_schedule(sched, io); }, io);
    }
    if (c_sim->parsed()) {
        return guarded([&] { cmd_simulate(sim, io); }, io);
    }
    if (c_sweep->parsed()) {
        if (o_omega->count()) sweep.grids[SweepAxis::Payload] = omega;
        if (o_twait->count()) sweep.grids[SweepAxis::WaitTemperature] = t_wait;
        if (o_snr->count()) sweep.grids[SweepAxis::SnrDb] = snr;
        if (o_nw->count()) sweep.grids[SweepAxis::OutageCount] = n_w;
        return guarded([&] { cmd_sweep(sweep, io); }, io);
    }
    if (o_ttotal->count()) {
        cal.target_ttotal = target_ttotal;
    }
    return guarded([&] { cmd_calibrate(cal, io); }, io);
}

} // namespace outage::cli
