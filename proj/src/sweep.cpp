#include "outage/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "outage/errors.hpp"

namespace outage {

std::optional<Figure> parse_figure(std::string_view name)
{
    if (name == "fig3") return Figure::Fig3;
    if (name == "fig4") return Figure::Fig4;
    if (name == "fig5") return Figure::Fig5;
    if (name == "fig6") return Figure::Fig6;
    return std::nullopt;
}

std::optional<SweepMode> parse_sweep_mode(std::string_view name)
{
    if (name == "ceiling") return SweepMode::Ceiling;
    if (name == "exact") return SweepMode::ExactWait;
    if (name == "relaxed") return SweepMode::Relaxed;
    return std::nullopt;
}

std::string_view to_string(Figure figure)
{
    switch (figure) {
    case Figure::Fig3: return "fig3";
    case Figure::Fig4: return "fig4";
    case Figure::Fig5: return "fig5";
    case Figure::Fig6: return "fig6";
    }
    return "?";
}

std::string_view to_string(SweepAxis axis)
{
    switch (axis) {
    case SweepAxis::Payload: return "omega_bits";
    case SweepAxis::WaitTemperature: return "t_wait_C";
    case SweepAxis::SnrDb: return "snr_db";
    case SweepAxis::OutageCount: return "n_w";
    }
    return "?";
}

void validate(const AxisGrid& grid)
{
    const std::string field(to_string(grid.axis));
    if (grid.values.empty()) {
        throw ValidationError(field, "sweep grid is empty");
    }
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
        const double v = grid.values[i];
        if (!std::isfinite(v)) {
            throw ValidationError(field, "grid values must be finite");
        }
        if (i > 0 && !(v > grid.values[i - 1])) {
            throw ValidationError(field, "grid values must be strictly increasing");
        }
        switch (grid.axis) {
        case SweepAxis::Payload:
            if (!(v > 0.0)) throw ValidationError(field, "payload must be > 0 bits");
            break;
        case SweepAxis::WaitTemperature:
            if (!(celsius_to_kelvin(v) > 0.0)) {
                throw ValidationError(field, "temperature below absolute zero");
            }
            break;
        case SweepAxis::OutageCount:
            if (v < 1.0 || v != std::floor(v)) {
                throw ValidationError(field, "outage counts must be integers >= 1");
            }
            break;
        case SweepAxis::SnrDb: break;
        }
    }
}

namespace {

std::vector<double> arange(double first, double last, double step)
{
    std::vector<double> out;
    const auto n = static_cast<int>(std::llround((last - first) / step));
    for (int i = 0; i <= n; ++i) {
        out.push_back(first + i * step);
    }
    return out;
}

std::string cell(double v)
{
    return std::isfinite(v) ? fmt::format("{}", v) : std::string(kMissing);
}

struct PointResult {
    std::vector<std::string> cells;
    std::optional<std::string> warning;
};

using PointTask = std::function<PointResult()>;

// n_w and t_total of one grid point under the chosen evaluation.
std::pair<double, double> evaluate(const Scenario& s, SweepMode mode)
{
    if (mode == SweepMode::Relaxed) {
        const RelaxedSchedule r = relaxed_schedule(s);
        return {r.n_w, r.t_total};
    }
    const auto m = mode == SweepMode::Ceiling ? ScheduleMode::Ceiling : ScheduleMode::ExactWait;
    const TransmissionReport rep = build_schedule(s, m);
    return {static_cast<double>(rep.n_w), rep.t_total};
}

// Runs `compute`; on a library error emits NA for the computed columns.
PointResult guarded(std::vector<std::string> fixed, std::size_t computed, std::string where,
                    const std::function<std::vector<std::string>()>& compute)
{
    PointResult out;
    out.cells = std::move(fixed);
    try {
        auto cells = compute();
        out.cells.insert(out.cells.end(), cells.begin(), cells.end());
    } catch (const Error& e) {
        out.cells.resize(out.cells.size() + computed, std::string(kMissing));
        out.warning = fmt::format("{}: {}", where, e.what());
    }
    return out;
}

std::vector<PointTask> plan(const Scenario& base, const SweepSpec& spec)
{
    std::vector<PointTask> tasks;
    const SweepMode mode = spec.mode;
    const auto& outer = spec.outer.values;
    const auto& inner = spec.inner.values;

    switch (spec.figure) {
    case Figure::Fig3:
        for (double omega : inner) {
            tasks.emplace_back([=, &base] {
                return guarded({cell(omega), "ideal"}, 1, fmt::format("omega_bits={}", omega), [&] {
                    return std::vector{cell(ideal_time(omega, downlink_rate(base.link())))};
                });
            });
        }
        for (double t_wait : outer) {
            for (double omega : inner) {
                tasks.emplace_back([=, &base] {
                    return guarded({cell(omega), cell(t_wait)}, 1,
                                   fmt::format("t_wait_C={}, omega_bits={}", t_wait, omega), [&] {
                                       const Scenario s = base.with_payload(omega).with_wait_temperature(
                                           celsius_to_kelvin(t_wait));
                                       return std::vector{cell(evaluate(s, mode).second)};
                                   });
                });
            }
        }
        break;
    case Figure::Fig4:
        for (double t_wait : outer) {
            for (double snr : inner) {
                tasks.emplace_back([=, &base] {
                    return guarded({cell(t_wait), cell(snr)}, 1,
                                   fmt::format("t_wait_C={}, snr_db={}", t_wait, snr), [&] {
                                       const Scenario s = base.with_uniform_snr_db(snr)
                                                              .with_wait_temperature(
                                                                  celsius_to_kelvin(t_wait));
                                       return std::vector{cell(evaluate(s, mode).second)};
                                   });
                });
            }
        }
        break;
    case Figure::Fig5:
        for (double snr : outer) {
            for (double t_wait : inner) {
                tasks.emplace_back([=, &base] {
                    return guarded({cell(snr), cell(t_wait)}, 1,
                                   fmt::format("snr_db={}, t_wait_C={}", snr, t_wait), [&] {
                                       const Scenario s = base.with_uniform_snr_db(snr)
                                                              .with_wait_temperature(
                                                                  celsius_to_kelvin(t_wait));
                                       return std::vector{cell(evaluate(s, mode).first)};
                                   });
                });
            }
        }
        break;
    case Figure::Fig6:
        for (double n_w : outer) {
            for (double snr : inner) {
                tasks.emplace_back([=, &base] {
                    const Scenario s = base.with_uniform_snr_db(snr);
                    const double r_downlink = downlink_rate(s.link()).bits_per_second;
                    PointResult r = guarded(
                        {cell(n_w), cell(snr)}, 1, fmt::format("n_w={}, snr_db={}", n_w, snr), [&] {
                            const double t_wait =
                                select_wait_temperature(s, static_cast<std::int64_t>(n_w));
                            const TransmissionReport rep = build_schedule(
                                s.with_wait_temperature(t_wait), ScheduleMode::ExactWait);
                            return std::vector{cell(rep.r_average)};
                        });
                    r.cells.push_back(cell(r_downlink));
                    return r;
                });
            }
        }
        break;
    }
    return tasks;
}

std::vector<std::string> header_of(Figure figure)
{
    switch (figure) {
    case Figure::Fig3: return {"omega_bits", "t_wait_C", "duration_s"};
    case Figure::Fig4: return {"t_wait_C", "snr_db", "t_total_s"};
    case Figure::Fig5: return {"snr_db", "t_wait_C", "n_w"};
    case Figure::Fig6: return {"n_w", "snr_db", "r_average_bps", "r_downlink_bps"};
    }
    return {};
}

} // namespace

SweepSpec default_sweep(Figure figure)
{
    const auto snr = arange(-13.0, 15.0, 1.0);
    switch (figure) {
    case Figure::Fig3:
        return {figure, {SweepAxis::WaitTemperature, {34.0, 37.0, 40.0, 44.0}},
                {SweepAxis::Payload, arange(1e9, 1e12, 1e9)}};
    case Figure::Fig4:
        return {figure, {SweepAxis::WaitTemperature, arange(31.0, 44.0, 1.0)}, {SweepAxis::SnrDb, snr}};
    case Figure::Fig5:
        return {figure, {SweepAxis::SnrDb, snr}, {SweepAxis::WaitTemperature, arange(31.0, 44.5, 0.5)}};
    case Figure::Fig6:
        return {figure, {SweepAxis::OutageCount, arange(10.0, 150.0, 10.0)}, {SweepAxis::SnrDb, snr}};
    }
    throw ValidationError("figure", "unknown figure");
}

SweepTable run_sweep(const Scenario& base, const SweepSpec& spec, unsigned threads)
{
    validate(spec.outer);
    validate(spec.inner);

    const std::vector<PointTask> tasks = plan(base, spec);
    std::vector<PointResult> results(tasks.size());

    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, tasks.size())));

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            results[i] = tasks[i]();
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    SweepTable table;
    table.header = header_of(spec.figure);
    table.rows.reserve(results.size());
    for (auto& r : results) {
        if (r.warning) {
            table.warnings.push_back(fmt::format("{}: {}", to_string(spec.figure), *r.warning));
        }
        table.rows.push_back(std::move(r.cells));
    }
    return table;
}

void write_csv(const SweepTable& table, std::ostream& out)
{
    out << fmt::format("{}\n", fmt::join(table.header, ","));
    for (const auto& row : table.rows) {
        out << fmt::format("{}\n", fmt::join(row, ","));
    }
}

} // namespace outage
