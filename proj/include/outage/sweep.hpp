#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "outage/params.hpp"
#include "outage/schedule.hpp"

namespace outage {

enum class Figure { Fig3, Fig4, Fig5, Fig6 };

enum class SweepAxis { Payload, WaitTemperature, SnrDb, OutageCount };

// How a grid point's total time is evaluated. Relaxed treats the outage
// count as the real quotient, giving the smooth analytical curves.
enum class SweepMode { Ceiling, ExactWait, Relaxed };

std::optional<Figure> parse_figure(std::string_view name);
std::optional<SweepMode> parse_sweep_mode(std::string_view name);
std::string_view to_string(Figure figure);
std::string_view to_string(SweepAxis axis);

// Payload in bits, wait temperature in Celsius, SNR in dB, outage count as
// a positive integer.
struct AxisGrid {
    SweepAxis axis;
    std::vector<double> values;
};

// Throws ValidationError: values must be non-empty, strictly increasing and
// valid for the axis.
void validate(const AxisGrid& grid);

// Rows are emitted outer-major. For fig3 the outer axis lists wait
// temperatures and an extra ideal curve precedes them.
struct SweepSpec {
    Figure figure;
    AxisGrid outer;
    AxisGrid inner;
    SweepMode mode = SweepMode::Ceiling;
};

SweepSpec default_sweep(Figure figure);

struct SweepTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    // One line per infeasible grid point, in row order.
    std::vector<std::string> warnings;
};

// Grid points are independent and may be evaluated on `threads` workers;
// the table is identical for any thread count. 0 picks the hardware count.
SweepTable run_sweep(const Scenario& base, const SweepSpec& spec, unsigned threads = 0);

void write_csv(const SweepTable& table, std::ostream& out);

inline constexpr std::string_view kMissing = "NA";

} // namespace outage
