#pragma once

#include "outage/params.hpp"

namespace outage {

struct DownlinkRate {
    double bits_per_second = 0.0;

    auto operator<=>(const DownlinkRate&) const = default;
};

// B * sum_k log2(1 + SNR_k).
DownlinkRate downlink_rate(const RadioLinkParams& link);

// Payload over rate. Throws NumericError when the rate is zero.
double ideal_time(double payload_bits, DownlinkRate rate);

double snr_db_to_linear(double db);

// Same SNR on every UE antenna.
RadioLinkParams uniform_link(int bs_antennas, int ue_antennas, double bandwidth, double snr_db);

} // namespace outage
