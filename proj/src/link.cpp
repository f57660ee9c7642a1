#include "outage/link.hpp"

#include <cmath>
#include <vector>

#include "outage/errors.hpp"

namespace outage {

DownlinkRate downlink_rate(const RadioLinkParams& link)
{
    double spectral = 0.0;
    for (double snr : link.snr_per_antenna) {
        spectral += std::log2(1.0 + snr);
    }
    return DownlinkRate{link.bandwidth * spectral};
}

double ideal_time(double payload_bits, DownlinkRate rate)
{
    if (payload_bits == 0.0) {
        return 0.0;
    }
    if (!(rate.bits_per_second > 0.0)) {
        throw NumericError("link cannot carry payload: downlink rate is zero");
    }
    return payload_bits / rate.bits_per_second;
}

double snr_db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

RadioLinkParams uniform_link(int bs_antennas, int ue_antennas, double bandwidth, double snr_db)
{
    const auto n = static_cast<std::size_t>(ue_antennas > 0 ? ue_antennas : 0);
    return RadioLinkParams{bs_antennas, ue_antennas, bandwidth,
                           std::vector<double>(n, snr_db_to_linear(snr_db))};
}

} // namespace outage
