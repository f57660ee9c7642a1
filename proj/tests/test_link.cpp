#include <doctest.h>

#include <random>

#include "outage/errors.hpp"
#include "outage/link.hpp"

using namespace outage;

TEST_CASE("downlink rate examples")
{
    // 15 dB on four antennas over 1 GHz.
    const auto ref = uniform_link(256, 4, 1e9, 15.0);
    CHECK(downlink_rate(ref).bits_per_second == doctest::Approx(2.0111e10).epsilon(1e-4));

    const auto silent = uniform_link(64, 7, 1e9, -1e9);
    CHECK(downlink_rate(RadioLinkParams{64, 7, 1e9, std::vector<double>(7, 0.0)}).bits_per_second == 0.0);
    CHECK(downlink_rate(silent).bits_per_second == doctest::Approx(0.0).epsilon(1e-12));

    CHECK(downlink_rate(RadioLinkParams{1, 1, 1.0, {1.0}}).bits_per_second == 1.0);
}

TEST_CASE("ideal time")
{
    CHECK(ideal_time(1e12, DownlinkRate{2.0e10}) == 50.0);
    CHECK(ideal_time(1e12, DownlinkRate{2.0111e10}) == doctest::Approx(49.724).epsilon(1e-4));
    CHECK(ideal_time(0.0, DownlinkRate{2.0e10}) == 0.0);
    CHECK_THROWS_AS(ideal_time(1e12, DownlinkRate{0.0}), NumericError);
}

TEST_CASE("snr conversion")
{
    CHECK(snr_db_to_linear(0.0) == 1.0);
    CHECK(snr_db_to_linear(15.0) == doctest::Approx(31.623).epsilon(1e-5));
    CHECK(snr_db_to_linear(-10.0) == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("rate is increasing in each snr and linear in bandwidth")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 50.0);
    for (int i = 0; i < 200; ++i) {
        RadioLinkParams link{16, 4, 1e8 + u(rng) * 1e8, {u(rng), u(rng), u(rng), u(rng)}};
        const double base = downlink_rate(link).bits_per_second;

        RadioLinkParams bumped = link;
        bumped.snr_per_antenna[static_cast<std::size_t>(i % 4)] += 1e-3 + u(rng);
        CHECK(downlink_rate(bumped).bits_per_second > base);

        RadioLinkParams wide = link;
        wide.bandwidth *= 3.0;
        CHECK(downlink_rate(wide).bits_per_second == doctest::Approx(3.0 * base).epsilon(1e-15));

        const double payload = 1e6 + u(rng) * 1e11;
        const DownlinkRate r = downlink_rate(link);
        CHECK(std::abs(ideal_time(payload, r) * r.bits_per_second - payload) <= 1e-12 * payload);
    }
}
