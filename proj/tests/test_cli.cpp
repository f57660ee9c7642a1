#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "outage/cli.hpp"
#include "outage/params.hpp"
#include "outage/simulate.hpp"
#include "outage/sweep.hpp"

using namespace outage;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / "outage_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("temperature arguments")
{
    CHECK(*cli::parse_temperature("44C") == doctest::Approx(317.15));
    CHECK(*cli::parse_temperature("44c") == doctest::Approx(317.15));
    CHECK(*cli::parse_temperature("317.15K") == doctest::Approx(317.15));
    CHECK(*cli::parse_temperature("44") == doctest::Approx(317.15));
    CHECK_FALSE(cli::parse_temperature("warm"));
    CHECK_FALSE(cli::parse_temperature(""));
}

TEST_CASE("schedule subcommand")
{
    const Outcome r = call({"schedule"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("N_W") != std::string::npos);
    CHECK(r.out.find("86") != std::string::npos);

    const Outcome single = [] {
        const auto cfg = scratch("small.conf");
        std::ofstream(cfg) << "payload_bits = 1e10\n";
        return call({"schedule", "--config", cfg.string()});
    }();
    CHECK(single.code == cli::kOk);
    CHECK(single.out.find("single transmission, no outage") != std::string::npos);

    CHECK(call({"schedule", "--mode", "exact"}).code == cli::kNumeric);
    CHECK(call({"schedule", "--mode", "bogus"}).code == cli::kValidation);
}

TEST_CASE("exit codes")
{
    CHECK(call({}).code == cli::kValidation);
    CHECK(call({"frobnicate"}).code == cli::kValidation);
    CHECK(call({"schedule", "--config", "/nonexistent/x.conf"}).code == cli::kIo);

    const auto bad = scratch("bad.conf");
    std::ofstream(bad) << "t_wait_celsius = 29\n";
    const Outcome v = call({"schedule", "--config", bad.string()});
    CHECK(v.code == cli::kValidation);
    CHECK(v.err.find("t_wait") != std::string::npos);

    const auto garbled = scratch("garbled.conf");
    std::ofstream(garbled) << "# ok\nnot a pair\n";
    const Outcome g = call({"schedule", "--config", garbled.string()});
    CHECK(g.code == cli::kValidation);
    CHECK(g.err.find("line 2") != std::string::npos);

    CHECK(call({"simulate", "--dt", "0.5"}).code == cli::kNumeric);
    CHECK(call({"simulate", "--dt", "-1"}).code == cli::kValidation);
    CHECK(call({"sweep", "fig9"}).code == cli::kValidation);
    CHECK(call({"calibrate"}).code == cli::kValidation);
}

TEST_CASE("calibrate prints a config line")
{
    const Outcome r = call({"calibrate", "--threshold-bits", "1.488e11", "--target-ttotal", "2347",
                             "--target-twait", "44C"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("config_line: logic_activity_product = ") != std::string::npos);
    CHECK(r.out.find("residual_s") != std::string::npos);

    const Outcome half = call({"calibrate", "--threshold-bits", "1.488e11", "--target-ttotal", "2347"});
    CHECK(half.code == cli::kValidation);
    CHECK(half.out.empty());
}

TEST_CASE("simulate subcommand writes a trace")
{
    const auto trace = scratch("trace.csv");
    const Outcome r = call({"simulate", "--dt", "0.01", "--stride", "100", "--out", trace.string()});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("measured_n_w") != std::string::npos);
    CHECK(std::filesystem::exists(trace));
    CHECK(std::filesystem::exists(events_path(trace)));
}

TEST_CASE("sweeps are deterministic across thread counts")
{
    SweepSpec spec = default_sweep(Figure::Fig4);
    spec.outer.values = {33.0, 38.0, 44.0};
    const SweepTable one = run_sweep(reference_scenario(), spec, 1);
    const SweepTable many = run_sweep(reference_scenario(), spec, 8);
    CHECK(one.rows == many.rows);
    CHECK(one.warnings == many.warnings);
    CHECK(one.rows.size() == 3 * 29);
}

TEST_CASE("infeasible sweep points become NA")
{
    SweepSpec spec = default_sweep(Figure::Fig6);
    spec.outer.values = {1.0, 100.0};
    spec.inner.values = {15.0};
    const SweepTable t = run_sweep(reference_scenario(), spec, 2);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][2] == kMissing);
    CHECK(t.rows[1][2] != kMissing);
    CHECK(t.warnings.size() == 1);
    CHECK(std::stod(t.rows[1][2]) <= std::stod(t.rows[1][3]));
}

TEST_CASE("fig3 lists the ideal curve first")
{
    SweepSpec spec = default_sweep(Figure::Fig3);
    spec.inner.values = {1e11, 5e11, 1e12};
    const SweepTable t = run_sweep(reference_scenario(), spec, 0);
    CHECK(t.header == std::vector<std::string>{"omega_bits", "t_wait_C", "duration_s"});
    REQUIRE(t.rows.size() == 3 * 5);
    for (int i = 0; i < 3; ++i) CHECK(t.rows[static_cast<std::size_t>(i)][1] == "ideal");
    CHECK(t.rows[3][1] == "34");
    for (const auto& row : t.rows) CHECK(row[2] != kMissing);
}

TEST_CASE("sweep grid validation")
{
    CHECK_THROWS(validate(AxisGrid{SweepAxis::Payload, {}}));
    CHECK_THROWS(validate(AxisGrid{SweepAxis::Payload, {2.0, 1.0}}));
    CHECK_THROWS(validate(AxisGrid{SweepAxis::Payload, {-1.0}}));
    CHECK_THROWS(validate(AxisGrid{SweepAxis::OutageCount, {1.5}}));
    CHECK_NOTHROW(validate(AxisGrid{SweepAxis::SnrDb, {-20.0, 0.0, 20.0}}));
    CHECK(call({"sweep", "fig4", "--t-wait-c", "40,35"}).code == cli::kValidation);
}

TEST_CASE("sweep subcommand writes csv")
{
    const auto out = scratch("fig5.csv");
    const Outcome r = call({"sweep", "fig5", "--snr-db", "0,15", "--out", out.string(), "--threads", "2"});
    CHECK(r.code == cli::kOk);
    std::ifstream in(out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "snr_db,t_wait_C,n_w");
    std::filesystem::remove_all(out.parent_path());
}
