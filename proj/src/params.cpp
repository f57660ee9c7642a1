#include "outage/params.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "outage/errors.hpp"
#include "outage/link.hpp"

namespace outage {

namespace {

void require(bool ok, const char* field, const char* what)
{
    if (!ok) {
        throw ValidationError(field, what);
    }
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

} // namespace

void validate(const ThermalParams& p)
{
    require(positive(p.chip_mass), "chip_mass", "must be > 0");
    require(positive(p.chip_specific_heat), "chip_specific_heat", "must be > 0");
    require(positive(p.sink_length), "sink_length", "must be > 0");
    require(positive(p.sink_area), "sink_area", "must be > 0");
    require(positive(p.plate_thickness), "plate_thickness", "must be > 0");
    require(positive(p.sink_conductivity), "sink_conductivity", "must be > 0");
    require(positive(p.plate_conductivity), "plate_conductivity", "must be > 0");
    require(positive(p.air_convection_coeff), "air_convection_coeff", "must be > 0");
}

void validate(const RadioLinkParams& p)
{
    require(p.ue_antennas >= 1, "ue_antennas", "must be >= 1");
    require(p.bs_antennas >= p.ue_antennas, "bs_antennas", "must be >= ue_antennas");
    require(positive(p.bandwidth), "bandwidth", "must be > 0");
    require(p.snr_per_antenna.size() == static_cast<std::size_t>(p.ue_antennas),
            "snr_per_antenna", "needs one entry per UE antenna");
    for (double snr : p.snr_per_antenna) {
        require(std::isfinite(snr) && snr >= 0.0, "snr_per_antenna", "entries must be >= 0");
    }
}

void validate(const PowerModel& p)
{
    require(std::isfinite(p.lna_power) && p.lna_power >= 0.0, "lna_power", "must be >= 0");
    require(p.lna_efficiency > 0.0 && p.lna_efficiency < 1.0, "lna_efficiency",
            "must lie in (0, 1)");
    require(p.lna_heat_fraction >= 0.0 && p.lna_heat_fraction <= 1.0, "lna_heat_fraction",
            "must lie in [0, 1]");
    require(positive(p.logic_activity_product), "logic_activity_product", "must be > 0");
    require(std::isfinite(p.landauer_gap) && p.landauer_gap >= 1.0, "landauer_gap",
            "must be >= 1");
    require(positive(p.boltzmann), "boltzmann", "must be > 0");
}

void validate(const TemperatureSet& p)
{
    require(positive(p.t_env), "t_env", "must be a finite positive Kelvin value");
    require(std::isfinite(p.t_sur0) && p.t_sur0 > p.t_env, "t_sur0", "must exceed t_env");
    require(std::isfinite(p.t_wait) && p.t_wait > p.t_sur0, "t_wait",
            "must exceed t_sur0 (the outage phase cannot end otherwise)");
    require(std::isfinite(p.t_safe) && p.t_safe > p.t_wait, "t_safe", "must exceed t_wait");
}

namespace defaults {

ThermalParams thermal()
{
    return ThermalParams{kChipMass,        kChipSpecificHeat,  kSinkLength,
                         kSinkArea,        kPlateThickness,    kSinkConductivity,
                         kPlateConductivity, kAirConvection};
}

RadioLinkParams link()
{
    return uniform_link(kBsAntennas, kUeAntennas, kBandwidth, kSnrDb);
}

PowerModel power()
{
    return PowerModel{kLnaPower, kLnaEfficiency, kLnaHeatFraction, kLogicActivityProduct,
                      kLandauerGap};
}

TemperatureSet temperatures()
{
    return TemperatureSet{kTEnv, kTSur0, kTSafe, kTWait};
}

} // namespace defaults

Scenario::Scenario(ThermalParams thermal, RadioLinkParams link, PowerModel power,
                   TemperatureSet temps, double payload_bits, double outage_probability)
    : thermal_(std::move(thermal)),
      link_(std::move(link)),
      power_(power),
      temps_(temps),
      payload_bits_(payload_bits),
      outage_probability_(outage_probability)
{
    validate(thermal_);
    validate(link_);
    validate(power_);
    validate(temps_);
    require(positive(payload_bits_), "payload_bits", "must be > 0");
    require(outage_probability_ == 1.0, "outage_probability",
            "only the deterministic trigger (1) is supported");
}

Scenario Scenario::with_payload(double bits) const
{
    return Scenario(thermal_, link_, power_, temps_, bits, outage_probability_);
}

Scenario Scenario::with_wait_temperature(double t_wait) const
{
    TemperatureSet t = temps_;
    t.t_wait = t_wait;
    return with_temperatures(t);
}

Scenario Scenario::with_link(RadioLinkParams link) const
{
    return Scenario(thermal_, std::move(link), power_, temps_, payload_bits_, outage_probability_);
}

Scenario Scenario::with_uniform_snr_db(double snr_db) const
{
    return with_link(uniform_link(link_.bs_antennas, link_.ue_antennas, link_.bandwidth, snr_db));
}

Scenario Scenario::with_power(PowerModel power) const
{
    return Scenario(thermal_, link_, power, temps_, payload_bits_, outage_probability_);
}

Scenario Scenario::with_temperatures(TemperatureSet temps) const
{
    return Scenario(thermal_, link_, power_, temps, payload_bits_, outage_probability_);
}

Scenario reference_scenario()
{
    return Scenario(defaults::thermal(), defaults::link(), defaults::power(),
                    defaults::temperatures(), defaults::kPayloadBits);
}

// ---------------------------------------------------------------------------
// Config text

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct Entry {
    std::string value;
    int line;
};

double parse_double(const Entry& e, const std::string& key)
{
    double v = 0.0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError(e.line, fmt::format("'{}' is not a number for key '{}'", e.value, key));
    }
    return v;
}

int parse_int(const Entry& e, const std::string& key)
{
    int v = 0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError(e.line, fmt::format("'{}' is not an integer for key '{}'", e.value, key));
    }
    return v;
}

std::vector<double> parse_list(const Entry& e, const std::string& key)
{
    std::vector<double> out;
    std::string_view rest = e.value;
    while (true) {
        const auto comma = rest.find(',');
        const auto item = trim(rest.substr(0, comma));
        out.push_back(parse_double(Entry{std::string(item), e.line}, key));
        if (comma == std::string_view::npos) {
            break;
        }
        rest.remove_prefix(comma + 1);
    }
    return out;
}

class KeyReader {
public:
    explicit KeyReader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

    double number(const std::string& key, double fallback)
    {
        auto e = take(key);
        return e ? parse_double(*e, key) : fallback;
    }

    int integer(const std::string& key, int fallback)
    {
        auto e = take(key);
        return e ? parse_int(*e, key) : fallback;
    }

    std::optional<std::vector<double>> list(const std::string& key)
    {
        auto e = take(key);
        if (!e) {
            return std::nullopt;
        }
        return parse_list(*e, key);
    }

    // `<name>_kelvin` or `<name>_celsius`, never both.
    double temperature(const std::string& name, double fallback_kelvin)
    {
        auto k = take(name + "_kelvin");
        auto c = take(name + "_celsius");
        if (k && c) {
            throw ConfigError(c->line, fmt::format("'{0}_kelvin' and '{0}_celsius' are mutually "
                                                   "exclusive",
                                                   name));
        }
        if (k) {
            return parse_double(*k, name + "_kelvin");
        }
        if (c) {
            return celsius_to_kelvin(parse_double(*c, name + "_celsius"));
        }
        return fallback_kelvin;
    }

    std::optional<Entry> take(const std::string& key)
    {
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            return std::nullopt;
        }
        Entry e = std::move(it->second);
        entries_.erase(it);
        return e;
    }

    void reject_leftovers() const
    {
        if (!entries_.empty()) {
            // Report the earliest unknown key.
            const Entry* first = nullptr;
            std::string key;
            for (const auto& [k, e] : entries_) {
                if (!first || e.line < first->line) {
                    first = &e;
                    key = k;
                }
            }
            throw ConfigError(first->line, fmt::format("unknown key '{}'", key));
        }
    }

private:
    std::map<std::string, Entry> entries_;
};

} // namespace

Scenario parse_scenario(std::string_view text)
{
    std::map<std::string, Entry> entries;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(line_no, fmt::format("expected 'key = value', got '{}'", line));
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError(line_no, fmt::format("expected 'key = value', got '{}'", line));
        }
        auto [it, inserted] = entries.emplace(std::string(key), Entry{std::string(value), line_no});
        if (!inserted) {
            throw ConfigError(line_no, fmt::format("duplicate key '{}' (first set on line {})", key,
                                                   it->second.line));
        }
    }

    KeyReader r(std::move(entries));

    ThermalParams thermal{
        r.number("chip_mass_kg", defaults::kChipMass),
        r.number("chip_specific_heat", defaults::kChipSpecificHeat),
        r.number("sink_length_m", defaults::kSinkLength),
        r.number("sink_area_m2", defaults::kSinkArea),
        r.number("plate_thickness_m", defaults::kPlateThickness),
        r.number("sink_conductivity", defaults::kSinkConductivity),
        r.number("plate_conductivity", defaults::kPlateConductivity),
        r.number("air_convection_coeff", defaults::kAirConvection),
    };

    RadioLinkParams link;
    link.bs_antennas = r.integer("bs_antennas", defaults::kBsAntennas);
    link.ue_antennas = r.integer("ue_antennas", defaults::kUeAntennas);
    link.bandwidth = r.number("bandwidth_hz", defaults::kBandwidth);
    auto snr_db = r.list("snr_db");
    auto snr_linear = r.list("snr_linear");
    if (snr_db && snr_linear) {
        throw ValidationError("snr_per_antenna", "'snr_db' and 'snr_linear' are mutually exclusive");
    }
    std::vector<double> snr;
    if (snr_linear) {
        snr = *snr_linear;
    } else {
        for (double db : snr_db.value_or(std::vector<double>{defaults::kSnrDb})) {
            snr.push_back(snr_db_to_linear(db));
        }
    }
    // A single value applies to every antenna.
    if (snr.size() == 1 && link.ue_antennas > 1) {
        snr.assign(static_cast<std::size_t>(link.ue_antennas), snr.front());
    }
    link.snr_per_antenna = std::move(snr);

    PowerModel power{
        r.number("lna_power_w", defaults::kLnaPower),
        r.number("lna_efficiency", defaults::kLnaEfficiency),
        r.number("lna_heat_fraction", defaults::kLnaHeatFraction),
        r.number("logic_activity_product", defaults::kLogicActivityProduct),
        r.number("landauer_gap", defaults::kLandauerGap),
    };

    TemperatureSet temps{
        r.temperature("t_env", defaults::kTEnv),
        r.temperature("t_sur0", defaults::kTSur0),
        r.temperature("t_safe", defaults::kTSafe),
        r.temperature("t_wait", defaults::kTWait),
    };

    const double payload = r.number("payload_bits", defaults::kPayloadBits);
    const double p_outage = r.number("outage_probability", 1.0);
    r.reject_leftovers();

    return Scenario(std::move(thermal), std::move(link), power, temps, payload, p_outage);
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError(path.string(), "cannot open config file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string to_config_text(const Scenario& s)
{
    const auto& th = s.thermal();
    const auto& ln = s.link();
    const auto& pw = s.power();
    const auto& t = s.temps();

    std::string snr;
    for (std::size_t i = 0; i < ln.snr_per_antenna.size(); ++i) {
        snr += fmt::format("{}{}", i ? ", " : "", ln.snr_per_antenna[i]);
    }

    std::string out;
    auto kv = [&out](std::string_view key, auto value) {
        out += fmt::format("{} = {}\n", key, value);
    };
    kv("bs_antennas", ln.bs_antennas);
    kv("ue_antennas", ln.ue_antennas);
    kv("bandwidth_hz", ln.bandwidth);
    kv("snr_linear", snr);
    kv("chip_mass_kg", th.chip_mass);
    kv("chip_specific_heat", th.chip_specific_heat);
    kv("sink_length_m", th.sink_length);
    kv("sink_area_m2", th.sink_area);
    kv("plate_thickness_m", th.plate_thickness);
    kv("sink_conductivity", th.sink_conductivity);
    kv("plate_conductivity", th.plate_conductivity);
    kv("air_convection_coeff", th.air_convection_coeff);
    kv("lna_power_w", pw.lna_power);
    kv("lna_efficiency", pw.lna_efficiency);
    kv("lna_heat_fraction", pw.lna_heat_fraction);
    kv("logic_activity_product", pw.logic_activity_product);
    kv("landauer_gap", pw.landauer_gap);
    kv("t_env_kelvin", t.t_env);
    kv("t_sur0_kelvin", t.t_sur0);
    kv("t_safe_kelvin", t.t_safe);
    kv("t_wait_kelvin", t.t_wait);
    kv("payload_bits", s.payload_bits());
    kv("outage_probability", s.outage_probability());
    return out;
}

} // namespace outage
