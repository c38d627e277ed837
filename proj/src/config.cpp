#include "bswpt/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

namespace bswpt {

double path_loss(double d, double k0, double d0, double alpha) {
    if (!(d > 0.0)) throw invalid_parameter_error("path_loss: distance must be > 0");
    if (!(d0 > 0.0)) throw invalid_parameter_error("path_loss: reference distance must be > 0");
    if (!(k0 > 0.0)) throw invalid_parameter_error("path_loss: reference attenuation must be > 0");
    return k0 * std::pow(d / d0, -alpha);
}

void validate(const SystemParams& p) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw invalid_parameter_error(std::string(name) + " must be strictly positive");
    };
    positive(p.d1, "d1");
    positive(p.d2, "d2");
    positive(p.d3, "d3");
    positive(p.d0, "d0");
    positive(p.k0, "k0");
    positive(p.ps, "ps");
    positive(p.pt, "pt");
    positive(p.sigma_n2, "sigma_n2");
    positive(p.ts, "ts");
    positive(p.tc, "tc");
    if (!std::isfinite(p.alpha)) throw invalid_parameter_error("alpha must be finite");
    if (p.sigma_i2 < 0.0 || !std::isfinite(p.sigma_i2))
        throw invalid_parameter_error("sigma_i2 must be >= 0");
    if (p.t_off < 0.0 || !std::isfinite(p.t_off))
        throw invalid_parameter_error("t_off must be >= 0");
    if (p.ns < 1) throw invalid_parameter_error("ns must be >= 1");
    if (p.nc < 1) throw invalid_parameter_error("nc must be >= 1");
    if (p.m < 1) throw invalid_parameter_error("m must be >= 1");
    if (p.m_g < 0.5) throw invalid_parameter_error("m_g must be >= 0.5");
    if (p.m_h < 0.5) throw invalid_parameter_error("m_h must be >= 0.5");
    if (p.m_f < 0.5) throw invalid_parameter_error("m_f must be >= 0.5");

    // Both clocks must span the same backscatter phase.
    const double tb_sym = static_cast<double>(p.ns) * p.ts;
    const double tb_chip = static_cast<double>(p.nc) * p.tc;
    if (std::abs(tb_sym - tb_chip) > 1e-9 * std::max(tb_sym, tb_chip))
        throw invalid_parameter_error("timing consistency violated: ns*ts must equal nc*tc");
}

void validate(const HarvesterModel& h) {
    if (!(h.a0 > 0.0)) throw invalid_parameter_error("a0 must be strictly positive");
    if (!(h.b0 > 0.0)) throw invalid_parameter_error("b0 must be strictly positive");
    if (!(h.c0 > 0.0)) throw invalid_parameter_error("c0 must be strictly positive");
}

DerivedParams derive(const SystemParams& p) {
    validate(p);
    DerivedParams d;
    d.gamma1 = path_loss(p.d1, p.k0, p.d0, p.alpha);
    d.gamma2 = path_loss(p.d2, p.k0, p.d0, p.alpha);
    d.gamma3 = path_loss(p.d3, p.k0, p.d0, p.alpha);
    d.tb = static_cast<double>(p.ns) * p.ts;
    const long g = std::gcd(p.nc, p.ns);
    d.chips_per_symbol = {p.nc / g, p.ns / g};
    return d;
}

double sigma_i2_from_db(double ratio_db, const SystemParams& p) {
    const double gamma3 = path_loss(p.d3, p.k0, p.d0, p.alpha);
    const double slot = p.ps * gamma3 * std::pow(10.0, -ratio_db / 10.0);
    return slot * p.ts / static_cast<double>(p.ns);
}

namespace {

struct RawConfig {
    std::map<std::string, std::string> entries;
    std::map<std::string, int> lines;
};

RawConfig parse_lines(std::istream& in) {
    RawConfig raw;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error("line " + std::to_string(lineno) + ": expected key=value");
        if (raw.entries.count(key))
            throw config_error("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        raw.entries[key] = value;
        raw.lines[key] = lineno;
    }
    return raw;
}

double to_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw config_error("key '" + key + "': cannot parse number '" + value + "'");
    }
    if (pos != value.size())
        throw config_error("key '" + key + "': trailing characters in '" + value + "'");
    return v;
}

long to_count(const std::string& key, const std::string& value) {
    const double v = to_double(key, value);
    const long n = static_cast<long>(std::llround(v));
    if (std::abs(v - static_cast<double>(n)) > 1e-9 || n < 0)
        throw config_error("key '" + key + "': expected a nonnegative integer, got '" + value + "'");
    return n;
}

}  // namespace

std::pair<SystemParams, HarvesterModel> load_config(std::istream& in) {
    RawConfig raw = parse_lines(in);
    SystemParams p;
    HarvesterModel h;

    auto take = [&](const char* key) -> std::optional<std::string> {
        auto it = raw.entries.find(key);
        if (it == raw.entries.end()) return std::nullopt;
        std::string v = it->second;
        raw.entries.erase(it);
        return v;
    };
    auto take_double = [&](const char* key, double& dst) {
        if (auto v = take(key)) dst = to_double(key, *v);
    };

    take_double("d1", p.d1);
    take_double("d2", p.d2);
    take_double("d3", p.d3);
    take_double("d0", p.d0);
    take_double("k0", p.k0);
    take_double("ps", p.ps);
    take_double("pt", p.pt);
    take_double("sigma_n2", p.sigma_n2);
    take_double("ts", p.ts);
    take_double("tc", p.tc);
    take_double("m_g", p.m_g);
    take_double("m_h", p.m_h);
    take_double("m_f", p.m_f);
    take_double("t_off", p.t_off);
    take_double("a0", h.a0);
    take_double("b0", h.b0);
    take_double("c0", h.c0);
    if (auto v = take("m")) {
        const long m = to_count("m", *v);
        p.m = static_cast<int>(m);
    }

    auto alpha = take("alpha");
    if (!alpha) throw config_error("missing required key 'alpha'");
    p.alpha = to_double("alpha", *alpha);

    auto ns = take("ns");
    if (!ns) throw config_error("missing required key 'ns'");
    p.ns = to_count("ns", *ns);
    auto nc = take("nc");
    if (!nc) throw config_error("missing required key 'nc'");
    p.nc = to_count("nc", *nc);

    auto sigma_i2 = take("sigma_i2");
    auto intf_db = take("interference_db");
    if (sigma_i2 && intf_db)
        throw config_error("'sigma_i2' and 'interference_db' are mutually exclusive");
    if (sigma_i2) p.sigma_i2 = to_double("sigma_i2", *sigma_i2);

    // Unknown keys guard against typos silently changing the physics.
    if (!raw.entries.empty()) {
        const auto& [key, value] = *raw.entries.begin();
        throw config_error("unknown key '" + key + "' (line " +
                           std::to_string(raw.lines[key]) + ")");
    }

    if (intf_db) p.sigma_i2 = sigma_i2_from_db(to_double("interference_db", *intf_db), p);

    validate(p);
    validate(h);
    return {p, h};
}

std::pair<SystemParams, HarvesterModel> load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    return load_config(in);
}

}  // namespace bswpt
