#include "dlab/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace dlab {

namespace {

using K = KeyKind;
constexpr double inf = 1e300;

std::vector<KeySpec> common_keys()
{
    return {
        {"alpha", K::real, "2", 1.0, 2.0, {}, "dispersion exponent"},
        {"seed", K::integer, "1", 0.0, 9.007199254740992e15, {}, "random seed"},
    };
}

std::vector<KeySpec> simulate_keys()
{
    return {
        {"grid.nx", K::integer, "256", 8, 1 << 14, {}, "lattice points in x"},
        {"grid.ny", K::integer, "256", 8, 1 << 14, {}, "lattice points in y"},
        {"grid.lx", K::real, "201.06192982974676", 1e-9, inf, {}, "box length in x (64 pi)"},
        {"grid.ly", K::real, "201.06192982974676", 1e-9, inf, {}, "box length in y (64 pi)"},
        {"time.dt", K::real, "0.001", 1e-12, inf, {}, "RK4 step"},
        {"time.t_end", K::real, "1", 1e-12, inf, {}, "final time"},
        {"time.monitor_stride", K::integer, "100", 1, 1e9, {}, "steps between monitor rows and stored frames"},
        {"data.preset", K::text, "gaussian", 0, 0, {"zero", "gaussian", "random"}, "initial data"},
        {"data.amplitude", K::real, "1", -inf, inf, {}, "sup of the initial data"},
        {"data.width", K::real, "1", 1e-12, inf, {}, "gaussian width, or spectral width for random"},
        {"solver.dealias", K::boolean, "true", 0, 0, {}, "2/3 rule"},
        {"solver.nonlinear", K::boolean, "true", 0, 0, {}, "include u u_x"},
        {"output.trajectory", K::boolean, "true", 0, 0, {}, "write the stored frames"},
    };
}

std::vector<KeySpec> strichartz_keys()
{
    return {
        {"mode", K::text, "localized", 0, 0, {"localized", "global"}, "estimate variant"},
        {"theta", K::real, "-1", -1.0, 1.0, {}, "interpolation parameter; -1 selects the L4 point 1/(2-epsilon)"},
        {"epsilon", K::real, "0.05", 1e-9, 0.999, {}, "loss exponent"},
        {"delta", K::real, "0.5", 1e-9, 0.999, {}, "resonant band half width"},
        {"Ns", K::real_list, "8,16,32,64,128,256", 1.0, inf, {}, "dyadic frequencies"},
        {"trials", K::integer, "32", 1, 1e6, {}, "random data per N"},
        {"window", K::real, "2", 1e-9, inf, {}, "time window in units of N^{-(alpha+1)}"},
        {"samples", K::integer, "129", 2, 1e6, {}, "time samples"},
        {"grid.nx", K::integer, "64", 8, 1 << 14, {}, "lattice points in x"},
        {"grid.ny", K::integer, "128", 8, 1 << 14, {}, "lattice points in y"},
        {"check.slope_tolerance", K::real, "0.1", 0, inf, {}, "allowed excess over the claimed slope"},
        {"check.min_r2", K::real, "0.9", 0, 1, {}, "minimum fit quality"},
    };
}

std::vector<KeySpec> kernel_keys()
{
    return {
        {"N", K::real, "64", 1.0, inf, {}, "frequency of the t sweep"},
        {"delta", K::real, "0.9", 1e-9, 0.999, {}, "resonant band half width"},
        {"taus", K::real_list, "8,16,32,64,128", 1e-9, inf, {}, "scaled times N^{alpha+1} t of the t sweep"},
        {"n_sweep.Ns", K::real_list, "64,128,256", 1.0, inf, {}, "frequencies of the N sweep"},
        {"n_sweep.tau_max", K::real, "128", 1e-9, inf, {}, "scaled time at the largest N"},
        {"small.taus", K::real_list, "0.0625,0.25,0.5", 1e-9, 0.999999, {}, "scaled times below 1"},
        {"check.doubling_tau_limit", K::real, "32", 0, inf, {}, "largest scaled time with a doubling check"},
        {"check.doubling_tolerance", K::real, "0.01", 0, inf, {}, "allowed relative change under doubling"},
        {"check.t_slope_lo", K::real, "-1.15", -inf, inf, {}, "t slope window"},
        {"check.t_slope_hi", K::real, "-0.85", -inf, inf, {}, "t slope window"},
        {"check.n_slope_tolerance", K::real, "0.15", 0, inf, {}, "allowed excess over -alpha/2"},
    };
}

std::vector<KeySpec> inflation_keys()
{
    return {
        {"s", K::real, "0.25", -inf, inf, {}, "Sobolev index of the data"},
        {"epsilon", K::real, "0.05", 1e-9, 0.999, {}, "box aspect exponent"},
        {"delta", K::real, "0.05", 1e-9, inf, {}, "gamma = N^{-(alpha+delta)}"},
        {"Ns", K::real_list, "64,128,256,512,1024", 2.0, inf, {}, "frequencies"},
        {"t", K::real, "0.1", -inf, inf, {}, "time of the second iterate"},
        {"time_check.N", K::real, "64", 2.0, inf, {}, "frequency of the small-time check"},
        {"time_check.phase_max", K::real, "0.1", 1e-12, inf, {}, "largest |t| gamma N^alpha of the decade"},
        {"quadrature.nodes", K::integer, "8", 1, 64, {}, "Gauss points per panel"},
        {"quadrature.phase_per_panel", K::real, "2", 1e-6, inf, {}, "phase change per panel"},
        {"check.slope_tolerance", K::real, "0.15", 0, inf, {}, "allowed distance from the predicted exponent"},
        {"check.min_r2", K::real, "0.9", 0, 1, {}, "minimum fit quality"},
        {"check.band_ratio", K::real, "20", 1, inf, {}, "allowed C/c of the phase band"},
        {"check.time_slope_tolerance", K::real, "0.05", 0, inf, {}, "allowed distance of the t slope from 1"},
    };
}

std::vector<KeySpec> trilinear_keys()
{
    return {
        {"case", K::text, "c1", 0, 0, {"c1", "c2a", "c2b", "c3"}, "bound variant"},
        {"H", K::real_list, "4,4,4", 1.0, inf, {}, "dyadic h levels of the three factors"},
        {"L", K::real_list, "16,16,16", 1.0, inf, {}, "dyadic modulations"},
        {"N", K::real_list, "", 1.0, inf, {}, "dyadic x frequencies, empty for none"},
        {"lambdas", K::real_list, "1,2,4,8,16", 1.0, inf, {}, "scaling factors of the sweep"},
        {"trials", K::integer, "16", 1, 1e6, {}, "random functions per point"},
        {"lattice.n_half", K::integer, "23", 1, 23, {}, "half width of the zeta lattice"},
        {"lattice.n_theta", K::integer, "12", 1, 48, {}, "theta cells"},
        {"check.slope_tolerance", K::real, "0.1", 0, inf, {}, "allowed |slope| of the ratio"},
    };
}

std::vector<KeySpec> lemma_keys()
{
    return {
        {"delta", K::real, "0.1", 1e-9, 0.999999, {}, "band half width"},
        {"samples", K::integer, "1000000", 1, 1e12, {}, "admissible pairs"},
        {"sampling", K::text, "independent", 0, 0, {"independent", "paired"}, "draw of |xi1|, |xi2|"},
    };
}

std::vector<KeySpec> energy_keys()
{
    return {
        {"grid.n", K::integer, "64", 8, 4096, {}, "lattice points per direction"},
        {"grid.l", K::real, "62.83185307179586", 1e-9, inf, {}, "box length (20 pi)"},
        {"data.width", K::real, "2", 1e-9, inf, {}, "spectral width of the random data"},
        {"data.b0_norm", K::real, "0.009", 1e-300, inf, {}, "B^0 norm of the data"},
        {"time.dt", K::real, "0.001", 1e-12, inf, {}, "RK4 step"},
        {"time.t_end", K::real, "0.2", 1e-12, inf, {}, "final time"},
        {"time.monitor_stride", K::integer, "20", 1, 1e9, {}, "steps between stored frames"},
        {"s", K::real, "0.5", -inf, inf, {}, "Sobolev index"},
        {"check.ratio_lo", K::real, "0.5", 0, inf, {}, "lower coercivity bound"},
        {"check.ratio_hi", K::real, "2", 0, inf, {}, "upper coercivity bound"},
        {"check.b0_max", K::real, "0.01", 0, inf, {}, "largest B^0 norm allowed along the trajectory"},
    };
}

std::vector<KeySpec> scaling_keys()
{
    return {
        {"grid.n", K::integer, "64", 8, 4096, {}, "lattice points per direction"},
        {"grid.l", K::real, "30", 1e-9, inf, {}, "box length"},
        {"data.amplitude", K::real, "1e-9", -inf, inf, {}, "gaussian amplitude (linear regime)"},
        {"data.width", K::real, "1", 1e-9, inf, {}, "gaussian width"},
        {"time.dt", K::real, "0.002", 1e-12, inf, {}, "RK4 step"},
        {"time.t_end", K::real, "0.5", 1e-12, inf, {}, "final time"},
        {"lambdas", K::real_list, "0.5,0.25", 1e-9, inf, {}, "dilation factors"},
        {"s_values", K::real_list, "0,0.5", -inf, inf, {}, "Sobolev indices of the norm ratio"},
        {"check.discrepancy", K::real, "1e-6", 0, inf, {}, "matched-time tolerance"},
        {"check.ratio_slack", K::real, "1.1", 1, inf, {}, "allowed factor over the norm bound"},
    };
}

std::vector<KeySpec> mollifier_keys()
{
    return {
        {"s", K::real, "0.5", -inf, inf, {}, "Sobolev index"},
        {"delta", K::real, "0.25", 1e-9, inf, {}, "smoothing gain"},
        {"lambdas", K::real_list, "0.25,0.125,0.0625,0.03125,0.015625,0.0078125", 1e-12, inf, {}, "mollifier scales"},
        {"trials", K::integer, "4", 1, 1e6, {}, "random fields"},
        {"grid.n", K::integer, "256", 8, 4096, {}, "lattice points per direction"},
        {"data.decay", K::real, "0.2", 0, inf, {}, "E^s energy of shell H falls like H^{-decay}"},
        {"check.slope_tolerance", K::real, "0.05", 0, inf, {}, "allowed excess below -delta"},
    };
}

std::map<std::string, std::vector<KeySpec>> build_schemas()
{
    std::map<std::string, std::vector<KeySpec>> m{
        {"simulate", simulate_keys()},      {"strichartz", strichartz_keys()}, {"kernel-decay", kernel_keys()},
        {"inflation", inflation_keys()},    {"trilinear", trilinear_keys()},   {"tech-lemma", lemma_keys()},
        {"energy", energy_keys()},          {"scaling", scaling_keys()},       {"mollifier", mollifier_keys()},
    };
    for (auto& [name, keys] : m) {
        auto c = common_keys();
        keys.insert(keys.begin(), c.begin(), c.end());
    }
    return m;
}

const std::map<std::string, std::vector<KeySpec>>& schemas()
{
    static const auto m = build_schemas();
    return m;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& v)
{
    if (s.empty()) return false;
    errno = 0;
    char* end = nullptr;
    v = std::strtod(s.c_str(), &end);
    return errno == 0 && end == s.c_str() + s.size() && std::isfinite(v);
}

bool parse_int(const std::string& s, std::int64_t& v)
{
    if (s.empty()) return false;
    errno = 0;
    char* end = nullptr;
    v = std::strtoll(s.c_str(), &end, 10);
    return errno == 0 && end == s.c_str() + s.size();
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    if (trim(s).empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

std::string range_text(const KeySpec& k)
{
    std::ostringstream os;
    os << k.name << " ∈ [" << k.lo << "," << k.hi << "]";
    return os.str();
}

void check_value(const KeySpec& k, const std::string& v)
{
    auto bad = [&](const std::string& why) {
        throw ConfigError("invalid value '" + v + "' for " + k.name + ": " + why);
    };
    switch (k.kind) {
    case K::real: {
        double d;
        if (!parse_double(v, d)) bad("expected a real number");
        if (d < k.lo || d > k.hi) bad("constraint " + range_text(k));
        break;
    }
    case K::integer: {
        std::int64_t i;
        if (!parse_int(v, i)) bad("expected an integer");
        if (double(i) < k.lo || double(i) > k.hi) bad("constraint " + range_text(k));
        break;
    }
    case K::boolean:
        if (v != "true" && v != "false") bad("expected true or false");
        break;
    case K::text:
        if (!k.choices.empty() && std::find(k.choices.begin(), k.choices.end(), v) == k.choices.end()) {
            std::string list;
            for (const auto& c : k.choices) list += (list.empty() ? "" : ", ") + c;
            bad("expected one of " + list);
        }
        break;
    case K::real_list:
        for (const auto& item : split_list(v)) {
            double d;
            if (!parse_double(item, d)) bad("expected comma-separated real numbers");
            if (d < k.lo || d > k.hi) bad("every entry must satisfy " + range_text(k));
        }
        break;
    }
}

}  // namespace

const std::vector<std::string>& subcommands()
{
    static const std::vector<std::string> names{"simulate",  "strichartz", "kernel-decay", "inflation", "trilinear",
                                                "tech-lemma", "energy",    "scaling",      "mollifier"};
    return names;
}

const std::vector<KeySpec>& config_schema(const std::string& subcommand)
{
    auto it = schemas().find(subcommand);
    if (it == schemas().end()) {
        std::string list;
        for (const auto& s : subcommands()) list += (list.empty() ? "" : ", ") + s;
        throw ConfigError("unknown subcommand '" + subcommand + "' (valid: " + list + ")");
    }
    return it->second;
}

bool is_derived_key(const std::string& key)
{
    static const std::vector<std::string> derived{"B", "beta", "s_alpha", "gamma", "tau", "q", "p"};
    const auto dot = key.rfind('.');
    const std::string leaf = dot == std::string::npos ? key : key.substr(dot + 1);
    return std::find(derived.begin(), derived.end(), leaf) != derived.end();
}

Config::Config(const std::string& subcommand) : sub_(subcommand)
{
    for (const auto& k : config_schema(subcommand)) values_[k.name] = k.fallback;
}

const KeySpec& Config::spec(const std::string& key) const
{
    for (const auto& k : config_schema(sub_))
        if (k.name == key) return k;
    if (is_derived_key(key)) throw ConfigError(key + " is derived, not settable");
    std::string list;
    for (const auto& k : config_schema(sub_)) list += (list.empty() ? "" : ", ") + k.name;
    throw ConfigError("unknown key '" + key + "' for " + sub_ + " (valid keys: " + list + ")");
}

void Config::set(const std::string& key, const std::string& value)
{
    const KeySpec& k = spec(key);
    check_value(k, value);
    values_[key] = value;
}

void Config::merge_text(const std::string& text, const std::string& origin)
{
    std::istringstream is(text);
    std::string line, section;
    int number = 0;
    while (std::getline(is, line)) {
        ++number;
        const std::string where = origin + ":" + std::to_string(number) + ": ";
        auto hash = line.find_first_of("#;");
        std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']' || body.size() < 3) throw ConfigError(where + "malformed section header");
            section = trim(body.substr(1, body.size() - 2));
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
        const std::string key = trim(body.substr(0, eq)), value = trim(body.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + "empty key");
        try {
            set(section.empty() ? key : section + "." + key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
}

void Config::merge_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    merge_text(ss.str(), path);
}

void Config::apply_override(const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + assignment + "' is not key=value");
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

double Config::real(const std::string& key) const
{
    if (spec(key).kind != K::real) throw ConfigError(key + " is not a real key");
    double d = 0.0;
    parse_double(values_.at(key), d);
    return d;
}

std::int64_t Config::integer(const std::string& key) const
{
    if (spec(key).kind != K::integer) throw ConfigError(key + " is not an integer key");
    std::int64_t i = 0;
    parse_int(values_.at(key), i);
    return i;
}

bool Config::boolean(const std::string& key) const
{
    if (spec(key).kind != K::boolean) throw ConfigError(key + " is not a boolean key");
    return values_.at(key) == "true";
}

const std::string& Config::text(const std::string& key) const
{
    spec(key);
    return values_.at(key);
}

std::vector<double> Config::real_list(const std::string& key) const
{
    if (spec(key).kind != K::real_list) throw ConfigError(key + " is not a list key");
    std::vector<double> out;
    for (const auto& item : split_list(values_.at(key))) {
        double d = 0.0;
        parse_double(item, d);
        out.push_back(d);
    }
    return out;
}

}  // namespace dlab
