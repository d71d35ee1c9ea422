#include "renormal/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "renormal/errors.hpp"
#include "renormal/exponents.hpp"

namespace renormal {

namespace {

const std::pair<ExperimentKind, const char*> kind_names[] = {
    {ExperimentKind::e2_sweep, "e2-sweep"},
    {ExperimentKind::double_commutator_sweep, "double-commutator-sweep"},
    {ExperimentKind::decomposition_check, "decomposition-check"},
    {ExperimentKind::limit_residuals, "limit-residuals"},
    {ExperimentKind::theorem3_sweep, "theorem3-sweep"},
    {ExperimentKind::moment_check, "moment-check"},
    {ExperimentKind::spde_run, "spde-run"},
    {ExperimentKind::apriori_mc, "apriori-mc"},
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    const char* first = value.data();
    const char* last = first + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last)
        throw ConfigError("key '" + key + "': cannot parse '" + value + "' as a number");
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "on")
        return true;
    if (value == "false" || value == "0" || value == "off")
        return false;
    throw ConfigError("key '" + key + "': expected true or false, got '" + value + "'");
}

void set_key(ExperimentConfig& c, const std::string& key, const std::string& value) {
    auto num = [&] { return parse_number<double>(key, value); };
    auto integer = [&] { return parse_number<int>(key, value); };
    auto seed = [&] { return parse_number<std::uint64_t>(key, value); };

    if (key.rfind("verdict.", 0) == 0) {
        if (key.size() == 8)
            throw ConfigError("empty verdict name");
        c.verdicts[key.substr(8)] = num();
    } else if (key == "schema_version") {
        c.schema_version = integer();
    } else if (key == "experiment") {
        try {
            c.experiment = parse_experiment_kind(value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    } else if (key == "d") {
        c.d = integer();
    } else if (key == "N") {
        c.N = integer();
    } else if (key == "m") {
        c.m = integer();
    } else if (key == "sigma") {
        c.sigma = value;
    } else if (key == "sigma_seed") {
        c.sigma_seed = seed();
    } else if (key == "u") {
        c.u = value;
    } else if (key == "u_seed") {
        c.u_seed = seed();
    } else if (key == "u_cap") {
        c.u_cap = num();
    } else if (key == "p") {
        c.p = num();
    } else if (key == "q") {
        c.q = num();
    } else if (key == "entropy") {
        c.entropy = value;
    } else if (key == "entropy_q") {
        c.entropy_q = num();
    } else if (key == "phi") {
        c.phi = value;
    } else if (key == "kernel") {
        try {
            c.kernel = parse_kernel_kind(value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    } else if (key == "delta_min_k") {
        c.delta_min_k = integer();
    } else if (key == "delta_max_k") {
        c.delta_max_k = integer();
    } else if (key == "backend") {
        if (value == "spectral")
            c.disc.backend = DerivativeBackend::spectral;
        else if (value == "centered2")
            c.disc.backend = DerivativeBackend::centered2;
        else
            throw ConfigError("unknown backend '" + value + "'");
    } else if (key == "dealias") {
        c.disc.dealias = parse_bool(key, value);
    } else if (key == "oracle") {
        c.oracle = parse_bool(key, value);
    } else if (key == "seed") {
        c.seed = seed();
    } else if (key == "output") {
        c.output = value;
    } else if (key == "stepper") {
        if (value != "ito" && value != "stratonovich")
            throw ConfigError("unknown stepper '" + value + "'");
        c.stepper = value;
    } else if (key == "horizon") {
        c.horizon = num();
    } else if (key == "dt") {
        c.dt = num();
    } else if (key == "dt_levels") {
        c.dt_levels = integer();
    } else if (key == "snapshot_every") {
        c.snapshot_every = integer();
    } else if (key == "paths") {
        c.paths = integer();
    } else if (key == "drift") {
        c.drift = value;
    } else {
        throw ConfigError("unknown key '" + key + "'");
    }
    c.entries[key] = value;
}

void validate(const ExperimentConfig& c) {
    if (c.schema_version == 0)
        throw ConfigError("missing schema_version");
    if (c.schema_version != config_schema_version)
        throw ConfigError("unsupported schema_version " + std::to_string(c.schema_version));
    if (c.d < 1 || c.d > 3)
        throw ConfigError("d must be 1, 2 or 3");
    if (c.N < 16 || (c.N & (c.N - 1)) != 0)
        throw ConfigError("N must be a power of two >= 16");
    if (c.m < 1)
        throw ConfigError("m must be >= 1");
    if (c.delta_min_k < 2)
        throw ConfigError("delta_min_k must be >= 2 (support fits the torus)");
    if (c.delta_max_k < c.delta_min_k)
        throw ConfigError("delta_max_k must be >= delta_min_k");
    try {
        (void)exponents(c.p, c.q);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("inadmissible exponents: ") + e.what());
    }
    if (!(c.horizon > 0.0))
        throw ConfigError("horizon must be positive");
    if (c.dt < 0.0)
        throw ConfigError("dt must be >= 0");
    if (c.dt_levels < 1)
        throw ConfigError("dt_levels must be >= 1");
    if (c.snapshot_every < 0)
        throw ConfigError("snapshot_every must be >= 0");
    if (c.paths < 1)
        throw ConfigError("paths must be >= 1");
}

}  // namespace

ExperimentKind parse_experiment_kind(const std::string& name) {
    for (const auto& [kind, text] : kind_names)
        if (name == text)
            return kind;
    throw std::invalid_argument("unknown experiment '" + name + "'");
}

std::string to_string(ExperimentKind kind) {
    for (const auto& [k, text] : kind_names)
        if (k == kind)
            return text;
    return "?";
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (c.entries.count(key))
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        set_key(c, key, value);
    }
    validate(c);
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

void apply_override(ExperimentConfig& config, const std::string& key, const std::string& value) {
    set_key(config, key, value);
    validate(config);
}

}  // namespace renormal
