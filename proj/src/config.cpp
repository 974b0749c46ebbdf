#include "agfec/config.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace agfec {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

long long to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing garbage");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' expects an integer, got '" +
                                    value + "'");
    }
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing garbage");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' expects a number, got '" +
                                    value + "'");
    }
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "on") return true;
    if (value == "false" || value == "0" || value == "off") return false;
    throw std::invalid_argument("config: key '" + key + "' expects a boolean, got '" + value +
                                "'");
}

std::vector<double> to_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
    if (out.empty())
        throw std::invalid_argument("config: key '" + key + "' expects a list of numbers");
    return out;
}

void apply_key(SimConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "scheme") cfg.scheme = parse_scheme(value);
    else if (key == "code") {
        if (value == "ag64_49") cfg.code_k = 49;
        else if (value == "ag64_44") cfg.code_k = 44;
        else throw std::invalid_argument("config: unknown code '" + value + "'");
    } else if (key == "profile") cfg.profile = parse_profile(value);
    else if (key == "kt") cfg.kt = static_cast<int>(to_int(key, value));
    else if (key == "iterations") cfg.iterations = static_cast<int>(to_int(key, value));
    else if (key == "early_exit") cfg.early_exit = to_bool(key, value);
    else if (key == "strict_profile") cfg.strict_profile = to_bool(key, value);
    else if (key == "chase.p") cfg.chase.p = static_cast<int>(to_int(key, value));
    else if (key == "chase.s") cfg.chase.s = static_cast<int>(to_int(key, value));
    else if (key == "chase.alpha") cfg.chase.alpha_schedule = to_double_list(key, value);
    else if (key == "chase.beta") cfg.chase.beta_schedule = to_double_list(key, value);
    else if (key == "modulation") cfg.modulation = parse_modulation(value);
    else if (key == "demapper") cfg.demapper = parse_demapper(value);
    else if (key == "ebn0.start") cfg.ebn0_start = to_double(key, value);
    else if (key == "ebn0.stop") cfg.ebn0_stop = to_double(key, value);
    else if (key == "ebn0.step") cfg.ebn0_step = to_double(key, value);
    else if (key == "stop.min_bit_errors")
        cfg.stop.min_bit_errors = static_cast<std::uint64_t>(to_int(key, value));
    else if (key == "stop.max_frames")
        cfg.stop.max_frames = static_cast<std::uint64_t>(to_int(key, value));
    else if (key == "stop.max_seconds") cfg.stop.max_seconds = to_double(key, value);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_int(key, value));
    else if (key == "workers") cfg.workers = static_cast<int>(to_int(key, value));
    else if (key == "batch") cfg.batch = static_cast<int>(to_int(key, value));
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

} // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text,
                                                     const std::string& origin) {
    std::map<std::string, std::string> out;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                        ": expected 'key = value'");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": empty key");
        out[key] = value;
    }
    return out;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str(), path);
}

std::vector<ProfileEntry> parse_profile(const std::string& text) {
    std::vector<ProfileEntry> entries;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::string t = trim(item);
        std::size_t colon = t.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("profile: expected 'degree:share', got '" + t + "'");
        ProfileEntry e;
        e.degree = static_cast<int>(to_int("profile degree", trim(t.substr(0, colon))));
        e.share = to_double("profile share", trim(t.substr(colon + 1)));
        entries.push_back(e);
    }
    if (entries.empty()) throw std::invalid_argument("profile: empty");
    return entries;
}

SimConfig make_sim_config(const std::map<std::string, std::string>& base,
                          const std::map<std::string, std::string>& overrides) {
    SimConfig cfg;
    for (const auto& [k, v] : base)
        if (!overrides.count(k)) apply_key(cfg, k, v);
    for (const auto& [k, v] : overrides) apply_key(cfg, k, v);
    cfg.apply_defaults();
    return cfg;
}

} // namespace agfec
