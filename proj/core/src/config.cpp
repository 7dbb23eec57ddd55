#include "qcf/config.hpp"

#include <fstream>

#include <json.hpp>

namespace qcf {

namespace {

using nlohmann::json;

double as_double(const json& value, const std::string& key) {
    if (!value.is_number()) {
        throw ConfigError("config key '" + key + "' must be a number, got " +
                          std::string(value.type_name()));
    }
    return value.get<double>();
}

long as_long(const json& value, const std::string& key) {
    if (!value.is_number_integer()) {
        throw ConfigError("config key '" + key + "' must be an integer, got " +
                          std::string(value.type_name()));
    }
    return value.get<long>();
}

std::uint64_t as_u64(const json& value, const std::string& key) {
    if (!value.is_number_unsigned() && !value.is_number_integer()) {
        throw ConfigError("config key '" + key + "' must be an integer, got " +
                          std::string(value.type_name()));
    }
    return value.get<std::uint64_t>();
}

std::string as_string(const json& value, const std::string& key) {
    if (!value.is_string()) {
        throw ConfigError("config key '" + key + "' must be a string, got " +
                          std::string(value.type_name()));
    }
    return value.get<std::string>();
}

}  // namespace

FileConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config file '" + path + "' must hold a flat JSON object");
    }

    FileConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        if (key == "k_loss") cfg.k_loss = as_double(value, key);
        else if (key == "beta") cfg.beta = as_double(value, key);
        else if (key == "length_km") cfg.length_km = as_double(value, key);
        else if (key == "eta") cfg.eta = as_double(value, key);
        else if (key == "dark_count") cfg.dark_count = as_double(value, key);
        else if (key == "noise") cfg.noise = as_double(value, key);
        else if (key == "mu") cfg.mu = as_double(value, key);
        else if (key == "a") cfg.a = as_double(value, key);
        else if (key == "abort_target") cfg.abort_target = as_double(value, key);
        else if (key == "mu_min") cfg.mu_min = as_double(value, key);
        else if (key == "mu_max") cfg.mu_max = as_double(value, key);
        else if (key == "k") cfg.k = as_long(value, key);
        else if (key == "k_max") cfg.k_max = as_long(value, key);
        else if (key == "runs") cfg.runs = as_long(value, key);
        else if (key == "threads") cfg.threads = as_long(value, key);
        else if (key == "seed") cfg.seed = as_u64(value, key);
        else if (key == "format") cfg.format = as_string(value, key);
        else {
            throw ConfigError("config file '" + path + "': unknown key '" + key + "'");
        }
    }
    return cfg;
}

}  // namespace qcf
