// config.hpp
// Flat key-value run configuration, loadable from a JSON file. Resolution
// order is built-in defaults, then the file, then command-line flags.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace qcf {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every field is optional; absent fields keep their defaults.
struct FileConfig {
    std::optional<double> k_loss;
    std::optional<double> beta;
    std::optional<double> length_km;
    std::optional<double> eta;
    std::optional<double> dark_count;
    std::optional<double> noise;
    std::optional<double> mu;
    std::optional<double> a;
    std::optional<double> abort_target;
    std::optional<double> mu_min;
    std::optional<double> mu_max;
    std::optional<long> k;
    std::optional<long> k_max;
    std::optional<long> runs;
    std::optional<long> threads;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;
};

// Throws ConfigError naming the file position for malformed JSON and the
// offending key for unknown keys or wrong value types.
FileConfig load_config_file(const std::string& path);

}  // namespace qcf
