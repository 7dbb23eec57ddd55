#include <doctest.h>

#include "qcf/config.hpp"

#include <cstdio>
#include <fstream>
#include <string>

using namespace qcf;

namespace {

struct TempFile {
    std::string path;

    explicit TempFile(const std::string& content) {
        static int counter = 0;
        path = "qcf_test_config_" + std::to_string(counter++) + ".json";
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("config file loads every known key") {
    const TempFile file(R"({
        "k_loss": 0.5, "beta": 0.25, "length_km": 12.5, "eta": 0.3,
        "dark_count": 2e-5, "noise": 0.02,
        "mu": 0.1, "a": 0.88, "abort_target": 0.015,
        "mu_min": 0.001, "mu_max": 1.5,
        "k": 1200, "k_max": 9000, "runs": 5000, "threads": 2,
        "seed": 77, "format": "tabular"
    })");
    const FileConfig cfg = load_config_file(file.path);
    CHECK(cfg.k_loss == 0.5);
    CHECK(cfg.beta == 0.25);
    CHECK(cfg.length_km == 12.5);
    CHECK(cfg.eta == 0.3);
    CHECK(cfg.dark_count == 2e-5);
    CHECK(cfg.noise == 0.02);
    CHECK(cfg.mu == 0.1);
    CHECK(cfg.a == 0.88);
    CHECK(cfg.abort_target == 0.015);
    CHECK(cfg.mu_min == 0.001);
    CHECK(cfg.mu_max == 1.5);
    CHECK(cfg.k == 1200);
    CHECK(cfg.k_max == 9000);
    CHECK(cfg.runs == 5000);
    CHECK(cfg.threads == 2);
    CHECK(cfg.seed == 77);
    CHECK(cfg.format == "tabular");
}

TEST_CASE("absent keys stay unset") {
    const TempFile file(R"({"mu": 0.2})");
    const FileConfig cfg = load_config_file(file.path);
    CHECK(cfg.mu == 0.2);
    CHECK(!cfg.k_loss.has_value());
    CHECK(!cfg.k.has_value());
    CHECK(!cfg.format.has_value());
}

TEST_CASE("unknown keys are named") {
    const TempFile file(R"({"meanphotons": 0.2})");
    try {
        load_config_file(file.path);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("meanphotons") != std::string::npos);
    }
}

TEST_CASE("type mismatches are named") {
    const TempFile file(R"({"mu": "lots"})");
    try {
        load_config_file(file.path);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("mu") != std::string::npos);
    }
    const TempFile fractional_k(R"({"k": 10.5})");
    CHECK_THROWS_AS(load_config_file(fractional_k.path), ConfigError);
}

TEST_CASE("malformed json reports the parse position") {
    const TempFile file("{\"mu\": 0.2,\n  \"k\": }");
    try {
        load_config_file(file.path);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find(file.path) != std::string::npos);
        CHECK(msg.find("parse") != std::string::npos);
    }
}

TEST_CASE("missing files and non-object documents fail") {
    CHECK_THROWS_AS(load_config_file("does_not_exist_qcf.json"), ConfigError);
    const TempFile array_doc(R"([1, 2, 3])");
    CHECK_THROWS_AS(load_config_file(array_doc.path), ConfigError);
}
