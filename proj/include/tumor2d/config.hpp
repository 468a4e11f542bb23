#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>

#include "tumor2d/stepper.hpp"

namespace tumor2d {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Full description of one run: grid, step count, model constants, the
/// initial-data preset and its parameters. Round-trips through the flat
/// key=value text format.
struct RunConfig {
    int nx = 64, ny = 64;
    double Lx = 1.0, Ly = 1.0;
    int steps = 100;
    int snapshot_every = 0;  // 0: final state only

    std::string preset = "random-smooth";
    std::uint64_t seed = 1;
    double lesion_cx = 0.5, lesion_cy = 0.5, lesion_r = 0.25;

    ModelParams params;

    Grid make_grid() const { return Grid(nx, ny, Lx, Ly); }
    void validate() const;
};

/// Parse the key=value format ('#' starts a comment, blank lines ignored,
/// unknown keys are an error). Keys not present keep their defaults.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_string(const std::string& text);
RunConfig load_config(const std::string& path);

/// Serialize every key; parse(serialize(c)) reproduces c.
std::string serialize_config(const RunConfig& c);

/// Build the preset initial data on the grid of the config.
InitialData make_initial_data(const RunConfig& c);

/// Deterministic 64-bit LCG used by the random-smooth preset:
/// x <- 6364136223846793005*x + 1442695040888963407 (mod 2^64),
/// uniform double from the top 53 bits.
struct Lcg {
    std::uint64_t state;
    explicit Lcg(std::uint64_t seed) : state(seed) {}
    double next01() {
        state = 6364136223846793005ULL * state + 1442695040888963407ULL;
        return static_cast<double>(state >> 11) * 0x1.0p-53;
    }
    double next(double lo, double hi) { return lo + (hi - lo) * next01(); }
};

}  // namespace tumor2d
