#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gvns/solver.hpp"

namespace gvns {

/// Binary checkpoint layout (little-endian):
///   "GVNS" | version u32 | n u32 | L f64 | t f64 | nu f64 | mu f64 |
///   n*n complex coefficients as (re, im) f64 pairs, j1 slow, j2 fast,
///   both in FFT order 0..n/2-1, -n/2..-1.
struct CheckpointHeader {
    std::uint32_t version = 1;
    std::uint32_t n = 0;
    double length = 0.0;
    double t = 0.0;
    double nu = 0.0;
    double mu = 0.0;
};

inline constexpr std::uint32_t checkpoint_version = 1;

std::vector<std::uint8_t> save_checkpoint(const State& state, const PhysParams& params);

/// Throws CheckpointError with kind bad_magic, bad_version, truncated, or
/// grid_mismatch (when `expected` is given and differs).
std::pair<State, CheckpointHeader> load_checkpoint(const std::vector<std::uint8_t>& bytes,
                                                   const std::optional<GridSpec>& expected = std::nullopt);

void write_checkpoint_file(const std::string& path, const State& state, const PhysParams& params);
std::pair<State, CheckpointHeader> read_checkpoint_file(const std::string& path,
                                                        const std::optional<GridSpec>& expected = std::nullopt);

}  // namespace gvns
