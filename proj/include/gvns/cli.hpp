#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace gvns::cli {

enum ExitCode : int { ok = 0, failure = 1, usage = 2, blowup = 3 };

/// Runs one subcommand (simulate, sweep, bounds, sync, radius). Results go
/// to `out` or to files under --out; failures print a JSON object with an
/// "error" category to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, char** argv);

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

/// Writes manifest.json in `dir` listing every file in `artifacts` with its
/// size and checksum.
void write_manifest(const std::string& dir, const std::string& config_path, const std::string& config_echo,
                    const std::vector<std::string>& artifacts, const std::string& command);

}  // namespace gvns::cli
