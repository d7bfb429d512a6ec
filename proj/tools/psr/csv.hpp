#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"

namespace psr::cli {

using Row = std::vector<std::string>;

/// Shortest decimal that round-trips to the same double.
[[nodiscard]] std::string cell(double value);
[[nodiscard]] std::string cell(long long value);
[[nodiscard]] std::string cell(bool value);

/// Writes '#' metadata (command, config hash, resolved config), the header
/// row and the data rows. Throws CliError(kIoError) on failure.
void write_csv(const std::filesystem::path& path, const std::string& command, const RunConfig& cfg,
               const Row& header, const std::vector<Row>& rows);

}  // namespace psr::cli
