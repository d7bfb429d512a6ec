#include "csv.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

namespace psr::cli {
namespace {

void write_row(std::ostream& out, const Row& row) {
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (k) out << ',';
    out << row[k];
  }
  out << '\n';
}

}  // namespace

std::string cell(double value) {
  if (std::isnan(value)) return "nan";
  return fmt::format("{}", value);
}

std::string cell(long long value) { return std::to_string(value); }

std::string cell(bool value) { return value ? "1" : "0"; }

void write_csv(const std::filesystem::path& path, const std::string& command, const RunConfig& cfg,
               const Row& header, const std::vector<Row>& rows) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw CliError(kIoError, "cannot create directory '" + path.parent_path().string() + "': " + ec.message());

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError(kIoError, "cannot open '" + path.string() + "' for writing");
  out << "# command: " << command << '\n';
  out << "# config_sha256: " << cfg.sha256() << '\n';
  for (const auto& line : cfg.dump()) out << "# config: " << line << '\n';
  write_row(out, header);
  for (const auto& row : rows) write_row(out, row);
  out.flush();
  if (!out) throw CliError(kIoError, "write to '" + path.string() + "' failed");
}

}  // namespace psr::cli
