#include "cli.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "psr/errors.hpp"

namespace psr::cli {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polarization self-rotation cavity simulator"};
  app.name("psr");
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  bool oracle = false;
  app.add_option("-c,--config", config_path, "INI configuration file");
  app.add_option("--set", overrides, "Override a setting, e.g. --set cavity.eta=0.8")->take_all();
  app.add_option("-o,--out", out_dir, "Output directory (overrides output.dir)");

  auto* psr_curve = app.add_subcommand("psr-curve", "Rotation angle phi versus ellipticity");
  auto* spectrum = app.add_subcommand("spectrum", "Gain gl and absorption versus detuning");
  auto* bistability = app.add_subcommand("bistability", "Repeated oscillation events and their statistics");
  auto* loss_sweep = app.add_subcommand("loss-sweep", "Steady-state quadratures versus cavity transmission");
  auto* ising = app.add_subcommand("ising", "Coupled-mode Ising solver");
  ising->add_flag("--oracle", oracle, "Compare with exhaustive enumeration (N <= 24)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigError;
  }

  try {
    if (!out_dir.empty()) overrides.push_back("output.dir=" + out_dir);
    const RunConfig cfg = load_config(config_path.empty() ? std::nullopt
                                                          : std::optional<std::filesystem::path>(config_path),
                                      overrides);
    std::vector<std::filesystem::path> written;
    if (psr_curve->parsed()) written = cmd_psr_curve(cfg);
    else if (spectrum->parsed()) written = cmd_spectrum(cfg);
    else if (bistability->parsed()) written = cmd_bistability(cfg);
    else if (loss_sweep->parsed()) written = cmd_loss_sweep(cfg);
    else if (ising->parsed()) written = cmd_ising(cfg, oracle);
    for (const auto& path : written) out << path.generic_string() << '\n';
    return kSuccess;
  } catch (const CliError& e) {
    err << "psr: " << e.what() << '\n';
    return e.code();
  } catch (const psr::Error& e) {
    err << "psr: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace psr::cli
