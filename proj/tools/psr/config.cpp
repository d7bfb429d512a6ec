#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <openssl/evp.h>

#include "psr/errors.hpp"

namespace psr::cli {
namespace {

namespace pt = boost::property_tree;

constexpr const char* kDefaultEpsilonGrid = "0:0.78539816339744828:101";
constexpr const char* kDefaultDeltaGrid = "-1:1:201";
constexpr const char* kDefaultEtaGrid = "0.05:1:20";

[[noreturn]] void config_error(const std::string& what) { throw CliError(kConfigError, what); }

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& raw, const std::string& key) {
  const std::string text = trim(raw);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value))
    config_error(key + ": expected a finite number, got '" + raw + "'");
  return value;
}

template <typename Int>
Int to_integer(const std::string& raw, const std::string& key) {
  const std::string text = trim(raw);
  Int value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || end != text.data() + text.size())
    config_error(key + ": expected an integer, got '" + raw + "'");
  return value;
}

// Tracks which keys of the tree were consumed so leftovers can be reported.
class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::optional<std::string> get(const std::string& key) {
    seen_.insert(key);
    if (const auto v = tree_.get_optional<std::string>(pt::ptree::path_type(key, '.'))) return *v;
    return std::nullopt;
  }

  void number(const std::string& key, double& out) {
    if (const auto v = get(key)) out = to_double(*v, key);
  }

  void integer(const std::string& key, int& out) {
    if (const auto v = get(key)) out = to_integer<int>(*v, key);
  }

  void reject_unknown() const {
    for (const auto& [section, body] : tree_) {
      if (body.empty() && !body.data().empty()) config_error("key '" + section + "' must live in a section");
      for (const auto& [key, value] : body) {
        const std::string full = section + "." + key;
        if (!seen_.contains(full)) config_error("unknown config key '" + full + "'");
      }
    }
  }

 private:
  const pt::ptree& tree_;
  std::set<std::string> seen_;
};

std::string fmt_double(double v) { return fmt::format("{}", v); }

std::string fmt_grid(const std::vector<double>& grid) {
  std::string out;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (k) out += ',';
    out += fmt_double(grid[k]);
  }
  return out;
}

}  // namespace

std::vector<double> parse_grid(const std::string& raw, const std::string& key) {
  const std::string text = trim(raw);
  if (text.empty()) config_error(key + ": grid is empty");

  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t pos; (pos = text.find(':', start)) != std::string::npos; start = pos + 1)
      parts.push_back(text.substr(start, pos - start));
    parts.push_back(text.substr(start));
    if (parts.size() != 3) config_error(key + ": range grid must be 'start:stop:count'");
    const double lo = to_double(parts[0], key);
    const double hi = to_double(parts[1], key);
    const long count = to_integer<long>(parts[2], key);
    if (count < 1) config_error(key + ": grid is empty");
    if (count == 1) return {lo};
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (long k = 0; k < count; ++k)
      grid[static_cast<std::size_t>(k)] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
    grid.back() = hi;
    return grid;
  }

  std::vector<double> grid;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(',', start);
    grid.push_back(to_double(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start), key));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return grid;
}

double RunConfig::gl() const { return small_signal_gain(atoms, intensity_ratio); }

Medium RunConfig::medium() const { return Medium{atoms, intensity_ratio}; }

CavityParams RunConfig::resolved_cavity() const {
  CavityParams out = cavity;
  if (psi_optimal) out.psi = optimal_phase(gl());
  return out;
}

std::vector<std::string> RunConfig::dump() const {
  const CavityParams cav = resolved_cavity();
  std::vector<std::string> lines{
      "cavity.conv_tol=" + fmt_double(cav.conv_tol),
      "cavity.conv_window=" + std::to_string(cav.conv_window),
      "cavity.eta=" + fmt_double(cav.eta),
      "cavity.max_iters=" + std::to_string(cav.max_iters),
      "cavity.noise_mode=" + std::string(cav.noise_mode == NoiseMode::kPerPass ? "per_pass" : "initial"),
      "cavity.noise_sigma=" + fmt_double(cav.noise_sigma),
      "cavity.psi=" + fmt_double(cav.psi),
      "cavity.pump=" + fmt_double(pump),
      "ising.instance=" + ising_instance.generic_string(),
      "ising.kappa=" + fmt_double(kappa),
      "ising.restarts=" + std::to_string(restarts),
      "medium.detuning=" + fmt_double(atoms.detuning),
      "medium.gain_scale=" + fmt_double(atoms.gain_scale),
      "medium.gamma_big=" + fmt_double(atoms.gamma_big),
      "medium.gamma_small=" + fmt_double(atoms.gamma_small),
      "medium.intensity_ratio=" + fmt_double(intensity_ratio),
      "medium.linewidth_ghz=" + (linewidth_ghz ? fmt_double(*linewidth_ghz) : std::string()),
      "montecarlo.band_sigmas=" + fmt_double(band_sigmas),
      "montecarlo.max_lag=" + std::to_string(max_lag),
      "montecarlo.num_events=" + std::to_string(num_events),
      "output.dir=" + output_dir.generic_string(),
      "run.seed=" + (seed ? std::to_string(*seed) : std::string()),
      "sweep.delta=" + fmt_grid(delta_grid),
      "sweep.epsilon=" + fmt_grid(epsilon_grid),
      "sweep.eta=" + fmt_grid(eta_grid),
      "sweep.runs_per_point=" + std::to_string(runs_per_point),
  };
  std::sort(lines.begin(), lines.end());
  return lines;
}

std::string RunConfig::sha256() const {
  std::string text;
  for (const auto& line : dump()) text += line + '\n';
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::string hex;
  for (unsigned int k = 0; k < length; ++k) hex += fmt::format("{:02x}", digest[k]);
  return hex;
}

RunConfig load_config(const std::optional<std::filesystem::path>& file,
                      const std::vector<std::string>& overrides) {
  pt::ptree tree;
  if (file) {
    std::ifstream in(*file);
    if (!in) throw CliError(kIoError, "cannot open config file '" + file->string() + "'");
    try {
      pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
      config_error("config file '" + file->string() + "': " + e.message() + " (line " +
                   std::to_string(e.line()) + ")");
    }
  }
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    const std::string key = trim(item.substr(0, eq));
    if (eq == std::string::npos || key.find('.') == std::string::npos || key.front() == '.' ||
        key.back() == '.')
      config_error("override '" + item + "' must look like section.key=value");
    tree.put(pt::ptree::path_type(key, '.'), trim(item.substr(eq + 1)));
  }

  Reader r(tree);
  RunConfig cfg;

  if (const auto v = r.get("run.seed")) cfg.seed = to_integer<std::uint64_t>(*v, "run.seed");

  const auto delta = r.get("medium.delta");
  const auto gamma_big = r.get("medium.gamma_big");
  const auto gamma_small = r.get("medium.gamma_small");
  const auto detuning = r.get("medium.detuning");
  if (delta && (gamma_big || gamma_small || detuning))
    config_error("medium: give either delta or (gamma_big, gamma_small, detuning), not both");
  if (delta) {
    cfg.atoms = AtomicParams::from_delta(to_double(*delta, "medium.delta"));
  } else {
    cfg.atoms = AtomicParams::from_delta(0.1);
    if (gamma_big) cfg.atoms.gamma_big = to_double(*gamma_big, "medium.gamma_big");
    if (gamma_small) cfg.atoms.gamma_small = to_double(*gamma_small, "medium.gamma_small");
    if (detuning) cfg.atoms.detuning = to_double(*detuning, "medium.detuning");
    else cfg.atoms.detuning = 0.1 * cfg.atoms.linewidth();
  }
  r.number("medium.intensity_ratio", cfg.intensity_ratio);
  if (!(cfg.intensity_ratio >= 0.0)) config_error("medium.intensity_ratio must be >= 0");
  const auto gain_scale = r.get("medium.gain_scale");
  const auto gl = r.get("medium.gl");
  if (gain_scale && gl) config_error("medium: give either gain_scale or gl, not both");
  try {
    if (gain_scale) cfg.atoms.gain_scale = to_double(*gain_scale, "medium.gain_scale");
    else if (gl) cfg.atoms.gain_scale = gain_scale_for(cfg.atoms.delta(), cfg.intensity_ratio, to_double(*gl, "medium.gl"));
    else cfg.atoms.gain_scale = gain_scale_for(cfg.atoms.delta(), cfg.intensity_ratio, 1.0);
    cfg.atoms.validate();
  } catch (const psr::Error& e) {
    config_error(std::string("medium: ") + e.what());
  }
  if (const auto v = r.get("medium.linewidth_ghz")) {
    cfg.linewidth_ghz = to_double(*v, "medium.linewidth_ghz");
    if (!(*cfg.linewidth_ghz > 0.0)) config_error("medium.linewidth_ghz must be > 0");
  }

  r.number("cavity.eta", cfg.cavity.eta);
  if (const auto v = r.get("cavity.psi")) {
    cfg.psi_optimal = trim(*v) == "optimal";
    if (!cfg.psi_optimal) cfg.cavity.psi = to_double(*v, "cavity.psi");
  }
  r.number("cavity.noise_sigma", cfg.cavity.noise_sigma);
  r.integer("cavity.max_iters", cfg.cavity.max_iters);
  r.number("cavity.conv_tol", cfg.cavity.conv_tol);
  r.integer("cavity.conv_window", cfg.cavity.conv_window);
  if (const auto v = r.get("cavity.noise_mode")) {
    const std::string mode = trim(*v);
    if (mode == "initial") cfg.cavity.noise_mode = NoiseMode::kInitialSeed;
    else if (mode == "per_pass") cfg.cavity.noise_mode = NoiseMode::kPerPass;
    else config_error("cavity.noise_mode must be 'initial' or 'per_pass'");
  }
  r.number("cavity.pump", cfg.pump);
  if (!(cfg.pump > 0.0)) config_error("cavity.pump must be > 0");
  try {
    cfg.cavity.validate();
  } catch (const psr::Error& e) {
    config_error(std::string("cavity: ") + e.what());
  }

  cfg.epsilon_grid = parse_grid(r.get("sweep.epsilon").value_or(kDefaultEpsilonGrid), "sweep.epsilon");
  cfg.delta_grid = parse_grid(r.get("sweep.delta").value_or(kDefaultDeltaGrid), "sweep.delta");
  cfg.eta_grid = parse_grid(r.get("sweep.eta").value_or(kDefaultEtaGrid), "sweep.eta");
  for (const double eta : cfg.eta_grid)
    if (!(eta > 0.0 && eta <= 1.0)) config_error("sweep.eta: every value must lie in (0, 1]");
  r.integer("sweep.runs_per_point", cfg.runs_per_point);
  if (cfg.runs_per_point < 1) config_error("sweep.runs_per_point must be >= 1");

  r.integer("montecarlo.num_events", cfg.num_events);
  r.integer("montecarlo.max_lag", cfg.max_lag);
  r.number("montecarlo.band_sigmas", cfg.band_sigmas);
  if (cfg.num_events < 1) config_error("montecarlo.num_events must be >= 1");
  if (cfg.max_lag < 0) config_error("montecarlo.max_lag must be >= 0");
  if (!(cfg.band_sigmas > 0.0)) config_error("montecarlo.band_sigmas must be > 0");

  if (const auto v = r.get("ising.instance")) cfg.ising_instance = trim(*v);
  r.number("ising.kappa", cfg.kappa);
  r.integer("ising.restarts", cfg.restarts);
  if (!(cfg.kappa >= 0.0)) config_error("ising.kappa must be >= 0");
  if (cfg.restarts < 1) config_error("ising.restarts must be >= 1");

  if (const auto v = r.get("output.dir")) cfg.output_dir = trim(*v);
  if (cfg.output_dir.empty()) config_error("output.dir must not be empty");

  r.reject_unknown();
  return cfg;
}

}  // namespace psr::cli
